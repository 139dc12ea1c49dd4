#include "ohmprobe/errors.hpp"

namespace ohmprobe {

const char* to_string(WarningCode code) noexcept
{
    switch (code) {
        case WarningCode::uncertainty_violation: return "uncertainty_violation";
        case WarningCode::boundary_maximum: return "boundary_maximum";
        case WarningCode::multimodal_landscape: return "multimodal_landscape";
        case WarningCode::flat_landscape: return "flat_landscape";
        case WarningCode::phase_off_candidate: return "phase_off_candidate";
    }
    return "unknown";
}

}  // namespace ohmprobe
