#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ohmprobe {

// Argument outside the mathematical domain of an operation (negative
// frequency, invalid covariance matrix, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical failure: the computation was well posed but did not reach its
// tolerance. All of these map to exit status 1 in the CLI.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double achieved_error, double requested_error)
        : NumericalError(what), achieved_error_(achieved_error), requested_error_(requested_error) {}

    double achieved_error() const noexcept { return achieved_error_; }
    double requested_error() const noexcept { return requested_error_; }

private:
    double achieved_error_;
    double requested_error_;
};

// Eq. for the single-mode QFI has a vanishing denominator at purity.
class NearPureStateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystemError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepTooLargeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateEnergyError : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroInformationError : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedConfiguration : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Non-fatal diagnostics. Operations that can degrade gracefully append to a
// caller-supplied list instead of throwing or silently repairing the result.
enum class WarningCode {
    uncertainty_violation,
    boundary_maximum,
    multimodal_landscape,
    flat_landscape,
    phase_off_candidate,
};

struct Warning {
    WarningCode code;
    std::string message;
};

using Warnings = std::vector<Warning>;

inline void emit(Warnings* sink, WarningCode code, std::string message)
{
    if (sink) sink->push_back({code, std::move(message)});
}

const char* to_string(WarningCode code) noexcept;

}  // namespace ohmprobe
