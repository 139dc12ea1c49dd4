// quadrature.hpp: numerical integration used by the reservoir dynamics.
//
// Two tools live here:
//  * integrate(): globally adaptive 7/15-point Gauss-Kronrod with an upper
//    bound on the panel width, for smooth-times-oscillatory integrands.
//  * ChebyshevCumulative: spectral indefinite integration on a panel, used to
//    carry running integrals (Gamma(t), W(t), ...) through nested time
//    integrals without re-integrating from zero.

#pragma once

#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace ohmprobe::quad {

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    // Initial partition never uses panels wider than this.
    double max_panel_width = std::numeric_limits<double>::infinity();
    int max_panels = 200000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    double abs_integral = 0.0;  // integral of |f|, a natural scale for tolerances
    long evaluations = 0;
};

// Throws QuadratureError carrying the achieved error when the panel budget is
// exhausted before the tolerance is met.
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts = {});

// Single 15-point Kronrod estimate with its embedded 7-point Gauss error.
Result gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

class ChebyshevCumulative {
public:
    explicit ChebyshevCumulative(int points = 24);

    int size() const noexcept { return points_; }

    // Chebyshev-Lobatto nodes on [a, b] in increasing order; first is a, last is b.
    std::vector<double> nodes(double a, double b) const;

    // Given samples at nodes(a, b), returns int_a^{x_i} f for every node x_i.
    Eigen::VectorXd cumulative(const Eigen::VectorXd& values, double a, double b) const;

private:
    int points_;
    Eigen::VectorXd reference_nodes_;
    Eigen::MatrixXd integration_;  // on [-1, 1]
};

}  // namespace ohmprobe::quad
