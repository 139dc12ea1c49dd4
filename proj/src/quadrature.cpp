#include "ohmprobe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "ohmprobe/errors.hpp"

namespace ohmprobe::quad {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the odd Kronrod nodes kXgk[1], [3], [5], [7].
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    Result r;
    bool operator<(const Panel& other) const { return r.error < other.r.error; }
};

}  // namespace

Result gauss_kronrod_15(const std::function<double(double)>& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    double absk = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        kronrod += kWgk[i] * (f1 + f2);
        absk += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    Result r;
    r.value = kronrod * half;
    r.error = std::abs((kronrod - gauss) * half);
    r.abs_integral = absk * std::abs(half);
    r.evaluations = 15;
    return r;
}

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts)
{
    if (a == b) return {};
    if (b < a) {
        Result r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }

    const double width = b - a;
    long initial = 1;
    if (std::isfinite(opts.max_panel_width) && opts.max_panel_width > 0.0)
        initial = std::max<long>(1, static_cast<long>(std::ceil(width / opts.max_panel_width)));
    if (initial > opts.max_panels)
        throw QuadratureError("initial partition exceeds panel budget", std::numeric_limits<double>::infinity(),
                              opts.abs_tol);

    std::priority_queue<Panel> heap;
    Result total;
    const double step = width / static_cast<double>(initial);
    for (long i = 0; i < initial; ++i) {
        const double lo = a + step * static_cast<double>(i);
        const double hi = (i + 1 == initial) ? b : a + step * static_cast<double>(i + 1);
        Panel p{lo, hi, gauss_kronrod_15(f, lo, hi)};
        total.value += p.r.value;
        total.error += p.r.error;
        total.abs_integral += p.r.abs_integral;
        total.evaluations += p.r.evaluations;
        heap.push(p);
    }

    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value)); };

    while (total.error > tolerance()) {
        if (static_cast<long>(heap.size()) >= opts.max_panels) {
            throw QuadratureError("adaptive quadrature did not converge: achieved " + std::to_string(total.error) +
                                      ", requested " + std::to_string(tolerance()),
                                  total.error, tolerance());
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("adaptive quadrature reached machine resolution", total.error, tolerance());
        }
        Panel left{worst.a, mid, gauss_kronrod_15(f, worst.a, mid)};
        Panel right{mid, worst.b, gauss_kronrod_15(f, mid, worst.b)};
        total.value += left.r.value + right.r.value - worst.r.value;
        total.error += left.r.error + right.r.error - worst.r.error;
        total.abs_integral += left.r.abs_integral + right.r.abs_integral - worst.r.abs_integral;
        total.evaluations += 30;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift from incremental updates.
    Result final_sum;
    final_sum.evaluations = total.evaluations;
    while (!heap.empty()) {
        const Panel& p = heap.top();
        final_sum.value += p.r.value;
        final_sum.error += p.r.error;
        final_sum.abs_integral += p.r.abs_integral;
        heap.pop();
    }
    return final_sum;
}

ChebyshevCumulative::ChebyshevCumulative(int points) : points_(points)
{
    if (points < 3) throw DomainError("ChebyshevCumulative needs at least 3 points");
    const int n = points_;
    const int deg = n - 1;
    reference_nodes_.resize(n);
    for (int j = 0; j < n; ++j) reference_nodes_[j] = -std::cos(std::numbers::pi * j / deg);

    // T_k at the nodes.
    Eigen::MatrixXd cheb(n, n + 1);
    for (int j = 0; j < n; ++j) {
        const double x = reference_nodes_[j];
        cheb(j, 0) = 1.0;
        cheb(j, 1) = x;
        for (int k = 2; k <= n; ++k) cheb(j, k) = 2.0 * x * cheb(j, k - 1) - cheb(j, k - 2);
    }

    integration_.resize(n, n);
    Eigen::VectorXd c(n + 2), b(n + 1);
    for (int col = 0; col < n; ++col) {
        // Interpolation coefficients of the unit vector e_col.
        c.setZero();
        for (int k = 0; k < n; ++k) {
            double weight = (col == 0 || col == deg) ? 0.5 : 1.0;
            double ck = 2.0 / deg * weight * cheb(col, k);
            if (k == 0 || k == deg) ck *= 0.5;
            c[k] = ck;
        }
        // Antiderivative coefficients.
        b.setZero();
        b[1] = c[0] - 0.5 * c[2];
        for (int k = 2; k <= n; ++k) b[k] = (c[k - 1] - c[k + 1]) / (2.0 * k);
        double at_minus_one = 0.0;
        for (int k = 1; k <= n; ++k) at_minus_one += (k % 2 ? -1.0 : 1.0) * b[k];
        for (int j = 0; j < n; ++j) {
            double v = -at_minus_one;
            for (int k = 1; k <= n; ++k) v += b[k] * cheb(j, k);
            integration_(j, col) = v;
        }
    }
}

std::vector<double> ChebyshevCumulative::nodes(double a, double b) const
{
    std::vector<double> out(points_);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 0; j < points_; ++j) out[j] = mid + half * reference_nodes_[j];
    out.front() = a;
    out.back() = b;
    return out;
}

Eigen::VectorXd ChebyshevCumulative::cumulative(const Eigen::VectorXd& values, double a, double b) const
{
    return 0.5 * (b - a) * (integration_ * values);
}

}  // namespace ohmprobe::quad
