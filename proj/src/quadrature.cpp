#include "riesz/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "riesz/error.hpp"
#include "riesz/io.hpp"

namespace riesz {

double TailEnvelope::at(double t) const { return amplitude * std::exp(-rate * t); }

double TailEnvelope::required_t_max(double tolerance) const {
    if (amplitude <= tolerance) return 0.0;
    double t = std::log(amplitude / tolerance) / rate;
    // rounding can leave at(t) a few ulp above the tolerance
    while (at(t) > tolerance) t = std::nextafter(t, INFINITY);
    return t;
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n == 0) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th largest root
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

TimeGrid make_time_grid(const QuadratureSpec& q, const TailEnvelope& tail) {
    if (q.panels == 0 || q.nodes_per_panel == 0) {
        throw InvalidArgument("quadrature needs at least one panel and one node");
    }
    if (!(q.tail_tolerance > 0.0) || !(q.panel_ratio >= 1.0) || !(q.t_max >= 0.0)) {
        throw InvalidArgument("quadrature: tail tolerance must be > 0, panel ratio >= 1, t_max >= 0");
    }
    if (!(tail.rate > 0.0) || !(tail.amplitude >= 0.0)) {
        throw InvalidArgument("quadrature: tail envelope needs a positive decay rate");
    }

    const double required = tail.required_t_max(q.tail_tolerance);
    TimeGrid grid;
    if (q.t_max > 0.0) {
        if (tail.at(q.t_max) > q.tail_tolerance) {
            throw QuadratureInfeasible("tail bound " + io::format_double(tail.at(q.t_max)) + " at t_max " +
                                           io::format_double(q.t_max) + " exceeds tolerance " +
                                           io::format_double(q.tail_tolerance),
                                       required);
        }
        grid.t_max = q.t_max;
    } else {
        // nothing left to integrate beyond the tolerance; keep a nominal window
        grid.t_max = required > 0.0 ? required : 1.0 / tail.rate;
    }
    grid.tail_bound = tail.at(grid.t_max);

    std::vector<double> x, w;
    gauss_legendre(q.nodes_per_panel, x, w);

    // widths h, h r, h r^2, ... summing to t_max
    double total = 0.0, width = 1.0;
    for (std::size_t k = 0; k < q.panels; ++k) {
        total += width;
        width *= q.panel_ratio;
    }
    double a = 0.0;
    width = grid.t_max / total;
    grid.nodes.reserve(q.panels * q.nodes_per_panel);
    grid.weights.reserve(q.panels * q.nodes_per_panel);
    for (std::size_t k = 0; k < q.panels; ++k) {
        const double b = k + 1 == q.panels ? grid.t_max : a + width;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t j = 0; j < x.size(); ++j) {
            grid.nodes.push_back(mid + half * x[j]);
            grid.weights.push_back(half * w[j]);
        }
        a = b;
        width *= q.panel_ratio;
    }
    return grid;
}

QuadratureResult time_quadrature(const std::function<double(double)>& integrand, const QuadratureSpec& q,
                                 const TailEnvelope& tail) {
    const TimeGrid grid = make_time_grid(q, tail);
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.nodes.size(); ++k) acc += grid.weights[k] * integrand(grid.nodes[k]);
    return {acc, grid.t_max, grid.tail_bound};
}

} // namespace riesz
