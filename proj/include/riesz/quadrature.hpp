#pragma once

// Time quadrature for integrals over [0, inf) whose integrands decay
// exponentially: Gauss-Legendre on geometrically growing panels over
// [0, t_max] plus an analytic tail bound for [t_max, inf).

#include <cstddef>
#include <functional>
#include <vector>

namespace riesz {

struct QuadratureSpec {
    double t_max = 0.0;  // 0 selects t_max from the tail envelope
    std::size_t panels = 24;
    std::size_t nodes_per_panel = 12;
    double tail_tolerance = 1e-12;
    double panel_ratio = 2.0;
};

// Bound on the tail: integral_T^inf |integrand| <= amplitude * exp(-rate * T).
struct TailEnvelope {
    double amplitude = 0.0;
    double rate = 0.0;

    double at(double t) const;
    /// Smallest T with at(T) <= tolerance (0 if the amplitude is already below it).
    double required_t_max(double tolerance) const;
};

struct TimeGrid {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;
    double t_max = 0.0;
    double tail_bound = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double t_max = 0.0;
    double tail_bound = 0.0;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], ascending.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// Builds the panel grid. Throws QuadratureInfeasible if an explicit t_max
/// leaves a tail above tolerance, InvalidArgument for degenerate specs.
TimeGrid make_time_grid(const QuadratureSpec& q, const TailEnvelope& tail);

/// Integrates over [0, t_max]; summation in ascending t.
QuadratureResult time_quadrature(const std::function<double(double)>& integrand, const QuadratureSpec& q,
                                 const TailEnvelope& tail);

} // namespace riesz
