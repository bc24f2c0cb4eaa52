#pragma once

// Numerical search for near-extremal functions of |R_alpha^2 f|_p / |f|_p,
// checked against the proven bound p* - 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riesz/lattice.hpp"
#include "riesz/operators.hpp"

namespace riesz {

enum class ScalarField { Real, Complex };

struct SearchConfig {
    std::size_t restarts = 16;
    std::size_t max_iters = 500;
    double step_init = 0.5;
    double step_shrink = 0.5;
    double grad_tol = 1e-10;
    std::uint64_t seed = 0;
    ScalarField field = ScalarField::Complex;

    // Test hook: multiplies the symbol, so a value > 1 deliberately breaks the bound.
    double operator_scale = 1.0;
};

/// Throws InvalidArgument unless every field is in range.
void validate(const SearchConfig& cfg);

struct SearchResult {
    double best_ratio = 0.0;
    LatticeFunction best_f;  // unit p-norm
    std::size_t iterations_used = 0;  // summed over restarts
    std::size_t best_restart = 0;
    double bound = 0.0;  // p* - 1
    double margin = 0.0; // bound - best_ratio
    double max_ratio_seen = 0.0;
    bool bound_violated = false;  // some iterate exceeded bound + 1e-9
};

inline constexpr double kBoundSlack = 1e-9;

/// |R_alpha^2 f|_p / |f|_p. Throws InvalidArgument for f = 0.
double ratio(const LatticeFunction& f, const CoefficientVector& alpha, double p);

/// Multistart projected gradient ascent on the unit p-sphere. Restart 0 starts
/// from a smooth low-frequency profile, the next ones from `seeds` (if any),
/// the rest from seeded Gaussian noise with the mean removed. Deterministic in
/// (cfg.seed, g, alpha, p, seeds).
SearchResult ascend(const GroupSpec& g, const CoefficientVector& alpha, double p, const SearchConfig& cfg,
                    const std::vector<LatticeFunction>& seeds = {});

/// Smooth starting profile: product over axes of (1/2 + cos(2 pi n_i / m_i)), mean removed.
LatticeFunction smooth_profile(const GroupSpec& g);

/// f(n mod m') lifted from a group of orders m' to one whose orders are multiples of m'.
/// The lift commutes with every R_alpha^2 and preserves the ratio.
LatticeFunction periodic_lift(const LatticeFunction& coarse, const GroupSpec& fine);

struct RefinementRow {
    std::size_t m = 0;
    SearchResult result;
};

struct RefinementTable {
    double p = 0.0;
    std::vector<RefinementRow> rows;

    bool any_violation() const;
    /// best_ratio(m) >= best_ratio(m') - tol for every earlier m' dividing m.
    bool near_monotone(double tol) const;
    std::string csv() const;   // m,best_ratio,margin,iterations
    std::string json() const;
};

/// One search per m on (Z/mZ)^N with N = alpha.size(). When an earlier m' divides m,
/// its best function is lifted and used as an extra starting point.
RefinementTable refinement_study(double p, const CoefficientVector& alpha, const std::vector<std::size_t>& ms,
                                 const SearchConfig& cfg);

} // namespace riesz
