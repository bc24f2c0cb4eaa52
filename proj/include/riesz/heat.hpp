#pragma once

// Heat semigroup P_t = exp(t Laplacian) on a product of cyclic groups.

#include <cstddef>

#include "riesz/lattice.hpp"
#include "riesz/operators.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

/// Caches the spectrum of a base function; evaluate(t) returns P_t f.
class HeatExtension {
public:
    explicit HeatExtension(const LatticeFunction& base);

    const LatticeFunction& base() const noexcept { return base_; }
    const Spectrum& spectrum() const noexcept { return spectrum_; }

    /// Throws InvalidArgument for negative t. evaluate(0) returns base() exactly.
    LatticeFunction evaluate(double t) const;

private:
    LatticeFunction base_;
    Spectrum spectrum_;
    std::vector<double> eigen_;  // 4 sum_i sin^2(pi xi_i/m_i)
};

LatticeFunction heat_extend(const LatticeFunction& f, double t);

/// K(., t) = P_t delta_0. Throws BoundViolation if an entry is below -1e-13.
LatticeFunction heat_kernel(const GroupSpec& g, double t);

/// Classical RK4 on u' = laplacian_spatial(u), u(0) = f, with `steps` equal steps to t.
LatticeFunction heat_ode_oracle(const LatticeFunction& f, double t, std::size_t steps);

/// lambda_1 = 4 min_{xi != 0} sum_i sin^2(pi xi_i / m_i) = 4 min_i sin^2(pi / m_i).
double spectral_gap(const GroupSpec& g);

} // namespace riesz
