#include "riesz/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "riesz/error.hpp"
#include "riesz/io.hpp"

namespace riesz {

namespace {

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidArgument("heat time must be finite and >= 0");
    }
}

} // namespace

HeatExtension::HeatExtension(const LatticeFunction& base) : base_(base), spectrum_(dft_forward(base)) {
    const MultiplierSpec lap = laplacian_symbol(base.group());
    eigen_.resize(lap.size());
    for (std::size_t i = 0; i < lap.size(); ++i) eigen_[i] = -lap[i].real();
}

LatticeFunction HeatExtension::evaluate(double t) const {
    check_time(t);
    if (t == 0.0) return base_;
    Spectrum s = spectrum_;
    auto c = s.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-t * eigen_[i]);
    return dft_inverse(s);
}

LatticeFunction heat_extend(const LatticeFunction& f, double t) {
    check_time(t);
    if (t == 0.0) return f;
    return HeatExtension(f).evaluate(t);
}

LatticeFunction heat_kernel(const GroupSpec& g, double t) {
    LatticeFunction k = heat_extend(delta_at(g, origin(g)), t);
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i].real() < -1e-13) {
            throw BoundViolation("heat kernel entry " + io::format_double(k[i].real()) + " is negative");
        }
    }
    return k;
}

LatticeFunction heat_ode_oracle(const LatticeFunction& f, double t, std::size_t steps) {
    check_time(t);
    if (steps == 0) throw InvalidArgument("heat_ode_oracle needs at least one step");
    if (t == 0.0) return f;
    const double h = t / static_cast<double>(steps);
    const GroupSpec& g = f.group();
    LatticeFunction u = f;
    for (std::size_t s = 0; s < steps; ++s) {
        const LatticeFunction k1 = laplacian_spatial(u);
        LatticeFunction tmp = u;
        for (std::size_t i = 0; i < g.size(); ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        const LatticeFunction k2 = laplacian_spatial(tmp);
        for (std::size_t i = 0; i < g.size(); ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        const LatticeFunction k3 = laplacian_spatial(tmp);
        for (std::size_t i = 0; i < g.size(); ++i) tmp[i] = u[i] + h * k3[i];
        const LatticeFunction k4 = laplacian_spatial(tmp);
        for (std::size_t i = 0; i < g.size(); ++i) u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return u;
}

double spectral_gap(const GroupSpec& g) {
    const std::size_t m = *std::max_element(g.orders().begin(), g.orders().end());
    const double s = std::sin(std::numbers::pi / static_cast<double>(m));
    return 4.0 * s * s;
}

} // namespace riesz
