#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the FFT, the multiplier layer or the heat extension.

#include <cmath>
#include <numbers>
#include <vector>

#include "riesz/lattice.hpp"

namespace riesz::oracle {

// O(|G|^2) direct evaluation of sum_n f(n) exp(sign 2 pi i sum_j n_j xi_j / m_j).
inline std::vector<Complex> naive_dft(const LatticeFunction& f, int sign = -1) {
    const GroupSpec& g = f.group();
    std::vector<Complex> out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const LatticePoint xi = point_at(g, k);
        Complex acc{};
        for (std::size_t i = 0; i < g.size(); ++i) {
            const LatticePoint n = point_at(g, i);
            double phase = 0.0;
            for (std::size_t a = 0; a < g.dims(); ++a) {
                // reduce n*xi mod m before scaling to keep the angle small
                const std::size_t r = (n.coords[a] * xi.coords[a]) % g.order(a);
                phase += static_cast<double>(r) / static_cast<double>(g.order(a));
            }
            acc += f[i] * std::polar(1.0, sign * 2.0 * std::numbers::pi * phase);
        }
        out[k] = acc;
    }
    return out;
}

// (K * f)(n) = sum_m K(m) f(n - m), direct double loop.
inline LatticeFunction circular_convolution(const LatticeFunction& k, const LatticeFunction& f) {
    const GroupSpec& g = f.group();
    LatticeFunction out(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        const LatticePoint pn = point_at(g, n);
        Complex acc{};
        for (std::size_t m = 0; m < g.size(); ++m) {
            const LatticePoint pm = point_at(g, m);
            LatticePoint d = pn;
            for (std::size_t a = 0; a < g.dims(); ++a) d.coords[a] = (pn.coords[a] + g.order(a) - pm.coords[a]) % g.order(a);
            acc += k[m] * f.at(d);
        }
        out[n] = acc;
    }
    return out;
}

// Brute-force |sym(xi)| scan: 4 sum_i sin^2 evaluated by hand for every frequency.
inline double riesz_symbol_by_hand(const GroupSpec& g, const LatticePoint& xi, const std::vector<Complex>& alpha) {
    double denom = 0.0;
    Complex num{};
    for (std::size_t a = 0; a < g.dims(); ++a) {
        const double s = std::sin(std::numbers::pi * static_cast<double>(xi.coords[a]) / static_cast<double>(g.order(a)));
        denom += 4.0 * s * s;
        num += alpha[a] * (-4.0 * s * s);
    }
    return denom == 0.0 ? 0.0 : std::abs(num / denom);
}

inline double max_abs(const std::vector<Complex>& a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace riesz::oracle
