#include "riesz/operators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "riesz/error.hpp"

namespace riesz {

namespace {

void check_axis(const GroupSpec& g, std::size_t axis) {
    if (axis >= g.dims()) {
        throw InvalidArgument("axis " + std::to_string(axis) + " out of range for " + std::to_string(g.dims()) +
                              "-dimensional group");
    }
}

// sin^2(pi k / m) for k = 0..m-1, per axis.
std::vector<std::vector<double>> sin_squared_tables(const GroupSpec& g) {
    std::vector<std::vector<double>> t(g.dims());
    for (std::size_t a = 0; a < g.dims(); ++a) {
        const std::size_t m = g.order(a);
        t[a].resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double s = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
            t[a][k] = s * s;
        }
    }
    return t;
}

// Visits every frequency with its per-axis coordinates, in index order.
template <class Fn>
void for_each_frequency(const GroupSpec& g, Fn&& fn) {
    std::vector<std::size_t> xi(g.dims(), 0);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        fn(idx, std::span<const std::size_t>(xi));
        for (std::size_t a = g.dims(); a-- > 0;) {
            if (++xi[a] < g.order(a)) break;
            xi[a] = 0;
        }
    }
}

} // namespace

MultiplierSpec::MultiplierSpec(GroupSpec g, std::vector<Complex> symbol)
    : group_(std::move(g)), symbol_(std::move(symbol)) {
    if (symbol_.size() != group_.size()) {
        throw InvalidArgument("symbol length does not match group size");
    }
}

MultiplierSpec operator*(const MultiplierSpec& a, const MultiplierSpec& b) {
    require_same_group(a.group(), b.group(), "symbol product");
    std::vector<Complex> s(a.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] * b[i];
    return MultiplierSpec(a.group(), std::move(s));
}

MultiplierSpec operator*(Complex c, const MultiplierSpec& a) {
    std::vector<Complex> s(a.symbol().begin(), a.symbol().end());
    for (auto& v : s) v *= c;
    return MultiplierSpec(a.group(), std::move(s));
}

MultiplierSpec operator+(const MultiplierSpec& a, const MultiplierSpec& b) {
    require_same_group(a.group(), b.group(), "symbol sum");
    std::vector<Complex> s(a.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] + b[i];
    return MultiplierSpec(a.group(), std::move(s));
}

MultiplierSpec MultiplierSpec::adjoint() const {
    std::vector<Complex> s(symbol_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::conj(symbol_[i]);
    return MultiplierSpec(group_, std::move(s));
}

CoefficientVector::CoefficientVector(std::vector<Complex> alphas) : alphas_(std::move(alphas)) {
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
        if (!std::isfinite(alphas_[i].real()) || !std::isfinite(alphas_[i].imag())) {
            throw InvalidArgument("coefficient " + std::to_string(i) + " is not finite");
        }
        // small slack so unit-modulus values built from cos/sin are accepted
        if (std::abs(alphas_[i]) > 1.0 + 1e-12) {
            throw InvalidArgument("coefficient " + std::to_string(i) + " has modulus > 1");
        }
    }
}

bool CoefficientVector::is_real() const noexcept {
    for (const auto& a : alphas_) {
        if (a.imag() != 0.0) return false;
    }
    return true;
}

CoefficientVector CoefficientVector::ones(std::size_t n) { return CoefficientVector(std::vector<Complex>(n, 1.0)); }
CoefficientVector CoefficientVector::zeros(std::size_t n) { return CoefficientVector(std::vector<Complex>(n, 0.0)); }
CoefficientVector CoefficientVector::unit(std::size_t n, std::size_t axis) {
    std::vector<Complex> a(n, 0.0);
    a.at(axis) = 1.0;
    return CoefficientVector(std::move(a));
}

LatticeFunction partial_spatial(const LatticeFunction& f, std::size_t axis, Side side) {
    const GroupSpec& g = f.group();
    check_axis(g, axis);
    LatticeFunction out(g);
    if (side == Side::Right) {
        for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[neighbour_index(g, i, axis, Step::Forward)] - f[i];
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[i] - f[neighbour_index(g, i, axis, Step::Backward)];
    }
    return out;
}

LatticeFunction laplacian_spatial(const LatticeFunction& f) {
    const GroupSpec& g = f.group();
    LatticeFunction out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        Complex acc{};
        for (std::size_t a = 0; a < g.dims(); ++a) {
            acc += f[neighbour_index(g, i, a, Step::Forward)] - 2.0 * f[i] +
                   f[neighbour_index(g, i, a, Step::Backward)];
        }
        out[i] = acc;
    }
    return out;
}

MultiplierSpec derivative_symbol(const GroupSpec& g, std::size_t axis, Side side) {
    check_axis(g, axis);
    const std::size_t m = g.order(axis);
    const double sign = side == Side::Right ? 1.0 : -1.0;
    // 2i exp(+-pi i k/m) sin(pi k/m), evaluated in product form so xi = 0 is exactly 0
    std::vector<Complex> per(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        per[k] = Complex(0.0, 2.0 * std::sin(theta)) * Complex(std::cos(theta), sign * std::sin(theta));
    }
    std::vector<Complex> s(g.size());
    for_each_frequency(g, [&](std::size_t idx, std::span<const std::size_t> xi) { s[idx] = per[xi[axis]]; });
    return MultiplierSpec(g, std::move(s));
}

MultiplierSpec laplacian_symbol(const GroupSpec& g) {
    const auto tab = sin_squared_tables(g);
    std::vector<Complex> s(g.size());
    for_each_frequency(g, [&](std::size_t idx, std::span<const std::size_t> xi) {
        double acc = 0.0;
        for (std::size_t a = 0; a < xi.size(); ++a) acc += tab[a][xi[a]];
        s[idx] = -4.0 * acc;
    });
    return MultiplierSpec(g, std::move(s));
}

double laplacian_eigenvalue(const GroupSpec& g, std::size_t freq_index) {
    const LatticePoint xi = point_at(g, freq_index);
    double acc = 0.0;
    for (std::size_t a = 0; a < g.dims(); ++a) {
        const double s = std::sin(std::numbers::pi * static_cast<double>(xi.coords[a]) / static_cast<double>(g.order(a)));
        acc += s * s;
    }
    return 4.0 * acc;
}

MultiplierSpec riesz2_symbol(const GroupSpec& g, std::size_t axis) {
    check_axis(g, axis);
    return second_riesz_symbol(g, CoefficientVector::unit(g.dims(), axis));
}

MultiplierSpec identity_symbol(const GroupSpec& g) {
    return MultiplierSpec(g, std::vector<Complex>(g.size(), 1.0));
}

MultiplierSpec second_riesz_symbol(const GroupSpec& g, const CoefficientVector& alpha) {
    if (alpha.size() != g.dims()) {
        throw InvalidArgument("coefficient vector has " + std::to_string(alpha.size()) + " entries, group has " +
                              std::to_string(g.dims()) + " axes");
    }
    const auto tab = sin_squared_tables(g);
    std::vector<Complex> s(g.size());
    for_each_frequency(g, [&](std::size_t idx, std::span<const std::size_t> xi) {
        double denom = 0.0;
        Complex num{};
        for (std::size_t a = 0; a < xi.size(); ++a) {
            denom += tab[a][xi[a]];
            num += alpha[a] * tab[a][xi[a]];
        }
        // the 4's cancel; zero frequency is mapped to 0
        s[idx] = denom == 0.0 ? Complex{} : -num / denom;
    });
    return MultiplierSpec(g, std::move(s));
}

void apply_multiplier_in_place(Spectrum& s, const MultiplierSpec& ms) {
    require_same_group(s.group(), ms.group(), "apply_multiplier");
    auto c = s.coeffs();
    const auto sym = ms.symbol();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= sym[i];
}

LatticeFunction apply_multiplier(const LatticeFunction& f, const MultiplierSpec& ms) {
    require_same_group(f.group(), ms.group(), "apply_multiplier");
    Spectrum s = dft_forward(f);
    apply_multiplier_in_place(s, ms);
    return dft_inverse(s);
}

LatticeFunction apply_second_riesz(const LatticeFunction& f, const CoefficientVector& alpha) {
    return apply_multiplier(f, second_riesz_symbol(f.group(), alpha));
}

TwoNorm operator_two_norm(const CoefficientVector& alpha, const GroupSpec& g) {
    const MultiplierSpec ms = second_riesz_symbol(g, alpha);
    TwoNorm best{0.0, origin(g)};
    std::size_t best_idx = 0;
    // index order is lexicographic order, so strict > keeps the lowest argmax
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double v = std::abs(ms[i]);
        if (v > best.norm) {
            best.norm = v;
            best_idx = i;
        }
    }
    best.argmax = point_at(g, best_idx);
    return best;
}

} // namespace riesz
