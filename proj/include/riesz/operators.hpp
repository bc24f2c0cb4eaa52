#pragma once

// Discrete derivatives, Laplacian and second-order Riesz transforms on a
// product of cyclic groups, in spatial (stencil) and spectral (multiplier) form.
//
// Multipliers, with s_j(xi) = sin(pi xi_j / m_j):
//   d/dx_j, right:  exp(2 pi i xi_j/m_j) - 1      =  2i exp(+pi i xi_j/m_j) s_j
//   d/dx_j, left:   1 - exp(-2 pi i xi_j/m_j)     =  2i exp(-pi i xi_j/m_j) s_j
//   Laplacian:      -4 sum_i s_i^2
//   R_j^2:          -4 s_j^2 / (4 sum_i s_i^2),  and 0 at xi = 0

#include <span>
#include <vector>

#include "riesz/lattice.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

enum class Side { Right, Left };

class MultiplierSpec {
public:
    MultiplierSpec() = default;
    MultiplierSpec(GroupSpec g, std::vector<Complex> symbol);

    const GroupSpec& group() const noexcept { return group_; }
    std::span<const Complex> symbol() const noexcept { return symbol_; }
    const Complex& operator[](std::size_t i) const { return symbol_[i]; }
    std::size_t size() const noexcept { return symbol_.size(); }

    /// Pointwise product of two symbols (composition of the operators).
    friend MultiplierSpec operator*(const MultiplierSpec& a, const MultiplierSpec& b);
    friend MultiplierSpec operator*(Complex c, const MultiplierSpec& a);
    friend MultiplierSpec operator+(const MultiplierSpec& a, const MultiplierSpec& b);

    MultiplierSpec adjoint() const;

private:
    GroupSpec group_;
    std::vector<Complex> symbol_;
};

// Coefficients alpha of R_alpha^2 = sum_i alpha_i R_i^2, each |alpha_i| <= 1.
class CoefficientVector {
public:
    CoefficientVector() = default;
    /// Throws InvalidArgument if some |alpha_i| > 1.
    explicit CoefficientVector(std::vector<Complex> alphas);

    std::size_t size() const noexcept { return alphas_.size(); }
    const Complex& operator[](std::size_t i) const { return alphas_[i]; }
    std::span<const Complex> values() const noexcept { return alphas_; }
    bool is_real() const noexcept;

    static CoefficientVector ones(std::size_t n);
    static CoefficientVector zeros(std::size_t n);
    static CoefficientVector unit(std::size_t n, std::size_t axis);

private:
    std::vector<Complex> alphas_;
};

// Spatial forms
LatticeFunction partial_spatial(const LatticeFunction& f, std::size_t axis, Side side);
LatticeFunction laplacian_spatial(const LatticeFunction& f);

// Symbols
MultiplierSpec derivative_symbol(const GroupSpec& g, std::size_t axis, Side side);
MultiplierSpec laplacian_symbol(const GroupSpec& g);
MultiplierSpec riesz2_symbol(const GroupSpec& g, std::size_t axis);
MultiplierSpec identity_symbol(const GroupSpec& g);

/// Fused symbol sum_i alpha_i R_i^2 (one array, one DFT pair when applied).
MultiplierSpec second_riesz_symbol(const GroupSpec& g, const CoefficientVector& alpha);

void apply_multiplier_in_place(Spectrum& s, const MultiplierSpec& ms);
LatticeFunction apply_multiplier(const LatticeFunction& f, const MultiplierSpec& ms);
LatticeFunction apply_second_riesz(const LatticeFunction& f, const CoefficientVector& alpha);

struct TwoNorm {
    double norm = 0.0;
    LatticePoint argmax;  // lowest lexicographic frequency attaining the max
};

/// Exact L^2 operator norm of R_alpha^2: max over frequencies of |symbol|.
TwoNorm operator_two_norm(const CoefficientVector& alpha, const GroupSpec& g);

/// 4 sum_i sin^2(pi xi_i / m_i) at the flat frequency index.
double laplacian_eigenvalue(const GroupSpec& g, std::size_t freq_index);

} // namespace riesz
