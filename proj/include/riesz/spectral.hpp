#pragma once

// Fourier transform on Z/m_1Z x ... x Z/m_NZ.
//
//   forward:  F(xi) = sum_n f(n) exp(-2 pi i sum_j n_j xi_j / m_j)     (unnormalized)
//   inverse:  f(n)  = (1 / prod m_j) sum_xi F(xi) exp(+2 pi i sum_j n_j xi_j / m_j)
//
// Frequencies are stored in natural order 0..m_j-1 with the same row-major
// layout as LatticeFunction.

#include <memory>
#include <span>
#include <vector>

#include "riesz/lattice.hpp"

namespace riesz {

class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(GroupSpec g) : group_(std::move(g)), coeffs_(group_.size()) {}
    Spectrum(GroupSpec g, std::vector<Complex> coeffs);

    const GroupSpec& group() const noexcept { return group_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    Complex& operator[](std::size_t i) { return coeffs_[i]; }
    const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

    std::span<Complex> coeffs() noexcept { return coeffs_; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }

private:
    GroupSpec group_;
    std::vector<Complex> coeffs_;
};

// One-dimensional unnormalized DFT of fixed length, sign -1.
// Mixed radix for lengths whose prime factors are small, Bluestein otherwise.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(FftPlan&&) noexcept;
    FftPlan& operator=(FftPlan&&) noexcept;

    std::size_t size() const noexcept { return n_; }

    /// In-place forward transform of `data` (length must equal size()).
    void forward(std::span<Complex> data) const;

private:
    void mixed_radix(const Complex* in, Complex* out) const;
    void recurse(Complex* out, const Complex* in, std::size_t n, std::size_t in_stride, std::size_t level) const;
    void bluestein(std::span<Complex> data) const;

    std::size_t n_;
    std::vector<std::size_t> factors_;
    std::vector<Complex> twiddle_;  // exp(-2 pi i k / n)

    // Bluestein state
    std::vector<Complex> chirp_;        // exp(-pi i k^2 / n)
    std::vector<Complex> chirp_kernel_; // transformed conj chirp, padded to conv length
    std::unique_ptr<FftPlan> conv_plan_;
};

/// Transform every axis of the row-major array in place. `sign` is -1 (forward) or +1.
void transform_axes(const GroupSpec& g, std::span<Complex> data, int sign);

Spectrum dft_forward(const LatticeFunction& f);
LatticeFunction dft_inverse(const Spectrum& s);

/// Parseval in this normalization: sum |f|^2 = (1/|G|) sum |F|^2. Returns the right side.
double spectral_energy(const Spectrum& s);

} // namespace riesz
