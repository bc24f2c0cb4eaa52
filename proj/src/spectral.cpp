#include "riesz/spectral.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "riesz/error.hpp"

namespace riesz {

namespace {

// Prime factors above this go through Bluestein.
constexpr std::size_t kMaxDirectRadix = 31;

Complex unit_root(std::size_t k, std::size_t n) {
    // exp(-2 pi i k / n); evaluated from the reduced angle to keep ulp accuracy
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> f;
    while (n % 4 == 0) {
        f.push_back(4);
        n /= 4;
    }
    for (std::size_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            f.push_back(p);
            n /= p;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

const FftPlan& cached_plan(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

} // namespace

Spectrum::Spectrum(GroupSpec g, std::vector<Complex> coeffs) : group_(std::move(g)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != group_.size()) {
        throw InvalidArgument("spectrum length does not match group size");
    }
}

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw InvalidArgument("FFT length must be positive");
    factors_ = factorize(n);
    bool direct = true;
    for (std::size_t p : factors_) {
        if (p > kMaxDirectRadix) direct = false;
    }
    if (direct) {
        twiddle_.resize(n);
        for (std::size_t k = 0; k < n; ++k) twiddle_[k] = unit_root(k, n);
        return;
    }
    factors_.clear();
    const std::size_t two_n = 2 * n;
    chirp_.resize(n);
    std::size_t k2 = 0;  // k^2 mod 2n, updated by (k+1)^2 = k^2 + 2k + 1
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) k2 = (k2 + 2 * k - 1) % two_n;
        const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    const std::size_t conv = next_pow2(2 * n - 1);
    conv_plan_ = std::make_unique<FftPlan>(conv);
    chirp_kernel_.assign(conv, Complex{});
    chirp_kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        chirp_kernel_[k] = std::conj(chirp_[k]);
        chirp_kernel_[conv - k] = std::conj(chirp_[k]);
    }
    conv_plan_->forward(chirp_kernel_);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<Complex> data) const {
    if (data.size() != n_) throw InvalidArgument("FFT input length mismatch");
    if (n_ == 1) return;
    if (conv_plan_) {
        bluestein(data);
        return;
    }
    std::vector<Complex> out(n_);
    mixed_radix(data.data(), out.data());
    std::copy(out.begin(), out.end(), data.begin());
}

void FftPlan::mixed_radix(const Complex* in, Complex* out) const { recurse(out, in, n_, 1, 0); }

void FftPlan::recurse(Complex* out, const Complex* in, std::size_t n, std::size_t in_stride,
                      std::size_t level) const {
    const std::size_t p = factors_[level];
    const std::size_t m = n / p;
    if (m == 1) {
        for (std::size_t r = 0; r < p; ++r) out[r] = in[r * in_stride];
    } else {
        for (std::size_t r = 0; r < p; ++r) recurse(out + r * m, in + r * in_stride, m, in_stride * p, level + 1);
    }

    const std::size_t tw_step = n_ / n;
    if (p == 2) {
        for (std::size_t k = 0; k < m; ++k) {
            const Complex a = out[k];
            const Complex b = out[k + m] * twiddle_[k * tw_step];
            out[k] = a + b;
            out[k + m] = a - b;
        }
        return;
    }
    if (p == 4) {
        for (std::size_t k = 0; k < m; ++k) {
            const Complex y0 = out[k];
            const Complex y1 = out[k + m] * twiddle_[k * tw_step];
            const Complex y2 = out[k + 2 * m] * twiddle_[2 * k * tw_step];
            const Complex y3 = out[k + 3 * m] * twiddle_[3 * k * tw_step];
            const Complex s02 = y0 + y2, d02 = y0 - y2;
            const Complex s13 = y1 + y3, d13 = y1 - y3;
            const Complex d13_rot(d13.imag(), -d13.real());  // -i * d13
            out[k] = s02 + s13;
            out[k + m] = d02 + d13_rot;
            out[k + 2 * m] = s02 - s13;
            out[k + 3 * m] = d02 - d13_rot;
        }
        return;
    }

    const std::size_t root_step = n_ / p;
    Complex y[kMaxDirectRadix];
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t r = 0; r < p; ++r) y[r] = out[r * m + k] * twiddle_[r * k * tw_step];
        for (std::size_t q = 0; q < p; ++q) {
            Complex acc = y[0];
            for (std::size_t r = 1; r < p; ++r) acc += y[r] * twiddle_[((r * q) % p) * root_step];
            out[q * m + k] = acc;
        }
    }
}

void FftPlan::bluestein(std::span<Complex> data) const {
    const std::size_t conv = conv_plan_->size();
    std::vector<Complex> a(conv);
    for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
    conv_plan_->forward(a);
    for (std::size_t k = 0; k < conv; ++k) a[k] = std::conj(a[k] * chirp_kernel_[k]);
    conv_plan_->forward(a);
    const double scale = 1.0 / static_cast<double>(conv);
    for (std::size_t k = 0; k < n_; ++k) data[k] = chirp_[k] * std::conj(a[k]) * scale;
}

void transform_axes(const GroupSpec& g, std::span<Complex> data, int sign) {
    if (data.size() != g.size()) throw InvalidArgument("transform_axes: length mismatch");
    if (sign > 0) {
        for (auto& v : data) v = std::conj(v);
    }
    std::vector<Complex> line;
    for (std::size_t axis = 0; axis < g.dims(); ++axis) {
        const std::size_t m = g.order(axis);
        const std::size_t stride = g.stride(axis);
        const std::size_t block = stride * m;
        const FftPlan& plan = cached_plan(m);
        line.resize(m);
        for (std::size_t base = 0; base < g.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                Complex* start = data.data() + base + off;
                for (std::size_t k = 0; k < m; ++k) line[k] = start[k * stride];
                plan.forward(line);
                for (std::size_t k = 0; k < m; ++k) start[k * stride] = line[k];
            }
        }
    }
    if (sign > 0) {
        for (auto& v : data) v = std::conj(v);
    }
}

Spectrum dft_forward(const LatticeFunction& f) {
    std::vector<Complex> c(f.values().begin(), f.values().end());
    transform_axes(f.group(), c, -1);
    return Spectrum(f.group(), std::move(c));
}

LatticeFunction dft_inverse(const Spectrum& s) {
    std::vector<Complex> v(s.coeffs().begin(), s.coeffs().end());
    transform_axes(s.group(), v, +1);
    const double scale = 1.0 / static_cast<double>(s.size());
    for (auto& x : v) x *= scale;
    return LatticeFunction(s.group(), std::move(v));
}

double spectral_energy(const Spectrum& s) {
    double e = 0.0;
    for (const auto& c : s.coeffs()) e += std::norm(c);
    return e / static_cast<double>(s.size());
}

} // namespace riesz
