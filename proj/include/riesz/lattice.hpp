#pragma once

// Finite abelian groups Z/m_1Z x ... x Z/m_NZ and dense complex functions on them.
//
// Storage is row-major: the last axis varies fastest. Index of the point
// (n_0, ..., n_{N-1}) is sum_i n_i * stride_i with stride_{N-1} = 1.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace riesz {

using Complex = std::complex<double>;

class GroupSpec {
public:
    GroupSpec() = default;

    std::size_t dims() const noexcept { return orders_.size(); }
    std::size_t order(std::size_t axis) const { return orders_.at(axis); }
    const std::vector<std::size_t>& orders() const noexcept { return orders_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t stride(std::size_t axis) const { return strides_.at(axis); }
    const std::vector<std::size_t>& strides() const noexcept { return strides_; }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders_ == b.orders_; }

private:
    friend GroupSpec make_group(std::span<const std::size_t> orders);

    std::vector<std::size_t> orders_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

// Largest number of points a group may have (16 bytes per complex value).
inline constexpr std::size_t kMaxGroupSize = std::size_t{1} << 34;

/// Validates the orders (nonempty, every m_i >= 2, product fits in memory).
/// Throws InvalidArgument otherwise.
GroupSpec make_group(std::span<const std::size_t> orders);
GroupSpec make_group(std::initializer_list<std::size_t> orders);

// Point of the group; coordinates are always reduced modulo the orders.
struct LatticePoint {
    std::vector<std::size_t> coords;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Builds a point from arbitrary integer coordinates, reducing each modulo its order.
LatticePoint make_point(const GroupSpec& g, std::span<const std::int64_t> coords);
LatticePoint origin(const GroupSpec& g);

std::size_t index_of(const GroupSpec& g, const LatticePoint& p);
LatticePoint point_at(const GroupSpec& g, std::size_t index);

enum class Step : int { Forward = 1, Backward = -1 };

/// Moves `p` by +-e_axis with wraparound.
LatticePoint shift(const LatticePoint& p, std::size_t axis, Step step, const GroupSpec& g);

/// Index of the neighbour of `index` along `axis`, without materializing coordinates.
std::size_t neighbour_index(const GroupSpec& g, std::size_t index, std::size_t axis, Step step);

class LatticeFunction {
public:
    LatticeFunction() = default;
    explicit LatticeFunction(GroupSpec g);
    LatticeFunction(GroupSpec g, std::vector<Complex> values);

    const GroupSpec& group() const noexcept { return group_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex& operator[](std::size_t i) { return values_[i]; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    Complex& at(const LatticePoint& p) { return values_[index_of(group_, p)]; }
    const Complex& at(const LatticePoint& p) const { return values_[index_of(group_, p)]; }

    std::span<Complex> values() noexcept { return values_; }
    std::span<const Complex> values() const noexcept { return values_; }

    bool all_finite() const noexcept;
    bool is_real(double tol = 0.0) const noexcept;
    Complex sum() const noexcept;
    Complex mean() const noexcept { return sum() / static_cast<double>(values_.size()); }

    LatticeFunction& operator+=(const LatticeFunction& other);
    LatticeFunction& operator-=(const LatticeFunction& other);
    LatticeFunction& operator*=(Complex c) noexcept;

    friend LatticeFunction operator+(LatticeFunction a, const LatticeFunction& b) { return a += b; }
    friend LatticeFunction operator-(LatticeFunction a, const LatticeFunction& b) { return a -= b; }
    friend LatticeFunction operator*(Complex c, LatticeFunction a) { return a *= c; }

private:
    GroupSpec group_;
    std::vector<Complex> values_;
};

LatticeFunction delta_at(const GroupSpec& g, const LatticePoint& p);
LatticeFunction constant_function(const GroupSpec& g, Complex c);

/// i.i.d. complex standard normal entries (E|z|^2 = 1) from a seeded mt19937_64.
/// With zero_mean the average is subtracted so the zero Fourier coefficient vanishes.
LatticeFunction random_function(const GroupSpec& g, std::uint64_t seed, bool zero_mean);

/// Same, real-valued (standard normal).
LatticeFunction random_real_function(const GroupSpec& g, std::uint64_t seed, bool zero_mean);

/// Independent seed for sub-stream `stream` of `seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// f(n - p): translation of f by the point p.
LatticeFunction translate(const LatticeFunction& f, const LatticePoint& p);

LatticeFunction remove_mean(LatticeFunction f);

/// Largest pointwise |f - g|. Throws GroupMismatch.
double max_abs_diff(const LatticeFunction& f, const LatticeFunction& g);

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* context);

} // namespace riesz
