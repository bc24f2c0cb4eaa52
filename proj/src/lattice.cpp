#include "riesz/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include "riesz/error.hpp"

namespace riesz {

GroupSpec make_group(std::span<const std::size_t> orders) {
    if (orders.empty()) {
        throw InvalidArgument("group needs at least one axis");
    }
    GroupSpec g;
    g.orders_.assign(orders.begin(), orders.end());
    std::size_t size = 1;
    for (std::size_t m : orders) {
        if (m < 2) {
            throw InvalidArgument("cyclic order must be >= 2, got " + std::to_string(m));
        }
        if (size > kMaxGroupSize / m) {
            throw InvalidArgument("group size overflows the addressable limit");
        }
        size *= m;
    }
    g.size_ = size;
    g.strides_.assign(orders.size(), 1);
    for (std::size_t i = orders.size() - 1; i > 0; --i) {
        g.strides_[i - 1] = g.strides_[i] * orders[i];
    }
    return g;
}

GroupSpec make_group(std::initializer_list<std::size_t> orders) {
    return make_group(std::span<const std::size_t>(orders.begin(), orders.size()));
}

LatticePoint make_point(const GroupSpec& g, std::span<const std::int64_t> coords) {
    if (coords.size() != g.dims()) {
        throw InvalidArgument("point has " + std::to_string(coords.size()) + " coordinates, group has " +
                              std::to_string(g.dims()) + " axes");
    }
    LatticePoint p;
    p.coords.resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto m = static_cast<std::int64_t>(g.order(i));
        auto r = coords[i] % m;
        if (r < 0) r += m;
        p.coords[i] = static_cast<std::size_t>(r);
    }
    return p;
}

LatticePoint origin(const GroupSpec& g) { return LatticePoint{std::vector<std::size_t>(g.dims(), 0)}; }

std::size_t index_of(const GroupSpec& g, const LatticePoint& p) {
    if (p.coords.size() != g.dims()) {
        throw InvalidArgument("point dimension does not match group");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < g.dims(); ++i) {
        if (p.coords[i] >= g.order(i)) {
            throw InvalidArgument("point coordinate out of range on axis " + std::to_string(i));
        }
        idx += p.coords[i] * g.stride(i);
    }
    return idx;
}

LatticePoint point_at(const GroupSpec& g, std::size_t index) {
    if (index >= g.size()) {
        throw InvalidArgument("index out of range");
    }
    LatticePoint p;
    p.coords.resize(g.dims());
    for (std::size_t i = g.dims(); i-- > 0;) {
        p.coords[i] = index % g.order(i);
        index /= g.order(i);
    }
    return p;
}

LatticePoint shift(const LatticePoint& p, std::size_t axis, Step step, const GroupSpec& g) {
    if (axis >= g.dims()) {
        throw InvalidArgument("axis " + std::to_string(axis) + " out of range");
    }
    LatticePoint q = p;
    const std::size_t m = g.order(axis);
    q.coords[axis] = step == Step::Forward ? (p.coords[axis] + 1) % m : (p.coords[axis] + m - 1) % m;
    return q;
}

std::size_t neighbour_index(const GroupSpec& g, std::size_t index, std::size_t axis, Step step) {
    const std::size_t stride = g.stride(axis);
    const std::size_t m = g.order(axis);
    const std::size_t c = (index / stride) % m;
    if (step == Step::Forward) {
        return c + 1 == m ? index - c * stride : index + stride;
    }
    return c == 0 ? index + (m - 1) * stride : index - stride;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* context) {
    if (!(a == b)) {
        throw GroupMismatch(std::string(context) + ": operands live on different groups");
    }
}

LatticeFunction::LatticeFunction(GroupSpec g) : group_(std::move(g)), values_(group_.size()) {}

LatticeFunction::LatticeFunction(GroupSpec g, std::vector<Complex> values)
    : group_(std::move(g)), values_(std::move(values)) {
    if (values_.size() != group_.size()) {
        throw InvalidArgument("value count " + std::to_string(values_.size()) + " does not match group size " +
                              std::to_string(group_.size()));
    }
}

bool LatticeFunction::all_finite() const noexcept {
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

bool LatticeFunction::is_real(double tol) const noexcept {
    for (const auto& v : values_) {
        if (std::abs(v.imag()) > tol) return false;
    }
    return true;
}

Complex LatticeFunction::sum() const noexcept {
    Complex s{};
    for (const auto& v : values_) s += v;
    return s;
}

LatticeFunction& LatticeFunction::operator+=(const LatticeFunction& other) {
    require_same_group(group_, other.group_, "add");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

LatticeFunction& LatticeFunction::operator-=(const LatticeFunction& other) {
    require_same_group(group_, other.group_, "subtract");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

LatticeFunction& LatticeFunction::operator*=(Complex c) noexcept {
    for (auto& v : values_) v *= c;
    return *this;
}

LatticeFunction delta_at(const GroupSpec& g, const LatticePoint& p) {
    LatticeFunction f(g);
    f.at(p) = 1.0;
    return f;
}

LatticeFunction constant_function(const GroupSpec& g, Complex c) {
    return LatticeFunction(g, std::vector<Complex>(g.size(), c));
}

LatticeFunction random_function(const GroupSpec& g, std::uint64_t seed, bool zero_mean) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    LatticeFunction f(g);
    for (auto& v : f.values()) {
        const double re = normal(rng);
        v = Complex(re, normal(rng));
    }
    return zero_mean ? remove_mean(std::move(f)) : f;
}

LatticeFunction random_real_function(const GroupSpec& g, std::uint64_t seed, bool zero_mean) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    LatticeFunction f(g);
    for (auto& v : f.values()) v = normal(rng);
    return zero_mean ? remove_mean(std::move(f)) : f;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

LatticeFunction translate(const LatticeFunction& f, const LatticePoint& p) {
    const GroupSpec& g = f.group();
    LatticeFunction out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        // out(n + p) = f(n)
        LatticePoint n = point_at(g, i);
        for (std::size_t a = 0; a < g.dims(); ++a) n.coords[a] = (n.coords[a] + p.coords.at(a)) % g.order(a);
        out.at(n) = f[i];
    }
    return out;
}

LatticeFunction remove_mean(LatticeFunction f) {
    const Complex mu = f.mean();
    for (auto& v : f.values()) v -= mu;
    return f;
}

double max_abs_diff(const LatticeFunction& f, const LatticeFunction& g) {
    require_same_group(f.group(), g.group(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

} // namespace riesz
