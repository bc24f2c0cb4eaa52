#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "riesz/spectral.hpp"

using namespace riesz;

TEST_CASE("delta and constant transform as expected") {
    const GroupSpec z4 = make_group({4});
    const Spectrum d = dft_forward(delta_at(z4, origin(z4)));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(d[k] - Complex(1.0)) == 0.0);

    const Spectrum c = dft_forward(constant_function(z4, 1.0));
    CHECK(std::abs(c[0] - Complex(4.0)) < 1e-15);
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(c[k]) < 1e-15);

    const LatticeFunction back = dft_inverse(Spectrum(z4, {4.0, 0.0, 0.0, 0.0}));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(back[k] - Complex(1.0)) < 1e-15);

    const LatticeFunction delta = dft_inverse(Spectrum(z4, {1.0, 1.0, 1.0, 1.0}));
    CHECK(max_abs_diff(delta, delta_at(z4, origin(z4))) < 1e-15);
}

TEST_CASE("FftPlan matches the naive DFT for many lengths") {
    // powers of two, mixed radix, small primes, and Bluestein lengths (37, 74, 97)
    for (std::size_t n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 25, 27, 31, 32, 37, 48, 60, 64, 74, 97, 128}) {
        const GroupSpec g = make_group({std::max<std::size_t>(n, 2)});
        const LatticeFunction f = random_function(g, n, false);
        const auto ref = oracle::naive_dft(f);
        const Spectrum s = dft_forward(f);
        CHECK_MESSAGE(oracle::max_abs(ref, s.coeffs()) <= 1e-10, "n = " << n);
    }
}

TEST_CASE("forward transform matches naive DFT on (Z/8Z)^2 and mixed groups") {
    for (const auto& orders : {std::vector<std::size_t>{8, 8}, {3, 5, 4}, {2, 16}, {37, 3}}) {
        const GroupSpec g = make_group(orders);
        const LatticeFunction f = random_function(g, 11, false);
        const auto ref = oracle::naive_dft(f);
        CHECK(oracle::max_abs(ref, dft_forward(f).coeffs()) <= 1e-10);
    }
}

TEST_CASE("round trip, linearity, Parseval, conjugate symmetry") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t m = 2 + seed % 63;
        const GroupSpec g = seed % 2 ? make_group({m, 64 - seed % 60}) : make_group({m});
        const LatticeFunction f = random_function(g, seed, false);
        const Spectrum s = dft_forward(f);
        REQUIRE(max_abs_diff(dft_inverse(s), f) <= 1e-12);

        double energy = 0.0;
        for (const auto& v : f.values()) energy += std::norm(v);
        CHECK(std::abs(spectral_energy(s) - energy) <= 1e-12 * energy);
    }

    const GroupSpec g = make_group({6, 10});
    const LatticeFunction f = random_function(g, 1, false);
    const LatticeFunction h = random_function(g, 2, false);
    const Complex a(0.3, -1.2), b(2.0, 0.5);
    const Spectrum lhs = dft_forward(a * f + b * h);
    const Spectrum sf = dft_forward(f), sh = dft_forward(h);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(lhs[i] - (a * sf[i] + b * sh[i])));
    CHECK(err <= 1e-12);

    const LatticeFunction r = random_real_function(g, 3, false);
    const Spectrum sr = dft_forward(r);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const LatticePoint xi = point_at(g, i);
        const std::int64_t neg[] = {-static_cast<std::int64_t>(xi.coords[0]), -static_cast<std::int64_t>(xi.coords[1])};
        CHECK(std::abs(sr.coeffs()[index_of(g, make_point(g, neg))] - std::conj(sr[i])) <= 1e-12);
    }
}

TEST_CASE("translation law") {
    const GroupSpec g = make_group({5, 8});
    const LatticeFunction f = random_function(g, 9, false);
    for (std::size_t j = 0; j < 2; ++j) {
        LatticePoint e = origin(g);
        e.coords[j] = 1;
        const Spectrum moved = dft_forward(translate(f, e));  // f(. - e_j)
        const Spectrum s = dft_forward(f);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double xi = static_cast<double>(point_at(g, i).coords[j]);
            const Complex phase = std::polar(1.0, -2.0 * std::numbers::pi * xi / static_cast<double>(g.order(j)));
            err = std::max(err, std::abs(moved[i] - s[i] * phase));
        }
        CHECK(err <= 1e-12);
    }
}
