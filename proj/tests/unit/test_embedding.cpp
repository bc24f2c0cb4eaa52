#include <doctest.h>

#include <cmath>
#include <random>

#include "riesz/embedding.hpp"
#include "riesz/error.hpp"
#include "riesz/heat.hpp"

using namespace riesz;

namespace {

// log((1 + e^-2)/2) and beta_2, evaluated with 40-digit arithmetic and frozen
constexpr double kLogTerm = -0.56621916951697281297;
constexpr double kBeta2 = 0.0090758899327819107121;

} // namespace

TEST_CASE("inner product") {
    const GroupSpec g = make_group({5, 3});
    const LatticeFunction d = delta_at(g, origin(g));
    CHECK(inner(d, d) == Complex(1.0));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const LatticeFunction f = random_function(g, s, false), h = random_function(g, s + 50, false);
        CHECK(std::abs(inner(f, h) - std::conj(inner(h, f))) <= 1e-13);
        const Complex ff = inner(f, f);
        CHECK(ff.real() >= 0.0);
        CHECK(std::abs(ff.imag()) <= 1e-14);
        CHECK(std::abs(ff.real() - std::pow(lp_norm(f, 2.0), 2)) <= 1e-12 * ff.real());
    }
    CHECK_THROWS_AS(inner(d, LatticeFunction(make_group({15}))), GroupMismatch);
}

TEST_CASE("lp norms: delta, Hoelder, sup bound") {
    const GroupSpec g = make_group({6, 7});
    const LatticeFunction d = delta_at(g, point_at(g, 11));
    for (double p : {1.0, 1.5, 2.0, 3.0, 10.0, double(INFINITY)}) CHECK(std::abs(lp_norm(d, p) - 1.0) <= 1e-15);
    CHECK_THROWS_AS(lp_norm(d, 0.5), InvalidArgument);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pdist(1.05, 8.0);
    for (std::uint64_t s = 0; s < 100; ++s) {
        const LatticeFunction f = random_function(g, 2 * s, false), h = random_function(g, 2 * s + 1, false);
        const ExponentPair e = make_exponent_pair(pdist(rng));
        const double scale = lp_norm(f, e.p) * lp_norm(h, e.q);
        CHECK(std::abs(inner(f, h)) <= scale + 1e-9 * scale);
        CHECK(lp_norm(f, INFINITY) <= lp_norm(f, e.p) * (1.0 + 1e-12));
    }
}

TEST_CASE("exponent pairs and p* - 1") {
    CHECK(p_star_minus_one(2.0) == 1.0);
    CHECK(p_star_minus_one(4.0) == 3.0);
    CHECK(std::abs(p_star_minus_one(4.0 / 3.0) - 3.0) <= 1e-12);
    const ExponentPair e = make_exponent_pair(3.0);
    CHECK(std::abs(1.0 / e.p + 1.0 / e.q - 1.0) <= 1e-14);
    CHECK(e.p_star() == 3.0);
    CHECK(make_exponent_pair(1.25).p_star() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK_THROWS_AS(make_exponent_pair(1.0), InvalidArgument);
    CHECK_THROWS_AS(make_exponent_pair(INFINITY), InvalidArgument);
}

TEST_CASE("Choi C_{0,1,p} three-term expansion") {
    const ChoiExpansion c = choi_c01_approx(4.0);
    CHECK(std::abs(c.beta2 - kBeta2) <= 1e-12);
    CHECK(std::abs(c.log_term - kLogTerm) <= 1e-15);
    CHECK(std::abs(c.value - 1.7191593877247090712) <= 1e-12);
    for (double p : {4.0, 6.0, 10.0}) CHECK(choi_c01_approx(p).value < p_star_minus_one(p));
    CHECK(std::abs(choi_c01_approx(1000.0).value - 500.0 - 0.5 * kLogTerm) <= 1e-3);
}

TEST_CASE("representation formula matches the multiplier pairing") {
    const QuadratureSpec q;
    for (const GroupSpec& g : {make_group({8, 8}), make_group({5}), make_group({2, 3, 4})}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const LatticeFunction f = random_function(g, 2 * s, true), h = random_function(g, 2 * s + 1, true);
            for (std::size_t axis = 0; axis < g.dims(); ++axis) {
                const Complex exact = inner(f, apply_second_riesz(h, CoefficientVector::unit(g.dims(), axis)));
                CHECK(std::abs(representation_pairing(f, h, axis, q) - exact) <= 1e-8);
                CHECK(std::abs(spectral_pairing(f, h, axis) - exact) <= 1e-12);
            }
        }
    }
}

TEST_CASE("representation formula: mean removal and small exact cases") {
    const QuadratureSpec q;
    const GroupSpec g = make_group({6, 4});
    const LatticeFunction f = random_function(g, 1, false);
    const PairingResult r = representation_pairing_detailed(f, constant_function(g, Complex(2.0, 1.0)), 0, q);
    CHECK(r.mean_removed);
    CHECK(std::abs(r.value) <= 1e-15);

    // N = 1, m = 4: R^2 = -(I - mean), so (f, R^2 f) = -|delta_0 - 1/4|^2 = -3/4
    const GroupSpec z4 = make_group({4});
    const LatticeFunction d = remove_mean(delta_at(z4, origin(z4)));
    CHECK(std::abs(representation_pairing(d, d, 0, q) - Complex(-0.75)) <= 1e-10);

    // a g with nonzero mean gives the same value as its centred version
    const LatticeFunction h = random_function(g, 2, false);
    CHECK(std::abs(representation_pairing(f, h, 1, q) - spectral_pairing(f, h, 1)) <= 1e-8);
    CHECK_THROWS_AS(representation_pairing(f, h, 2, q), InvalidArgument);
}

TEST_CASE("right and left gradient pairings agree on the whole group") {
    const GroupSpec g = make_group({7, 4});
    for (std::uint64_t s = 0; s < 10; ++s) {
        const LatticeFunction f = heat_extend(random_function(g, s, false), 0.3);
        const LatticeFunction h = heat_extend(random_function(g, s + 20, false), 0.3);
        for (std::size_t a = 0; a < 2; ++a) {
            const LatticeFunction fp = partial_spatial(f, a, Side::Right), hp = partial_spatial(h, a, Side::Right);
            const LatticeFunction fm = partial_spatial(f, a, Side::Left), hm = partial_spatial(h, a, Side::Left);
            CHECK(std::abs(inner(fp, hp) - inner(fm, hm)) <= 1e-12);
            Complex plain_p{}, plain_m{};
            for (std::size_t i = 0; i < g.size(); ++i) {
                plain_p += fp[i] * hp[i];
                plain_m += fm[i] * hm[i];
            }
            CHECK(std::abs(plain_p - plain_m) <= 1e-12);
        }
    }
}

TEST_CASE("bilinear embedding: zero input, random pairs, domination") {
    const QuadratureSpec q;
    const GroupSpec g = make_group({8, 8});
    const LatticeFunction zero(g);
    const EmbeddingReport z = bilinear_embedding_check(zero, zero, make_exponent_pair(3.0), q);
    CHECK(z.lhs == 0.0);
    CHECK(z.ratio == 0.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const LatticeFunction f = random_function(g, 2 * s, false), h = random_function(g, 2 * s + 1, false);
        for (double p : {1.5, 2.0, 3.0, 4.0}) {
            const EmbeddingReport r = bilinear_embedding_check(f, h, make_exponent_pair(p), q);
            CHECK(r.ratio <= 1.0 + 1e-7);
            CHECK(std::abs(r.ratio - r.lhs / (r.rhs_constant * r.rhs_norms)) <= 1e-15);
            CHECK(r.quadrature_tail <= q.tail_tolerance);
        }
        // |sum_i alpha_i (f, R_i^2 h)| <= bilinear lhs whenever |alpha_i| <= 1
        const EmbeddingReport r = bilinear_embedding_check(f, h, make_exponent_pair(2.0), q);
        Complex combo{};
        for (std::size_t a = 0; a < 2; ++a) {
            const Complex alpha = std::polar(std::abs(unit(rng)), M_PI * unit(rng));
            combo += alpha * representation_pairing(f, h, a, q);
        }
        CHECK(std::abs(combo) <= r.lhs + 1e-9 * r.lhs);
    }

    const GroupSpec z4 = make_group({4});
    const LatticeFunction f = random_real_function(z4, 7, true);
    const EmbeddingReport self = bilinear_embedding_check(f, f, make_exponent_pair(2.0), q);
    CHECK(self.lhs >= std::pow(lp_norm(f, 2.0), 2) - 1e-9);
}

TEST_CASE("Choi embedding parts") {
    const QuadratureSpec q;
    const GroupSpec g = make_group({8, 8});
    for (std::uint64_t s = 0; s < 10; ++s) {
        const LatticeFunction f = random_real_function(g, 2 * s, false), h = random_real_function(g, 2 * s + 1, false);
        for (double p : {2.0, 4.0}) {
            const ExponentPair e = make_exponent_pair(p);
            const ChoiReport plus = choi_embedding_check(f, h, e, PartSign::Positive, q);
            const ChoiReport minus = choi_embedding_check(f, h, e, PartSign::Negative, q);
            const EmbeddingReport abs = bilinear_embedding_check(f, h, e, q);
            CHECK(std::abs(plus.rigorous.lhs + minus.rigorous.lhs - abs.lhs) <= 1e-9);
            CHECK(plus.rigorous.ratio <= 1.0 + 1e-7);
            CHECK(minus.rigorous.ratio <= 1.0 + 1e-7);
            CHECK(plus.rigorous.rhs_constant == p_star_minus_one(e));
            CHECK(std::abs(plus.approximate.rhs_constant - choi_c01_approx(p).value) <= 1e-15);
        }
        const ChoiReport same = choi_embedding_check(f, f, make_exponent_pair(4.0), PartSign::Negative, q);
        CHECK(same.rigorous.lhs <= 1e-10);
    }
    const LatticeFunction c = random_function(g, 1, false);
    CHECK_THROWS_AS(choi_embedding_check(c, c, make_exponent_pair(2.0), PartSign::Positive, q), InvalidArgument);
}

TEST_CASE("embedding batches are deterministic and ordered") {
    const QuadratureSpec q;
    const GroupSpec g = make_group({4, 4});
    const auto a = embedding_batch(g, {2.0, 3.0}, 3, 99, EmbeddingMode::Absolute, q);
    const auto b = embedding_batch(g, {2.0, 3.0}, 3, 99, EmbeddingMode::Absolute, q);
    REQUIRE(a.size() == 6);
    CHECK(batch_csv(a) == batch_csv(b));
    CHECK(a[0].trial == 0);
    CHECK(a[1].p == 3.0);
    CHECK(a[5].trial == 2);
    CHECK(a[0].report.lhs == a[1].report.lhs);

    const auto c = embedding_batch(g, {4.0}, 2, 1, EmbeddingMode::ChoiPositive, q);
    CHECK(std::abs(c[0].choi_reference - choi_c01_approx(4.0).value) <= 1e-15);
    CHECK(batch_csv(c).rfind("trial,p,lhs,rhs_constant,rhs_norms,ratio,quadrature_tail,choi_reference\n", 0) == 0);
}

TEST_CASE("report JSON carries the five fields and quadrature metadata") {
    const QuadratureSpec q;
    const GroupSpec g = make_group({4});
    const LatticeFunction f = random_function(g, 1, false);
    const std::string js = to_json(bilinear_embedding_check(f, f, make_exponent_pair(2.0), q));
    for (const char* key : {"\"lhs\"", "\"rhs_constant\"", "\"rhs_norms\"", "\"ratio\"", "\"quadrature_tail\"",
                            "\"t_max\"", "\"panels\"", "\"nodes_per_panel\"", "\"tail_tolerance\""}) {
        CHECK(js.find(key) != std::string::npos);
    }
}

TEST_CASE("all-axes pairing agrees with the per-axis one") {
    const QuadratureSpec q;
    const GroupSpec g = make_group({4, 3, 5});
    const LatticeFunction f = random_function(g, 4, false), h = random_function(g, 5, false);
    const std::vector<Complex> all = representation_pairings(f, h, q);
    REQUIRE(all.size() == 3);
    for (std::size_t a = 0; a < 3; ++a) CHECK(all[a] == representation_pairing(f, h, a, q));
}
