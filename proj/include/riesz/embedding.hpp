#pragma once

// Pairings and L^p norms on the group, the heat-flow representation of
// (f, R_j^2 g), and numerical checks of the bilinear embeddings
//
//   2 sum_i int_0^inf sum_n |d_i f~| |d_i g~| dt      <= (p*-1) |f|_p |g|_q
//   2 sum_i int_0^inf sum_n [d_i f~ d_i g~]_{+/-} dt  <= C_p |f|_p |g|_q   (real f, g)
//
// where f~ = P_t f is the heat extension and d_i the right difference along axis i.

#include <cstdint>
#include <string>
#include <vector>

#include "riesz/lattice.hpp"
#include "riesz/operators.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

struct ExponentPair {
    double p = 2.0;
    double q = 2.0;

    double p_star() const noexcept { return p > q ? p : q; }
};

/// Throws InvalidArgument unless 1 < p < inf.
ExponentPair make_exponent_pair(double p);

/// max(p - 1, 1/(p - 1)).
double p_star_minus_one(const ExponentPair& e);
double p_star_minus_one(double p);

/// sum_n f(n) conj(g(n)).
Complex inner(const LatticeFunction& f, const LatticeFunction& g);

/// Counting-measure norm. p = +inf gives the max. Throws InvalidArgument for p < 1.
double lp_norm(const LatticeFunction& f, double p);

struct ChoiExpansion {
    double value = 0.0;     // p/2 + log_term/2 + beta2/p
    double beta2 = 0.0;
    double log_term = 0.0;  // log((1 + e^-2) / 2)
};

/// Three-term large-p expansion of the Choi constant C_{0,1,p}. Reference value
/// only: the omitted terms are unknown, so this is never used as a bound.
/// Logs a warning for p < 2.
ChoiExpansion choi_c01_approx(double p);

// ---- representation formula ------------------------------------------------

struct PairingResult {
    Complex value;
    double t_max = 0.0;
    double tail_bound = 0.0;
    bool mean_removed = false;
};

/// -2 int_0^inf sum_n d_axis f~(n,t) conj(d_axis g~(n,t)) dt, evaluated by time
/// quadrature of spatial differences of the heat extensions. The mean of g is
/// removed first (logged at info level).
PairingResult representation_pairing_detailed(const LatticeFunction& f, const LatticeFunction& g,
                                              std::size_t axis, const QuadratureSpec& q);
Complex representation_pairing(const LatticeFunction& f, const LatticeFunction& g, std::size_t axis,
                               const QuadratureSpec& q);

/// Every axis from a single time integration.
std::vector<Complex> representation_pairings(const LatticeFunction& f, const LatticeFunction& g,
                                             const QuadratureSpec& q);

/// (f, R_axis^2 g) through the exact multiplier.
Complex spectral_pairing(const LatticeFunction& f, const LatticeFunction& g, std::size_t axis);

// ---- bilinear embeddings ---------------------------------------------------

struct EmbeddingReport {
    double lhs = 0.0;
    double rhs_constant = 0.0;
    double rhs_norms = 0.0;
    double ratio = 0.0;
    double quadrature_tail = 0.0;

    // quadrature metadata
    double t_max = 0.0;
    std::size_t panels = 0;
    std::size_t nodes_per_panel = 0;
    double tail_tolerance = 0.0;
};

// Time integrals of the pointwise gradient products, per axis, times 2.
struct GradientIntegrals {
    std::vector<double> abs;       // 2 int sum |d f~| |d g~|
    std::vector<double> positive;  // 2 int sum [Re(d f~ conj d g~)]_+
    std::vector<double> negative;  // 2 int sum [Re(d f~ conj d g~)]_-
    std::vector<Complex> signed_;  // 2 int sum d f~ conj(d g~)
    double t_max = 0.0;
    double tail_bound = 0.0;

    double abs_total() const;
    double positive_total() const;
    double negative_total() const;
};

GradientIntegrals gradient_integrals(const LatticeFunction& f, const LatticeFunction& g, const QuadratureSpec& q);

/// Builds a report from an already integrated lhs.
EmbeddingReport make_report(double lhs, double rhs_constant, double rhs_norms, const GradientIntegrals& gi,
                            const QuadratureSpec& q);

EmbeddingReport bilinear_embedding_check(const LatticeFunction& f, const LatticeFunction& g, const ExponentPair& e,
                                         const QuadratureSpec& q);

enum class PartSign { Positive, Negative };

struct ChoiReport {
    EmbeddingReport approximate;  // against the three-term C_{0,1,p} (reference, not a bound)
    EmbeddingReport rigorous;     // against p* - 1
};

/// Real-valued inputs only (InvalidArgument otherwise).
ChoiReport choi_embedding_check(const LatticeFunction& f, const LatticeFunction& g, const ExponentPair& e,
                                PartSign sign, const QuadratureSpec& q);

std::string to_json(const EmbeddingReport& r);

// ---- batches ---------------------------------------------------------------

enum class EmbeddingMode { Absolute, ChoiPositive, ChoiNegative };

struct BatchRow {
    std::size_t trial = 0;
    double p = 0.0;
    EmbeddingReport report;  // gated against p* - 1
    double choi_reference = 0.0;  // C_{0,1,p} expansion, Choi modes only
};

/// Seeded random pairs (complex for Absolute, real for the Choi modes), every
/// exponent checked against the same integrated lhs. Rows ordered by (trial, p).
std::vector<BatchRow> embedding_batch(const GroupSpec& g, const std::vector<double>& ps, std::size_t trials,
                                      std::uint64_t seed, EmbeddingMode mode, const QuadratureSpec& q);

std::string batch_csv(const std::vector<BatchRow>& rows);

} // namespace riesz
