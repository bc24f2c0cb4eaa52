#include "riesz/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "riesz/error.hpp"
#include "riesz/heat.hpp"
#include "riesz/io.hpp"
#include "riesz/log.hpp"

namespace riesz {

namespace {

ChoiExpansion choi_expansion(double p) {
    const double e2 = std::exp(-2.0);
    const double log_term = std::log((1.0 + e2) / 2.0);
    const double r = e2 / (1.0 + e2);
    ChoiExpansion c;
    c.log_term = log_term;
    c.beta2 = log_term * log_term + 0.5 * log_term - 2.0 * r * r;
    c.value = p / 2.0 + 0.5 * log_term + c.beta2 / p;
    return c;
}

void require_real(const LatticeFunction& f, const char* name) {
    double scale = 0.0;
    for (const auto& v : f.values()) scale = std::max(scale, std::abs(v));
    if (!f.is_real(1e-12 * std::max(scale, 1.0))) {
        throw InvalidArgument(std::string(name) + " must be real-valued for the Choi embedding");
    }
}

} // namespace

ExponentPair make_exponent_pair(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw InvalidArgument("exponent p must satisfy 1 < p < inf, got " + io::format_double(p));
    }
    return ExponentPair{p, p / (p - 1.0)};
}

double p_star_minus_one(const ExponentPair& e) { return p_star_minus_one(e.p); }

double p_star_minus_one(double p) {
    if (!(p > 1.0)) throw InvalidArgument("p* - 1 needs p > 1");
    return std::max(p - 1.0, 1.0 / (p - 1.0));
}

Complex inner(const LatticeFunction& f, const LatticeFunction& g) {
    require_same_group(f.group(), g.group(), "inner");
    Complex acc{};
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
    return acc;
}

double lp_norm(const LatticeFunction& f, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("L^p norm needs p >= 1");
    double mx = 0.0;
    for (const auto& v : f.values()) mx = std::max(mx, std::abs(v));
    if (std::isinf(p) || mx == 0.0) return mx;
    double acc = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values()) acc += std::norm(v / mx);
        return mx * std::sqrt(acc);
    }
    for (const auto& v : f.values()) acc += std::pow(std::abs(v) / mx, p);
    return mx * std::pow(acc, 1.0 / p);
}

ChoiExpansion choi_c01_approx(double p) {
    if (p < 2.0) {
        log_message(LogLevel::Warn, "C_{0,1,p} expansion evaluated at p = " + io::format_double(p) +
                                        " < 2, outside its large-p regime");
    }
    return choi_expansion(p);
}

double GradientIntegrals::abs_total() const { return std::accumulate(abs.begin(), abs.end(), 0.0); }
double GradientIntegrals::positive_total() const { return std::accumulate(positive.begin(), positive.end(), 0.0); }
double GradientIntegrals::negative_total() const { return std::accumulate(negative.begin(), negative.end(), 0.0); }

GradientIntegrals gradient_integrals(const LatticeFunction& f, const LatticeFunction& g, const QuadratureSpec& q) {
    require_same_group(f.group(), g.group(), "gradient_integrals");
    const GroupSpec& grp = f.group();
    const std::size_t dims = grp.dims();

    // Every integrand is a combination of exp(-2 lambda t), lambda >= lambda_1, and
    // 2 int_T^inf is bounded by exp(-2 lambda_1 T) |f - mean f|_2 |g - mean g|_2.
    const TailEnvelope env{lp_norm(remove_mean(f), 2.0) * lp_norm(remove_mean(g), 2.0), 2.0 * spectral_gap(grp)};
    const TimeGrid grid = make_time_grid(q, env);

    GradientIntegrals out;
    out.abs.assign(dims, 0.0);
    out.positive.assign(dims, 0.0);
    out.negative.assign(dims, 0.0);
    out.signed_.assign(dims, Complex{});
    out.t_max = grid.t_max;
    out.tail_bound = grid.tail_bound;

    const HeatExtension hf(f), hg(g);
    for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
        const LatticeFunction ft = hf.evaluate(grid.nodes[k]);
        const LatticeFunction gt = hg.evaluate(grid.nodes[k]);
        const double w = 2.0 * grid.weights[k];
        for (std::size_t a = 0; a < dims; ++a) {
            double s_abs = 0.0, s_pos = 0.0, s_neg = 0.0;
            Complex s_signed{};
            for (std::size_t i = 0; i < grp.size(); ++i) {
                const std::size_t j = neighbour_index(grp, i, a, Step::Forward);
                const Complex df = ft[j] - ft[i];
                const Complex dg = gt[j] - gt[i];
                const Complex prod = df * std::conj(dg);
                s_abs += std::abs(df) * std::abs(dg);
                s_signed += prod;
                if (prod.real() > 0.0) {
                    s_pos += prod.real();
                } else {
                    s_neg -= prod.real();
                }
            }
            out.abs[a] += w * s_abs;
            out.positive[a] += w * s_pos;
            out.negative[a] += w * s_neg;
            out.signed_[a] += w * s_signed;
        }
    }
    return out;
}

namespace {

LatticeFunction centred_for_pairing(const LatticeFunction& g, bool& removed) {
    const Complex mu = g.mean();
    removed = mu != Complex{};
    if (!removed) return g;
    log_message(LogLevel::Info, "representation_pairing: removed mean " + io::format_double(std::abs(mu)) +
                                    " from g");
    return remove_mean(g);
}

} // namespace

PairingResult representation_pairing_detailed(const LatticeFunction& f, const LatticeFunction& g, std::size_t axis,
                                              const QuadratureSpec& q) {
    require_same_group(f.group(), g.group(), "representation_pairing");
    if (axis >= f.group().dims()) throw InvalidArgument("representation_pairing: axis out of range");
    PairingResult r;
    const GradientIntegrals gi = gradient_integrals(f, centred_for_pairing(g, r.mean_removed), q);
    r.value = -gi.signed_[axis];
    r.t_max = gi.t_max;
    r.tail_bound = gi.tail_bound;
    return r;
}

Complex representation_pairing(const LatticeFunction& f, const LatticeFunction& g, std::size_t axis,
                               const QuadratureSpec& q) {
    return representation_pairing_detailed(f, g, axis, q).value;
}

std::vector<Complex> representation_pairings(const LatticeFunction& f, const LatticeFunction& g,
                                             const QuadratureSpec& q) {
    require_same_group(f.group(), g.group(), "representation_pairing");
    bool removed = false;
    const GradientIntegrals gi = gradient_integrals(f, centred_for_pairing(g, removed), q);
    std::vector<Complex> out(gi.signed_.size());
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = -gi.signed_[a];
    return out;
}

Complex spectral_pairing(const LatticeFunction& f, const LatticeFunction& g, std::size_t axis) {
    return inner(f, apply_multiplier(g, riesz2_symbol(g.group(), axis)));
}

EmbeddingReport make_report(double lhs, double rhs_constant, double rhs_norms, const GradientIntegrals& gi,
                            const QuadratureSpec& q) {
    EmbeddingReport r;
    r.lhs = lhs;
    r.rhs_constant = rhs_constant;
    r.rhs_norms = rhs_norms;
    const double denom = rhs_constant * rhs_norms;
    r.ratio = denom > 0.0 ? lhs / denom : 0.0;
    r.quadrature_tail = gi.tail_bound;
    r.t_max = gi.t_max;
    r.panels = q.panels;
    r.nodes_per_panel = q.nodes_per_panel;
    r.tail_tolerance = q.tail_tolerance;
    return r;
}

EmbeddingReport bilinear_embedding_check(const LatticeFunction& f, const LatticeFunction& g, const ExponentPair& e,
                                         const QuadratureSpec& q) {
    const GradientIntegrals gi = gradient_integrals(f, g, q);
    return make_report(gi.abs_total(), p_star_minus_one(e), lp_norm(f, e.p) * lp_norm(g, e.q), gi, q);
}

ChoiReport choi_embedding_check(const LatticeFunction& f, const LatticeFunction& g, const ExponentPair& e,
                                PartSign sign, const QuadratureSpec& q) {
    require_real(f, "f");
    require_real(g, "g");
    const GradientIntegrals gi = gradient_integrals(f, g, q);
    const double lhs = sign == PartSign::Positive ? gi.positive_total() : gi.negative_total();
    const double norms = lp_norm(f, e.p) * lp_norm(g, e.q);
    return ChoiReport{make_report(lhs, choi_c01_approx(e.p).value, norms, gi, q),
                      make_report(lhs, p_star_minus_one(e), norms, gi, q)};
}

std::string to_json(const EmbeddingReport& r) {
    nlohmann::ordered_json j;
    j["lhs"] = r.lhs;
    j["rhs_constant"] = r.rhs_constant;
    j["rhs_norms"] = r.rhs_norms;
    j["ratio"] = r.ratio;
    j["quadrature_tail"] = r.quadrature_tail;
    j["quadrature"] = {{"t_max", r.t_max},
                       {"panels", r.panels},
                       {"nodes_per_panel", r.nodes_per_panel},
                       {"tail_tolerance", r.tail_tolerance}};
    return j.dump();
}

std::vector<BatchRow> embedding_batch(const GroupSpec& g, const std::vector<double>& ps, std::size_t trials,
                                      std::uint64_t seed, EmbeddingMode mode, const QuadratureSpec& q) {
    std::vector<ExponentPair> exps;
    for (double p : ps) exps.push_back(make_exponent_pair(p));

    std::vector<BatchRow> rows;
    rows.reserve(trials * exps.size());
    for (std::size_t t = 0; t < trials; ++t) {
        const auto fs = derive_seed(seed, 2 * t), gs = derive_seed(seed, 2 * t + 1);
        const bool real = mode != EmbeddingMode::Absolute;
        const LatticeFunction f = real ? random_real_function(g, fs, false) : random_function(g, fs, false);
        const LatticeFunction h = real ? random_real_function(g, gs, false) : random_function(g, gs, false);
        const GradientIntegrals gi = gradient_integrals(f, h, q);
        const double lhs = mode == EmbeddingMode::Absolute       ? gi.abs_total()
                           : mode == EmbeddingMode::ChoiPositive ? gi.positive_total()
                                                                 : gi.negative_total();
        for (const auto& e : exps) {
            BatchRow row;
            row.trial = t;
            row.p = e.p;
            row.report = make_report(lhs, p_star_minus_one(e), lp_norm(f, e.p) * lp_norm(h, e.q), gi, q);
            row.choi_reference = real ? choi_expansion(e.p).value : std::numeric_limits<double>::quiet_NaN();
            rows.push_back(row);
        }
    }
    return rows;
}

std::string batch_csv(const std::vector<BatchRow>& rows) {
    std::ostringstream os;
    os << "trial,p,lhs,rhs_constant,rhs_norms,ratio,quadrature_tail,choi_reference\n";
    for (const auto& r : rows) {
        os << r.trial << ',' << io::format_double(r.p) << ',' << io::format_double(r.report.lhs) << ','
           << io::format_double(r.report.rhs_constant) << ',' << io::format_double(r.report.rhs_norms) << ','
           << io::format_double(r.report.ratio) << ',' << io::format_double(r.report.quadrature_tail) << ','
           << (std::isnan(r.choi_reference) ? std::string() : io::format_double(r.choi_reference)) << '\n';
    }
    return os.str();
}

} // namespace riesz
