#include "riesz/extremal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "riesz/embedding.hpp"
#include "riesz/error.hpp"
#include "riesz/io.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

namespace {

constexpr double kMinStep = 1e-12;

// Sum |v|^p, unscaled; iterates are kept at unit p-norm so nothing overflows.
double power_sum(std::span<const Complex> v, double p) {
    double acc = 0.0;
    if (p == 2.0) {
        for (const auto& x : v) acc += std::norm(x);
    } else {
        for (const auto& x : v) acc += std::pow(std::abs(x), p);
    }
    return acc;
}

double l2(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

// |v|^{p-2} v / sum |v|^p, with 0 at zero entries.
void duality_map(std::span<const Complex> v, double p, double psum, std::span<Complex> out) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        out[i] = a == 0.0 ? Complex{} : v[i] * (std::pow(a, p - 2.0) / psum);
    }
}

class RatioEvaluator {
public:
    RatioEvaluator(const GroupSpec& g, const CoefficientVector& alpha, double p, double scale)
        : group_(g), symbol_(scale * second_riesz_symbol(g, alpha)), adjoint_(symbol_.adjoint()), p_(p) {}

    // u = A f
    void apply(std::span<const Complex> f, std::vector<Complex>& u) const { apply_with(symbol_, f, u); }
    void apply_adjoint(std::span<const Complex> f, std::vector<Complex>& u) const { apply_with(adjoint_, f, u); }

    double p() const noexcept { return p_; }

private:
    void apply_with(const MultiplierSpec& s, std::span<const Complex> f, std::vector<Complex>& u) const {
        u.assign(f.begin(), f.end());
        transform_axes(group_, u, -1);
        const auto sym = s.symbol();
        for (std::size_t i = 0; i < u.size(); ++i) u[i] *= sym[i];
        transform_axes(group_, u, +1);
        const double scale = 1.0 / static_cast<double>(u.size());
        for (auto& x : u) x *= scale;
    }

    GroupSpec group_;
    MultiplierSpec symbol_;
    MultiplierSpec adjoint_;
    double p_;
};

void normalize_p(std::vector<Complex>& f, double p) {
    const double n = std::pow(power_sum(f, p), 1.0 / p);
    for (auto& x : f) x /= n;
}

struct RestartOutcome {
    double ratio = 0.0;
    double max_seen = 0.0;
    std::size_t iterations = 0;
    std::vector<Complex> f;
};

RestartOutcome run_restart(const RatioEvaluator& ev, std::vector<Complex> f, const SearchConfig& cfg) {
    const double p = ev.p();
    const bool real = cfg.field == ScalarField::Real;
    if (real) {
        for (auto& x : f) x = x.real();
    }
    RestartOutcome out;
    if (l2(f) == 0.0) {
        out.f = std::move(f);
        return out;
    }
    normalize_p(f, p);

    std::vector<Complex> u, wu, wf(f.size()), grad, trial, ut;
    ev.apply(f, u);
    double u_psum = power_sum(u, p);
    double r = std::pow(u_psum, 1.0 / p);
    out.max_seen = r;

    double step = cfg.step_init;
    std::size_t it = 0;
    while (r > 0.0 && it < cfg.max_iters) {
        // gradient of log(|Af|_p / |f|_p), tangent to the sphere by scale invariance
        wu.resize(u.size());
        duality_map(u, p, u_psum, wu);
        ev.apply_adjoint(wu, grad);
        duality_map(f, p, 1.0, wf);  // |f|_p = 1
        for (std::size_t i = 0; i < grad.size(); ++i) {
            grad[i] -= wf[i];
            if (real) grad[i] = grad[i].real();
        }
        const double gn = l2(grad), fn = l2(f);
        if (gn * fn <= cfg.grad_tol) break;
        const double dir_scale = fn / gn;

        bool accepted = false;
        while (step >= kMinStep) {
            trial.resize(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) trial[i] = f[i] + step * dir_scale * grad[i];
            normalize_p(trial, p);
            ev.apply(trial, ut);
            const double ut_psum = power_sum(ut, p);
            const double rt = std::pow(ut_psum, 1.0 / p);
            out.max_seen = std::max(out.max_seen, rt);
            if (rt > r) {
                f.swap(trial);
                u.swap(ut);
                u_psum = ut_psum;
                r = rt;
                accepted = true;
                break;
            }
            step *= cfg.step_shrink;
        }
        if (!accepted) break;
        ++it;
        step = std::min(cfg.step_init, step / cfg.step_shrink);
    }
    out.ratio = r;
    out.iterations = it;
    out.f = std::move(f);
    return out;
}

} // namespace

void validate(const SearchConfig& cfg) {
    if (cfg.restarts == 0 || cfg.max_iters == 0) throw InvalidArgument("search needs restarts and iterations > 0");
    if (!(cfg.step_init > 0.0) || !(cfg.grad_tol > 0.0)) {
        throw InvalidArgument("search step and gradient tolerance must be positive");
    }
    if (!(cfg.step_shrink > 0.0 && cfg.step_shrink < 1.0)) throw InvalidArgument("step_shrink must lie in (0, 1)");
    if (!(cfg.operator_scale > 0.0)) throw InvalidArgument("operator_scale must be positive");
}

double ratio(const LatticeFunction& f, const CoefficientVector& alpha, double p) {
    const double denom = lp_norm(f, p);
    if (denom == 0.0) throw InvalidArgument("ratio of the zero function is undefined");
    return lp_norm(apply_second_riesz(f, alpha), p) / denom;
}

LatticeFunction smooth_profile(const GroupSpec& g) {
    LatticeFunction f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const LatticePoint n = point_at(g, i);
        double v = 1.0;
        for (std::size_t a = 0; a < g.dims(); ++a) {
            v *= 0.5 + std::cos(2.0 * std::numbers::pi * static_cast<double>(n.coords[a]) /
                                static_cast<double>(g.order(a)));
        }
        f[i] = v;
    }
    return remove_mean(std::move(f));
}

LatticeFunction periodic_lift(const LatticeFunction& coarse, const GroupSpec& fine) {
    const GroupSpec& cg = coarse.group();
    if (cg.dims() != fine.dims()) throw InvalidArgument("periodic_lift: dimension mismatch");
    for (std::size_t a = 0; a < cg.dims(); ++a) {
        if (fine.order(a) % cg.order(a) != 0) throw InvalidArgument("periodic_lift: fine orders must be multiples");
    }
    LatticeFunction out(fine);
    for (std::size_t i = 0; i < fine.size(); ++i) {
        LatticePoint n = point_at(fine, i);
        for (std::size_t a = 0; a < n.coords.size(); ++a) n.coords[a] %= cg.order(a);
        out[i] = coarse.at(n);
    }
    return out;
}

SearchResult ascend(const GroupSpec& g, const CoefficientVector& alpha, double p, const SearchConfig& cfg,
                    const std::vector<LatticeFunction>& seeds) {
    validate(cfg);
    const ExponentPair e = make_exponent_pair(p);
    if (alpha.size() != g.dims()) throw InvalidArgument("coefficient count does not match group dimension");
    if (cfg.field == ScalarField::Real && !alpha.is_real()) {
        throw InvalidArgument("real search requires real coefficients");
    }
    for (const auto& s : seeds) require_same_group(s.group(), g, "ascend seed");

    const RatioEvaluator ev(g, alpha, p, cfg.operator_scale);
    SearchResult res;
    res.bound = p_star_minus_one(e);
    res.best_ratio = -1.0;

    const std::size_t total = cfg.restarts + seeds.size();
    for (std::size_t r = 0; r < total; ++r) {
        LatticeFunction init;
        if (r == 0) {
            init = smooth_profile(g);
        } else if (r < cfg.restarts) {
            const auto s = derive_seed(cfg.seed, r);
            init = cfg.field == ScalarField::Real ? random_real_function(g, s, true) : random_function(g, s, true);
        } else {
            init = seeds[r - cfg.restarts];
        }
        RestartOutcome o = run_restart(ev, std::vector<Complex>(init.values().begin(), init.values().end()), cfg);
        res.iterations_used += o.iterations;
        res.max_ratio_seen = std::max(res.max_ratio_seen, o.max_seen);
        if (o.ratio > res.best_ratio) {
            res.best_ratio = o.ratio;
            res.best_restart = r;
            res.best_f = LatticeFunction(g, std::move(o.f));
        }
    }
    res.margin = res.bound - res.best_ratio;
    res.bound_violated = res.max_ratio_seen > res.bound + kBoundSlack;
    return res;
}

bool RefinementTable::any_violation() const {
    for (const auto& r : rows) {
        if (r.result.bound_violated) return true;
    }
    return false;
}

bool RefinementTable::near_monotone(double tol) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (rows[i].m % rows[j].m == 0 && rows[i].result.best_ratio < rows[j].result.best_ratio - tol) {
                return false;
            }
        }
    }
    return true;
}

std::string RefinementTable::csv() const {
    std::ostringstream os;
    os << "m,best_ratio,margin,iterations\n";
    for (const auto& r : rows) {
        os << r.m << ',' << io::format_double(r.result.best_ratio) << ',' << io::format_double(r.result.margin)
           << ',' << r.result.iterations_used << '\n';
    }
    return os.str();
}

std::string RefinementTable::json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["bound"] = rows.empty() ? p_star_minus_one(p) : rows.front().result.bound;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"m", r.m},
                             {"best_ratio", r.result.best_ratio},
                             {"margin", r.result.margin},
                             {"iterations", r.result.iterations_used},
                             {"bound_violated", r.result.bound_violated}});
    }
    j["near_monotone_5e-3"] = near_monotone(5e-3);
    return j.dump();
}

RefinementTable refinement_study(double p, const CoefficientVector& alpha, const std::vector<std::size_t>& ms,
                                 const SearchConfig& cfg) {
    if (alpha.size() == 0) throw InvalidArgument("refinement_study: empty coefficient vector");
    for (std::size_t i = 1; i < ms.size(); ++i) {
        if (ms[i] <= ms[i - 1]) throw InvalidArgument("refinement_study: orders must be increasing");
    }
    RefinementTable table;
    table.p = p;
    for (std::size_t m : ms) {
        const GroupSpec g = make_group(std::vector<std::size_t>(alpha.size(), m));
        std::vector<LatticeFunction> seeds;
        const RefinementRow* coarse = nullptr;
        for (const auto& row : table.rows) {
            if (m % row.m == 0 && (!coarse || row.result.best_ratio > coarse->result.best_ratio)) coarse = &row;
        }
        if (coarse) seeds.push_back(periodic_lift(coarse->result.best_f, g));
        table.rows.push_back({m, ascend(g, alpha, p, cfg, seeds)});
    }
    return table;
}

} // namespace riesz
