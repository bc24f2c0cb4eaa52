#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "riesz/embedding.hpp"
#include "riesz/error.hpp"
#include "riesz/extremal.hpp"
#include "riesz/io.hpp"
#include "riesz/log.hpp"
#include "riesz/operators.hpp"

namespace riesz::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// error in the representation check that counts as a pass
constexpr double kRepresentationGate = 1e-8;
constexpr double kEmbeddingSlack = 1e-7;

struct Common {
    std::uint64_t seed = 0;
    std::string format;
    std::string out;
    std::string log_level = "warn";
};

struct QuadFlags {
    std::size_t panels = QuadratureSpec{}.panels;
    std::size_t nodes = QuadratureSpec{}.nodes_per_panel;
    double tail_tol = QuadratureSpec{}.tail_tolerance;
    double t_max = 0.0;

    QuadratureSpec spec() const {
        QuadratureSpec q;
        q.panels = panels;
        q.nodes_per_panel = nodes;
        q.tail_tolerance = tail_tol;
        q.t_max = t_max;
        return q;
    }
    ordered_json json() const {
        return {{"panels", panels}, {"nodes", nodes}, {"tmax_tol", tail_tol}, {"tmax", t_max}};
    }
};

double parse_number(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidArgument("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    return parts;
}

// "1,-1" or "0:1,-1" (re:im)
CoefficientVector parse_alpha(const std::string& text) {
    std::vector<Complex> c;
    for (const auto& item : split(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            c.emplace_back(parse_number(item), 0.0);
        } else {
            c.emplace_back(parse_number(item.substr(0, colon)), parse_number(item.substr(colon + 1)));
        }
    }
    if (c.empty()) throw InvalidArgument("--alpha needs at least one coefficient");
    return CoefficientVector(std::move(c));
}

std::vector<double> parse_ps(const std::string& text) {
    std::vector<double> ps;
    for (const auto& item : split(text, ',')) ps.push_back(parse_number(item));
    if (ps.empty()) throw InvalidArgument("--p needs a value");
    return ps;
}

ordered_json alpha_json(const CoefficientVector& a) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < a.size(); ++i) arr.push_back({a[i].real(), a[i].imag()});
    return arr;
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const Common& c, const std::string& command, ordered_json params) {
    ordered_json m;
    m["command"] = command;
    m["parameters"] = std::move(params);
    m["seed"] = c.seed;
    m["tool_version"] = kToolVersion;
    m["timestamp"] = timestamp_utc();
    m["outputs"] = {c.out};
    std::ofstream mf(c.out + ".manifest.json");
    mf << m.dump(2) << '\n';
}

// Sends the payload to --out (plus a manifest next to it) or to stdout.
void emit(const Common& c, const std::string& command, ordered_json params, const std::string& payload,
          std::ostream& out) {
    if (c.out.empty()) {
        out << payload;
        return;
    }
    {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw InvalidArgument("cannot open output file " + c.out);
        f << payload;
    }
    write_manifest(c, command, std::move(params));
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (f == a) return;
    }
    throw InvalidArgument("unsupported --format '" + f + "' for this command");
}

void add_quad_flags(CLI::App* sub, QuadFlags& q) {
    sub->add_option("--panels", q.panels, "time quadrature panels");
    sub->add_option("--nodes", q.nodes, "Gauss-Legendre nodes per panel");
    sub->add_option("--tmax-tol", q.tail_tol, "tail tolerance for the truncated time integral");
    sub->add_option("--tmax", q.t_max, "explicit truncation time (0 = automatic)");
}

struct SearchFlags {
    std::size_t restarts = SearchConfig{}.restarts;
    std::size_t iters = SearchConfig{}.max_iters;
    std::string field = "complex";
    double corrupt = 1.0;

    SearchConfig config(std::uint64_t seed) const {
        SearchConfig cfg;
        cfg.restarts = restarts;
        cfg.max_iters = iters;
        cfg.seed = seed;
        cfg.operator_scale = corrupt;
        if (field == "real") {
            cfg.field = ScalarField::Real;
        } else if (field != "complex") {
            throw InvalidArgument("--field must be real or complex");
        }
        return cfg;
    }
    ordered_json json() const { return {{"restarts", restarts}, {"iters", iters}, {"field", field}}; }
};

void add_search_flags(CLI::App* sub, SearchFlags& s) {
    sub->add_option("--restarts", s.restarts, "random restarts");
    sub->add_option("--iters", s.iters, "iterations per restart");
    sub->add_option("--field", s.field, "real|complex")->check(CLI::IsMember({"real", "complex"}));
    // test hook: scales the operator so the bound check must fire
    sub->add_option("--corrupt-scale", s.corrupt)->group("");
}

// ---- commands ---------------------------------------------------------------

int cmd_apply(const Common& c, const std::vector<std::size_t>& orders, const std::string& alpha_text,
              const std::string& in) {
    if (c.out.empty()) throw InvalidArgument("apply needs --out");
    const std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "bin"});
    const LatticeFunction f = io::read_function(in);
    if (!orders.empty() && !(f.group() == make_group(orders))) {
        throw GroupMismatch("input function does not live on --group");
    }
    const CoefficientVector alpha = alpha_text.empty() ? CoefficientVector::ones(f.group().dims())
                                                       : parse_alpha(alpha_text);
    const LatticeFunction r = apply_second_riesz(f, alpha);
    const auto format = fmt == "bin" ? io::Format::Binary : io::Format::Json;
    io::write_function(c.out, r, format);

    write_manifest(c, "apply",
                   {{"group", f.group().orders()}, {"alpha", alpha_json(alpha)}, {"in", in}, {"format", fmt}});
    return kExitOk;
}

int cmd_verify_representation(const Common& c, const std::vector<std::size_t>& orders, std::size_t trials,
                              const QuadFlags& qf, std::ostream& out, std::ostream& err) {
    const std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    const GroupSpec g = make_group(orders);
    const QuadratureSpec q = qf.spec();

    std::ostringstream csv;
    csv << "trial,axis,spectral_re,spectral_im,quadrature_re,quadrature_im,error,tail_bound\n";
    ordered_json rows = ordered_json::array();
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const LatticeFunction f = random_function(g, derive_seed(c.seed, 2 * t), true);
        const LatticeFunction h = random_function(g, derive_seed(c.seed, 2 * t + 1), true);
        for (std::size_t a = 0; a < g.dims(); ++a) {
            const PairingResult r = representation_pairing_detailed(f, h, a, q);
            if (r.tail_bound > kRepresentationGate) {
                // the truncated tail alone could exceed the gate: ask for the t_max that certifies it
                QuadratureSpec strict = q;
                strict.t_max = r.t_max;
                strict.tail_tolerance = kRepresentationGate;
                representation_pairing_detailed(f, h, a, strict);
            }
            const Complex s = spectral_pairing(f, h, a);
            const double e = std::abs(s - r.value);
            worst = std::max(worst, e);
            csv << t << ',' << a << ',' << io::format_double(s.real()) << ',' << io::format_double(s.imag()) << ','
                << io::format_double(r.value.real()) << ',' << io::format_double(r.value.imag()) << ','
                << io::format_double(e) << ',' << io::format_double(r.tail_bound) << '\n';
            rows.push_back({{"trial", t}, {"axis", a}, {"spectral", {s.real(), s.imag()}},
                            {"quadrature", {r.value.real(), r.value.imag()}}, {"error", e},
                            {"tail_bound", r.tail_bound}});
        }
    }
    const bool pass = worst <= kRepresentationGate;
    std::string payload = csv.str();
    if (fmt == "json") {
        ordered_json j{{"max_error", worst}, {"gate", kRepresentationGate}, {"pass", pass}, {"rows", rows}};
        payload = j.dump() + "\n";
    }
    emit(c, "verify-representation",
         {{"group", orders}, {"trials", trials}, {"quadrature", qf.json()}, {"format", fmt}}, payload, out);
    if (!pass) {
        err << "representation check failed: max error " << io::format_double(worst) << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_verify_embedding(const Common& c, const std::vector<std::size_t>& orders, const std::string& p_text,
                         std::size_t trials, const std::string& mode_text, const QuadFlags& qf, std::ostream& out,
                         std::ostream& err) {
    const std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    const std::vector<double> ps = parse_ps(p_text);
    for (double p : ps) make_exponent_pair(p);
    EmbeddingMode mode = EmbeddingMode::Absolute;
    if (mode_text == "choi+") {
        mode = EmbeddingMode::ChoiPositive;
    } else if (mode_text == "choi-") {
        mode = EmbeddingMode::ChoiNegative;
    } else if (mode_text != "abs") {
        throw InvalidArgument("--mode must be abs, choi+ or choi-");
    }
    const GroupSpec g = make_group(orders);
    const auto rows = embedding_batch(g, ps, trials, c.seed, mode, qf.spec());

    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.report.ratio);
    const bool pass = worst <= 1.0 + kEmbeddingSlack;

    std::string payload = batch_csv(rows);
    if (fmt == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row = ordered_json::parse(to_json(r.report));
            row["trial"] = r.trial;
            row["p"] = r.p;
            if (mode != EmbeddingMode::Absolute) row["choi_reference"] = r.choi_reference;
            arr.push_back(std::move(row));
        }
        payload = ordered_json{{"max_ratio", worst}, {"pass", pass}, {"rows", arr}}.dump() + "\n";
    }
    emit(c, "verify-embedding",
         {{"group", orders}, {"p", ps}, {"trials", trials}, {"mode", mode_text}, {"quadrature", qf.json()},
          {"format", fmt}},
         payload, out);
    if (!pass) {
        err << "embedding bound exceeded: max ratio " << io::format_double(worst) << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_norm_search(const Common& c, std::vector<std::size_t> orders, const std::string& alpha_text, double p,
                    const SearchFlags& sf, std::ostream& out, std::ostream& err) {
    const std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "csv"});
    CoefficientVector alpha = alpha_text.empty() ? CoefficientVector::ones(orders.empty() ? 2 : orders.size())
                                                  : parse_alpha(alpha_text);
    if (orders.empty()) orders.assign(alpha.size(), 16);
    const GroupSpec g = make_group(orders);
    const SearchResult r = ascend(g, alpha, p, sf.config(c.seed));

    std::string payload;
    if (fmt == "json") {
        ordered_json j;
        j["p"] = p;
        j["group"] = orders;
        j["alpha"] = alpha_json(alpha);
        j["best_ratio"] = r.best_ratio;
        j["bound"] = r.bound;
        j["margin"] = r.margin;
        j["max_ratio_seen"] = r.max_ratio_seen;
        j["iterations"] = r.iterations_used;
        j["best_restart"] = r.best_restart;
        j["bound_violated"] = r.bound_violated;
        if (p == 2.0) j["multiplier_norm"] = operator_two_norm(alpha, g).norm;
        payload = j.dump() + "\n";
    } else {
        std::ostringstream os;
        os << "best_ratio,bound,margin,max_ratio_seen,iterations,best_restart\n"
           << io::format_double(r.best_ratio) << ',' << io::format_double(r.bound) << ','
           << io::format_double(r.margin) << ',' << io::format_double(r.max_ratio_seen) << ',' << r.iterations_used
           << ',' << r.best_restart << '\n';
        payload = os.str();
    }
    emit(c, "norm-search", {{"group", orders}, {"alpha", alpha_json(alpha)}, {"p", p}, {"search", sf.json()},
                            {"format", fmt}},
         payload, out);
    if (r.bound_violated) {
        err << "bound violation: ratio " << io::format_double(r.max_ratio_seen) << " > p*-1 = "
            << io::format_double(r.bound) << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_refine(const Common& c, const std::string& alpha_text, double p, const std::vector<std::size_t>& ms,
               const SearchFlags& sf, std::ostream& out, std::ostream& err) {
    const std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    const CoefficientVector alpha = alpha_text.empty() ? CoefficientVector({1.0, -1.0}) : parse_alpha(alpha_text);
    const RefinementTable t = refinement_study(p, alpha, ms, sf.config(c.seed));
    const std::string payload = fmt == "csv" ? t.csv() : t.json() + "\n";
    emit(c, "refine", {{"alpha", alpha_json(alpha)}, {"p", p}, {"ms", ms}, {"search", sf.json()}, {"format", fmt}},
         payload, out);
    if (t.any_violation()) {
        err << "bound violation in refinement study\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_constants(const Common& c, double p, std::ostream& out) {
    const std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json"});
    const ExponentPair e = make_exponent_pair(p);
    const ChoiExpansion ch = choi_c01_approx(p);
    ordered_json j;
    j["p"] = e.p;
    j["q"] = e.q;
    j["p_star_minus_one"] = p_star_minus_one(e);
    j["beta2"] = ch.beta2;
    j["log_term"] = ch.log_term;
    j["choi_c01_three_term"] = ch.value;
    emit(c, "constants", {{"p", p}, {"format", fmt}}, j.dump() + "\n", out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Second-order discrete Riesz transforms on products of cyclic groups", "riesz"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    Common common;
    app.add_option("--seed", common.seed, "base seed for every random draw");
    app.add_option("--format", common.format, "json|csv|bin");
    app.add_option("--out", common.out, "write the payload here (and a manifest next to it)");
    app.add_option("--log-level", common.log_level, "quiet|warn|info|debug")
        ->check(CLI::IsMember({"quiet", "warn", "info", "debug"}));

    std::vector<std::size_t> orders;
    std::string alpha_text, in_path, p_text, mode = "abs";
    double p = 2.0;
    std::size_t trials = 100;
    std::vector<std::size_t> ms{4, 8, 16, 32};
    QuadFlags qf;
    SearchFlags sf;

    auto group_opt = [&](CLI::App* sub) {
        sub->add_option("--group", orders, "cyclic orders m1,m2,...")->delimiter(',');
    };

    CLI::App* apply = app.add_subcommand("apply", "apply R_alpha^2 to a function file");
    group_opt(apply);
    apply->add_option("--alpha", alpha_text, "coefficients re:im,...");
    apply->add_option("--in", in_path, "input function (JSON or binary)")->required();

    CLI::App* rep = app.add_subcommand("verify-representation", "heat-flow pairing vs exact multiplier pairing");
    group_opt(rep);
    rep->add_option("--trials", trials, "random pairs");
    add_quad_flags(rep, qf);

    CLI::App* emb = app.add_subcommand("verify-embedding", "bilinear embedding ratios on random pairs");
    group_opt(emb);
    emb->add_option("--p", p_text, "exponent(s), comma separated")->required();
    emb->add_option("--trials", trials, "random pairs");
    emb->add_option("--mode", mode, "abs|choi+|choi-");
    add_quad_flags(emb, qf);

    CLI::App* search = app.add_subcommand("norm-search", "projected gradient search for large |R_alpha^2 f|_p/|f|_p");
    group_opt(search);
    search->add_option("--alpha", alpha_text, "coefficients re:im,...");
    search->add_option("--p", p, "exponent")->required();
    add_search_flags(search, sf);

    CLI::App* refine = app.add_subcommand("refine", "norm search over (Z/mZ)^N for growing m");
    refine->add_option("--alpha", alpha_text, "coefficients re:im,... (N = count)");
    refine->add_option("--p", p, "exponent")->required();
    refine->add_option("--m", ms, "orders, increasing")->delimiter(',');
    add_search_flags(refine, sf);

    CLI::App* constants = app.add_subcommand("constants", "p*-1 and the three-term Choi constant");
    constants->add_option("--p", p, "exponent")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string& lvl = common.log_level;
    set_log_level(lvl == "quiet"  ? LogLevel::Quiet
                  : lvl == "info" ? LogLevel::Info
                  : lvl == "debug" ? LogLevel::Debug
                                   : LogLevel::Warn);
    try {
        if (*apply) return cmd_apply(common, orders, alpha_text, in_path);
        if (*rep) {
            if (orders.empty()) orders = {8, 8};
            return cmd_verify_representation(common, orders, trials, qf, out, err);
        }
        if (*emb) {
            if (orders.empty()) orders = {8, 8};
            if (emb->count("--trials") == 0) trials = 1000;
            return cmd_verify_embedding(common, orders, p_text, trials, mode, qf, out, err);
        }
        if (*search) return cmd_norm_search(common, orders, alpha_text, p, sf, out, err);
        if (*refine) return cmd_refine(common, alpha_text, p, ms, sf, out, err);
        if (*constants) return cmd_constants(common, p, out);
    } catch (const QuadratureInfeasible& e) {
        err << "quadrature infeasible: " << e.what() << "\nrequired t_max: " << io::format_double(e.required_t_max())
            << '\n';
        return kExitInfeasible;
    } catch (const BoundViolation& e) {
        err << "bound violation: " << e.what() << '\n';
        return kExitViolation;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace riesz::cli
