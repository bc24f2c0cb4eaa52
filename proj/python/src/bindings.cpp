#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riesz/embedding.hpp"
#include "riesz/error.hpp"
#include "riesz/extremal.hpp"
#include "riesz/heat.hpp"
#include "riesz/operators.hpp"
#include "riesz/spectral.hpp"

namespace py = pybind11;
using namespace riesz;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

// Arrays map to functions on the product of cyclic groups given by their shape
// (last axis fastest, as in the library).
LatticeFunction from_array(const CArray& a) {
    std::vector<std::size_t> orders(a.shape(), a.shape() + a.ndim());
    const GroupSpec g = make_group(orders);
    return LatticeFunction(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

CArray to_array(std::span<const Complex> values, const GroupSpec& g) {
    CArray out(std::vector<py::ssize_t>(g.orders().begin(), g.orders().end()));
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

CArray to_array(const LatticeFunction& f) { return to_array(f.values(), f.group()); }

QuadratureSpec quad(std::size_t panels, std::size_t nodes, double tail_tolerance, double t_max) {
    QuadratureSpec q;
    q.panels = panels;
    q.nodes_per_panel = nodes;
    q.tail_tolerance = tail_tolerance;
    q.t_max = t_max;
    return q;
}

py::dict report_dict(const EmbeddingReport& r) {
    py::dict d;
    d["lhs"] = r.lhs;
    d["rhs_constant"] = r.rhs_constant;
    d["rhs_norms"] = r.rhs_norms;
    d["ratio"] = r.ratio;
    d["quadrature_tail"] = r.quadrature_tail;
    d["t_max"] = r.t_max;
    return d;
}

py::dict search_dict(const SearchResult& r) {
    py::dict d;
    d["best_ratio"] = r.best_ratio;
    d["best_f"] = to_array(r.best_f);
    d["iterations_used"] = r.iterations_used;
    d["best_restart"] = r.best_restart;
    d["bound"] = r.bound;
    d["margin"] = r.margin;
    d["max_ratio_seen"] = r.max_ratio_seen;
    d["bound_violated"] = r.bound_violated;
    return d;
}

SearchConfig search_config(std::size_t restarts, std::size_t max_iters, std::uint64_t seed, const std::string& field) {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    if (field == "real") {
        cfg.field = ScalarField::Real;
    } else if (field != "complex") {
        throw InvalidArgument("field must be 'real' or 'complex'");
    }
    return cfg;
}

#define QUAD_ARGS                                                                                          \
    py::arg("panels") = QuadratureSpec{}.panels, py::arg("nodes") = QuadratureSpec{}.nodes_per_panel,      \
        py::arg("tail_tolerance") = QuadratureSpec{}.tail_tolerance, py::arg("t_max") = 0.0

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Second-order discrete Riesz transforms on products of cyclic groups";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_ArithmeticError);
    py::exception<QuadratureInfeasible>(m, "QuadratureInfeasible", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const QuadratureInfeasible& e) {
            // carries the t_max that would have met the tolerance
            const py::object type = py::module_::import("pyriesz._core").attr("QuadratureInfeasible");
            py::object exc = type(e.what());
            exc.attr("required_t_max") = e.required_t_max();
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    m.def("dft_forward", [](const CArray& a) {
        const Spectrum s = dft_forward(from_array(a));
        return to_array(s.coeffs(), s.group());
    });
    m.def("dft_inverse", [](const CArray& a) {
        const LatticeFunction f = from_array(a);
        return to_array(dft_inverse(Spectrum(f.group(), std::vector<Complex>(f.values().begin(), f.values().end()))));
    });
    m.def("apply_second_riesz", [](const CArray& a, std::vector<Complex> alpha) {
        return to_array(apply_second_riesz(from_array(a), CoefficientVector(std::move(alpha))));
    }, py::arg("f"), py::arg("alpha"));
    m.def("riesz2_symbol", [](std::vector<std::size_t> orders, std::size_t axis) {
        const GroupSpec g = make_group(orders);
        const MultiplierSpec s = riesz2_symbol(g, axis);
        return to_array(s.symbol(), g);
    }, py::arg("orders"), py::arg("axis"));
    m.def("operator_two_norm", [](std::vector<Complex> alpha, std::vector<std::size_t> orders) {
        const TwoNorm n = operator_two_norm(CoefficientVector(std::move(alpha)), make_group(orders));
        return py::make_tuple(n.norm, n.argmax.coords);
    }, py::arg("alpha"), py::arg("orders"));

    m.def("heat_extend", [](const CArray& a, double t) { return to_array(heat_extend(from_array(a), t)); },
          py::arg("f"), py::arg("t"));
    m.def("heat_kernel", [](std::vector<std::size_t> orders, double t) {
        return to_array(heat_kernel(make_group(orders), t));
    }, py::arg("orders"), py::arg("t"));
    m.def("spectral_gap", [](std::vector<std::size_t> orders) { return spectral_gap(make_group(orders)); });

    m.def("p_star_minus_one", py::overload_cast<double>(&p_star_minus_one), py::arg("p"));
    m.def("choi_c01_approx", [](double p) {
        const ChoiExpansion c = choi_c01_approx(p);
        py::dict d;
        d["value"] = c.value;
        d["beta2"] = c.beta2;
        d["log_term"] = c.log_term;
        return d;
    }, py::arg("p"));
    m.def("lp_norm", [](const CArray& a, double p) { return lp_norm(from_array(a), p); }, py::arg("f"), py::arg("p"));

    m.def("representation_pairing",
          [](const CArray& f, const CArray& g, std::size_t axis, std::size_t panels, std::size_t nodes, double tol,
             double t_max) { return representation_pairing(from_array(f), from_array(g), axis, quad(panels, nodes, tol, t_max)); },
          py::arg("f"), py::arg("g"), py::arg("axis"), QUAD_ARGS);
    m.def("spectral_pairing", [](const CArray& f, const CArray& g, std::size_t axis) {
        return spectral_pairing(from_array(f), from_array(g), axis);
    }, py::arg("f"), py::arg("g"), py::arg("axis"));
    m.def("bilinear_embedding_check",
          [](const CArray& f, const CArray& g, double p, std::size_t panels, std::size_t nodes, double tol,
             double t_max) {
              return report_dict(bilinear_embedding_check(from_array(f), from_array(g), make_exponent_pair(p),
                                                          quad(panels, nodes, tol, t_max)));
          },
          py::arg("f"), py::arg("g"), py::arg("p"), QUAD_ARGS);
    m.def("choi_embedding_check",
          [](const CArray& f, const CArray& g, double p, const std::string& sign, std::size_t panels,
             std::size_t nodes, double tol, double t_max) {
              if (sign != "+" && sign != "-") throw InvalidArgument("sign must be '+' or '-'");
              const ChoiReport r = choi_embedding_check(from_array(f), from_array(g), make_exponent_pair(p),
                                                        sign == "+" ? PartSign::Positive : PartSign::Negative,
                                                        quad(panels, nodes, tol, t_max));
              py::dict d;
              d["rigorous"] = report_dict(r.rigorous);
              d["approximate"] = report_dict(r.approximate);
              return d;
          },
          py::arg("f"), py::arg("g"), py::arg("p"), py::arg("sign"), QUAD_ARGS);

    m.def("ascend",
          [](std::vector<std::size_t> orders, std::vector<Complex> alpha, double p, std::size_t restarts,
             std::size_t max_iters, std::uint64_t seed, const std::string& field) {
              return search_dict(ascend(make_group(orders), CoefficientVector(std::move(alpha)), p,
                                        search_config(restarts, max_iters, seed, field)));
          },
          py::arg("orders"), py::arg("alpha"), py::arg("p"), py::arg("restarts") = SearchConfig{}.restarts,
          py::arg("max_iters") = SearchConfig{}.max_iters, py::arg("seed") = 0, py::arg("field") = "complex");
    m.def("ratio", [](const CArray& f, std::vector<Complex> alpha, double p) {
        return ratio(from_array(f), CoefficientVector(std::move(alpha)), p);
    }, py::arg("f"), py::arg("alpha"), py::arg("p"));
    m.def("refinement_study",
          [](double p, std::vector<Complex> alpha, std::vector<std::size_t> ms, std::size_t restarts,
             std::size_t max_iters, std::uint64_t seed, const std::string& field) {
              const RefinementTable t = refinement_study(p, CoefficientVector(std::move(alpha)), ms,
                                                         search_config(restarts, max_iters, seed, field));
              py::list rows;
              for (const auto& r : t.rows) {
                  py::dict d;
                  d["m"] = r.m;
                  d["best_ratio"] = r.result.best_ratio;
                  d["margin"] = r.result.margin;
                  d["iterations"] = r.result.iterations_used;
                  d["bound_violated"] = r.result.bound_violated;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("p"), py::arg("alpha"), py::arg("ms"), py::arg("restarts") = SearchConfig{}.restarts,
          py::arg("max_iters") = SearchConfig{}.max_iters, py::arg("seed") = 0, py::arg("field") = "complex");
}
