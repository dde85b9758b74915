#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taildep/estimation.hpp"
#include "taildep/families.hpp"
#include "taildep/measures.hpp"

namespace py = pybind11;
using namespace taildep;

namespace {

py::dict report_dict(const MeasureReport& r) {
    py::dict d;
    d["measure"] = r.measure;
    d["estimate"] = r.estimate;
    d["ci_low"] = r.ci_low;
    d["ci_high"] = r.ci_high;
    d["level"] = r.level;
    d["n"] = r.n;
    d["k"] = r.k;
    d["B"] = r.B;
    d["seed"] = r.seed;
    d["t_min"] = r.t_min;
    d["L"] = r.L;
    d["low_b"] = r.low_b;
    return d;
}

} // namespace

PYBIND11_MODULE(_taildep, m) {
    m.doc() = "bivariate tail dependence measures: copula sampling, tail dependence functions, "
              "mu-tail dependence measures and their nonparametric estimation";

    py::enum_<Rotation>(m, "Rotation")
        .value("sigma1", Rotation::Sigma1)
        .value("sigma2", Rotation::Sigma2)
        .value("tau", Rotation::Tau)
        .value("sigma1sigma2", Rotation::Sigma1Sigma2);

    py::class_<Copula>(m, "Copula")
        .def_static("independence", &Copula::independence)
        .def_static("comonotone", &Copula::comonotone)
        .def_static("countermonotone", &Copula::countermonotone)
        .def_static("frechet", &Copula::frechet, py::arg("alpha"), py::arg("beta"))
        .def_static("marshall_olkin", &Copula::marshall_olkin, py::arg("a"), py::arg("b"))
        .def_static("clayton", &Copula::clayton, py::arg("theta"))
        .def_static("gumbel", &Copula::gumbel, py::arg("theta"))
        .def_static("singular_nelsen", &Copula::singular_nelsen, py::arg("theta"))
        .def_static("student_t", &Copula::student_t, py::arg("nu"), py::arg("rho"))
        .def_static("mixture", &Copula::mixture, py::arg("weights"), py::arg("components"))
        .def("cdf", &Copula::cdf, py::arg("u"), py::arg("v"))
        .def("sample", &Copula::sample, py::arg("n"), py::arg("seed"))
        .def("rotate", &Copula::rotate, py::arg("rotation"))
        .def("name", &Copula::name);

    py::class_<PickandsFunction>(m, "PickandsFunction")
        .def_static("constant_one", &PickandsFunction::constant_one)
        .def_static("max_lower", &PickandsFunction::max_lower)
        .def_static("asym_gumbel", &PickandsFunction::asym_gumbel)
        .def_static("asym_galambos", &PickandsFunction::asym_galambos)
        .def_static("tabulated", &PickandsFunction::tabulated)
        .def("__call__", &PickandsFunction::operator())
        .def("name", &PickandsFunction::name);

    py::class_<TailDependenceFunction>(m, "TailDependenceFunction")
        .def_static("zero", &TailDependenceFunction::zero)
        .def_static("comonotone", &TailDependenceFunction::comonotone)
        .def_static("frechet_tail", &TailDependenceFunction::frechet_tail)
        .def_static("marshall_olkin_tail", &TailDependenceFunction::marshall_olkin_tail)
        .def_static("clayton_tail", &TailDependenceFunction::clayton_tail)
        .def_static("survival_gumbel_tail", &TailDependenceFunction::survival_gumbel_tail)
        .def_static("singular_tail", &TailDependenceFunction::singular_tail)
        .def_static("student_t_tail", &TailDependenceFunction::student_t_tail)
        .def_static("survival_ev_tail", &TailDependenceFunction::survival_ev_tail)
        .def_static("asym_gumbel_tail", &TailDependenceFunction::asym_gumbel_tail)
        .def_static("asym_galambos_tail", &TailDependenceFunction::asym_galambos_tail)
        .def_static("convex_mixture", &TailDependenceFunction::convex_mixture)
        .def("transposed", &TailDependenceFunction::transposed)
        .def("__call__", &TailDependenceFunction::operator())
        .def("margin1", &TailDependenceFunction::margin1)
        .def("margin2", &TailDependenceFunction::margin2)
        .def("margin1_star", &TailDependenceFunction::margin1_star)
        .def("margin2_star", &TailDependenceFunction::margin2_star)
        .def("star", &TailDependenceFunction::star)
        .def("name", &TailDependenceFunction::name);

    m.def("tdf_from_pickands", &tdf_from_pickands);
    m.def("pickands_from_tdf", &pickands_from_tdf, py::arg("tdf"), py::arg("grid_points") = 201);
    m.def("copula_from_tdf", &copula_from_tdf, py::arg("tdf"), py::arg("sampler_grid") = 1024);

    py::class_<GeneratingMeasure>(m, "GeneratingMeasure")
        .def_static("atom", &GeneratingMeasure::atom)
        .def_static("uniform_square", &GeneratingMeasure::uniform_square)
        .def_static("diagonal_uniform", &GeneratingMeasure::diagonal_uniform)
        .def_static("antidiagonal_uniform", &GeneratingMeasure::antidiagonal_uniform)
        .def_static("line_segment", &GeneratingMeasure::line_segment, py::arg("slope"),
                    py::arg("monomial_m") = 1.0)
        .def_static("monomial_product", &GeneratingMeasure::monomial_product)
        .def_static("mixture", &GeneratingMeasure::mixture)
        .def("touches_diagonal", &GeneratingMeasure::touches_diagonal)
        .def("name", &GeneratingMeasure::name);

    m.def("mu_tdm", &mu_tdm, py::arg("tdf"), py::arg("mu"), py::arg("abs_tol") = 1e-10);
    m.def("mu_tdm_at_level_p", &mu_tdm_at_level_p, py::arg("copula"), py::arg("mu"), py::arg("p"),
          py::arg("abs_tol") = 1e-10);
    m.def("tdc", &tdc);
    m.def("gtdc", &gtdc);
    m.def("tail_spearman", &tail_spearman, py::arg("tdf"), py::arg("abs_tol") = 1e-10);
    m.def("tail_gini", &tail_gini, py::arg("tdf"), py::arg("abs_tol") = 1e-10);
    m.def("polynomial_tdm", &polynomial_tdm, py::arg("tdf"), py::arg("m1"), py::arg("m2"),
          py::arg("abs_tol") = 1e-10);
    m.def("coefficient_a", &coefficient_a, py::arg("mu"), py::arg("abs_tol") = 1e-10);
    m.def(
        "chi_bar",
        [](const TailDependenceFunction& tdf, std::vector<double> grid) {
            const auto r = chi_bar(tdf, std::move(grid));
            return py::make_tuple(r.value, r.argmax);
        },
        py::arg("tdf"), py::arg("b_grid") = std::vector<double>{});
    m.def("chi_star",
          [](const TailDependenceFunction& tdf, std::vector<double> grid) {
              return chi_star(tdf, std::move(grid));
          },
          py::arg("tdf"), py::arg("b_grid") = std::vector<double>{});
    m.def(
        "lambda_bar",
        [](const TailDependenceFunction& tdf, double t_min, int points) {
            const auto r = lambda_bar(tdf, t_min, points);
            return py::make_tuple(r.value, r.t_min);
        },
        py::arg("tdf"), py::arg("t_min") = 1e-4, py::arg("points") = 200);
    m.def("phi_tdc", [](const TailDependenceFunction& tdf, double b) {
        const auto r = phi_tdc(tdf, b);
        return py::make_tuple(r.chi, r.kappa);
    });

    py::class_<PseudoSample>(m, "PseudoSample")
        .def_property_readonly("uv", [](const PseudoSample& s) { return s.uv; })
        .def_property_readonly("had_ties", [](const PseudoSample& s) { return s.had_ties; })
        .def("n", &PseudoSample::n);

    m.def("pseudo_observations", &pseudo_observations);
    m.def("pseudo_from_known_margins", &pseudo_from_known_margins);

    py::class_<EmpiricalTDF>(m, "EmpiricalTDF")
        .def(py::init<const PseudoSample&, std::size_t>(), py::arg("sample"), py::arg("k"))
        .def("__call__", &EmpiricalTDF::operator())
        .def("k", &EmpiricalTDF::k)
        .def("n", &EmpiricalTDF::n);

    m.def(
        "plateau_find_k",
        [](const PseudoSample& sample, std::size_t k_min, std::size_t k_max) {
            PlateauOptions opts;
            opts.k_min = k_min;
            opts.k_max = k_max;
            const auto r = plateau_find_k(sample, opts);
            return py::make_tuple(r.k_star, r.plateau_found, r.curve);
        },
        py::arg("sample"), py::arg("k_min") = 0, py::arg("k_max") = 0);

    m.def(
        "estimate_measure",
        [](const PseudoSample& sample, std::size_t k, const std::string& measure, int L,
           double t_min) {
            EstimationOptions opts;
            opts.L = L;
            opts.t_min = t_min;
            return estimate_measure(sample, k, parse_measure(measure), opts);
        },
        py::arg("sample"), py::arg("k"), py::arg("measure"), py::arg("L") = 100,
        py::arg("t_min") = 0.1);

    m.def(
        "bootstrap",
        [](const PseudoSample& sample, std::size_t k, const std::vector<std::string>& measures,
           std::size_t B, double level, std::uint64_t seed) {
            std::vector<MeasureSpec> specs;
            specs.reserve(measures.size());
            for (const auto& name : measures) specs.push_back(parse_measure(name));
            BootstrapOptions opts;
            opts.B = B;
            opts.level = level;
            opts.seed = seed;
            py::list out;
            for (const auto& r : bootstrap(sample, k, specs, opts)) out.append(report_dict(r));
            return out;
        },
        py::arg("sample"), py::arg("k"), py::arg("measures"), py::arg("B") = 100,
        py::arg("level") = 0.95, py::arg("seed") = 1);

    m.def("parse_family", [](const std::string& text) {
        const auto fam = parse_family(text);
        py::dict d;
        d["canonical"] = fam.canonical;
        d["copula"] = fam.copula ? py::cast(*fam.copula) : py::none();
        d["tdf"] = fam.tdf ? py::cast(*fam.tdf) : py::none();
        return d;
    });
}
