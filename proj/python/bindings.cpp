#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nqp/errors.hpp"
#include "nqp/generate.hpp"
#include "nqp/instance_io.hpp"
#include "nqp/reduction.hpp"
#include "nqp/reservoir.hpp"
#include "nqp/solvers.hpp"
#include "nqp/validate.hpp"
#include "nqp/verify.hpp"

namespace py = pybind11;
using namespace nqp;

namespace {

py::object to_py(Wide v) { return py::reinterpret_steal<py::object>(PyLong_FromString(to_string(v).c_str(), nullptr, 10)); }
py::object to_py(double v) { return py::float_(v); }
py::object to_py(const BigInt& v)
{
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}
py::object to_py(const Rational& v)
{
    static const py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(BigInt(numerator(v))), to_py(BigInt(denominator(v))));
}

py::dict certificate_dict(const ReductionCertificate& c)
{
    py::dict d;
    d["s1"] = c.s1;
    d["s2"] = c.s2;
    d["d"] = c.d;
    d["n"] = c.n;
    d["level_count"] = c.level_count;
    d["scale"] = to_py(c.scale);
    d["D"] = to_py(c.two_value_offset);
    d["offset"] = to_py(c.objective_offset);
    if (c.penalty) {
        const auto& p = *c.penalty;
        d["Lambda"] = to_py(p.lambda);
        d["s_star"] = p.s_star;
        d["s_star_star"] = p.s_star_all;
        d["K"] = to_py(p.k);
        d["K_prime"] = to_py(p.k_prime);
        d["L_H"] = to_py(p.l_h);
        d["L_G"] = to_py(p.l_g);
        d["M"] = to_py(p.m);
    }
    return d;
}

template <class T>
void bind_domain(py::module_& m, const char* instance_name, const char* result_name)
{
    py::class_<Instance<T>>(m, instance_name)
        .def(py::init([](std::size_t n, std::vector<T> q, std::vector<T> c, const LevelSet& levels, bool psd) {
                 return make_instance<T>(n, std::move(q), std::move(c), levels, psd);
             }),
             py::arg("n"), py::arg("q"), py::arg("c"), py::arg("levels"), py::arg("psd_declared") = false)
        .def_readonly("n", &Instance<T>::n)
        .def_readonly("q", &Instance<T>::q)
        .def_readonly("c", &Instance<T>::c)
        .def_readonly("levels", &Instance<T>::levels)
        .def_readonly("psd_declared", &Instance<T>::psd_declared)
        .def_property_readonly("domain", [](const Instance<T>&) { return to_string(Instance<T>::domain); })
        .def("__eq__", [](const Instance<T>& a, const Instance<T>& b) { return a == b; });

    py::class_<SolveResult<T>>(m, result_name)
        .def_property_readonly("w", [](const SolveResult<T>& r) { return r.best.w; })
        .def_property_readonly("objective", [](const SolveResult<T>& r) { return to_py(r.best.objective); })
        .def_readonly("evaluations", &SolveResult<T>::evaluations)
        .def_readonly("iterations", &SolveResult<T>::iterations)
        .def_readonly("optimal_proven", &SolveResult<T>::optimal_proven)
        .def_readonly("seed", &SolveResult<T>::seed);

    m.def("evaluate_objective",
          [](const Instance<T>& inst, const std::vector<Int>& w) { return to_py(evaluate_objective(inst, w)); },
          py::arg("inst"), py::arg("w"));
    m.def("validate_instance",
          [](const Instance<T>& inst) {
              py::list out;
              for (const auto& v : validate_instance(inst).violations)
                  out.append(py::make_tuple(v.severity == Severity::error ? "error" : "warning", v.message));
              return out;
          },
          py::arg("inst"));
    m.def("solve_brute_force",
          [](const Instance<T>& inst, std::uint64_t max_evaluations) {
              SolverBudget budget;
              budget.max_evaluations = max_evaluations;
              py::gil_scoped_release release;
              return solve_brute_force(inst, budget);
          },
          py::arg("inst"), py::arg("max_evaluations") = SolverBudget{}.max_evaluations);
    m.def("solve_local_search",
          [](const Instance<T>& inst, std::optional<std::vector<Int>> init, std::uint64_t seed) {
              const auto start = init ? *init : random_assignment(inst, seed);
              py::gil_scoped_release release;
              return solve_local_search(inst, start, seed);
          },
          py::arg("inst"), py::arg("init") = py::none(), py::arg("seed") = 0);
    m.def("solve_anneal",
          [](const Instance<T>& inst, std::uint64_t seed, double t_initial, double t_final, std::size_t steps,
             std::size_t moves_per_step) {
              AnnealSchedule schedule{t_initial, t_final, steps, moves_per_step};
              py::gil_scoped_release release;
              return solve_anneal(inst, schedule, seed);
          },
          py::arg("inst"), py::arg("seed") = 0, py::arg("t_initial") = AnnealSchedule{}.t_initial,
          py::arg("t_final") = AnnealSchedule{}.t_final, py::arg("steps") = AnnealSchedule{}.steps,
          py::arg("moves_per_step") = AnnealSchedule{}.moves_per_step);
    m.def("solve_multi_start",
          [](const Instance<T>& inst, std::uint64_t seed, std::size_t starts, const std::string& inner,
             std::size_t threads) {
              MultiStartOptions options;
              options.starts = starts;
              options.threads = threads;
              if (inner == "anneal")
                  options.inner = InnerSolver::anneal;
              else if (inner != "local")
                  throw py::value_error("inner must be 'local' or 'anneal'");
              py::gil_scoped_release release;
              return solve_multi_start(inst, seed, options);
          },
          py::arg("inst"), py::arg("seed") = 0, py::arg("starts") = 16, py::arg("inner") = "local",
          py::arg("threads") = 0);
    m.def("serialize_instance", [](const Instance<T>& inst) { return serialize_instance(inst); }, py::arg("inst"));
}

}  // namespace

PYBIND11_MODULE(_nqp, m)
{
    m.doc() = "Quadratic programming over finite integer level sets.";

    const auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    const auto invalid = py::register_exception<InvalidInstance>(m, "InvalidInstance", error.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", invalid.ptr());
    py::register_exception<NotInLevelSet>(m, "NotInLevelSet", invalid.ptr());
    py::register_exception<ParseError>(m, "ParseError", invalid.ptr());
    py::register_exception<OverflowError>(m, "OverflowError", error.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
    py::register_exception<NotBinary>(m, "NotBinary", error.ptr());
    py::register_exception<InvariantViolation>(m, "InvariantViolation", error.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", error.ptr());

    py::class_<LevelSet>(m, "LevelSet")
        .def(py::init<std::vector<Int>>(), py::arg("values"))
        .def_property_readonly("values", [](const LevelSet& s) { return std::vector<Int>(s.values().begin(), s.values().end()); })
        .def("__len__", &LevelSet::size)
        .def("__contains__", &LevelSet::contains)
        .def("__eq__", [](const LevelSet& a, const LevelSet& b) { return a == b; })
        .def("__repr__", [](const LevelSet& s) {
            std::string out = "LevelSet([";
            for (std::size_t j = 0; j < s.size(); ++j) out += (j ? ", " : "") + std::to_string(s[j]);
            return out + "])";
        });

    bind_domain<Int>(m, "IntInstance", "IntSolveResult");
    bind_domain<double>(m, "RealInstance", "RealSolveResult");

    m.def("generate_random_instance", &generate_random_instance, py::arg("n"), py::arg("levels"), py::arg("seed"),
          py::arg("entry_bound"));
    m.def("generate_random_level_set", &generate_random_level_set, py::arg("count"), py::arg("lo"), py::arg("hi"),
          py::arg("seed"));
    m.def("parse_instance", [](const std::string& text) { return parse_instance(text); }, py::arg("text"));

    m.def("reduce_ubqp_to_unqp",
          [](const IntInstance& ubqp, const LevelSet& levels, bool allow_indefinite) {
              const auto r = reduce_ubqp_to_unqp(ubqp, levels, ReductionOptions{allow_indefinite});
              return py::make_tuple(r.instance, certificate_dict(r.certificate));
          },
          py::arg("ubqp"), py::arg("levels"), py::arg("allow_indefinite") = false);
    m.def("lift_solution", [](const std::vector<Int>& t, Int s1, Int s2) { return lift_solution(t, s1, s2); },
          py::arg("t"), py::arg("s1"), py::arg("s2"));
    m.def("penalty_g", [](const std::vector<Int>& t, Int s1, Int s2) { return to_py(penalty_g(t, s1, s2)); },
          py::arg("t"), py::arg("s1"), py::arg("s2"));
    m.def("check_reduction",
          [](const IntInstance& ubqp, const LevelSet& levels, bool exhaustive) {
              const auto r = check_reduction(ubqp, levels, exhaustive);
              py::dict d;
              d["sound"] = r.sound;
              d["values_agree"] = r.values_agree;
              d["ubqp_optimum"] = to_py(r.ubqp_optimum);
              d["unqp_optimum"] = to_py(r.unqp_optimum);
              d["failures"] = r.failures;
              d["passed"] = r.passed();
              return d;
          },
          py::arg("ubqp"), py::arg("levels"), py::arg("exhaustive") = false);

    auto rc = m.def_submodule("reservoir", "Echo-state network readout training.");
    py::class_<reservoir::EsnParams>(rc, "EsnParams")
        .def_readonly("n", &reservoir::EsnParams::n)
        .def_readonly("k_in", &reservoir::EsnParams::k_in)
        .def_readonly("w", &reservoir::EsnParams::w)
        .def_readonly("w_in", &reservoir::EsnParams::w_in)
        .def_readonly("spectral_radius", &reservoir::EsnParams::spectral_radius)
        .def_readonly("seed", &reservoir::EsnParams::seed);
    py::class_<reservoir::StateMatrix>(rc, "StateMatrix")
        .def(py::init([](Eigen::MatrixXd x, Eigen::VectorXd y) { return reservoir::StateMatrix{std::move(x), std::move(y), 0}; }),
             py::arg("x"), py::arg("y"))
        .def_readwrite("x", &reservoir::StateMatrix::x)
        .def_readwrite("y", &reservoir::StateMatrix::y)
        .def_readonly("washout", &reservoir::StateMatrix::washout);

    rc.def("make_esn",
           [](std::size_t n, std::size_t k_in, std::uint64_t seed, double rho, double input_scale, double density) {
               return reservoir::make_esn({n, k_in, seed, rho, input_scale, density});
           },
           py::arg("n") = 30, py::arg("k_in") = 1, py::arg("seed") = 0, py::arg("spectral_radius") = 0.9,
           py::arg("input_scale") = 0.5, py::arg("density") = 0.1);
    rc.def("spectral_radius", &reservoir::spectral_radius, py::arg("w"));
    rc.def("drive_reservoir",
           [](const reservoir::EsnParams& esn, const Eigen::MatrixXd& u, std::size_t washout) {
               return reservoir::drive_reservoir(esn, u, washout);
           },
           py::arg("esn"), py::arg("u"), py::arg("washout"));
    rc.def("build_regression_qp", &reservoir::build_regression_qp, py::arg("states"), py::arg("levels"));
    rc.def("delay_recall_task",
           [](std::size_t length, std::size_t delay, std::uint64_t seed) {
               const auto t = reservoir::delay_recall_task(length, delay, seed);
               return py::make_tuple(t.u, t.y);
           },
           py::arg("length"), py::arg("delay"), py::arg("seed"));
    rc.def("train_discrete_readout",
           [](const reservoir::StateMatrix& states, const LevelSet& levels, const std::string& solver,
              std::uint64_t seed, double ridge) {
               reservoir::DiscreteTrainingOptions options;
               options.seed = seed;
               options.ridge = ridge;
               if (solver == "brute")
                   options.solver = reservoir::DiscreteSolver::brute_force;
               else if (solver == "local")
                   options.solver = reservoir::DiscreteSolver::local_search;
               else if (solver == "anneal")
                   options.solver = reservoir::DiscreteSolver::anneal;
               else if (solver != "multi")
                   throw py::value_error("solver must be one of brute, local, anneal, multi");
               const auto r = reservoir::train_discrete_readout(states, levels, options);
               py::dict d;
               d["continuous_w"] = r.continuous.w_out;
               d["continuous_nmse"] = r.continuous.nmse;
               d["discrete_w"] = r.discrete.w_out;
               d["discrete_nmse"] = r.discrete.nmse;
               d["state_scale"] = r.state_scale;
               d["discrete_objective"] = r.discrete_objective;
               d["continuous_objective"] = r.continuous_objective;
               d["gap"] = r.gap;
               return d;
           },
           py::arg("states"), py::arg("levels"), py::arg("solver") = "multi", py::arg("seed") = 0,
           py::arg("ridge") = reservoir::DiscreteTrainingOptions{}.ridge);
}
