#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitstep/errors.hpp"
#include "splitstep/harness.hpp"
#include "splitstep/problems.hpp"
#include "splitstep/splitting.hpp"

namespace py = pybind11;
using namespace splitstep;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& arr) {
  if (arr.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto* p = arr.data();
  return Matrix(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)),
                std::vector<double>(p, p + arr.size()));
}

Vector to_vector(const DoubleArray& arr) {
  if (arr.ndim() != 1) throw DimensionError("expected a 1-D array");
  const auto* p = arr.data();
  return Vector(std::vector<double>(p, p + arr.size()));
}

py::array_t<double> from_matrix(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const Vector& v) {
  py::array_t<double> out(v.size());
  std::copy(v.entries().begin(), v.entries().end(), out.mutable_data());
  return out;
}

QuadRule rule_from(const std::string& name) {
  auto rule = QuadRule::parse(name);
  if (!rule) throw std::invalid_argument("unknown rule '" + name + "'");
  return *rule;
}

py::dict report_to_dict(const ConvergenceReport& report) {
  py::list rows;
  for (const ReportRow& r : report.rows) {
    py::dict row;
    row["iterations"] = r.iterations;
    row["partitions"] = r.partitions;
    row["tau"] = r.tau;
    row["errors"] = r.errors ? py::cast(*r.errors) : py::none();
    row["failure"] = r.failure;
    rows.append(row);
  }
  py::dict orders;
  for (const OrderEstimate& o : report.orders) {
    orders[py::int_(o.iterations)] = o.order ? py::cast(*o.order) : py::none();
  }
  py::dict out;
  out["rule"] = std::string(report.rule.name());
  out["floor"] = report.floor;
  out["rows"] = rows;
  out["orders"] = orders;
  out["csv"] = emit_csv(report);
  return out;
}

}  // namespace

PYBIND11_MODULE(_splitstep, m) {
  m.doc() = "Iterative operator splitting with exponential propagators";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);
  py::register_exception<GridIncompatible>(m, "GridIncompatible", PyExc_ValueError);
  py::register_exception<InsufficientData>(m, "InsufficientData", PyExc_RuntimeError);
  py::register_exception<SingularPotential>(m, "SingularPotential", PyExc_ValueError);

  m.def("expm", [](const DoubleArray& a, double t) { return from_matrix(expm(to_matrix(a), t)); },
        py::arg("m"), py::arg("t") = 1.0);
  m.def("phi_k", [](const DoubleArray& a, double tau, int k) { return from_matrix(phi_k(to_matrix(a), tau, k)); },
        py::arg("m"), py::arg("tau"), py::arg("k"));
  m.def(
      "laplace_c2",
      [](const DoubleArray& a, const DoubleArray& b, const DoubleArray& c, double t) {
        return from_vector(laplace_c2(to_matrix(a), to_matrix(b), to_vector(c), t));
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("t"));
  m.def(
      "laplace_c3",
      [](const DoubleArray& a, const DoubleArray& b, const DoubleArray& c, double t) {
        return from_vector(laplace_c3(to_matrix(a), to_matrix(b), to_vector(c), t));
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("t"));
  m.def(
      "block_semigroup_propagator",
      [](const DoubleArray& a, const DoubleArray& b, double t) {
        return from_matrix(block_semigroup_propagator(to_matrix(a), to_matrix(b), t));
      },
      py::arg("a"), py::arg("b"), py::arg("t"));
  m.def(
      "exact_solution_2x2",
      [](double l1, double l2, double t) { return from_vector(exact_solution_2x2(l1, l2, t)); },
      py::arg("lambda1"), py::arg("lambda2"), py::arg("t"));

  m.def(
      "solve_split",
      [](const DoubleArray& a, const DoubleArray& b, const DoubleArray& u0, double t0, double t_end,
         int partitions, int iterations, const std::string& rule, double h) {
        SplitProblem p;
        p.a = to_matrix(a);
        p.b = to_matrix(b);
        p.u0 = to_vector(u0);
        p.t0 = t0;
        p.t_end = t_end;
        return from_vector(iterative_split_solve(p, partitions, iterations, rule_from(rule), h));
      },
      py::arg("a"), py::arg("b"), py::arg("u0"), py::arg("t0") = 0.0, py::arg("t_end") = 1.0,
      py::arg("partitions") = 10, py::arg("iterations") = 3, py::arg("rule") = "bode", py::arg("h") = 1e-3,
      "Iterative splitting of u' = (A + B) u with constant operators.");

  m.def(
      "solve_oscillator",
      [](double energy, int l, double r0, double r_end, int partitions, int iterations, const std::string& rule,
         double h) {
        OscillatorSpec spec;
        spec.energy = energy;
        spec.l = l;
        spec.r0 = r0;
        spec.r_end = r_end;
        const SplitProblem p = radial_oscillator(spec);
        const auto traj = iterative_split_trajectory(p, partitions, iterations, rule_from(rule), h);
        py::array_t<double> out({traj.size(), std::size_t{4}});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < traj.size(); ++i) {
          view(i, 0) = traj[i].t;
          view(i, 1) = traj[i].state[0];
          view(i, 2) = traj[i].state[1];
          view(i, 3) = oscillator_energy(spec, traj[i].t, traj[i].state);
        }
        return out;
      },
      py::arg("energy") = 0.5, py::arg("l") = 0, py::arg("r0") = 1.0, py::arg("r_end") = 6.0,
      py::arg("partitions") = 100, py::arg("iterations") = 4, py::arg("rule") = "bode", py::arg("h") = 1e-3,
      "Trajectory rows (r, q, p, H) of the radial oscillator.");

  m.def(
      "run_study",
      [](const std::string& rule, std::vector<int> iterations, std::vector<int> partitions, double lambda1,
         double lambda2, double t_end, double h, std::optional<double> floor) {
        StudyConfig cfg;
        cfg.rule = rule_from(rule);
        cfg.iterations = std::move(iterations);
        cfg.partitions = std::move(partitions);
        cfg.problem = DahlquistParams{lambda1, lambda2, t_end};
        cfg.h = h;
        cfg.floor = floor;
        ConvergenceReport report;
        {
          py::gil_scoped_release release;
          report = run_study(cfg);
        }
        return report_to_dict(report);
      },
      py::arg("rule") = "trapezoid", py::arg("iterations") = std::vector<int>{2, 3, 4, 5, 6},
      py::arg("partitions") = std::vector<int>{1, 10, 100}, py::arg("lambda1") = 0.25, py::arg("lambda2") = 0.5,
      py::arg("t_end") = 1.0, py::arg("h") = 1e-3, py::arg("floor") = py::none(),
      "Convergence study on the 2x2 exchange problem.");

  m.def(
      "estimate_order",
      [](const std::vector<std::pair<double, double>>& tau_err, double floor) {
        return estimate_order(tau_err, floor);
      },
      py::arg("tau_err"), py::arg("floor"));
}
