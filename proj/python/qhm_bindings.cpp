#include "pybind11/complex.h"
#include "pybind11/pybind11.h"
#include "pybind11/stl.h"

#include "qhm/classify.hpp"
#include "qhm/dsl.hpp"
#include "qhm/repr_norm.hpp"
#include "qhm/traces.hpp"
#include "qhm/verify.hpp"

namespace py = pybind11;
using namespace qhm;

namespace {

Params make_params(int c, const std::string& mu, const std::string& nu) {
  return Params(c, parse_scalar(mu), parse_scalar(nu));
}

Point make_point(const std::string& x, const std::string& y) {
  return Point{parse_scalar(x), parse_scalar(y)};
}

// arbitrary-precision integers cross the boundary losslessly as Python ints
py::object big_int(const Int& v) {
  std::string s = v.str();
  PyObject* o = PyLong_FromString(s.c_str(), nullptr, 10);
  if (!o) throw py::error_already_set();
  return py::reinterpret_steal<py::object>(o);
}

py::dict group_dict(const TraceRangeGroup& g) {
  py::list rows;
  for (const auto& r : g.rows) {
    py::list row;
    for (const Int& e : r) row.append(big_int(e));
    rows.append(row);
  }
  py::dict out;
  out["d"] = g.d;
  out["D"] = big_int(g.D);
  out["rows"] = rows;
  out["text"] = to_string(g);
  return out;
}

const char* kind_name(IsoKind k) {
  switch (k) {
    case IsoKind::Isomorphic: return "isomorphic";
    case IsoKind::NotIsomorphic: return "not-isomorphic";
    default: return "rational-orbit-only";
  }
}

}  // namespace

PYBIND11_MODULE(_qhm, m) {
  m.doc() = "deformed Heisenberg manifold algebras: exact parameters, traces, classification";

  py::class_<Params>(m, "Params")
      .def(py::init(&make_params), py::arg("c"), py::arg("mu"), py::arg("nu"))
      .def_property_readonly("c", &Params::c)
      .def_property_readonly("mu", [](const Params& p) { return to_string(p.mu()); })
      .def_property_readonly("nu", [](const Params& p) { return to_string(p.nu()); })
      .def_property_readonly("d", &Params::d)
      .def("__repr__", [](const Params& p) {
        return "Params(c=" + std::to_string(p.c()) + ", mu=" + to_string(p.mu()) +
               ", nu=" + to_string(p.nu()) + ")";
      });

  py::class_<QhmElement>(m, "Element")
      .def_static("from_json", &element_from_json, py::arg("text"))
      .def_static("unit", &QhmElement::unit, py::arg("params"))
      .def_static(
          "single",
          [](const Params& pr, int p, const std::string& expr) {
            return QhmElement::single(pr, p, parse_expr(expr));
          },
          py::arg("params"), py::arg("p"), py::arg("expr"))
      .def("support", &QhmElement::support)
      .def(
          "value",
          [](const QhmElement& a, int p, const std::string& x, const std::string& y) {
            return a.value(p, make_point(x, y));
          },
          py::arg("p"), py::arg("x"), py::arg("y"))
      .def("to_json", &element_to_json)
      .def("adjoint", [](const QhmElement& a) { return adjoint(a); })
      .def("__mul__", [](const QhmElement& a, const QhmElement& b) { return multiply(a, b); })
      .def("__add__", [](const QhmElement& a, const QhmElement& b) { return a + b; });

  m.def(
      "trace",
      [](const QhmElement& a, int n) { return trace_value(a, Measure(HaarMeasure{n})); },
      py::arg("element"), py::arg("n") = 512,
      "Tracial state value under the Haar measure on an n x n split grid.");

  m.def(
      "trace_range", [](const Params& pr) { return group_dict(trace_range(pr)); },
      py::arg("params"),
      "Canonical presentation of Z + 2*mu*Z + 2*nu*Z as a dict with keys d, D, rows, text.");

  m.def(
      "decide_isomorphism",
      [](const Params& a, const Params& b) {
        IsoVerdict v = decide_isomorphism(a, b);
        py::dict out;
        out["kind"] = kind_name(v.kind);
        if (v.kind == IsoKind::RationalCaseOrbitOnly) out["orbit_equal"] = v.orbit_equal;
        out["justification"] = v.justification;
        return out;
      },
      py::arg("first"), py::arg("second"));

  m.def(
      "norm_lower_bound",
      [](const QhmElement& a, const std::vector<int>& grids, const std::vector<int>& cutoffs) {
        if (grids.size() != cutoffs.size())
          throw std::invalid_argument("grids and cutoffs must pair up");
        std::vector<TruncationSpec> specs;
        for (size_t i = 0; i < grids.size(); ++i) {
          int n = grids[i];
          if (n < 1) throw std::invalid_argument("grid resolution must be positive");
          TruncationSpec s;
          s.cutoff = cutoffs[i];
          for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
              s.grid.push_back(Point{ExactScalar(Rational(ix, n)), ExactScalar(Rational(iy, n))});
          specs.push_back(std::move(s));
        }
        return norm_lower_bound(a, specs);
      },
      py::arg("element"), py::arg("grids"), py::arg("cutoffs"),
      "Certified lower bounds for the operator norm along nested lattice truncations.");

  m.def(
      "verify_cocycle",
      [](const Params& pr, uint64_t seed, int samples) {
        return report_json(verify_cocycle(pr, seed, samples));
      },
      py::arg("params"), py::arg("seed") = 1, py::arg("samples") = 400);
  m.def(
      "verify_embedding",
      [](const Params& pr, uint64_t seed, int pairs, int samples) {
        return report_json(verify_embedding(pr, seed, pairs, samples));
      },
      py::arg("params"), py::arg("seed") = 1, py::arg("pairs") = 5, py::arg("samples") = 64);
  m.def(
      "verify_partition",
      [](const Params& pr, uint64_t seed, int samples) {
        return report_json(verify_partition(pr, seed, samples));
      },
      py::arg("params"), py::arg("seed") = 1, py::arg("samples") = 200);
  m.def(
      "verify_covariance",
      [](const Params& pr, uint64_t seed, int samples) {
        return report_json(verify_covariance(pr, seed, samples));
      },
      py::arg("params"), py::arg("seed") = 1, py::arg("samples") = 200);
  m.def(
      "verify_tracial",
      [](const Params& pr, uint64_t seed, int pairs, int grid_n) {
        return report_json(verify_tracial(pr, seed, pairs, grid_n));
      },
      py::arg("params"), py::arg("seed") = 1, py::arg("pairs") = 4, py::arg("grid_n") = 256);
  m.def("full_report", &full_report, py::arg("seed"),
        "Every verification suite at reference parameters; byte-stable per seed.");
}
