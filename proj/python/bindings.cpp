#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ietlab/experiments.hpp"

namespace py = pybind11;
using namespace ietlab;

namespace {

// Points cross the boundary as power-basis coordinates, each an int or a "p/q" string.
FieldElement to_point(const FieldPtr& K, const std::vector<std::string>& coords) {
  if (coords.empty() || static_cast<int>(coords.size()) > K->degree())
    throw PreconditionError("point needs 1.." + std::to_string(K->degree()) + " coordinates");
  std::vector<Rational> c;
  for (const auto& s : coords) c.push_back(parse_rational(s));
  c.resize(K->degree(), Rational(0));
  return FieldElement(K, c);
}

std::vector<std::string> from_point(const FieldElement& x) {
  std::vector<std::string> out;
  for (const auto& q : x.coords()) out.push_back(to_string(q));
  return out;
}

std::vector<long> coeffs(const IntPoly& p) {
  std::vector<long> out;
  for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(i).get_si());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ietlab core";
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<CheckFailure>(m, "CheckFailure", PyExc_RuntimeError);

  py::class_<BuiltExample>(m, "Example")
      .def_property_readonly("name", [](const BuiltExample& b) { return b.example.name; })
      .def_property_readonly("permutation", [](const BuiltExample& b) { return b.model.iet.permutation().to_string(); })
      .def_property_readonly("rho", [](const BuiltExample& b) { return b.example.rho.to_double(); })
      .def_property_readonly("rho_exact", [](const BuiltExample& b) { return b.example.rho.to_string(); })
      .def_property_readonly("minpoly", [](const BuiltExample& b) { return coeffs(b.model.iet.field()->minpoly()); })
      .def_property_readonly("lengths",
                             [](const BuiltExample& b) {
                               std::vector<std::string> out;
                               for (const auto& l : b.model.iet.lengths()) out.push_back(l.to_string());
                               return out;
                             })
      .def_property_readonly("sigma",
                             [](const BuiltExample& b) { return b.model.sigma ? b.model.sigma->to_string() : ""; })
      .def_property_readonly("checks", [](const BuiltExample& b) { return b.checks; })
      .def("__repr__", [](const BuiltExample& b) { return "<Example " + b.example.name + ">"; });

  m.def("build", &build_example, py::arg("id"), py::arg("k") = 2,
        "Build 'quartic', 'e2star', 'ek' (with k) or a cycle 'PERM:LABELS'.");

  m.def(
      "survey",
      [](int n, int cls, int lmax) {
        auto classes = rauzy_graph(n);
        if (cls < 1 || cls > static_cast<int>(classes.size()))
          throw PreconditionError("class index out of range 1.." + std::to_string(classes.size()));
        std::vector<py::dict> rows;
        for (const auto& r : survey(classes[cls - 1], lmax)) {
          py::dict d;
          d["length"] = r.length;
          d["cycles"] = r.cycles;
          d["polys"] = r.polys;
          std::vector<std::vector<long>> ps;
          for (const auto& p : r.polynomials) ps.push_back(coeffs(p));
          d["polynomials"] = ps;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("n"), py::arg("cls"), py::arg("lmax"), "Rauzy cycle census of class cls (1-based) of size n.");

  m.def(
      "drift",
      [](const BuiltExample& b) {
        Drift d = drift_vector(b.model);
        std::vector<std::string> comps;
        for (const auto& c : d.components) comps.push_back(c.to_string());
        return py::make_tuple(d.zero, comps);
      },
      py::arg("example"));

  m.def(
      "encode",
      [](const BuiltExample& b, const std::vector<std::string>& x, int depth) {
        return Vershik(b.model).encode(to_point(b.model.iet.field(), x), depth).to_string();
      },
      py::arg("example"), py::arg("x"), py::arg("depth") = 512);

  m.def(
      "decode",
      [](const BuiltExample& b, const std::string& code) {
        return from_point(Vershik(b.model).decode(VershikCode::parse(code)));
      },
      py::arg("example"), py::arg("code"));

  m.def(
      "lattice_fill",
      [](int k, long D, long d, long long T) {
        CoverageReport r = lattice_fill(build_ek(k).model, D, d, T);
        if (!r.error.empty()) throw PreconditionError(r.error);
        py::dict out;
        out["total"] = r.total;
        out["reached"] = r.reached;
        out["seeds"] = r.seeds;
        out["iterations"] = r.iterations;
        out["max_orbit_iterations"] = r.max_orbit_iterations;
        out["complete"] = r.complete();
        return out;
      },
      py::arg("k"), py::arg("D"), py::arg("d"), py::arg("T"));

  m.def(
      "escape_fit",
      [](const BuiltExample& b, long long steps, std::optional<std::vector<std::string>> x, int jmin) {
        FieldElement p = x ? to_point(b.model.iet.field(), *x) : fixed_point_start(b.model);
        EscapeFit f = escape_fit(b.model, p, steps, jmin);
        py::dict out;
        out["slope"] = f.slope;
        out["intercept"] = f.intercept;
        out["residual"] = f.residual;
        std::vector<py::tuple> cp;
        for (const auto& c : f.checkpoints) cp.push_back(py::make_tuple(c.k, c.norm, c.envelope));
        out["checkpoints"] = cp;
        return out;
      },
      py::arg("example"), py::arg("steps"), py::arg("x") = py::none(), py::arg("jmin") = 10);

  m.def(
      "v_row",
      [](int k) {
        VRow r = v_row(k);
        py::dict out;
        out["k"] = r.k;
        out["v"] = static_cast<double>(r.report.v);
        out["loop_length"] = r.loop_length;
        out["power_identity"] = r.report.power_identity;
        out["sigma"] = r.sigma.to_string();
        return out;
      },
      py::arg("k"));

  m.def(
      "density",
      [](const BuiltExample& b, const std::string& a, const std::string& c, long radius) {
        const FieldPtr& K = b.model.iet.field();
        DensityEstimate d = density_estimate(b.model, {{to_point(K, {a}), to_point(K, {c})}}, radius);
        return d.estimate.get_d();
      },
      py::arg("example"), py::arg("a"), py::arg("b"), py::arg("radius"));

  m.def(
      "prop13",
      [](long W, int samples, long long cap, unsigned seed) {
        Prop13Report r = prop13_evidence(build_e2star(), W, samples, cap, 512, seed);
        py::dict out;
        out["periodic"] = r.periodic;
        out["samples"] = r.samples;
        out["window_points"] = r.window_points;
        out["reached"] = r.reached;
        out["labels"] = r.labels;
        out["pass"] = r.pass();
        return out;
      },
      py::arg("W") = 20, py::arg("samples") = 100, py::arg("cap") = 10000000LL, py::arg("seed") = 1u);
}
