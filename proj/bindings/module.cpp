#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "armchair/cli.hpp"
#include "armchair/errors.hpp"
#include "armchair/flatband.hpp"
#include "armchair/resonance.hpp"
#include "armchair/spectrum.hpp"

namespace py = pybind11;
using namespace armchair;

namespace {

py::list mat4_to_list(const Mat4& m) {
  py::list rows;
  for (int i = 0; i < 4; ++i) {
    py::list row;
    for (int j = 0; j < 4; ++j) row.append(m(i, j));
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_armchair, m) {
  m.doc() = "Spectral data of Schrödinger operators on armchair nanotube "
            "graphs: Hill data, monodromy matrices, Lyapunov branches, "
            "bands, flat bands and resonances.";

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<pole_error>(m, "PoleError", PyExc_ArithmeticError);
  py::register_exception<degenerate_error>(m, "DegenerateError",
                                           PyExc_ArithmeticError);
  py::register_exception<numerical_error>(m, "NumericalError",
                                          PyExc_RuntimeError);

  py::class_<Potential>(m, "Potential")
      .def_static("zero", &Potential::zero)
      .def_static("parse", &Potential::parse, py::arg("text"))
      .def_static("delta_family", &Potential::delta_family, py::arg("v"),
                  py::arg("eps"), py::arg("k"), py::arg("N"))
      .def("density", &Potential::density, py::arg("t"))
      .def("is_even", &Potential::is_even, py::arg("tol") = 1e-12)
      .def("serialize", &Potential::serialize)
      .def("to_json", &Potential::to_json)
      .def_static("from_json", &Potential::from_json, py::arg("text"))
      .def("__eq__", &Potential::operator==)
      .def("__repr__", [](const Potential& p) {
        std::ostringstream os;
        os << "Potential(" << p.serialize() << ")";
        return os.str();
      });

  py::class_<HillData>(m, "HillData")
      .def_readonly("lam", &HillData::lambda)
      .def_readonly("theta1", &HillData::theta1)
      .def_readonly("phi1", &HillData::phi1)
      .def_readonly("theta1p", &HillData::theta1p)
      .def_readonly("phi1p", &HillData::phi1p)
      .def_readonly("F", &HillData::F)
      .def_readonly("Fm", &HillData::Fm)
      .def("wronskian_residual",
           [](const HillData& h) { return wronskian_residual(h); });

  py::class_<TubeParams>(m, "TubeParams")
      .def(py::init<int, int>(), py::arg("N"), py::arg("k"))
      .def_readonly("N", &TubeParams::N)
      .def_readonly("k", &TubeParams::k)
      .def_readonly("s", &TubeParams::s)
      .def_readonly("s_k", &TubeParams::s_k)
      .def_readonly("c_k", &TubeParams::c_k)
      .def_readonly("s_2k", &TubeParams::s_2k);

  m.def("fundamental_solutions",
        [](const Potential& q, cdouble lam) {
          return fundamental_solutions(q, lam);
        },
        py::arg("q"), py::arg("lam"));
  m.def("dirichlet_eigenvalues",
        [](const Potential& q, double lmax) {
          return dirichlet_eigenvalues(q, lmax);
        },
        py::arg("q"), py::arg("lambda_max"));
  m.def("neumann_eigenvalues",
        [](const Potential& q, double lmax) {
          return neumann_eigenvalues(q, lmax);
        },
        py::arg("q"), py::arg("lambda_max"));

  py::class_<HillEdge>(m, "HillEdge")
      .def_readonly("lam", &HillEdge::lambda)
      .def_readonly("n", &HillEdge::n)
      .def_readonly("upper", &HillEdge::upper)
      .def_readonly("periodic", &HillEdge::periodic);
  m.def("hill_band_edges",
        [](const Potential& q, double lmax) {
          return hill_band_edges(q, lmax);
        },
        py::arg("q"), py::arg("lambda_max"));

  m.def("build_monodromy",
        [](const HillData& h, const TubeParams& p, bool regularized) {
          return mat4_to_list(build_monodromy(h, p, regularized).m);
        },
        py::arg("h"), py::arg("p"), py::arg("regularized") = false);
  m.def("build_monodromy_oracle",
        [](const HillData& h, const TubeParams& p) {
          return mat4_to_list(build_monodromy_oracle(h, p).m);
        },
        py::arg("h"), py::arg("p"));

  py::class_<IdentityReport>(m, "IdentityReport")
      .def_readonly("det", &IdentityReport::det)
      .def_readonly("trace0", &IdentityReport::trace0)
      .def_readonly("trace_k", &IdentityReport::trace_k)
      .def_readonly("trace0_sq", &IdentityReport::trace0_sq)
      .def_readonly("trace_k_sq", &IdentityReport::trace_k_sq)
      .def_readonly("symplectic", &IdentityReport::symplectic)
      .def_readonly("oracle", &IdentityReport::oracle)
      .def("max", &IdentityReport::max);
  m.def("verify_identities", &verify_identities, py::arg("h"), py::arg("p"));

  py::class_<LyapunovData>(m, "LyapunovData")
      .def_readonly("lam", &LyapunovData::lambda)
      .def_readonly("xi", &LyapunovData::xi)
      .def_readonly("rho", &LyapunovData::rho)
      .def_readonly("f1", &LyapunovData::f1)
      .def_readonly("f2", &LyapunovData::f2)
      .def_readonly("at_branch_point", &LyapunovData::at_branch_point);
  m.def("lyapunov_eval", &lyapunov_eval, py::arg("h"), py::arg("p"));
  m.def("xi_rho", &xi_rho, py::arg("h"), py::arg("p"));

  py::class_<Band>(m, "Band")
      .def_readonly("lo", &Band::lo)
      .def_readonly("hi", &Band::hi)
      .def_readonly("branch", &Band::branch)
      .def_readonly("k", &Band::k)
      .def_property_readonly(
          "lo_type", [](const Band& b) { return edge_type_name(b.lo_type); })
      .def_property_readonly(
          "hi_type", [](const Band& b) { return edge_type_name(b.hi_type); });
  py::class_<FlatBand>(m, "FlatBand")
      .def_readonly("mu", &FlatBand::mu)
      .def_readonly("n", &FlatBand::n);
  py::class_<KSpectrum>(m, "KSpectrum")
      .def_readonly("k", &KSpectrum::k)
      .def_readonly("degenerate", &KSpectrum::degenerate)
      .def_readonly("bands", &KSpectrum::bands);
  py::class_<FullSpectrum>(m, "FullSpectrum")
      .def_readonly("per_k", &FullSpectrum::per_k)
      .def_readonly("flat", &FullSpectrum::flat)
      .def_readonly("ac_union", &FullSpectrum::ac_union);

  m.def("bands_for_k",
        [](const Potential& q, const TubeParams& p, double lo, double hi,
           int grid) { return bands_for_k(q, p, lo, hi, grid); },
        py::arg("q"), py::arg("p"), py::arg("lo"), py::arg("hi"),
        py::arg("grid") = 512);
  m.def("flat_bands",
        [](const Potential& q, double lo, double hi) {
          return flat_bands(q, lo, hi);
        },
        py::arg("q"), py::arg("lo"), py::arg("hi"));
  m.def("full_spectrum",
        [](const Potential& q, int N, double lo, double hi, int grid) {
          return full_spectrum(q, N, lo, hi, grid);
        },
        py::arg("q"), py::arg("N"), py::arg("lo"), py::arg("hi"),
        py::arg("grid") = 512);
  m.def("branch_samples",
        [](const Potential& q, const TubeParams& p, double lo, double hi,
           int npts) {
          std::vector<py::tuple> rows;
          for (const auto& s : branch_samples(q, p, lo, hi, npts))
            rows.push_back(py::make_tuple(s.lambda, s.f1, s.f2));
          return rows;
        },
        py::arg("q"), py::arg("p"), py::arg("lo"), py::arg("hi"),
        py::arg("npts"),
        "Continuity-tracked (lambda, F_k1, F_k2) samples for band diagrams.");
  m.def("merge_intervals", &merge_intervals, py::arg("intervals"),
        py::arg("tol") = 1e-9);

  py::class_<Resonance> res(m, "Resonance");
  res.def_readonly("lam", &Resonance::lambda)
      .def_readonly("k", &Resonance::k)
      .def_readonly("multiplicity", &Resonance::multiplicity)
      .def_readonly("residual", &Resonance::residual)
      .def_property_readonly("kind", [](const Resonance& r) {
        switch (r.kind) {
          case Resonance::Kind::real_simple: return "real";
          case Resonance::Kind::real_double: return "real-double";
          case Resonance::Kind::complex_point: return "complex-pair";
        }
        return "?";
      });
  py::class_<Rect>(m, "Rect")
      .def(py::init([](double re_lo, double re_hi, double im_lo,
                       double im_hi) {
             return Rect{re_lo, re_hi, im_lo, im_hi};
           }),
           py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"),
           py::arg("im_hi"));

  m.def("real_resonances",
        [](const Potential& q, const TubeParams& p, double lo, double hi) {
          return real_resonances(q, p, lo, hi);
        },
        py::arg("q"), py::arg("p"), py::arg("lo"), py::arg("hi"));
  m.def("complex_resonances",
        [](const Potential& q, const TubeParams& p, const Rect& rect) {
          return complex_resonances(q, p, rect);
        },
        py::arg("q"), py::arg("p"), py::arg("rect"));
  m.def("winding_number",
        [](const Potential& q, const TubeParams& p, const Rect& rect) {
          return winding_number(q, p, rect);
        },
        py::arg("q"), py::arg("p"), py::arg("rect"));
  m.def("delta_asymptotics", &delta_asymptotics, py::arg("p"), py::arg("n"),
        py::arg("eps"));

  py::class_<FlatBandEigenfunction>(m, "FlatBandEigenfunction")
      .def_readonly("mu", &FlatBandEigenfunction::mu)
      .def_readonly("k", &FlatBandEigenfunction::k)
      .def_readonly("case_b", &FlatBandEigenfunction::case_b)
      .def_readonly("kappa1", &FlatBandEigenfunction::kappa1)
      .def_readonly("kappa2", &FlatBandEigenfunction::kappa2)
      .def_readonly("coeffs", &FlatBandEigenfunction::coeffs);
  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("hat1", &Decomposition::hat1)
      .def_readonly("hat2", &Decomposition::hat2)
      .def_readonly("reconstruction_error",
                    &Decomposition::reconstruction_error);

  m.def("build_psi",
        [](const Potential& q, double mu, const TubeParams& p) {
          return build_psi(q, mu, p);
        },
        py::arg("q"), py::arg("mu"), py::arg("p"));
  m.def("kirchhoff_residual",
        [](const EdgeTable& f, const Potential& q, double mu,
           const TubeParams& p) { return kirchhoff_residual(f, q, mu, p); },
        py::arg("f"), py::arg("q"), py::arg("mu"), py::arg("p"));
  m.def("vertex_value_residual",
        [](const EdgeTable& f, const Potential& q, double mu) {
          return vertex_value_residual(f, q, mu);
        },
        py::arg("f"), py::arg("q"), py::arg("mu"));
  m.def("decompose",
        [](const EdgeTable& f, const Potential& q, double mu,
           const TubeParams& p) { return decompose(f, q, mu, p); },
        py::arg("f"), py::arg("q"), py::arg("mu"), py::arg("p"));
  m.def("reconstruct", &reconstruct, py::arg("hat1"), py::arg("hat2"),
        py::arg("psi1"), py::arg("psi2"));
  m.def("phi_l2_norm_sq",
        [](const Potential& q, double mu) { return phi_l2_norm_sq(q, mu); },
        py::arg("q"), py::arg("mu"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = armchair::cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run the batch front-end; returns (exit_code, stdout, stderr).");
}
