#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schurcomp/io.hpp"
#include "schurcomp/schurcomp.hpp"

namespace py = pybind11;
namespace sc = schurcomp;

namespace {

// A certificate together with the spectra it was built from, so the Python
// side never has to keep the two in sync.
struct PyCertificate {
  sc::BlockSpectra spectra;
  sc::CompletionCertificate cert;
};

sc::Mode mode_of(const std::string& s) { return sc::io::mode_from_string(s); }

std::string dumps(const sc::io::Json& j) { return j.dump(); }

PyCertificate construct(const sc::ComplexMatrix& a, const sc::ComplexMatrix& d, double kappa,
                        const std::string& mode, const std::optional<std::vector<double>>& eps,
                        double zero_tol) {
  PyCertificate out;
  out.spectra = sc::analyze_blocks(a, d, zero_tol);
  const sc::Mode m = mode_of(mode);
  sc::EpsilonSchedule schedule;
  if (eps) {
    schedule = {*eps, kappa, m};
  } else {
    schedule = sc::default_epsilons(out.spectra, kappa, m);
  }
  out.cert = sc::build_k(out.spectra, schedule);
  return out;
}

}  // namespace

PYBIND11_MODULE(_schurcomp, m) {
  m.doc() = "Schur complement completion, closed-form spectra and J-frames";

  static py::exception<sc::Error> error(m, "SchurcompError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sc::Error& e) {
      py::object inst = py::handle(error)(e.what());
      inst.attr("code") = py::str(std::string(sc::to_string(e.code())));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<PyCertificate>(m, "Certificate")
      .def_property_readonly("A", [](const PyCertificate& c) { return c.cert.a; })
      .def_property_readonly("D", [](const PyCertificate& c) { return c.cert.d; })
      .def_property_readonly("E", [](const PyCertificate& c) { return c.cert.e; })
      .def_property_readonly("K", [](const PyCertificate& c) { return c.cert.k; })
      .def_property_readonly("S", [](const PyCertificate& c) { return c.cert.s; })
      .def_property_readonly("schur", [](const PyCertificate& c) { return c.cert.schur; })
      .def_property_readonly("epsilons",
                             [](const PyCertificate& c) { return c.cert.schedule.epsilons; })
      .def_property_readonly("kappa", [](const PyCertificate& c) { return c.cert.schedule.kappa; })
      .def_property_readonly(
          "mode", [](const PyCertificate& c) { return std::string(sc::io::to_string(c.cert.schedule.mode)); })
      .def_property_readonly("k", [](const PyCertificate& c) { return c.cert.k_count; })
      .def_property_readonly("r", [](const PyCertificate& c) { return c.cert.r; })
      .def_property_readonly("p", [](const PyCertificate& c) { return c.cert.p; })
      .def("to_json", [](const PyCertificate& c) { return dumps(sc::io::to_json(c.cert)); })
      .def("_predict_spectrum",
           [](const PyCertificate& c) {
             return dumps(sc::io::to_json(sc::predict_spectrum(c.cert, c.spectra)));
           })
      .def("_frame_bounds",
           [](const PyCertificate& c) {
             return dumps(sc::io::to_json(sc::frame_bounds(c.cert, c.spectra)));
           })
      .def("_synthesize_jframe",
           [](const PyCertificate& c) {
             return dumps(sc::io::to_json(sc::synthesize_jframe(c.cert)));
           })
      .def("eigenvectors",
           [](const PyCertificate& c, sc::Index i) { return sc::eigenvectors(c.cert, c.spectra, i); })
      .def("jordan_chain", [](const PyCertificate& c, sc::Index i) {
        const auto chain = sc::jordan_chain(c.cert, c.spectra, i);
        return py::make_tuple(chain.eigenvalue, chain.lead, chain.tail);
      });

  m.def("construct", &construct, py::arg("A"), py::arg("D"), py::arg("kappa") = 1.0,
        py::arg("mode") = "definite", py::arg("eps") = py::none(), py::arg("zero_tol") = -1.0,
        "Build K = U E V* (default epsilons unless eps is given)");

  m.def(
      "_check_feasible",
      [](const sc::ComplexMatrix& a, const sc::ComplexMatrix& d, double kappa,
         const std::string& mode, double zero_tol) {
        return dumps(sc::io::to_json(
            sc::check_feasible(sc::analyze_blocks(a, d, zero_tol), kappa, mode_of(mode))));
      },
      py::arg("A"), py::arg("D"), py::arg("kappa") = 1.0, py::arg("mode") = "definite",
      py::arg("zero_tol") = -1.0);

  m.def(
      "_infeasibility_witness",
      [](const sc::ComplexMatrix& a, const sc::ComplexMatrix& d, const sc::ComplexMatrix& k,
         const std::string& mode, double zero_tol) -> std::optional<std::string> {
        const auto w = sc::infeasibility_witness(a, d, k, mode_of(mode), zero_tol);
        if (!w) return std::nullopt;
        return dumps(sc::io::to_json(*w));
      },
      py::arg("A"), py::arg("D"), py::arg("K"), py::arg("mode") = "definite",
      py::arg("zero_tol") = -1.0);

  m.def("numeric_spectrum", &sc::numeric_spectrum, py::arg("M"),
        "Eigenvalues of a general square matrix (Hessenberg + shifted QR)");

  m.def(
      "jordan_rank_probe",
      [](const sc::ComplexMatrix& s, sc::Complex eta, double rel_tol) {
        const auto probe = sc::jordan_rank_probe(s, eta, rel_tol);
        return py::make_tuple(probe.d1, probe.d2);
      },
      py::arg("S"), py::arg("eta"), py::arg("rel_tol") = sc::kNullityTol);

  m.def(
      "_root_locus",
      [](double lambda, double mu, const std::vector<double>& grid, double kappa,
         const std::string& mode) {
        return dumps(sc::io::to_json(sc::root_locus(lambda, mu, grid, kappa, mode_of(mode))));
      },
      py::arg("lam"), py::arg("mu"), py::arg("grid"), py::arg("kappa") = 1.0,
      py::arg("mode") = "definite");

  m.def(
      "root_locus_csv",
      [](double lambda, double mu, const std::vector<double>& grid, double kappa,
         const std::string& mode) {
        return sc::root_locus_csv(sc::root_locus(lambda, mu, grid, kappa, mode_of(mode)));
      },
      py::arg("lam"), py::arg("mu"), py::arg("grid"), py::arg("kappa") = 1.0,
      py::arg("mode") = "definite");

  m.def(
      "_is_jframe_matrix",
      [](const sc::ComplexMatrix& s, sc::Index n, sc::Index mm) {
        return dumps(sc::io::to_json(sc::is_jframe_matrix(s, n, mm)));
      },
      py::arg("S"), py::arg("n"), py::arg("m"));

  m.def(
      "_check_identities",
      [](const sc::ComplexMatrix& a, const sc::ComplexMatrix& b, const sc::ComplexMatrix& c,
         const sc::ComplexMatrix& d, const sc::ComplexMatrix& k) {
        return dumps(sc::io::to_json(sc::check_identities(a, b, c, d, k)));
      },
      py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"), py::arg("K"));

  m.def("alpha", &sc::alpha_value, py::arg("lam"), py::arg("mu"));
}
