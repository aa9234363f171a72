#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "khspace/amalgam.hpp"
#include "khspace/bspace.hpp"
#include "khspace/calculus.hpp"
#include "khspace/corpus.hpp"
#include "khspace/modwin.hpp"
#include "khspace/psido.hpp"
#include "khspace/serialize.hpp"
#include "khspace/suites.hpp"

namespace py = pybind11;
using namespace kh;

namespace {

Field field_from_array(const GridSpec& g, py::array_t<cplx, py::array::c_style | py::array::forcecast> arr,
                       const std::string& domain) {
  Field u(g, domain == "frequency" ? Domain::frequency : Domain::space);
  if (static_cast<std::size_t>(arr.size()) != u.size())
    throw std::invalid_argument("sample count does not match the grid");
  std::copy(arr.data(), arr.data() + arr.size(), u.samples.begin());
  return u;
}

py::array_t<cplx> field_to_array(const Field& u) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(u.size()));
  std::copy(u.samples.begin(), u.samples.end(), out.mutable_data());
  return out;
}

py::array_t<cplx> matrix_to_array(const OperatorMatrix& A) {
  py::array_t<cplx> out({static_cast<py::ssize_t>(A.rows()), static_cast<py::ssize_t>(A.cols())});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < A.rows(); ++i)
    for (py::ssize_t j = 0; j < A.cols(); ++j) r(i, j) = A(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discretized weighted Fourier-Lebesgue / Wiener-amalgam toolbox";

  py::class_<GridSpec>(m, "Grid")
      .def(py::init<int, double, int>(), py::arg("n"), py::arg("L"), py::arg("M"))
      .def_readonly("n", &GridSpec::n)
      .def_readonly("L", &GridSpec::L)
      .def_readonly("M", &GridSpec::M)
      .def_property_readonly("spacing", &GridSpec::spacing)
      .def_property_readonly("freq_step", &GridSpec::freq_step)
      .def("size", &GridSpec::size)
      .def("freq", &GridSpec::freq1);

  py::class_<Field>(m, "Field")
      .def(py::init(&field_from_array), py::arg("grid"), py::arg("samples"),
           py::arg("domain") = "space")
      .def_property_readonly("grid", [](const Field& u) { return u.grid; })
      .def_property_readonly("domain",
                             [](const Field& u) { return u.domain == Domain::space ? "space" : "frequency"; })
      .def("samples", &field_to_array);

  m.def("dft", &dft);
  m.def("idft", &idft);
  m.def("translate", &translate);
  m.def("derivative", &derivative);
  m.def("pointwise_mul", &pointwise_mul);
  m.def("mollify", &mollify);
  m.def("l2_norm", &l2_norm);
  m.def("sup_norm", &sup_norm);
  m.def("random_band_limited",
        [](const GridSpec& g, std::uint64_t seed, int band) {
          return random_band_limited(g, seed, CorpusSpec{band, 1.0, false, 0.0});
        },
        py::arg("grid"), py::arg("seed"), py::arg("band") = 8);

  py::class_<GrowthCertificate>(m, "GrowthCertificate")
      .def_readonly("C", &GrowthCertificate::C)
      .def_readonly("N", &GrowthCertificate::N)
      .def("submult_constant", &GrowthCertificate::submult_constant);

  py::class_<Weight>(m, "Weight")
      .def_static("jbracket_power", &Weight::jbracket_power, py::arg("dim"), py::arg("s"))
      .def_static("constant", &Weight::constant, py::arg("dim"), py::arg("c"))
      .def_static("from_json",
                  [](const std::string& text, int dim) { return weight_from_json(json::parse(text), dim); })
      .def("to_json", [](const Weight& w) { return weight_to_json(w).dump(); })
      .def("pow", &Weight::pow)
      .def("reflect", &Weight::reflect)
      .def("lowered", &Weight::lowered)
      .def("dim", &Weight::dim)
      .def("certificate", &Weight::certificate)
      .def("eval", [](const Weight& w, const std::vector<double>& xi) { return w.eval(xi); });
  m.def("add", [](const Weight& a, const Weight& b) { return add(a, b); });
  m.def("mul", [](const Weight& a, const Weight& b) { return mul(a, b); });
  m.def("sup_of", [](const Weight& a, const Weight& b) { return sup_of(a, b); });
  m.def("inf_of", [](const Weight& a, const Weight& b) { return inf_of(a, b); });

  m.def("bpk_norm", &bpk_norm_value, py::arg("u"), py::arg("k"), py::arg("p"));
  m.def("holder_duality_gap", &holder_duality_gap);
  m.def("gradient_decomposition_residual", &gradient_decomposition_residual);
  m.def("sobolev_norm", &sobolev_norm);

  py::class_<Window>(m, "Window")
      .def_static("bump", &Window::bump, py::arg("grid"), py::arg("center"), py::arg("radius"),
                  py::arg("amplitude") = 1.0)
      .def_static("plateau", &Window::plateau)
      .def_property_readonly("field", [](const Window& w) { return w.field; })
      .def_readonly("support_radius", &Window::support_radius);

  m.def("amalgam_norm",
        [](const Field& u, const Window& chi, const Weight& k, double p, const std::string& mode) {
          return amalgam_norm_value(u, chi, k, p,
                                    mode == "lattice" ? AmalgamMode::lattice : AmalgamMode::continuous);
        },
        py::arg("u"), py::arg("chi"), py::arg("k"), py::arg("p"), py::arg("mode") = "continuous");
  m.def("modulation_norm", &modulation_norm);
  m.def("embedding_check", [](const Field& u, const Window& chi, const Window& chit, const Weight& k,
                              double p) {
    auto chk = embedding_check(u, chi, chit, k, p);
    return py::make_tuple(chk.bound, chk.actual, chk.pass);
  });
  m.def("retraction_roundtrip_residual", &retraction_roundtrip_residual);
  m.def("unit_cover_window", &unit_cover_window, py::arg("grid"),
        py::arg("center") = std::vector<double>{});

  m.def("invert", [](const Field& u, double c) { return invert(u, c); }, py::arg("u"), py::arg("c"));
  m.def("apply_named",
        [](const std::string& name, const std::vector<Field>& u, double margin) {
          HolomorphicMap phi = HolomorphicMap::by_name(name, margin);
          double r = range_distance(u, phi.domain);
          std::vector<Field> v;
          for (const auto& comp : u) v.push_back(mollify(comp, 0.25));
          return calderon_apply(phi, u, v, r).h;
        },
        py::arg("name"), py::arg("fields"), py::arg("margin") = 0.5);
  m.def("joint_spectrum_membership",
        [](const std::vector<Field>& u, const std::vector<cplx>& lam, double c) {
          auto res = joint_spectrum_membership(u, lam, c);
          return py::make_tuple(res.in_spectrum, res.identity_residual);
        });

  py::class_<Quantization>(m, "Quantization")
      .def_static("kohn_nirenberg", &Quantization::kohn_nirenberg)
      .def_static("weyl", &Quantization::weyl)
      .def_static("adjoint_form", &Quantization::adjoint_form)
      .def_static("scalar", &Quantization::scalar);

  py::class_<Symbol2n>(m, "Symbol2n")
      .def_static("from_array",
                  [](const GridSpec& base,
                     py::array_t<cplx, py::array::c_style | py::array::forcecast> arr) {
                    Symbol2n a;
                    a.base = base;
                    a.values.resize(base.size() * base.size());
                    if (static_cast<std::size_t>(arr.size()) != a.values.size())
                      throw std::invalid_argument("symbol sample count mismatch");
                    std::copy(arr.data(), arr.data() + arr.size(), a.values.begin());
                    return a;
                  })
      .def_property_readonly("base", [](const Symbol2n& a) { return a.base; });

  m.def("op_matrix", [](const Symbol2n& a, const Quantization& q) { return matrix_to_array(op_matrix(a, q)); });
  m.def("singular_values", [](py::array_t<cplx, py::array::c_style | py::array::forcecast> arr) {
    auto buf = arr.unchecked<2>();
    OperatorMatrix A(buf.shape(0), buf.shape(1));
    for (py::ssize_t i = 0; i < buf.shape(0); ++i)
      for (py::ssize_t j = 0; j < buf.shape(1); ++j) A(i, j) = buf(i, j);
    return singular_values(A);
  });
  m.def("schatten_norm", [](const std::vector<double>& sv, double p) { return schatten_norm(sv, p); });
  m.def("hs_identity_residual", &hs_identity_residual);

  m.def("run_suite", [](const std::string& config_text) {
    auto cfg = parse_config(json::parse(config_text));
    auto result = run_suite(cfg);
    return py::make_tuple(result.all_pass, rows_to_csv(result.rows));
  });

  m.def("save_field", &save_field);
  m.def("load_field", &load_field);

  m.attr("__version__") = "0.1.0";
}
