#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "sl3k/action.hpp"
#include "sl3k/clebsch.hpp"
#include "sl3k/oracle.hpp"
#include "sl3k/series.hpp"
#include "sl3k/sl2.hpp"
#include "sl3k/structure.hpp"
#include "sl3k/wigner.hpp"

namespace py = pybind11;
using namespace sl3k;

namespace {

Delta to_delta(const std::array<int, 3>& d) {
  const Delta delta{d[0], d[1], d[2]};
  require_valid_delta(delta);
  return delta;
}

ExactLambda to_lambda(const std::vector<std::string>& parts) {
  if (parts.size() == 2) return make_lambda(parse_exact_complex(parts[0]), parse_exact_complex(parts[1]));
  if (parts.size() == 3) {
    ExactLambda l{parse_exact_complex(parts[0]), parse_exact_complex(parts[1]), parse_exact_complex(parts[2])};
    require_zero_sum(l);
    return l;
  }
  throw std::invalid_argument("lambda needs two or three components");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact K-type computations for principal series of SL(3,R)";

  m.def("wigner_D", [](int l, int m1, int m2, double alpha, double beta, double gamma) {
    const WignerIndex idx{l, m1, m2};
    if (!idx.valid()) throw std::invalid_argument("need |m1|, |m2| <= l");
    return wigner_D(idx, {alpha, beta, gamma});
  }, py::arg("l"), py::arg("m1"), py::arg("m2"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  m.def("q", [](int k, int j, int l, int mm) {
    if (l < 0) throw std::invalid_argument("l must be non-negative");
    const RadicalScalar& v = q(k, j, l, mm);
    return py::make_tuple(v.to_string(), v.to_double());
  }, py::arg("k"), py::arg("j"), py::arg("l"), py::arg("m"));

  m.def("multiplicity", [](const std::array<int, 3>& d, int l) { return multiplicity(to_delta(d), l); },
        py::arg("delta"), py::arg("l"));

  m.def("basis", [](const std::array<int, 3>& d, int l) {
    std::vector<std::tuple<int, int, int>> out;
    for (const auto& b : basis(to_delta(d), l)) out.emplace_back(b.l, b.m1, b.m2);
    return out;
  }, py::arg("delta"), py::arg("l"));

  m.def("sl2_composition_json", [](const std::string& nu, int eps) {
    return sl2_composition_report(SL2Params::exact(parse_rational(nu), eps)).to_json().dump();
  }, py::arg("nu"), py::arg("eps"));

  m.def("action_matrix_json", [](const std::vector<std::string>& lambda, const std::array<int, 3>& d,
                                 const std::string& gen, int lmax) {
    return assemble_matrix(to_numeric(to_lambda(lambda)), to_delta(d), parse_generator(gen), lmax).to_json().dump();
  }, py::arg("lambda_"), py::arg("delta"), py::arg("generator"), py::arg("lmax"));

  m.def("compose_json", [](const std::string& preset, int k, const std::string& s, int lmax, int threads) {
    py::gil_scoped_release release;
    StructureReport r;
    if (preset == "even-k") {
      r = even_k_report(k, lmax < 0 ? std::max(12, k + 4) : lmax, threads);
    } else if (preset == "degenerate") {
      r = degenerate_series_report(parse_exact_complex(s), lmax < 0 ? 12 : lmax, threads);
    } else if (preset == "k3") {
      r = k3_chain_report(lmax < 0 ? 12 : lmax, threads);
    } else if (preset == "k23") {
      r = k23_subspace_report(lmax < 0 ? 31 : lmax, threads);
    } else {
      throw std::invalid_argument("unknown preset: " + preset);
    }
    return r.to_json().dump();
  }, py::arg("preset"), py::arg("k") = 2, py::arg("s") = "0", py::arg("lmax") = -1, py::arg("threads") = 0);

  m.def("suite_names", &suite_names);

  m.def("run_suite_json", [](const std::string& name, int lmax, std::uint64_t seed) {
    py::gil_scoped_release release;
    return run_suite(name, lmax, seed).to_json().dump();
  }, py::arg("name"), py::arg("lmax") = 4, py::arg("seed") = 1);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "sl3k");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
