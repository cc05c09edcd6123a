// JSON crosses the boundary as text; the Python package decodes it.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sizeramsey/cycleclose.hpp"
#include "sizeramsey/error.hpp"
#include "sizeramsey/gadgets.hpp"
#include "sizeramsey/pipeline.hpp"

namespace py = pybind11;
using namespace sizeramsey;

namespace {

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

std::string run(const std::string& profile_text) {
  auto profile = RunProfile::from_json(parse(profile_text));
  RunResult r;
  {
    py::gil_scoped_release release;
    r = run_pipeline(profile);
  }
  nlohmann::json out{{"exit_code", r.exit_code}, {"record", r.record}, {"timestamps", r.timestamps}};
  if (r.certificate) out["certificate"] = r.certificate->to_json();
  if (r.host) out["gamma"] = to_json(r.host->graph);
  if (r.coloring) out["coloring"] = r.coloring->to_json();
  return out.dump();
}

std::string verify(const std::string& certificate, const std::string& gamma, const std::string& coloring) {
  auto c = Certificate::from_json(parse(certificate));
  auto g = graph_from_json(parse(gamma));
  auto col = EdgeColoring::from_json(g, parse(coloring));
  return verify_certificate(c, g, col).to_json().dump();
}

std::string gadget(const std::string& descriptor, std::uint64_t seed) {
  auto g = parse_gadget(descriptor, seed);
  return nlohmann::json{{"descriptor", g.descriptor}, {"mode", std::string(to_string(g.mode))},
                        {"graph", to_json(g.graph)}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Size-Ramsey cycle construction";
  py::register_exception<Error>(m, "Error");
  m.def("run", &run, py::arg("profile"));
  m.def("verify", &verify, py::arg("certificate"), py::arg("gamma"), py::arg("coloring"));
  m.def("gadget", &gadget, py::arg("descriptor"), py::arg("seed") = 1);
  m.def(
      "gadget_is_ramsey",
      [](const std::string& descriptor, std::size_t k, std::uint64_t seed) {
        return verify_gadget_ramsey(parse_gadget(descriptor, seed), k);
      },
      py::arg("descriptor"), py::arg("k"), py::arg("seed") = 1);
  m.def("lift_split", &lift_split, py::arg("short_len"), py::arg("long_len"), py::arg("length"), py::arg("n"));
  m.def("lift_window", &lift_window, py::arg("short_len"), py::arg("long_len"), py::arg("n"));
}
