// JSON crosses the boundary as text; the Python side decodes it with the json module.

#include "hvf/commands.hpp"
#include "hvf/homnorm_root.hpp"
#include "hvf/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

namespace py = pybind11;
using namespace hvf;

namespace {

py::tuple result(const CommandResult& r) { return py::make_tuple(dump(r.report), r.exit_code, r.csv); }

Json parse(const std::string& text) { return parse_json_text(text, "<python>"); }

}  // namespace

PYBIND11_MODULE(_hvf, m) {
  m.doc() = "Exact and numerical checks for homogeneous Hormander vector field systems";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  // translators run newest first, so the base class goes in before the subclass
  py::register_exception<Error>(m, "HvfError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "check",
      [](const std::string& system_json, const std::filesystem::path& base_dir, std::optional<int> max_depth,
         const ParamOverrides& params) {
        const Json j = parse(system_json);
        CheckOptions opts;
        opts.max_depth = max_depth;
        return result(run_check(system_from_json(j, base_dir, params), opts, j));
      },
      py::arg("system_json"), py::arg("base_dir") = std::filesystem::path{}, py::arg("max_depth") = py::none(),
      py::arg("params") = ParamOverrides{});

  m.def(
      "verify_lift",
      [](const std::string& lift_json, const std::filesystem::path& base_dir) {
        const Json j = parse(lift_json);
        return result(run_verify_lift(lift_from_json(j, base_dir), j));
      },
      py::arg("lift_json"), py::arg("base_dir") = std::filesystem::path{});

  m.def(
      "norm",
      [](const std::string& system_json, const std::vector<double>& point, const std::filesystem::path& base_dir) {
        const Json j = parse(system_json);
        return result(run_norm(system_from_json(j, base_dir), point, j));
      },
      py::arg("system_json"), py::arg("point"), py::arg("base_dir") = std::filesystem::path{});

  m.def(
      "harness",
      [](const std::string& config_json, const std::filesystem::path& base_dir, std::optional<int> resolution,
         std::optional<std::uint64_t> seed) {
        HarnessOverrides o{resolution, seed};
        const Json j = parse(config_json);
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_harness(j, base_dir, o);
        }
        return result(r);
      },
      py::arg("config_json"), py::arg("base_dir") = std::filesystem::path{}, py::arg("resolution") = py::none(),
      py::arg("seed") = py::none());

  m.def(
      "homogeneous_norm",
      [](const std::vector<double>& x, const std::vector<int>& exponents) {
        if (x.size() != exponents.size()) throw DimensionError("one exponent per coordinate required");
        return homogeneous_norm(x, exponents);
      },
      py::arg("x"), py::arg("exponents"));
}
