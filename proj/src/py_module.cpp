#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gurag/cli.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "In-process entry point of the gurag-reach command line.";
  m.def(
      "run",
      [](std::vector<std::string> args, std::optional<std::string> input) {
        args.insert(args.begin(), "gurag-reach");
        gurag::CommandOutcome r;
        {
          py::gil_scoped_release release;
          r = gurag::run(args, std::move(input));
        }
        return py::make_tuple(r.exitCode, r.out, r.err);
      },
      py::arg("args"), py::arg("input") = py::none(),
      "Runs one command; a file argument of '-' reads input. Returns (exit code, out, err).");
  m.attr("EXIT_OK") = static_cast<int>(gurag::kExitOk);
  m.attr("EXIT_NEGATIVE") = static_cast<int>(gurag::kExitNegative);
  m.attr("EXIT_BOUND") = static_cast<int>(gurag::kExitBound);
  m.attr("EXIT_INPUT") = static_cast<int>(gurag::kExitInput);
  m.attr("EXIT_RESTRICTION") = static_cast<int>(gurag::kExitRestriction);
  m.attr("EXIT_INTERNAL") = static_cast<int>(gurag::kExitInternal);
}
