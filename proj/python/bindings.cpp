#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fringelab/exact_evolution.hpp"
#include "fringelab/fringe_analysis.hpp"
#include "fringelab/reference_values.hpp"
#include "fringelab/semiclassical.hpp"
#include "fringelab/spin_algebra.hpp"

namespace py = pybind11;
using namespace fringelab;

namespace {

TwoModeConfig make_config(int photons, int input_diff, int output_diff) {
  return TwoModeConfig::from_differences(photons, input_diff, output_diff);
}

py::dict report_dict(const FringeReport& r) {
  py::list matches;
  for (const auto& m : r.matches) {
    py::dict d;
    d["fringe"] = py::make_tuple(m.fringe.lower, m.fringe.upper);
    d["j3_exp"] = m.j3_exp;
    d["matching_phase"] = m.matching_phase ? py::cast(*m.matching_phase) : py::none();
    d["offset"] = m.offset;
    d["inside_fringe"] = m.inside_fringe;
    d["exceeds_maximum"] = m.exceeds_maximum;
    matches.append(d);
  }
  py::list support;
  for (const auto& iv : r.support) support.append(py::make_tuple(iv.lower, iv.upper));
  py::dict d;
  d["zeros"] = r.zeros;
  d["widths"] = r.widths;
  d["j3_exp"] = r.j3_exp;
  d["j3_maximum"] = r.j3_maximum;
  d["support"] = support;
  d["evanescent_zeros"] = r.evanescent_zeros;
  d["matches"] = matches;
  d["notes"] = r.notes;
  return d;
}

VectorLength parse_length(const std::string& name) {
  if (name == "exact") return VectorLength::Exact;
  if (name == "n_plus_one") return VectorLength::NPlusOne;
  throw InvalidArgument("vector length must be 'exact' or 'n_plus_one', got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and semiclassical multi-photon two-path interference";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<TwoModeConfig>(m, "TwoModeConfig")
      .def(py::init(&make_config), py::arg("photons"), py::arg("input_diff"),
           py::arg("output_diff"))
      .def_readonly("photons", &TwoModeConfig::photons)
      .def_property_readonly("m_psi", [](const TwoModeConfig& c) { return c.m_psi.value(); })
      .def_property_readonly("m", [](const TwoModeConfig& c) { return c.m.value(); })
      .def("exchanged", &TwoModeConfig::exchanged)
      .def("__repr__", &TwoModeConfig::describe);

  m.def("casimir", &casimir, py::arg("photons"));
  m.def(
      "operators",
      [](int photons) {
        const OperatorSet ops = build_operator_set(photons);
        return py::make_tuple(Eigen::MatrixXcd(ops.j1), Eigen::MatrixXcd(ops.j2),
                              Eigen::MatrixXcd(ops.j3));
      },
      py::arg("photons"), "Dense (J1, J2, J3) in the J3 basis, index k <-> m3 = N/2 - k.");

  m.def("amplitude", py::overload_cast<const TwoModeConfig&, double>(&amplitude), py::arg("config"),
        py::arg("phi"));
  m.def(
      "probability_distribution",
      [](int photons, int input_diff, double phi) {
        return probability_distribution(photons, HalfInteger::from_twice(input_diff), phi);
      },
      py::arg("photons"), py::arg("input_diff"), py::arg("phi"));
  m.def(
      "weak_value_j3", [](const TwoModeConfig& c, double phi) { return weak_value_j3(c, phi).value; },
      py::arg("config"), py::arg("phi"));
  m.def(
      "weak_value_j3sq",
      [](const TwoModeConfig& c, double phi) { return weak_value_j3sq(c, phi).value; },
      py::arg("config"), py::arg("phi"));
  m.def("verify_weak_identity",
        py::overload_cast<const TwoModeConfig&, double>(&verify_weak_identity), py::arg("config"),
        py::arg("phi"));
  m.def("ode_residual", py::overload_cast<const TwoModeConfig&, double>(&ode_residual),
        py::arg("config"), py::arg("phi"));
  m.def(
      "amplitude_trace",
      [](const TwoModeConfig& c, std::vector<double> phases) {
        const AmplitudeTrace t = amplitude_trace(c, PhaseGrid(std::move(phases)));
        return py::make_tuple(t.amplitudes, t.global_phase, t.realized);
      },
      py::arg("config"), py::arg("phases"),
      "Returns (amplitudes, global_phase, realized) with amplitudes == global_phase * realized.");
  m.def(
      "ode_solve_oracle",
      [](const TwoModeConfig& c, double start, std::vector<double> outputs) {
        return ode_solve_oracle(c, start, outputs);
      },
      py::arg("config"), py::arg("start"), py::arg("outputs"));

  m.def(
      "classical_j3",
      [](const TwoModeConfig& c, double phi, const std::string& length) {
        const ClassicalJ3 j = classical_j3(c, phi, parse_length(length));
        return py::make_tuple(j.magnitude, j.evanescent);
      },
      py::arg("config"), py::arg("phi"), py::arg("length") = "exact",
      "Returns (magnitude, evanescent).");
  m.def(
      "classical_support",
      [](const TwoModeConfig& c, const std::string& length) {
        std::vector<std::pair<double, double>> out;
        for (const auto& iv : classical_support(c, parse_length(length))) {
          out.emplace_back(iv.lower, iv.upper);
        }
        return out;
      },
      py::arg("config"), py::arg("length") = "exact");
  m.def(
      "envelope",
      [](const TwoModeConfig& c, double phi, const std::string& length) {
        return envelope(c, phi, parse_length(length));
      },
      py::arg("config"), py::arg("phi"), py::arg("length") = "exact");
  m.def(
      "approx_amplitude",
      [](const TwoModeConfig& c, std::vector<double> phases, const std::string& length,
         bool parity_anchor) {
        ApproximationOptions options;
        options.length = parse_length(length);
        if (parity_anchor) options.anchor = ActionAnchor::EqualCaseParity;
        const SemiclassicalModel model(c, options);
        std::vector<double> out;
        out.reserve(phases.size());
        for (double phi : phases) out.push_back(model.approx_amplitude(phi));
        return py::make_tuple(out, model.reference_phase());
      },
      py::arg("config"), py::arg("phases"), py::arg("length") = "exact",
      py::arg("parity_anchor") = false,
      "Returns (2 A cos S per phase, unit phase of the matching exact amplitude).");

  m.def(
      "analyze_fringes",
      [](const TwoModeConfig& c, std::size_t grid_points) {
        FringeAnalysisOptions options;
        options.grid_points = grid_points;
        return report_dict(analyze_fringes(c, options));
      },
      py::arg("config"), py::arg("grid_points") = kDefaultFringeGridPoints);
  m.def("fringe_widths_and_j3", [](std::vector<double> zeros) {
    const FringeWidths w = fringe_widths_and_j3(zeros);
    return py::make_tuple(w.widths, w.j3_exp);
  });
  m.def(
      "equal_case_predictions",
      [](int photons) {
        const EqualCasePrediction p = equal_case_predictions(photons);
        py::dict d;
        d["minima"] = p.minima;
        d["total_count"] = p.total_count;
        d["interior_width"] = p.interior_width;
        d["edge_width"] = p.edge_width;
        return d;
      },
      py::arg("photons"));
  m.def(
      "match_classical_phases",
      [](const TwoModeConfig& c, double j3) { return match_classical_phases(c, j3); },
      py::arg("config"), py::arg("j3"));

  m.def(
      "classical_envelope_oracle",
      [](int photons, int input_diff, double phi, std::uint64_t samples, std::uint64_t seed) {
        const ClassicalHistogram h = classical_envelope_oracle(
            photons, HalfInteger::from_twice(input_diff), phi, samples, seed);
        std::vector<double> m_values;
        for (const auto& v : h.m_values) m_values.push_back(v.value());
        py::dict d;
        d["m"] = m_values;
        d["counts"] = h.counts;
        d["frequencies"] = h.frequencies;
        d["standard_errors"] = h.standard_errors;
        return d;
      },
      py::arg("photons"), py::arg("input_diff"), py::arg("phi"), py::arg("samples"),
      py::arg("seed"));

  m.def("reference_checks", [] {
    const ReferenceSummary s = evaluate_reference_values();
    py::list out;
    for (const auto& c : s.checks) {
      py::dict d;
      d["group"] = c.group;
      d["name"] = c.name;
      d["expected"] = c.expected;
      d["measured"] = c.measured;
      d["tolerance"] = c.tolerance;
      d["pass"] = c.pass;
      out.append(d);
    }
    return out;
  });
}
