#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fringelab/cli.hpp"
#include "fringelab/fringe_analysis.hpp"
#include "fringelab/semiclassical.hpp"

namespace fringelab::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TwoModeConfig config_of(const RunSpec& spec) {
  return TwoModeConfig::from_differences(spec.photons, spec.input_diff, spec.output_diff);
}

PhaseGrid grid_of(const RunSpec& spec) {
  return PhaseGrid::linspace(spec.phi_min, spec.phi_max, spec.sample_count());
}

Json header(const RunSpec& spec) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = command_name(spec.command);
  j["photons"] = spec.photons;
  j["input_diff"] = spec.input_diff;
  if (spec.command != Command::ClassicalMc) j["output_diff"] = spec.output_diff;
  return j;
}

Json table_json(const Table& table) {
  Json columns = Json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) columns[table.columns[c]] = table.data[c];
  return columns;
}

Json intervals_json(const std::vector<PhaseInterval>& intervals) {
  Json out = Json::array();
  for (const auto& iv : intervals) out.push_back({iv.lower, iv.upper});
  return out;
}

Json report_json(const FringeReport& report) {
  Json j;
  j["zeros"] = report.zeros;
  j["widths"] = report.widths;
  j["j3_exp"] = report.j3_exp;
  j["j3_maximum"] = report.j3_maximum;
  j["support"] = intervals_json(report.support);
  j["evanescent_zeros"] = report.evanescent_zeros;
  Json matches = Json::array();
  for (const auto& m : report.matches) {
    Json entry;
    entry["fringe"] = {m.fringe.lower, m.fringe.upper};
    entry["center"] = m.fringe.center();
    entry["j3_exp"] = m.j3_exp;
    entry["matching_phase"] = m.matching_phase ? Json(*m.matching_phase) : Json(nullptr);
    entry["offset"] = m.matching_phase ? Json(m.offset) : Json(nullptr);
    entry["inside_fringe"] = m.inside_fringe;
    entry["exceeds_maximum"] = m.exceeds_maximum;
    matches.push_back(entry);
  }
  j["matches"] = matches;
  j["notes"] = report.notes;
  return j;
}

std::string render(const RunSpec& spec, const Table& table, Json extra = Json::object()) {
  std::ostringstream os;
  if (spec.format == OutputFormat::Csv) {
    write_csv(os, table);
  } else {
    Json j = header(spec);
    j["phi_min"] = spec.phi_min;
    j["phi_max"] = spec.phi_max;
    j["samples"] = spec.sample_count();
    j["columns"] = table_json(table);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    os << j.dump(2) << '\n';
  }
  return os.str();
}

double flag(bool value) { return value ? 1.0 : 0.0; }

std::string fringes(const RunSpec& spec) {
  const TwoModeConfig config = config_of(spec);
  const PhaseGrid grid = grid_of(spec);
  const Interferometer engine(config.photons);
  const AmplitudeTrace trace = amplitude_trace(engine, config, grid);
  const SemiclassicalCurve curve = semiclassical_curve(config, grid);

  std::vector<double> probability, envelope4, in_support;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    probability.push_back(std::norm(trace.amplitudes[i]));
    const double a = curve.envelope[i];
    envelope4.push_back(4.0 * a * a);
    in_support.push_back(flag(std::isfinite(curve.j3_classical[i]) && !curve.evanescent[i]));
  }
  Table table;
  table.add_column("phi", {grid.values().begin(), grid.values().end()});
  table.add_column("probability", probability);
  table.add_column("envelope", envelope4);
  table.add_column("in_support", in_support);

  Json extra = Json::object();
  if (spec.format == OutputFormat::Json) {
    try {
      extra["report"] = report_json(compare_report(config, trace, curve,
                                                   amplitude_source(engine, config)));
    } catch (const NumericalError& e) {
      extra["report"] = {{"error", e.what()}};
    }
  }
  return render(spec, table, extra);
}

std::string weak_values(const RunSpec& spec) {
  const TwoModeConfig config = config_of(spec);
  const PhaseGrid grid = grid_of(spec);
  const WeakValueTrace trace = weak_value_trace(Interferometer(config.photons), config, grid);
  std::vector<double> re1, im1, re2, im2, singular;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    re1.push_back(trace.j3_weak[i].real());
    im1.push_back(trace.j3_weak[i].imag());
    re2.push_back(trace.j3sq_weak[i].real());
    im2.push_back(trace.j3sq_weak[i].imag());
    singular.push_back(flag(trace.singular_flags[i]));
  }
  Table table;
  table.add_column("phi", {grid.values().begin(), grid.values().end()});
  table.add_column("j3_re", re1);
  table.add_column("j3_im", im1);
  table.add_column("j3sq_re", re2);
  table.add_column("j3sq_im", im2);
  table.add_column("singular", singular);
  return render(spec, table);
}

std::string envelope_table(const RunSpec& spec) {
  const TwoModeConfig config = config_of(spec);
  const PhaseGrid grid = grid_of(spec);
  const SemiclassicalCurve curve = semiclassical_curve(config, grid);
  std::vector<double> evanescent, envelope4;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    evanescent.push_back(flag(curve.evanescent[i]));
    envelope4.push_back(4.0 * curve.envelope[i] * curve.envelope[i]);
  }
  Table table;
  table.add_column("phi", {grid.values().begin(), grid.values().end()});
  table.add_column("j3_classical", curve.j3_classical);
  table.add_column("evanescent", evanescent);
  table.add_column("envelope", curve.envelope);
  table.add_column("envelope_4a2", envelope4);
  Json extra = Json::object();
  extra["support"] = intervals_json(curve.support);
  return render(spec, table, extra);
}

std::string semiclassical(const RunSpec& spec) {
  const TwoModeConfig config = config_of(spec);
  const PhaseGrid grid = grid_of(spec);
  const SemiclassicalModel model(config);
  const SemiclassicalCurve curve = model.curve(grid);
  const AmplitudeTrace trace = amplitude_trace(config, grid);
  const Complex unit = std::conj(model.reference_phase());

  std::vector<double> exact, approx, valid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    exact.push_back((unit * trace.amplitudes[i]).real());
    const bool ok = model.is_valid(grid[i]);
    approx.push_back(ok ? model.approx_amplitude(grid[i]) : kNaN);
    valid.push_back(flag(ok));
  }
  Table table;
  table.add_column("phi", {grid.values().begin(), grid.values().end()});
  table.add_column("exact", exact);
  table.add_column("approx", approx);
  table.add_column("action", curve.action);
  table.add_column("envelope", curve.envelope);
  table.add_column("valid", valid);
  Json extra = Json::object();
  extra["anchor_phase"] = model.anchor_phase();
  extra["anchor_action"] = model.anchor_action();
  return render(spec, table, extra);
}

std::string classical_mc(const RunSpec& spec) {
  const HalfInteger m_psi = HalfInteger::from_twice(spec.input_diff);
  const ClassicalHistogram hist =
      classical_envelope_oracle(spec.photons, m_psi, spec.phi, spec.sample_count(), spec.seed);

  std::vector<double> m, counts, predicted;
  for (std::size_t k = 0; k < hist.m_values.size(); ++k) {
    m.push_back(hist.m_values[k].value());
    counts.push_back(static_cast<double>(hist.counts[k]));
    const TwoModeConfig config{spec.photons, m_psi, hist.m_values[k]};
    double a2 = kNaN;
    try {
      const double a = envelope(config, spec.phi);
      a2 = 2.0 * a * a;
    } catch (const InvalidArgument&) {
    }
    predicted.push_back(a2);
  }

  std::ostringstream os;
  if (spec.format == OutputFormat::Csv) {
    Table table;
    table.add_column("m", m);
    table.add_column("count", counts);
    table.add_column("frequency", hist.frequencies);
    table.add_column("standard_error", hist.standard_errors);
    table.add_column("envelope_2a2", predicted);
    write_csv(os, table);
  } else {
    Json j = header(spec);
    j["phi"] = spec.phi;
    j["samples"] = hist.samples;
    j["seed"] = hist.seed;
    j["vector_length"] = "n_plus_one";
    j["m"] = m;
    j["count"] = hist.counts;
    j["frequency"] = hist.frequencies;
    j["standard_error"] = hist.standard_errors;
    j["envelope_2a2"] = predicted;
    os << j.dump(2) << '\n';
  }
  return os.str();
}

}  // namespace

void run(const RunSpec& spec, std::ostream& out) {
  spec.validate();
  if (spec.command == Command::ReproducePaper) {
    const bool pass = reproduce_paper(spec.output_path, out);
    out << "reference checks: " << (pass ? "all pass" : "some fail") << " (see "
        << (std::filesystem::path(spec.output_path) / "summary.json").string() << ")\n";
    return;
  }
  std::string text;
  switch (spec.command) {
    case Command::Fringes: text = fringes(spec); break;
    case Command::WeakValues: text = weak_values(spec); break;
    case Command::Envelope: text = envelope_table(spec); break;
    case Command::Semiclassical: text = semiclassical(spec); break;
    case Command::ClassicalMc: text = classical_mc(spec); break;
    case Command::ReproducePaper: break;
  }
  if (spec.output_path.empty()) {
    out << text;
  } else {
    write_file(spec.output_path, text);
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int exit_code = 0;
  const auto spec = parse_arguments(argc, argv, out, err, exit_code);
  if (!spec) return exit_code;
  try {
    run(*spec, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fringelab::cli
