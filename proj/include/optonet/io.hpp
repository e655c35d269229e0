#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "optonet/darkmode.hpp"
#include "optonet/pipeline.hpp"
#include "optonet/sweep.hpp"

#ifndef OPTONET_VERSION
#define OPTONET_VERSION "1.0.0"
#endif

namespace optonet {

inline constexpr int kOutputFormatVersion = 1;
inline constexpr const char* kArtifactVersion = OPTONET_VERSION;

/// 17 significant digits, '.' decimal point, locale independent.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_value(const std::optional<double>& v) { return v ? format_number(*v) : "null"; }

/// Long-form CSV: one row per grid point; axis columns, output columns,
/// status, message. Missing values are the literal `null`. LF line endings.
inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  std::string header;
  for (const auto& axis : r.spec.axes) header += csv_escape(axis.name) + ",";
  for (Output o : r.spec.outputs) header += std::string(output_name(o)) + ",";
  os << header << "status,message\n";
  for (const auto& rec : r.records) {
    std::string row;
    for (double c : rec.coords) row += format_number(c) + ",";
    for (const auto& v : rec.values) row += csv_value(v) + ",";
    row += std::string(status_name(rec.status)) + "," + csv_escape(rec.message);
    os << row << '\n';
  }
}

inline nlohmann::ordered_json params_json(const NetworkParams& p) {
  nlohmann::ordered_json j;
  for (const auto& f : kParamFields) j[std::string(f.name)] = p.*(f.member);
  j[std::string(kAuxPresentField)] = p.aux_present;
  return j;
}

inline nlohmann::ordered_json tolerances_json(const Tolerances& t) {
  return {{"stability_margin", t.stability_margin},
          {"residual", t.residual},
          {"discriminant", t.discriminant},
          {"dark_mode", t.dark_mode}};
}

inline nlohmann::ordered_json spec_json(const SweepSpec& s) {
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const auto& a : s.axes) {
    nlohmann::ordered_json targets = nlohmann::ordered_json::array();
    for (const auto& t : a.targets) targets.push_back({{"field", t.field}, {"scale", t.scale}});
    nlohmann::ordered_json grid{{"kind", grid_kind_name(a.grid.kind)}};
    if (a.grid.kind == GridKind::list) {
      grid["values"] = a.grid.values;
    } else {
      grid["start"] = a.grid.start;
      grid["stop"] = a.grid.stop;
      grid["count"] = a.grid.count;
    }
    axes.push_back({{"name", a.name}, {"targets", targets}, {"grid", grid}});
  }
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (Output o : s.outputs) outputs.push_back(output_name(o));
  return {{"base", params_json(s.base)}, {"axes", axes}, {"outputs", outputs}, {"tolerances", tolerances_json(s.tolerances)}};
}

struct ManifestInfo {
  std::string preset;
  std::string variant;
  std::string label;
  std::string data_file;
  std::optional<double> elapsed_seconds;  // omitted unless requested, keeps reruns byte-identical
};

inline nlohmann::ordered_json sweep_manifest(const SweepResult& r, const ManifestInfo& info) {
  std::size_t ok = 0, unstable = 0, error = 0;
  for (const auto& rec : r.records) {
    if (rec.status == PointStatus::ok) ++ok;
    else if (rec.status == PointStatus::unstable) ++unstable;
    else ++error;
  }
  nlohmann::ordered_json m{{"format_version", kOutputFormatVersion}, {"artifact_version", kArtifactVersion}};
  if (!info.preset.empty()) m["preset"] = info.preset;
  if (!info.variant.empty()) m["variant"] = info.variant;
  if (!info.label.empty()) m["label"] = info.label;
  if (!info.data_file.empty()) m["data_file"] = info.data_file;
  m["spec"] = spec_json(r.spec);
  m["grid_shape"] = r.shape();
  m["points"] = r.records.size();
  m["status_counts"] = {{"ok", ok}, {"unstable", unstable}, {"error", error}};
  if (info.elapsed_seconds) m["timing"] = {{"elapsed_seconds", *info.elapsed_seconds}};
  return m;
}

/// Manifest plus every record, for `--format json`.
inline nlohmann::ordered_json sweep_json(const SweepResult& r, const ManifestInfo& info) {
  nlohmann::ordered_json j = sweep_manifest(r, info);
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    nlohmann::ordered_json row{{"coords", rec.coords}, {"status", status_name(rec.status)}};
    nlohmann::ordered_json values;
    for (std::size_t k = 0; k < rec.values.size(); ++k) {
      const std::string key(output_name(r.spec.outputs[k]));
      if (rec.values[k]) values[key] = *rec.values[k];
      else values[key] = nullptr;
    }
    row["values"] = values;
    if (!rec.message.empty()) row["message"] = rec.message;
    recs.push_back(row);
  }
  j["records"] = recs;
  return j;
}

inline nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index k = 0; k < m.cols(); ++k) row[static_cast<std::size_t>(k)] = m(i, k);
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<std::string> ordering_labels(ModeOrdering ord) {
  std::vector<std::string> labels;
  for (Mode m : kAllModes) {
    if (!ord.contains(m)) continue;
    labels.push_back("X_" + std::string(mode_name(m)));
    labels.push_back("Y_" + std::string(mode_name(m)));
  }
  return labels;
}

inline nlohmann::ordered_json stability_json(const StabilityVerdict& v) {
  nlohmann::ordered_json spectrum = nlohmann::ordered_json::array();
  for (const auto& z : v.spectrum) spectrum.push_back({z.real(), z.imag()});
  return {{"verdict", stability_name(v.kind)}, {"max_real", v.max_real}, {"spectrum", spectrum}};
}

/// Single-point report. The `params` member can be fed back as a config file.
inline nlohmann::ordered_json solve_json(const PointSolution& s, const Tolerances& tol) {
  nlohmann::ordered_json j{{"format_version", kOutputFormatVersion}, {"artifact_version", kArtifactVersion}};
  j["params"] = params_json(s.params);
  j["tolerances"] = tolerances_json(tol);
  j["ordering"] = ordering_labels(s.system.ordering);
  j["stability"] = stability_json(s.stability);
  if (!s.covariance) return j;
  j["covariance"] = matrix_json(s.covariance->matrix());
  j["lyapunov_residual"] = s.residual;
  j["physicality_floor"] = s.physicality;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const auto& r : s.pairs)
    pairs.push_back({{"first", mode_name(r.pair.first)},
                     {"second", mode_name(r.pair.second)},
                     {"sigma_minus", r.sigma_minus},
                     {"log_neg", r.log_neg}});
  j["entanglement"] = pairs;
  return j;
}

/// Single-point report as `kind,name,value` rows.
inline void write_solve_csv(std::ostream& os, const PointSolution& s) {
  os << "kind,name,value\n";
  for (const auto& f : kParamFields)
    os << "param," << f.name << "," << format_number(s.params.*(f.member)) << '\n';
  os << "param," << kAuxPresentField << "," << (s.params.aux_present ? 1 : 0) << '\n';
  os << "stability,verdict," << stability_name(s.stability.kind) << '\n';
  os << "stability,max_real," << format_number(s.stability.max_real) << '\n';
  for (std::size_t k = 0; k < s.stability.spectrum.size(); ++k) {
    const auto& z = s.stability.spectrum[k];
    os << "eigenvalue,re_" << k << "," << format_number(z.real()) << '\n';
    os << "eigenvalue,im_" << k << "," << format_number(z.imag()) << '\n';
  }
  if (!s.covariance) return;
  os << "check,lyapunov_residual," << format_number(s.residual) << '\n';
  os << "check,physicality_floor," << format_number(s.physicality) << '\n';
  for (const auto& r : s.pairs) {
    const std::string pair = std::string(mode_name(r.pair.first)) + "_" + std::string(mode_name(r.pair.second));
    os << "sigma_minus," << pair << "," << format_number(r.sigma_minus) << '\n';
    os << "log_neg," << pair << "," << format_number(r.log_neg) << '\n';
  }
  const auto labels = ordering_labels(s.system.ordering);
  const Eigen::MatrixXd& v = s.covariance->matrix();
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index k = 0; k < v.cols(); ++k)
      os << "covariance," << labels[static_cast<std::size_t>(i)] << ":" << labels[static_cast<std::size_t>(k)]
         << "," << format_number(v(i, k)) << '\n';
}

inline nlohmann::ordered_json dark_mode_json(const DarkModeReport& r) {
  return {{"m1", r.m1},
          {"m2", r.m2},
          {"m1_threshold", r.m1_threshold},
          {"m2_threshold", r.m2_threshold},
          {"dark_mode_exists", r.dark_mode_exists},
          {"bright_weights", r.bright_weights},
          {"dark_weights", r.dark_weights}};
}

inline nlohmann::ordered_json cm_rel_json(const CmRelReport& r) {
  return {{"omega_cm", r.omega_cm},
          {"omega_r", r.omega_r},
          {"cross_coupling", r.cross_coupling},
          {"cm_cavity_coupling", r.cm_cavity_coupling},
          {"cm_aux_coupling", r.cm_aux_coupling},
          {"rel_aux_coupling", r.rel_aux_coupling},
          {"dark_mode_exists", r.dark_mode_exists},
          {"dark_direction", r.dark_direction},
          {"which_is_dark", dark_coordinate_name(r.which_is_dark)}};
}

/// Configuration label -> verdict and M values.
inline nlohmann::ordered_json taxonomy_json(const std::vector<ConfigurationVerdict>& verdicts) {
  nlohmann::ordered_json table = nlohmann::ordered_json::object();
  for (const auto& v : verdicts)
    table[v.label] = {{"dark_mode_exists", v.dark_mode_exists}, {"m1", v.report.m1}, {"m2", v.report.m2}};
  return table;
}

}  // namespace optonet
