#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "optonet/config.hpp"
#include "optonet/darkmode.hpp"
#include "optonet/errors.hpp"
#include "optonet/io.hpp"
#include "optonet/pipeline.hpp"
#include "optonet/presets.hpp"
#include "optonet/sweep.hpp"

namespace optonet {

/// Process exit codes. Stable; scripts may depend on them.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;     // numerical failure or bug
inline constexpr int usage = 2;        // bad flags, bad config, bad parameters
inline constexpr int unstable = 3;     // `solve`: drift matrix not Hurwitz
inline constexpr int degenerate = 4;   // `darkmode`: G1 = G2 = 0 or unsupported configuration
inline constexpr int dark_mode = 10;   // `darkmode`: a dark mode exists
}  // namespace exit_code

namespace cli_detail {

inline double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw ConfigError(what, 0, "'" + std::string(s) + "' is not a number");
  return v;
}

inline int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError(what, 0, "'" + std::string(s) + "' is not an integer");
  return v;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

/// `linear:a:b:n`, `log10:a:b:n` or `list:v1,v2,...`
inline Grid parse_grid(std::string_view text, const std::string& axis) {
  const std::string where = "--axis " + axis;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError(where, 0, "expected kind:args, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "list") {
    std::vector<double> values;
    for (const auto& item : split(rest, ',')) values.push_back(parse_double(item, where));
    return Grid::list(std::move(values));
  }
  const auto parts = split(rest, ':');
  if (parts.size() != 3) throw ConfigError(where, 0, "expected " + std::string(kind) + ":start:stop:count");
  const double a = parse_double(parts[0], where);
  const double b = parse_double(parts[1], where);
  const int n = parse_int(parts[2], where);
  if (kind == "linear") return Grid::linear(a, b, n);
  if (kind == "log10") return Grid::log10(a, b, n);
  throw ConfigError(where, 0, "unknown grid kind '" + std::string(kind) + "' (linear, log10, list)");
}

/// `name=grid`. The name is one parameter, `f1+f2` (both set to the axis
/// value) or `f/g` (f set to axis value times the base value of g).
inline Axis parse_axis(const std::string& text, const NetworkParams& base) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--axis", 0, "expected name=grid, got '" + text + "'");
  const std::string name = text.substr(0, eq);
  Axis axis{name, {}, parse_grid(std::string_view(text).substr(eq + 1), name)};
  if (const auto slash = name.find('/'); slash != std::string::npos) {
    const std::string field = name.substr(0, slash);
    const std::string ref = name.substr(slash + 1);
    if (!is_param_name(ref)) throw ConfigError("--axis", 0, "'" + ref + "' is not a parameter");
    axis.targets.push_back({field, get_field(base, ref)});
  } else {
    for (const auto& field : split(name, '+')) axis.targets.push_back({field, 1.0});
  }
  return axis;
}

inline std::vector<Output> parse_outputs(const std::string& text) {
  std::vector<Output> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_output(item));
  return out;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path, 0, "cannot open for writing");
  f << text;
  if (!f) throw Error("write failed: " + path);
}

/// Writes to `path` if given, otherwise to `out`.
inline void emit(const std::optional<std::string>& path, std::ostream& out, const std::string& text) {
  if (path) write_text(*path, text);
  else out << text;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace cli_detail

struct CommonOptions {
  std::optional<std::string> config;
  std::vector<std::string> overrides;
  std::optional<std::string> out;
  std::string format = "json";
  Tolerances tol;
};

inline void add_param_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Parameter file (key = value lines, or JSON)");
  cmd->add_option("--set", o.overrides, "Override one parameter, key=value (repeatable)")->take_all();
}

inline void add_tolerance_options(CLI::App* cmd, CommonOptions& o) {
  auto positive = CLI::PositiveNumber;
  cmd->add_option("--tol-stability", o.tol.stability_margin, "Stability margin on max Re(eig A)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--tol-residual", o.tol.residual, "Lyapunov residual tolerance, relative to max|Q|")
      ->check(positive)->capture_default_str();
  cmd->add_option("--tol-discriminant", o.tol.discriminant, "Clamp for the symplectic-eigenvalue discriminant")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--tol-darkmode", o.tol.dark_mode, "Relative tolerance of the dark-mode conditions")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
}

inline int cmd_solve(const CommonOptions& o, std::ostream& out) {
  const NetworkParams p = resolve_params(o.config, o.overrides);
  const PointSolution s = solve_point(p, o.tol);
  if (o.format == "csv") {
    std::ostringstream ss;
    write_solve_csv(ss, s);
    cli_detail::emit(o.out, out, ss.str());
  } else {
    cli_detail::emit(o.out, out, cli_detail::dump(solve_json(s, o.tol)));
  }
  return s.covariance ? exit_code::ok : exit_code::unstable;
}

struct DarkModeOptions {
  std::vector<std::string> switch_off;
  bool taxonomy = false;
};

inline int cmd_darkmode(const CommonOptions& o, const DarkModeOptions& d, std::ostream& out) {
  NetworkParams p = resolve_params(o.config, o.overrides);
  nlohmann::ordered_json j{{"format_version", kOutputFormatVersion}, {"artifact_version", kArtifactVersion}};

  if (d.taxonomy) {
    std::vector<ConfigurationVerdict> verdicts;
    for (const auto& off : taxonomy_cases()) verdicts.push_back(classify_configuration(off, p, o.tol.dark_mode));
    j["params"] = params_json(p);
    j["taxonomy"] = taxonomy_json(verdicts);
    cli_detail::emit(o.out, out, cli_detail::dump(j));
    return exit_code::ok;
  }

  ChannelSet off;
  for (const auto& name : d.switch_off)
    for (const auto& item : cli_detail::split(name, ',')) off.insert(parse_channel(item));
  p = switch_off(p, off);

  const DarkModeReport report = dark_mode_conditions(p, o.tol.dark_mode);
  const CmRelReport cm = cm_rel_analysis(p.g1, p.g2, p.gs1, p.omega1, p.omega2, o.tol.dark_mode);
  j["switched_off"] = configuration_label(off);
  j["params"] = params_json(p);
  j["dark_mode"] = dark_mode_json(report);
  j["collective"] = cm_rel_json(cm);
  cli_detail::emit(o.out, out, cli_detail::dump(j));
  return report.dark_mode_exists ? exit_code::dark_mode : exit_code::ok;
}

struct SweepOptions {
  std::vector<std::string> axes;
  std::string outputs = "en_a_b1,en_a_b2,en_b1_b2,stable";
  int workers = default_worker_count();
  bool timing = false;
};

inline void write_sweep_files(const SweepResult& r, ManifestInfo info, const std::string& format,
                              const std::optional<std::string>& path, std::ostream& out) {
  if (format == "json") {
    cli_detail::emit(path, out, cli_detail::dump(sweep_json(r, info)));
    return;
  }
  std::ostringstream ss;
  write_sweep_csv(ss, r);
  cli_detail::emit(path, out, ss.str());
  if (path) {
    info.data_file = std::filesystem::path(*path).filename().string();
    cli_detail::write_text(*path + ".manifest.json", cli_detail::dump(sweep_manifest(r, info)));
  }
}

inline int cmd_sweep(const CommonOptions& o, const SweepOptions& s, std::ostream& out) {
  SweepSpec spec;
  spec.base = resolve_params(o.config, o.overrides);
  for (const auto& a : s.axes) spec.axes.push_back(cli_detail::parse_axis(a, spec.base));
  spec.outputs = cli_detail::parse_outputs(s.outputs);
  spec.tolerances = o.tol;

  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(spec, s.workers);
  ManifestInfo info;
  if (s.timing) info.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_sweep_files(r, info, o.format, o.out, out);
  return exit_code::ok;
}

struct FigureOptions {
  std::string name;
  std::string out_dir = ".";
  bool list = false;
};

inline int cmd_figure(const CommonOptions& o, const FigureOptions& f, const SweepOptions& s, std::ostream& out) {
  if (f.list) {
    for (const auto& name : figure_names()) {
      const FigurePreset p = figure_preset(name);
      out << name << "  " << p.description << " (" << p.variants.size() << " variant"
          << (p.variants.size() == 1 ? "" : "s") << ")\n";
    }
    return exit_code::ok;
  }
  if (f.name.empty()) throw ConfigError("figure", 0, "missing figure name (use --list)");
  const FigurePreset preset = figure_preset(f.name);
  std::filesystem::create_directories(f.out_dir);
  for (const auto& v : preset.variants) {
    SweepSpec spec = v.spec;
    spec.tolerances = o.tol;
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult r = run_sweep(spec, s.workers);
    ManifestInfo info{preset.name, v.name, v.label, {}, std::nullopt};
    if (s.timing) info.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string stem = preset.name + "__" + v.name;
    const auto csv_path = std::filesystem::path(f.out_dir) / (stem + ".csv");
    std::ostringstream ss;
    write_sweep_csv(ss, r);
    cli_detail::write_text(csv_path.string(), ss.str());
    info.data_file = csv_path.filename().string();
    cli_detail::write_text((std::filesystem::path(f.out_dir) / (stem + ".json")).string(),
                           cli_detail::dump(sweep_manifest(r, info)));
    out << csv_path.string() << '\n';
  }
  return exit_code::ok;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state entanglement in a four-mode optomechanical network", "optonet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  CommonOptions common;
  DarkModeOptions dark;
  SweepOptions sweep;
  FigureOptions figure;
  const auto formats = CLI::IsMember({"json", "csv"});

  auto* solve = app.add_subcommand("solve", "Single-point solve: stability, covariance, pair entanglement");
  add_param_options(solve, common);
  add_tolerance_options(solve, common);
  solve->add_option("--out", common.out, "Output file (default: stdout)");
  solve->add_option("--format", common.format, "json or csv")->check(formats)->capture_default_str();

  auto* darkmode = app.add_subcommand("darkmode", "Dark-mode conditions and collective-coordinate analysis");
  add_param_options(darkmode, common);
  add_tolerance_options(darkmode, common);
  darkmode->add_option("--out", common.out, "Output file (default: stdout)");
  darkmode->add_option("--switch-off", dark.switch_off, "Channels to zero: J, eta, Gs1, Gs2 (comma separated)");
  darkmode->add_flag("--taxonomy", dark.taxonomy, "Classify all fourteen switch-off configurations");

  auto* sweep_cmd = app.add_subcommand("sweep", "1-D or 2-D parameter sweep");
  add_param_options(sweep_cmd, common);
  add_tolerance_options(sweep_cmd, common);
  sweep_cmd->add_option("--axis", sweep.axes, "name=linear:a:b:n | log10:a:b:n | list:v1,v2,... (one or two)")
      ->required();
  sweep_cmd->add_option("--outputs", sweep.outputs, "Comma-separated outputs")->capture_default_str();
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", common.out, "Output file (default: stdout)");
  sweep_cmd->add_option("--format", common.format, "csv or json")->check(formats);
  sweep_cmd->add_flag("--timing", sweep.timing, "Record elapsed time in the manifest");

  auto* figure_cmd = app.add_subcommand("figure", "Regenerate the data behind a figure panel");
  figure_cmd->add_option("name", figure.name, "Preset name, e.g. fig4a");
  figure_cmd->add_option("--out-dir", figure.out_dir, "Directory for <preset>__<variant>.csv/.json")
      ->capture_default_str();
  figure_cmd->add_option("--workers", sweep.workers, "Worker threads")->check(CLI::PositiveNumber);
  figure_cmd->add_flag("--list", figure.list, "List available presets");
  figure_cmd->add_flag("--timing", sweep.timing, "Record elapsed time in the manifests");
  add_tolerance_options(figure_cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::CallForVersion&) {
    out << kArtifactVersion << '\n';
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  try {
    if (solve->parsed()) return cmd_solve(common, out);
    if (darkmode->parsed()) return cmd_darkmode(common, dark, out);
    if (sweep_cmd->parsed()) {
      if (sweep_cmd->count("--format") == 0) common.format = "csv";
      return cmd_sweep(common, sweep, out);
    }
    if (figure_cmd->parsed()) return cmd_figure(common, figure, sweep, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ValidationError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const DegenerateConfigurationError& e) {
    err << "degenerate configuration: " << e.what() << '\n';
    return exit_code::degenerate;
  } catch (const UnsupportedConfigurationError& e) {
    err << "unsupported configuration: " << e.what() << '\n';
    return exit_code::degenerate;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::internal;
  }
  return exit_code::usage;
}

}  // namespace optonet
