#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "optonet/darkmode.hpp"
#include "optonet/errors.hpp"
#include "optonet/params.hpp"
#include "optonet/pipeline.hpp"

namespace optonet {

inline constexpr int kDefaultLineCount = 201;
inline constexpr int kDefaultGridCount = 101;

enum class GridKind { linear, log10, list };

struct Grid {
  GridKind kind = GridKind::linear;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  std::vector<double> values;  // only for GridKind::list

  static Grid linear(double start, double stop, int count) { return {GridKind::linear, start, stop, count, {}}; }
  /// Geometric spacing between the values `start` and `stop` (both > 0).
  static Grid log10(double start, double stop, int count) { return {GridKind::log10, start, stop, count, {}}; }
  static Grid list(std::vector<double> v) {
    const int n = static_cast<int>(v.size());
    return {GridKind::list, 0.0, 0.0, n, std::move(v)};
  }

  int size() const { return kind == GridKind::list ? static_cast<int>(values.size()) : count; }

  std::vector<double> points() const {
    if (kind == GridKind::list) return values;
    std::vector<double> out(static_cast<std::size_t>(count));
    const double lo = kind == GridKind::log10 ? std::log10(start) : start;
    const double hi = kind == GridKind::log10 ? std::log10(stop) : stop;
    for (int i = 0; i < count; ++i) {
      const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      out[static_cast<std::size_t>(i)] = kind == GridKind::log10 ? std::pow(10.0, t) : t;
    }
    // Endpoints exactly as given.
    out.front() = start;
    out.back() = stop;
    return out;
  }
};

inline constexpr std::string_view grid_kind_name(GridKind k) {
  switch (k) {
    case GridKind::linear: return "linear";
    case GridKind::log10: return "log10";
    case GridKind::list: return "list";
  }
  return "?";
}

/// A parameter field driven by an axis: field = scale * axis value.
struct AxisTarget {
  std::string field;
  double scale = 1.0;
};

/// One sweep dimension. Most axes drive a single field; linked axes drive
/// several (nbar1 = nbar2 = nbar) or a ratio (gs2 = gs1 * ratio).
struct Axis {
  std::string name;
  std::vector<AxisTarget> targets;
  Grid grid;

  static Axis on(const std::string& field, Grid g) { return {field, {{field, 1.0}}, std::move(g)}; }
};

enum class Output { en_a_b1, en_a_b2, en_b1_b2, sigma_a_b1, sigma_a_b2, sigma_b1_b2, stable, max_re, m1, m2 };

inline constexpr std::array<Output, 10> kAllOutputs{Output::en_a_b1,     Output::en_a_b2,     Output::en_b1_b2,
                                                   Output::sigma_a_b1,  Output::sigma_a_b2,  Output::sigma_b1_b2,
                                                   Output::stable,      Output::max_re,      Output::m1,
                                                   Output::m2};

inline constexpr std::string_view output_name(Output o) {
  switch (o) {
    case Output::en_a_b1: return "en_a_b1";
    case Output::en_a_b2: return "en_a_b2";
    case Output::en_b1_b2: return "en_b1_b2";
    case Output::sigma_a_b1: return "sigma_a_b1";
    case Output::sigma_a_b2: return "sigma_a_b2";
    case Output::sigma_b1_b2: return "sigma_b1_b2";
    case Output::stable: return "stable";
    case Output::max_re: return "max_re";
    case Output::m1: return "m1";
    case Output::m2: return "m2";
  }
  return "?";
}

inline Output parse_output(std::string_view s) {
  for (Output o : kAllOutputs)
    if (output_name(o) == s) return o;
  std::string known;
  for (Output o : kAllOutputs) known += (known.empty() ? "" : ", ") + std::string(output_name(o));
  throw ConfigError("", 0, "unknown output '" + std::string(s) + "' (known: " + known + ")");
}

/// Outputs that require the steady-state covariance.
inline constexpr bool needs_covariance(Output o) {
  switch (o) {
    case Output::en_a_b1:
    case Output::en_a_b2:
    case Output::en_b1_b2:
    case Output::sigma_a_b1:
    case Output::sigma_a_b2:
    case Output::sigma_b1_b2:
      return true;
    default:
      return false;
  }
}

struct SweepSpec {
  NetworkParams base;
  std::vector<Axis> axes;
  std::vector<Output> outputs;
  Tolerances tolerances;
};

enum class PointStatus { ok, unstable, error };

inline constexpr std::string_view status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::unstable: return "unstable";
    case PointStatus::error: return "error";
  }
  return "?";
}

struct SweepRecord {
  std::vector<double> coords;                 // one per axis
  PointStatus status = PointStatus::ok;
  std::string message;                        // empty unless status != ok
  std::vector<std::optional<double>> values;  // one per spec output
};

/// Records are in row-major grid order: the first axis varies slowest.
struct SweepResult {
  SweepSpec spec;
  std::vector<std::vector<double>> axis_points;
  std::vector<SweepRecord> records;

  std::vector<int> shape() const {
    std::vector<int> s;
    for (const auto& p : axis_points) s.push_back(static_cast<int>(p.size()));
    return s;
  }
  std::size_t output_index(Output o) const {
    auto it = std::find(spec.outputs.begin(), spec.outputs.end(), o);
    if (it == spec.outputs.end())
      throw ContractError("output '" + std::string(output_name(o)) + "' was not requested");
    return static_cast<std::size_t>(it - spec.outputs.begin());
  }
  /// Column of one output across all records, nullopt where absent.
  std::vector<std::optional<double>> column(Output o) const {
    const auto k = output_index(o);
    std::vector<std::optional<double>> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.values[k]);
    return out;
  }
};

/// Throws ConfigError before any computation if the spec is malformed.
inline void validate_spec(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw ConfigError("sweep", 0, "a sweep needs 1 or 2 axes");
  if (spec.outputs.empty()) throw ConfigError("sweep", 0, "no outputs requested");
  std::set<Output> seen_out(spec.outputs.begin(), spec.outputs.end());
  if (seen_out.size() != spec.outputs.size()) throw ConfigError("sweep", 0, "duplicate output requested");

  std::set<std::string> fields;
  for (const auto& axis : spec.axes) {
    if (axis.targets.empty()) throw ConfigError("sweep", 0, "axis '" + axis.name + "' drives no parameter");
    for (const auto& t : axis.targets) {
      if (!find_param_field(t.field))
        throw ConfigError("sweep", 0, "axis '" + axis.name + "': '" + t.field + "' is not a sweepable parameter");
      if (!std::isfinite(t.scale)) throw ConfigError("sweep", 0, "axis '" + axis.name + "': non-finite scale");
      if (!fields.insert(t.field).second)
        throw ConfigError("sweep", 0, "parameter '" + t.field + "' is driven by more than one axis");
    }
    const Grid& g = axis.grid;
    if (g.kind == GridKind::list) {
      if (g.values.empty()) throw ConfigError("sweep", 0, "axis '" + axis.name + "': empty value list");
      for (double v : g.values)
        if (!std::isfinite(v)) throw ConfigError("sweep", 0, "axis '" + axis.name + "': non-finite value");
    } else {
      if (g.count < 2) throw ConfigError("sweep", 0, "axis '" + axis.name + "': grid count must be >= 2");
      if (!std::isfinite(g.start) || !std::isfinite(g.stop))
        throw ConfigError("sweep", 0, "axis '" + axis.name + "': non-finite range");
      if (g.kind == GridKind::log10 && !(g.start > 0.0 && g.stop > 0.0))
        throw ConfigError("sweep", 0, "axis '" + axis.name + "': log10 grid needs positive endpoints");
    }
  }
}

inline NetworkParams params_at(const SweepSpec& spec, const std::vector<double>& coords) {
  NetworkParams p = spec.base;
  for (std::size_t k = 0; k < spec.axes.size(); ++k)
    for (const auto& t : spec.axes[k].targets) set_field(p, t.field, t.scale * coords[k]);
  return p;
}

/// Runs the full pipeline at one grid point. Never throws; failures become
/// status = error with the message kept.
inline SweepRecord evaluate_point(const SweepSpec& spec, std::vector<double> coords) {
  SweepRecord rec;
  rec.coords = std::move(coords);
  rec.values.assign(spec.outputs.size(), std::nullopt);
  const bool want_v = std::any_of(spec.outputs.begin(), spec.outputs.end(), needs_covariance);

  try {
    const NetworkParams p = params_at(spec, rec.coords);
    const DriftDiffusion dd = build_drift_diffusion(p);
    const StabilityVerdict sv = check_stability(dd, spec.tolerances.stability_margin);
    if (!sv.stable()) {
      rec.status = PointStatus::unstable;
      rec.message = std::string(stability_name(sv.kind));
    }

    std::optional<CovarianceMatrix> v;
    if (want_v && sv.stable()) v = solve_lyapunov(dd, spec.tolerances.lyapunov());
    auto negativity = [&](Mode x, Mode y) -> std::optional<Negativity> {
      if (!v) return std::nullopt;
      return log_negativity(reduce_covariance(*v, {x, y}).full(), spec.tolerances.discriminant);
    };
    std::optional<Negativity> n_ab1, n_ab2, n_bb;
    if (v) {
      n_ab1 = negativity(Mode::a, Mode::b1);
      n_ab2 = negativity(Mode::a, Mode::b2);
      n_bb = negativity(Mode::b1, Mode::b2);
    }

    for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
      auto& out = rec.values[k];
      switch (spec.outputs[k]) {
        case Output::en_a_b1: if (n_ab1) out = n_ab1->log_neg; break;
        case Output::en_a_b2: if (n_ab2) out = n_ab2->log_neg; break;
        case Output::en_b1_b2: if (n_bb) out = n_bb->log_neg; break;
        case Output::sigma_a_b1: if (n_ab1) out = n_ab1->sigma_minus; break;
        case Output::sigma_a_b2: if (n_ab2) out = n_ab2->sigma_minus; break;
        case Output::sigma_b1_b2: if (n_bb) out = n_bb->sigma_minus; break;
        case Output::stable: out = sv.stable() ? 1.0 : 0.0; break;
        case Output::max_re: out = sv.max_real; break;
        case Output::m1: out = m1_value(p); break;
        case Output::m2: out = m2_value(p); break;
      }
    }
  } catch (const std::exception& e) {
    rec.status = PointStatus::error;
    rec.message = e.what();
    std::fill(rec.values.begin(), rec.values.end(), std::nullopt);
  }
  return rec;
}

inline int default_worker_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Evaluates every grid point with `workers` threads. Each record is written
/// to its own grid slot, so the result does not depend on the worker count or
/// on completion order.
inline SweepResult run_sweep(const SweepSpec& spec, int workers = 1) {
  validate_spec(spec);
  SweepResult result;
  result.spec = spec;
  for (const auto& axis : spec.axes) result.axis_points.push_back(axis.grid.points());

  std::size_t total = 1;
  for (const auto& pts : result.axis_points) total *= pts.size();
  result.records.resize(total);

  auto coords_of = [&](std::size_t flat) {
    std::vector<double> c(result.axis_points.size());
    for (std::size_t k = result.axis_points.size(); k-- > 0;) {
      const auto n = result.axis_points[k].size();
      c[k] = result.axis_points[k][flat % n];
      flat /= n;
    }
    return c;
  };

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
      result.records[i] = evaluate_point(spec, coords_of(i));
  };

  const int n_threads = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  return result;
}

}  // namespace optonet
