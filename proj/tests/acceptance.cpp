// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "optonet/darkmode.hpp"
#include "optonet/pipeline.hpp"
#include "optonet/presets.hpp"
#include "optonet/sweep.hpp"

using namespace optonet;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const int kWorkers = default_worker_count();

const FigureVariant& variant(const FigurePreset& p, const std::string& name) {
  for (const auto& v : p.variants)
    if (v.name == name) return v;
  throw std::runtime_error("no variant " + name + " in " + p.name);
}

struct Curve {
  std::vector<double> x;
  std::vector<double> y;  // NaN where the point is not ok
  std::size_t not_ok = 0;
};

Curve curve(const SweepSpec& spec, Output o) {
  const SweepResult r = run_sweep(spec, kWorkers);
  const std::size_t k = r.output_index(o);
  Curve c;
  for (const auto& rec : r.records) {
    c.x.push_back(rec.coords.at(0));
    const bool ok = rec.status == PointStatus::ok && rec.values[k].has_value();
    c.y.push_back(ok ? *rec.values[k] : std::nan(""));
    c.not_ok += !ok;
  }
  return c;
}

std::pair<double, double> argmax(const Curve& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.y.size(); ++i)
    if (c.y[i] > c.y[best]) best = i;
  return {c.x[best], c.y[best]};
}

double pair_log_neg(const NetworkParams& p, ModePair pair) {
  const auto s = solve_point(p);
  if (!s.covariance) return std::nan("");
  return s.find(pair)->log_neg;
}

/// Largest nbar1 = nbar2 with nonzero E_N, by bisection in log nbar between a
/// point where it is positive and one where it vanishes.
double thermal_threshold(NetworkParams p, ModePair pair, double lo, double hi) {
  auto en = [&](double n) {
    p.nbar1 = p.nbar2 = n;
    return pair_log_neg(p, pair);
  };
  if (!(en(lo) > 0.0) || en(hi) != 0.0) return std::nan("");
  for (int i = 0; i < 80; ++i) {
    const double mid = std::sqrt(lo * hi);
    (en(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

Outcome peak() {
  const auto c1 = curve(variant(figure_preset("fig2c"), "gs1_0.1").spec, Output::en_a_b1);
  const auto c2 = curve(variant(figure_preset("fig2d"), "gs1_0.1").spec, Output::en_a_b2);
  const auto [x1, y1] = argmax(c1);
  const auto [x2, y2] = argmax(c2);
  const bool ok = c1.not_ok + c2.not_ok == 0 && std::abs(y1 - 0.1) <= 0.03 && std::abs(y2 - 0.1) <= 0.03 &&
                  std::abs(x1 - 1.0) <= 0.1 && std::abs(x2 - 1.0) <= 0.1;
  return {ok, fmt("max E_N,1 = %.4f at delta_s = %.3f; max E_N,2 = %.4f at delta_s = %.3f (want 0.1 +- 0.03 at 1 +- 0.1)",
                  y1, x1, y2, x2)};
}

Outcome dark_null() {
  double worst = 0.0;
  std::size_t bad = 0;
  for (auto [fig, o] : {std::pair{"fig2c", Output::en_a_b1}, std::pair{"fig2d", Output::en_a_b2}}) {
    const auto c = curve(variant(figure_preset(fig), "gs1_0").spec, o);
    bad += c.not_ok;
    for (double y : c.y) worst = std::max(worst, y);
  }
  return {bad == 0 && worst <= 1e-9, fmt("max E_N over delta_s in [0.5, 1.5] at G_s1 = 0: %.3g (want <= 1e-9)", worst)};
}

Outcome thermal_threshold_ratio() {
  const auto preset = figure_preset("fig4a");
  const auto on = variant(preset, "gs1_0.1");
  const auto off = variant(preset, "gs1_0");
  const auto c_on = curve(on.spec, Output::en_a_b1);
  const auto c_off = curve(off.spec, Output::en_a_b1);

  // Grid bracket, then bisection for the exact threshold.
  auto bracket = [](const Curve& c) {
    double last_pos = std::nan(""), first_zero_after = std::nan("");
    for (std::size_t i = 0; i < c.x.size(); ++i)
      if (c.y[i] > 0.0) last_pos = c.x[i], first_zero_after = i + 1 < c.x.size() ? c.x[i + 1] : std::nan("");
    return std::pair{last_pos, first_zero_after};
  };
  const auto [lo_on, hi_on] = bracket(c_on);
  const auto [lo_off, hi_off] = bracket(c_off);
  const double t_on = thermal_threshold(on.spec.base, {Mode::a, Mode::b1}, lo_on, hi_on);
  const double t_off = thermal_threshold(off.spec.base, {Mode::a, Mode::b1}, lo_off, hi_off);
  const double ratio = t_on / t_off;
  const bool ok = c_on.not_ok + c_off.not_ok == 0 && t_on >= 300.0 && t_on <= 600.0 && t_off > 0.0 && t_off <= 1.0 &&
                  ratio >= 100.0;
  return {ok, fmt("E_N,1 vanishes above nbar = %.1f (G_s1 = 0.1) and %.3f (G_s1 = 0); ratio %.0f "
                  "(want [300, 600], <= 1, >= 100)",
                  t_on, t_off, ratio)};
}

Outcome sideband_optimum() {
  const auto c = curve(variant(figure_preset("fig4b"), "gs1_0.1").spec, Output::en_a_b1);
  const auto [x, y] = argmax(c);
  return {c.not_ok == 0 && x >= 0.1 && x <= 0.3, fmt("argmax_kappa E_N,1 = %.3f (E_N,1 = %.4f; want [0.1, 0.3])", x, y)};
}

Outcome mechanical_fragility() {
  bool ok = true;
  std::string detail;
  const auto fig5a = figure_preset("fig5a");
  for (const auto& v : fig5a.variants) {
    const auto c = curve(v.spec, Output::en_b1_b2);
    double worst = 0.0, worst_at = 0.0;
    for (std::size_t i = 0; i < c.x.size(); ++i)
      if (c.x[i] >= 0.002 && !(c.y[i] <= worst)) worst = c.y[i], worst_at = c.x[i];
    const double t = thermal_threshold(v.spec.base, {Mode::b1, Mode::b2}, 1e-4, 0.1);
    ok = ok && c.not_ok == 0 && worst <= 1e-9;
    detail += fmt("%s: max E_N,m for nbar >= 0.002 is %.3g at nbar = %.4g, vanishes above nbar = %.5f; ", v.name.c_str(),
                  worst, worst_at, t);
  }
  const auto fig5b = figure_preset("fig5b");
  for (const auto& v : fig5b.variants) {
    const auto c = curve(v.spec, Output::en_b1_b2);
    const auto [x, y] = argmax(c);
    ok = ok && c.not_ok == 0 && x >= 2.5 && x <= 3.5;
    detail += fmt("%s: argmax_delta_c E_N,m = %.2f (%.4f); ", v.name.c_str(), x, y);
  }
  return {ok, detail + "want <= 1e-9 for nbar >= 0.002 and argmax in [2.5, 3.5]"};
}

Outcome taxonomy() {
  const auto cases = taxonomy_cases();
  int agree = 0;
  std::string mismatches;
  for (const char* fig : {"fig6a", "fig6c", "fig6e"}) {
    const auto preset = figure_preset(fig);
    for (const auto& v : preset.variants) {
      const ChannelSet* off = nullptr;
      for (const auto& c : cases)
        if (configuration_slug(c) == v.name) off = &c;
      const auto verdict = classify_configuration(*off, presets::network_base());
      const auto c = curve(v.spec, Output::en_a_b1);
      double mx = 0.0;
      for (double y : c.y) mx = std::max(mx, y);
      const bool match = c.not_ok == 0 && (verdict.dark_mode_exists ? mx <= 1e-6 : mx > 0.01);
      agree += match;
      if (!match) mismatches += fmt(" %s(dark=%d, max=%.3g)", v.label.c_str(), verdict.dark_mode_exists, mx);
    }
  }
  return {agree == 14 && cases.size() == 14,
          fmt("%d/14 configurations agree (unbroken <=> max E_N,1 <= 1e-6, broken <=> > 0.01)", agree) + mismatches};
}

Outcome valley() {
  const auto c = curve(figure_preset("fig7c").variants.at(0).spec, Output::en_a_b1);
  double inner_max = 0.0, outer_min = 1e300;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    const double r = c.x[i];
    if (r >= 0.8 - 1e-12 && r <= 1.2 + 1e-12) inner_max = std::max(inner_max, c.y[i]);
    if (r <= 0.5 + 1e-12 || r >= 1.5 - 1e-12) outer_min = std::min(outer_min, c.y[i]);
  }
  return {c.not_ok == 0 && inner_max <= 1e-9 && outer_min > 0.01,
          fmt("max E_N,1 on [0.8, 1.2] = %.3g (want 0); min outside [0.5, 1.5] = %.4f (want > 0.01)", inner_max,
              outer_min)};
}

std::vector<DriftDiffusion> random_stable_systems(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<DriftDiffusion> out;
  while (static_cast<int>(out.size()) < count) {
    auto dd = build_drift_diffusion(oracle::random_params(rng, out.size() % 4 != 3));
    if (check_stability(dd).stable()) out.push_back(std::move(dd));
  }
  return out;
}

Outcome solver_oracle() {
  double worst_rel = 0.0, worst_res = 0.0;
  for (const auto& dd : random_stable_systems(2024, 1000)) {
    const auto v = solve_lyapunov(dd);
    const Eigen::MatrixXd ref = oracle::kronecker_lyapunov(dd.drift, dd.diffusion);
    worst_rel = std::max(worst_rel, (v.matrix() - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
    worst_res = std::max(worst_res, lyapunov_residual(dd, v) / dd.diffusion.cwiseAbs().maxCoeff());
  }
  return {worst_rel <= 1e-8 && worst_res <= 1e-10,
          fmt("1000 draws: max relative deviation from Kronecker oracle %.2e (want <= 1e-8), max residual/|Q| %.2e "
              "(want <= 1e-10)",
              worst_rel, worst_res)};
}

Outcome physicality() {
  double floor = 1e300, min_sigma = 1e300;
  bool symmetric = true;
  for (const auto& dd : random_stable_systems(4048, 1000)) {
    const auto v = solve_lyapunov(dd);
    symmetric = symmetric && v.matrix() == v.matrix().transpose();
    floor = std::min(floor, physicality_floor(v));
    for (const auto& r : all_pair_report(v)) min_sigma = std::min(min_sigma, r.sigma_minus);
  }
  std::mt19937_64 rng(8096);
  int agree = 0, entangled = 0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Matrix4d v = oracle::random_two_mode_state(rng);
    const bool ppt = oracle::ppt_entangled(v);
    agree += (log_negativity(v).log_neg > 0.0) == ppt;
    entangled += ppt;
  }
  return {symmetric && floor >= -1e-8 && min_sigma > 0.0 && agree == 1000,
          fmt("1000 solves: symmetric=%s, min eig(V + i/2 Omega) = %.2e, min sigma- = %.3g; "
              "E_N sign agrees with PPT spectrum on %d/1000 states (%d entangled)",
              symmetric ? "yes" : "no", floor, min_sigma, agree, entangled)};
}

Outcome decoupling() {
  std::mt19937_64 rng(512);
  double worst = 0.0;
  int checked = 0;
  while (checked < 200) {
    NetworkParams p = oracle::random_params(rng);
    p.gs1 = p.gs2 = p.j_hop = 0.0;
    const auto four = solve_point(p);
    if (!four.covariance) continue;
    p.aux_present = false;
    const auto three = solve_point(p);
    if (!three.covariance) return {false, "three-mode system unstable where four-mode is stable"};
    const int keep[] = {0, 1, 2, 3, 6, 7};
    const Eigen::MatrixXd& v3 = three.covariance->matrix();
    double diff = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) diff = std::max(diff, std::abs(v3(i, j) - four.covariance->matrix()(keep[i], keep[j])));
    worst = std::max(worst, diff / std::max(1.0, v3.cwiseAbs().maxCoeff()));
    ++checked;
  }

  bool monotone = true;
  std::string curves;
  const auto fig11a = figure_preset("fig11a");
  for (const auto& v : fig11a.variants) {
    const auto c = curve(v.spec, Output::en_a_b1);
    for (std::size_t i = 1; i < c.y.size(); ++i) monotone = monotone && c.not_ok == 0 && c.y[i] <= c.y[i - 1] + 1e-12;
    curves += fmt(" %s %.4f -> %.4f;", v.name.c_str(), c.y.front(), c.y.back());
  }
  return {worst <= 1e-10 && monotone,
          fmt("200 draws: max |V6 - marginal(V8)| / max(1, |V6|) = %.2e (want <= 1e-10); fig11a E_N,1 non-increasing "
              "in kappa: %s;",
              worst, monotone ? "yes" : "no") + curves};
}

Outcome transforms() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> w(0.5, 1.5), g(-0.3, 0.3), x(-1.0, 1.0);
  double round_trip = 0.0, form = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double g1 = g(rng), g2 = g(rng);
    if (std::hypot(g1, g2) < 1e-3) g1 = 0.1;
    const double w1 = w(rng), w2 = w(rng), gs = g(rng);
    const MechanicalCoords m{x(rng), x(rng), x(rng), x(rng)};
    const auto k = to_collective(g1, g2, m);
    const auto back = from_collective(g1, g2, k);
    round_trip = std::max({round_trip, std::abs(back.q1 - m.q1), std::abs(back.p1 - m.p1), std::abs(back.q2 - m.q2),
                           std::abs(back.p2 - m.p2)});

    // Quadratic form of the mechanical Hamiltonian plus cavity couplings, both ways.
    const auto r = cm_rel_analysis(g1, g2, gs, w1, w2);
    const double c = x(rng), s = x(rng);
    const double direct = 0.5 * w1 * (m.q1 * m.q1 + m.p1 * m.p1) + 0.5 * w2 * (m.q2 * m.q2 + m.p2 * m.p2) +
                          (g1 * m.q1 + g2 * m.q2) * c + gs * m.q1 * s;
    const double coll = 0.5 * r.omega_cm * (k.q_cm * k.q_cm + k.p_cm * k.p_cm) +
                        0.5 * r.omega_r * (k.q_r * k.q_r + k.p_r * k.p_r) +
                        r.cross_coupling * (k.q_cm * k.q_r + k.p_cm * k.p_r) + r.cm_cavity_coupling * k.q_cm * c +
                        (r.cm_aux_coupling * k.q_cm + r.rel_aux_coupling * k.q_r) * s;
    form = std::max(form, std::abs(coll - direct));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const auto same = cm_rel_analysis(0.15, 0.15, 0.0, 1.0, 1.0);
  const auto opposite = cm_rel_analysis(0.15, -0.15, 0.0, 1.0, 1.0);
  const bool signs = same.which_is_dark == DarkCoordinate::relative &&
                     opposite.which_is_dark == DarkCoordinate::center_of_mass;
  return {round_trip <= 8 * eps && form <= 1e-13 && signs,
          fmt("round trip max error %.2e (want <= 8 eps = %.1e); quadratic-form mismatch %.2e (want <= 1e-13); "
              "equal signs -> %s dark, opposite signs -> %s dark",
              round_trip, 8 * eps, form, std::string(dark_coordinate_name(same.which_is_dark)).c_str(),
              std::string(dark_coordinate_name(opposite.which_is_dark)).c_str())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Fig. 2 peak", 1.0, peak},
      {2, "Dark-mode null", 1.0, dark_null},
      {3, "Thermal threshold", 2.0, thermal_threshold_ratio},
      {4, "Sideband optimum", 1.0, sideband_optimum},
      {5, "Mechanical fragility", 2.0, mechanical_fragility},
      {6, "Configuration taxonomy", 5.0, taxonomy},
      {7, "Valley reproduction", 1.0, valley},
      {8, "Solver oracle equivalence", 10.0, solver_oracle},
      {9, "Physicality suite", 10.0, physicality},
      {10, "Decoupling invariant", 2.0, decoupling},
      {11, "Transform identities", 1.0, transforms},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < c.time_limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s  [%2d] %-26s %.3fs/%.0fs%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), dt,
                c.time_limit_s, in_time ? "" : " (over time)", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
