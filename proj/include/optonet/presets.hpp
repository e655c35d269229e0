#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "optonet/darkmode.hpp"
#include "optonet/errors.hpp"
#include "optonet/params.hpp"
#include "optonet/sweep.hpp"

namespace optonet {

/// One curve (or one map) of a figure panel.
struct FigureVariant {
  std::string name;   // file-name-safe, e.g. "gs1_0.1" or "off_J_eta"
  std::string label;  // human-readable, e.g. "G_s1 = 0.1" or "J=eta=0"
  SweepSpec spec;
};

struct FigurePreset {
  std::string name;
  std::string description;
  std::vector<FigureVariant> variants;
};

namespace presets {

inline std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Degenerate resonators, red-sideband drive, auxiliary cavity on b1 only.
inline NetworkParams auxiliary_link_base() {
  NetworkParams p;
  p.omega1 = 1.0;
  p.omega2 = 1.0;
  p.gamma1 = 1e-5;
  p.gamma2 = 1e-5;
  p.g1 = 0.15;
  p.g2 = 0.15;
  p.gs1 = 0.1;
  p.gs2 = 0.0;
  p.j_hop = 0.0;
  p.eta_hop = 0.0;
  p.delta_c = 1.0;
  p.delta_s = 1.0;
  p.kappa = 0.1;
  p.kappa_s = 0.1;
  p.nbar1 = 100.0;
  p.nbar2 = 100.0;
  p.aux_present = true;
  return p;
}

// Mechanical-pair setting: strongly damped resonators, far-detuned auxiliary cavity.
inline NetworkParams mechanical_pair_base() {
  NetworkParams p = auxiliary_link_base();
  p.gamma1 = 0.1;
  p.gamma2 = 0.1;
  p.gs1 = 0.05;
  p.delta_s = 5.0;
  p.delta_c = 3.0;
  return p;
}

// Fully connected network with equal auxiliary links.
inline NetworkParams network_base() {
  NetworkParams p = auxiliary_link_base();
  p.j_hop = 0.05;
  p.eta_hop = 0.05;
  p.gs1 = 0.1;
  p.gs2 = 0.1;
  return p;
}

inline Axis nbar_axis(Grid g) { return {"nbar", {{"nbar1", 1.0}, {"nbar2", 1.0}}, std::move(g)}; }

inline std::vector<Output> with_diagnostics(std::vector<Output> primary) {
  for (Output o : {Output::stable, Output::max_re}) primary.push_back(o);
  return primary;
}

inline FigureVariant gs1_variant(NetworkParams base, double gs1, std::vector<Axis> axes,
                                 std::vector<Output> outputs) {
  base.gs1 = gs1;
  return {"gs1_" + short_number(gs1), "G_s1 = " + short_number(gs1),
          SweepSpec{base, std::move(axes), std::move(outputs), {}}};
}

inline std::vector<FigureVariant> gs1_family(const NetworkParams& base, const std::vector<double>& gs1_values,
                                             const std::vector<Axis>& axes, const std::vector<Output>& outputs) {
  std::vector<FigureVariant> out;
  for (double g : gs1_values) out.push_back(gs1_variant(base, g, axes, outputs));
  return out;
}

inline FigurePreset fig2(char panel) {
  const bool first_mode = panel == 'a' || panel == 'c';
  const Output en = first_mode ? Output::en_a_b1 : Output::en_a_b2;
  const Output sig = first_mode ? Output::sigma_a_b1 : Output::sigma_a_b2;
  const std::string which = first_mode ? "E_N,1" : "E_N,2";
  const NetworkParams base = auxiliary_link_base();
  if (panel == 'a' || panel == 'b') {
    // Map ranges are read off the plot: delta_s in [0, 2], gs1 in [0, 0.1].
    SweepSpec s{base,
                {Axis::on("delta_s", Grid::linear(0.0, 2.0, kDefaultGridCount)),
                 Axis::on("gs1", Grid::linear(0.0, 0.1, kDefaultGridCount))},
                with_diagnostics({en, sig}),
                {}};
    return {std::string("fig2") + panel, which + " versus delta_s and G_s1", {{"map", "map", s}}};
  }
  return {std::string("fig2") + panel, which + " versus delta_s, dark mode unbroken and broken",
          gs1_family(base, {0.0, 0.05, 0.1}, {Axis::on("delta_s", Grid::linear(0.5, 1.5, kDefaultLineCount))},
                     with_diagnostics({en, sig}))};
}

inline FigurePreset fig3(char panel) {
  const Output en = panel == 'a' ? Output::en_a_b1 : Output::en_a_b2;
  const Output sig = panel == 'a' ? Output::sigma_a_b1 : Output::sigma_a_b2;
  // omega2/omega1 range [0.8, 1.2] is a reading of the valley region.
  return {std::string("fig3") + panel, "E_N versus omega2/omega1 for six G_s1 values",
          gs1_family(auxiliary_link_base(), {0.0, 0.02, 0.04, 0.06, 0.08, 0.1},
                     {Axis::on("omega2", Grid::linear(0.8, 1.2, kDefaultLineCount))},
                     with_diagnostics({en, sig}))};
}

inline FigurePreset fig4(char panel) {
  const auto outputs = with_diagnostics({Output::en_a_b1, Output::en_a_b2, Output::sigma_a_b1, Output::sigma_a_b2});
  if (panel == 'a')
    return {"fig4a", "E_N versus thermal phonon number nbar1 = nbar2",
            gs1_family(auxiliary_link_base(), {0.0, 0.1}, {nbar_axis(Grid::log10(1e-3, 1e3, kDefaultLineCount))},
                       outputs)};
  return {"fig4b", "E_N versus cavity decay kappa at nbar = 100",
          gs1_family(auxiliary_link_base(), {0.0, 0.1}, {Axis::on("kappa", Grid::linear(0.01, 1.0, kDefaultLineCount))},
                     outputs)};
}

inline FigurePreset fig5(char panel) {
  const auto outputs = with_diagnostics({Output::en_b1_b2, Output::sigma_b1_b2});
  if (panel == 'a')
    return {"fig5a", "E_N,m versus thermal phonon number at delta_c = 3",
            gs1_family(mechanical_pair_base(), {0.0, 0.05}, {nbar_axis(Grid::log10(1e-4, 10.0, kDefaultLineCount))},
                       outputs)};
  NetworkParams base = mechanical_pair_base();
  base.nbar1 = 0.0;
  base.nbar2 = 0.0;
  return {"fig5b", "E_N,m versus delta_c at nbar = 0",
          gs1_family(base, {0.0, 0.05}, {Axis::on("delta_c", Grid::linear(0.0, 6.0, kDefaultLineCount))}, outputs)};
}

inline FigurePreset fig6(char panel) {
  // (a,b): one channel off, (c,d): two, (e,f): three.
  const auto cases = taxonomy_cases();
  std::size_t begin = 0, end = 4;
  if (panel == 'c' || panel == 'd') begin = 4, end = 10;
  if (panel == 'e' || panel == 'f') begin = 10, end = 14;
  const bool first_mode = panel == 'a' || panel == 'c' || panel == 'e';
  const Output en = first_mode ? Output::en_a_b1 : Output::en_a_b2;
  const Output sig = first_mode ? Output::sigma_a_b1 : Output::sigma_a_b2;

  FigurePreset fp{std::string("fig6") + panel, "E_N versus delta_s'' with coupling channels switched off", {}};
  for (std::size_t i = begin; i < end; ++i) {
    const ChannelSet& off = cases[i];
    SweepSpec s{switch_off(network_base(), off), {Axis::on("delta_s", Grid::linear(0.0, 2.0, kDefaultLineCount))},
                with_diagnostics({en, sig, Output::m1, Output::m2}), {}};
    fp.variants.push_back({configuration_slug(off), configuration_label(off), s});
  }
  return fp;
}

inline FigurePreset fig7(char panel) {
  NetworkParams base = network_base();
  if (panel == 'c') {
    // gs2 = ratio * gs1 with gs1 held at its caption value.
    Axis ratio{"gs2/gs1", {{"gs2", base.gs1}}, Grid::linear(0.0, 2.0, kDefaultLineCount)};
    return {"fig7c", "E_N versus G_s2/G_s1",
            {{"ratio", "G_s2/G_s1",
              SweepSpec{base, {ratio},
                        with_diagnostics({Output::en_a_b1, Output::en_a_b2, Output::sigma_a_b1, Output::sigma_a_b2,
                                          Output::m2}),
                        {}}}}};
  }
  const Output en = panel == 'a' ? Output::en_a_b1 : Output::en_a_b2;
  const Output sig = panel == 'a' ? Output::sigma_a_b1 : Output::sigma_a_b2;
  // Map range [0, 0.2] for both auxiliary couplings is a reading of the plot.
  SweepSpec s{base,
              {Axis::on("gs1", Grid::linear(0.0, 0.2, kDefaultGridCount)),
               Axis::on("gs2", Grid::linear(0.0, 0.2, kDefaultGridCount))},
              with_diagnostics({en, sig, Output::m2}),
              {}};
  return {std::string("fig7") + panel, "E_N versus G_s1 and G_s2", {{"map", "map", s}}};
}

inline FigurePreset fig11(char panel) {
  NetworkParams four = auxiliary_link_base();
  const double nbar = panel == 'a' ? 0.0 : 100.0;
  four.nbar1 = nbar;
  four.nbar2 = nbar;
  NetworkParams three = four;
  three.aux_present = false;
  three.gs1 = 0.0;
  const std::vector<Axis> axes{Axis::on("kappa", Grid::linear(0.05, 1.0, kDefaultLineCount))};
  const auto outputs = with_diagnostics({Output::en_a_b1, Output::en_a_b2, Output::sigma_a_b1, Output::sigma_a_b2});
  return {std::string("fig11") + panel, "E_N versus kappa, three-mode versus four-mode system",
          {{"three_mode", "without auxiliary cavity", SweepSpec{three, axes, outputs, {}}},
           {"four_mode", "with auxiliary cavity", SweepSpec{four, axes, outputs, {}}}}};
}

}  // namespace presets

inline std::vector<std::string> figure_names() {
  return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b",
          "fig6a", "fig6b", "fig6c", "fig6d", "fig6e", "fig6f", "fig7a", "fig7b", "fig7c", "fig11a", "fig11b"};
}

/// Sweep specification that regenerates the named figure panel, one variant
/// per curve. Throws ConfigError listing the available names otherwise.
inline FigurePreset figure_preset(std::string_view name) {
  const std::string n(name);
  if (n.size() >= 5 && n.rfind("fig", 0) == 0) {
    const char panel = n.back();
    const std::string fig = n.substr(0, n.size() - 1);
    if (fig == "fig2" && panel >= 'a' && panel <= 'd') return presets::fig2(panel);
    if (fig == "fig3" && (panel == 'a' || panel == 'b')) return presets::fig3(panel);
    if (fig == "fig4" && (panel == 'a' || panel == 'b')) return presets::fig4(panel);
    if (fig == "fig5" && (panel == 'a' || panel == 'b')) return presets::fig5(panel);
    if (fig == "fig6" && panel >= 'a' && panel <= 'f') return presets::fig6(panel);
    if (fig == "fig7" && panel >= 'a' && panel <= 'c') return presets::fig7(panel);
    if (fig == "fig11" && (panel == 'a' || panel == 'b')) return presets::fig11(panel);
  }
  std::string known;
  for (const auto& f : figure_names()) known += (known.empty() ? "" : ", ") + f;
  throw ConfigError("", 0, "unknown figure preset '" + n + "' (available: " + known + ")");
}

}  // namespace optonet
