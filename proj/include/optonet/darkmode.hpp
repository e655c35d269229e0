#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "optonet/errors.hpp"
#include "optonet/params.hpp"

namespace optonet {

inline constexpr double kDefaultDarkModeTolerance = 1e-9;

/// M1 = (w1 - w2) G1 G2 + eta (G2^2 - G1^2). Zero iff the hybrid modes
/// B+ and B- are not mixed by the mechanical part of the Hamiltonian.
inline double m1_value(const NetworkParams& p) {
  return (p.omega1 - p.omega2) * p.g1 * p.g2 + p.eta_hop * (p.g2 * p.g2 - p.g1 * p.g1);
}

/// M2 = G_s1 G2 - G_s2 G1. Zero iff B- does not couple to the auxiliary cavity.
inline double m2_value(const NetworkParams& p) { return p.gs1 * p.g2 - p.gs2 * p.g1; }

struct DarkModeReport {
  double m1 = 0.0;
  double m2 = 0.0;
  double m1_threshold = 0.0;
  double m2_threshold = 0.0;
  bool dark_mode_exists = false;
  std::array<double, 2> bright_weights{};  // B+ = w0 b1 + w1 b2
  std::array<double, 2> dark_weights{};    // B- = w0 b1 + w1 b2
};

/// Evaluates the dark-mode conditions M1 = M2 = 0 with scale-aware thresholds
///   |M1| <= tol * max(|G1|,|G2|)^2 * max(w1, w2, 1)
///   |M2| <= tol * max(|G1|,|G2|) * max(|Gs1|,|Gs2|,|G1|,|G2|).
inline DarkModeReport dark_mode_conditions(const NetworkParams& p, double tol = kDefaultDarkModeTolerance) {
  const double norm = std::hypot(p.g1, p.g2);
  if (!(norm > 0.0))
    throw DegenerateConfigurationError("G1 = G2 = 0: hybrid mechanical modes B+/B- are undefined");
  if (!(tol >= 0.0)) throw ContractError("dark-mode tolerance must be >= 0");

  DarkModeReport r;
  r.m1 = m1_value(p);
  r.m2 = m2_value(p);
  const double g_max = std::max(std::abs(p.g1), std::abs(p.g2));
  const double gs_max = std::max({std::abs(p.gs1), std::abs(p.gs2), g_max});
  r.m1_threshold = tol * g_max * g_max * std::max({p.omega1, p.omega2, 1.0});
  r.m2_threshold = tol * g_max * gs_max;
  r.dark_mode_exists = std::abs(r.m1) <= r.m1_threshold && std::abs(r.m2) <= r.m2_threshold;
  r.bright_weights = {p.g1 / norm, p.g2 / norm};
  r.dark_weights = {p.g2 / norm, -p.g1 / norm};
  return r;
}

/// Optional coupling channels of the network. G1 and G2 are listed only so
/// that requests to switch them off can be rejected.
enum class Channel { j_hop, eta_hop, gs1, gs2, g1, g2 };

inline constexpr std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::j_hop: return "J";
    case Channel::eta_hop: return "eta";
    case Channel::gs1: return "Gs1";
    case Channel::gs2: return "Gs2";
    case Channel::g1: return "G1";
    case Channel::g2: return "G2";
  }
  return "?";
}

inline Channel parse_channel(std::string_view s) {
  for (Channel c : {Channel::j_hop, Channel::eta_hop, Channel::gs1, Channel::gs2, Channel::g1, Channel::g2}) {
    if (channel_name(c) == s) return c;
  }
  if (s == "j_hop") return Channel::j_hop;
  if (s == "eta_hop") return Channel::eta_hop;
  if (s == "gs1") return Channel::gs1;
  if (s == "gs2") return Channel::gs2;
  throw ContractError("unknown coupling channel '" + std::string(s) + "' (expected J, eta, Gs1 or Gs2)");
}

using ChannelSet = std::set<Channel>;

/// "J=eta=0" style label.
inline std::string configuration_label(const ChannelSet& off) {
  if (off.empty()) return "none";
  std::string s;
  for (Channel c : off) s += std::string(channel_name(c)) + "=";
  return s + "0";
}

/// File-name-safe form of the label, e.g. "off_J_eta".
inline std::string configuration_slug(const ChannelSet& off) {
  std::string s = "off";
  if (off.empty()) return "all_on";
  for (Channel c : off) s += "_" + std::string(channel_name(c));
  return s;
}

inline NetworkParams switch_off(NetworkParams p, const ChannelSet& off) {
  for (Channel c : off) {
    switch (c) {
      case Channel::j_hop: p.j_hop = 0.0; break;
      case Channel::eta_hop: p.eta_hop = 0.0; break;
      case Channel::gs1: p.gs1 = 0.0; break;
      case Channel::gs2: p.gs2 = 0.0; break;
      case Channel::g1: p.g1 = 0.0; break;
      case Channel::g2: p.g2 = 0.0; break;
    }
  }
  return p;
}

/// The fourteen one-, two- and three-channel switch-off cases, in the order
/// one-off {J, eta, Gs1, Gs2}, two-off, three-off.
inline std::vector<ChannelSet> taxonomy_cases() {
  using C = Channel;
  return {
      {C::j_hop},
      {C::eta_hop},
      {C::gs1},
      {C::gs2},
      {C::j_hop, C::eta_hop},
      {C::gs1, C::gs2},
      {C::j_hop, C::gs1},
      {C::j_hop, C::gs2},
      {C::eta_hop, C::gs1},
      {C::eta_hop, C::gs2},
      {C::j_hop, C::gs1, C::gs2},
      {C::eta_hop, C::gs1, C::gs2},
      {C::j_hop, C::eta_hop, C::gs1},
      {C::j_hop, C::eta_hop, C::gs2},
  };
}

struct ConfigurationVerdict {
  std::string label;
  bool dark_mode_exists = false;
  DarkModeReport report;
  NetworkParams effective;  // params with the channels switched off
};

/// Dark-mode verdict for a coupling configuration of the degenerate network
/// (w1 = w2, G1 and G2 always on). When both auxiliary optomechanical links are
/// on they must be equal, which is the convention the taxonomy is stated in;
/// use dark_mode_conditions directly for general G_s2/G_s1.
inline ConfigurationVerdict classify_configuration(const ChannelSet& off, const NetworkParams& params,
                                                   double tol = kDefaultDarkModeTolerance) {
  if (off.count(Channel::g1) || off.count(Channel::g2))
    throw UnsupportedConfigurationError("G1 and G2 are fixed channels and cannot be switched off");
  if (params.g1 == 0.0 || params.g2 == 0.0)
    throw UnsupportedConfigurationError("configuration taxonomy requires nonzero G1 and G2");
  if (!params.aux_present)
    throw UnsupportedConfigurationError("configuration taxonomy requires the auxiliary cavity");
  if (params.omega1 != params.omega2)
    throw ContractError("configuration taxonomy is defined for degenerate resonators (omega1 == omega2)");

  const NetworkParams eff = switch_off(params, off);
  if (eff.gs1 != 0.0 && eff.gs2 != 0.0 && eff.gs1 != eff.gs2)
    throw ContractError("taxonomy convention requires gs1 == gs2 when both are switched on");

  ConfigurationVerdict v;
  v.label = configuration_label(off);
  v.report = dark_mode_conditions(eff, tol);
  v.dark_mode_exists = v.report.dark_mode_exists;
  v.effective = eff;
  return v;
}

// --- Collective mechanical coordinates --------------------------------------

struct MechanicalCoords {
  double q1, p1, q2, p2;
};

struct CollectiveCoords {
  double q_cm, p_cm, q_r, p_r;
};

/// q_cm = (g1 q1 + g2 q2)/N, q_r = (g1 q2 - g2 q1)/N, likewise for momenta,
/// with N = sqrt(g1^2 + g2^2). The couplings may carry either sign.
inline CollectiveCoords to_collective(double g1, double g2, const MechanicalCoords& x) {
  const double n = std::hypot(g1, g2);
  if (!(n > 0.0)) throw DegenerateConfigurationError("g1 = g2 = 0: collective coordinates undefined");
  return {(g1 * x.q1 + g2 * x.q2) / n, (g1 * x.p1 + g2 * x.p2) / n,
          (g1 * x.q2 - g2 * x.q1) / n, (g1 * x.p2 - g2 * x.p1) / n};
}

inline MechanicalCoords from_collective(double g1, double g2, const CollectiveCoords& c) {
  const double n = std::hypot(g1, g2);
  if (!(n > 0.0)) throw DegenerateConfigurationError("g1 = g2 = 0: collective coordinates undefined");
  return {(g1 * c.q_cm - g2 * c.q_r) / n, (g1 * c.p_cm - g2 * c.p_r) / n,
          (g2 * c.q_cm + g1 * c.q_r) / n, (g2 * c.p_cm + g1 * c.p_r) / n};
}

/// Which physical collective coordinate, (q1 + q2)/sqrt2 or (q1 - q2)/sqrt2,
/// is the decoupled one.
enum class DarkCoordinate { relative, center_of_mass, none };

inline constexpr std::string_view dark_coordinate_name(DarkCoordinate d) {
  switch (d) {
    case DarkCoordinate::relative: return "relative";
    case DarkCoordinate::center_of_mass: return "center_of_mass";
    case DarkCoordinate::none: return "none";
  }
  return "?";
}

/// Coefficients of the nonlinearized Hamiltonian
///   sum_l [w_l (p_l^2 + q_l^2)/2 + g_l a'a q_l] + g_s1 as'as q1
/// rewritten in the collective coordinates:
///   w_cm (p_cm^2 + q_cm^2)/2 + w_r (p_r^2 + q_r^2)/2 + cross (p_cm p_r + q_cm q_r)
///   + cm_cavity a'a q_cm + as'as (cm_aux q_cm + rel_aux q_r).
struct CmRelReport {
  double omega_cm = 0.0;
  double omega_r = 0.0;
  double cross_coupling = 0.0;
  double cm_cavity_coupling = 0.0;
  double rel_aux_coupling = 0.0;
  double cm_aux_coupling = 0.0;
  bool dark_mode_exists = false;           // q_r decoupled from q_cm, a and as
  std::array<double, 2> dark_direction{};  // q_r = d0 q1 + d1 q2
  DarkCoordinate which_is_dark = DarkCoordinate::none;
};

/// Collective-coordinate analysis for signed couplings. Equal signs
/// (capacitive microwave coupling) make the physical relative coordinate dark;
/// opposite signs (two-mirror Fabry-Perot cavity) make the center of mass dark.
/// `which_is_dark` is `none` when no dark coordinate exists or when it is a
/// mixture of the two physical coordinates (|g1| != |g2|).
inline CmRelReport cm_rel_analysis(double g1, double g2, double gs1, double omega1, double omega2,
                                   double tol = kDefaultDarkModeTolerance) {
  const double n2 = g1 * g1 + g2 * g2;
  if (!(n2 > 0.0))
    throw DegenerateConfigurationError("g1 = g2 = 0: collective coordinates undefined");
  const double n = std::sqrt(n2);

  CmRelReport r;
  r.omega_cm = (omega1 * g1 * g1 + omega2 * g2 * g2) / n2;
  r.omega_r = (omega1 * g2 * g2 + omega2 * g1 * g1) / n2;
  r.cross_coupling = (omega2 - omega1) * g1 * g2 / n2;
  r.cm_cavity_coupling = n;
  r.cm_aux_coupling = gs1 * g1 / n;
  r.rel_aux_coupling = -gs1 * g2 / n + 0.0;  // no signed zero in reports
  r.dark_direction = {-g2 / n, g1 / n};

  const double freq_scale = std::max({std::abs(omega1), std::abs(omega2), 1.0});
  const double g_scale = std::max({std::abs(g1), std::abs(g2), std::abs(gs1)});
  r.dark_mode_exists = std::abs(r.cross_coupling) <= tol * freq_scale &&
                       std::abs(r.rel_aux_coupling) <= tol * g_scale;
  if (r.dark_mode_exists) {
    const double on_relative = std::abs(r.dark_direction[0] - r.dark_direction[1]) / std::sqrt(2.0);
    const double on_cm = std::abs(r.dark_direction[0] + r.dark_direction[1]) / std::sqrt(2.0);
    if (std::abs(on_relative - 1.0) <= tol)
      r.which_is_dark = DarkCoordinate::relative;
    else if (std::abs(on_cm - 1.0) <= tol)
      r.which_is_dark = DarkCoordinate::center_of_mass;
  }
  return r;
}

}  // namespace optonet
