#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "optonet/errors.hpp"

namespace optonet {

/// Scaled parameters of the two-cavity, two-resonator network. Every rate and
/// frequency is in units of omega1. Detunings are the normalized (mean-field
/// shifted) values and the couplings are the linearized, real strengths G.
///
/// Defaults are the red-sideband working point with the auxiliary cavity on:
/// degenerate resonators, G1 = G2 = 0.15, G_s1 = 0.1, kappa = kappa_s = 0.1,
/// gamma = 1e-5, nbar = 100.
struct NetworkParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double gamma1 = 1e-5;
  double gamma2 = 1e-5;
  double kappa = 0.1;
  double kappa_s = 0.1;
  double delta_c = 1.0;
  double delta_s = 1.0;  // Delta_s' in the one-auxiliary-link model, Delta_s'' in the network
  double g1 = 0.15;
  double g2 = 0.15;
  double gs1 = 0.1;
  double gs2 = 0.0;
  double j_hop = 0.0;
  double eta_hop = 0.0;
  double nbar1 = 100.0;
  double nbar2 = 100.0;
  bool aux_present = true;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

struct ParamField {
  std::string_view name;
  double NetworkParams::*member;
};

/// Every real-valued field, in declaration order. `aux_present` is the only
/// non-numeric field and is handled separately.
inline constexpr std::array<ParamField, 16> kParamFields{{
    {"omega1", &NetworkParams::omega1},
    {"omega2", &NetworkParams::omega2},
    {"gamma1", &NetworkParams::gamma1},
    {"gamma2", &NetworkParams::gamma2},
    {"kappa", &NetworkParams::kappa},
    {"kappa_s", &NetworkParams::kappa_s},
    {"delta_c", &NetworkParams::delta_c},
    {"delta_s", &NetworkParams::delta_s},
    {"g1", &NetworkParams::g1},
    {"g2", &NetworkParams::g2},
    {"gs1", &NetworkParams::gs1},
    {"gs2", &NetworkParams::gs2},
    {"j_hop", &NetworkParams::j_hop},
    {"eta_hop", &NetworkParams::eta_hop},
    {"nbar1", &NetworkParams::nbar1},
    {"nbar2", &NetworkParams::nbar2},
}};

inline constexpr std::string_view kAuxPresentField = "aux_present";

inline std::optional<ParamField> find_param_field(std::string_view name) {
  for (const auto& f : kParamFields)
    if (f.name == name) return f;
  return std::nullopt;
}

inline bool is_param_name(std::string_view name) {
  return name == kAuxPresentField || find_param_field(name).has_value();
}

inline double get_field(const NetworkParams& p, std::string_view name) {
  if (name == kAuxPresentField) return p.aux_present ? 1.0 : 0.0;
  auto f = find_param_field(name);
  if (!f) throw ContractError("unknown parameter '" + std::string(name) + "'");
  return p.*(f->member);
}

/// Numeric assignment; `aux_present` accepts exactly 0 or 1.
inline void set_field(NetworkParams& p, std::string_view name, double value) {
  if (name == kAuxPresentField) {
    if (value != 0.0 && value != 1.0)
      throw ValidationError(std::string(name), "must be 0 or 1");
    p.aux_present = value != 0.0;
    return;
  }
  auto f = find_param_field(name);
  if (!f) throw ContractError("unknown parameter '" + std::string(name) + "'");
  p.*(f->member) = value;
}

/// Throws ValidationError naming the first offending field.
inline void validate(const NetworkParams& p) {
  for (const auto& f : kParamFields)
    if (!std::isfinite(p.*(f.member)))
      throw ValidationError(std::string(f.name), "must be finite");

  auto positive = [](double v, std::string_view name) {
    if (!(v > 0.0)) throw ValidationError(std::string(name), "must be > 0, got " + std::to_string(v));
  };
  positive(p.omega1, "omega1");
  positive(p.omega2, "omega2");
  positive(p.gamma1, "gamma1");
  positive(p.gamma2, "gamma2");
  positive(p.kappa, "kappa");
  positive(p.kappa_s, "kappa_s");
  if (p.nbar1 < 0.0) throw ValidationError("nbar1", "must be >= 0");
  if (p.nbar2 < 0.0) throw ValidationError("nbar2", "must be >= 0");

  if (!p.aux_present) {
    if (p.gs1 != 0.0) throw ValidationError("gs1", "must be 0 when aux_present is false");
    if (p.gs2 != 0.0) throw ValidationError("gs2", "must be 0 when aux_present is false");
    if (p.j_hop != 0.0) throw ValidationError("j_hop", "must be 0 when aux_present is false");
  }
}

}  // namespace optonet
