#pragma once

#include <optional>
#include <vector>

#include "optonet/darkmode.hpp"
#include "optonet/entanglement.hpp"
#include "optonet/lyapunov.hpp"
#include "optonet/model.hpp"
#include "optonet/params.hpp"

namespace optonet {

/// Every numerical threshold in one place; defaults are the module defaults.
struct Tolerances {
  double stability_margin = kDefaultStabilityMargin;
  double residual = kDefaultResidualTolerance;
  double discriminant = kDefaultDiscriminantTolerance;
  double dark_mode = kDefaultDarkModeTolerance;

  LyapunovOptions lyapunov() const { return {stability_margin, residual}; }
};

/// Result of params -> (A, Q) -> stability -> V -> E_N for one point.
/// `covariance` and `pairs` are empty unless the drift matrix is stable.
struct PointSolution {
  NetworkParams params;
  DriftDiffusion system;
  StabilityVerdict stability;
  std::optional<CovarianceMatrix> covariance;
  double residual = 0.0;
  double physicality = 0.0;
  std::vector<EntanglementReport> pairs;

  const EntanglementReport* find(ModePair p) const {
    for (const auto& r : pairs)
      if (r.pair == p) return &r;
    return nullptr;
  }
};

inline PointSolution solve_point(const NetworkParams& params, const Tolerances& tol = {}) {
  PointSolution s{params, build_drift_diffusion(params), {}, std::nullopt, 0.0, 0.0, {}};
  s.stability = check_stability(s.system, tol.stability_margin);
  if (!s.stability.stable()) return s;
  s.covariance = solve_lyapunov(s.system, tol.lyapunov());
  s.residual = lyapunov_residual(s.system, *s.covariance);
  s.physicality = physicality_floor(*s.covariance);
  s.pairs = all_pair_report(*s.covariance, tol.discriminant);
  return s;
}

}  // namespace optonet
