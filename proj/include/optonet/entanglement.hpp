#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "optonet/errors.hpp"
#include "optonet/lyapunov.hpp"
#include "optonet/modes.hpp"

namespace optonet {

inline constexpr double kDefaultDiscriminantTolerance = 1e-12;

/// Ordered pair of distinct modes. `first` plays A and `second` plays B in the
/// block form [[V_A, V_AB], [V_AB^T, V_B]].
struct ModePair {
  Mode first;
  Mode second;

  std::string label() const {
    return std::string(mode_name(first)) + "," + std::string(mode_name(second));
  }
  friend constexpr bool operator==(ModePair, ModePair) = default;
};

struct TwoModeBlocks {
  Eigen::Matrix2d a;
  Eigen::Matrix2d b;
  Eigen::Matrix2d ab;

  Eigen::Matrix4d full() const {
    Eigen::Matrix4d m;
    m << a, ab, ab.transpose(), b;
    return m;
  }
};

/// Marginal covariance of `pair`: the 4x4 submatrix of V on the two modes'
/// (X, Y) rows and columns, A first.
inline TwoModeBlocks reduce_covariance(const CovarianceMatrix& v, ModePair pair) {
  if (pair.first == pair.second)
    throw ContractError("mode pair must name two distinct modes, got (" + pair.label() + ")");
  const ModeOrdering ord = v.ordering();
  const int ia = ord.x_index(pair.first);
  const int ib = ord.x_index(pair.second);
  const Eigen::MatrixXd& m = v.matrix();
  return {m.block<2, 2>(ia, ia), m.block<2, 2>(ib, ib), m.block<2, 2>(ia, ib)};
}

struct Negativity {
  double sigma_minus;  // smallest symplectic eigenvalue of the partial transpose
  double log_neg;      // max(0, -ln(2 sigma_minus))
};

/// Logarithmic negativity of a two-mode Gaussian state in the vacuum-variance-1/2
/// convention: with Sigma = det V_A + det V_B - 2 det V_AB,
///   sigma_minus = sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2),
/// and the pair is entangled iff sigma_minus < 1/2.
///
/// A slightly negative discriminant (relative to max(Sigma^2, 1)) within
/// `clamp_tol` is clamped to zero; anything worse is unphysical.
inline Negativity log_negativity(const Eigen::Matrix4d& v, double clamp_tol = kDefaultDiscriminantTolerance) {
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ContractError("reduced covariance is not symmetric");
  if (!v.allFinite()) throw UnphysicalCovarianceError("reduced covariance has non-finite entries");

  const Eigen::Matrix2d va = v.block<2, 2>(0, 0);
  const Eigen::Matrix2d vb = v.block<2, 2>(2, 2);
  const Eigen::Matrix2d vab = v.block<2, 2>(0, 2);
  const double sigma = va.determinant() + vb.determinant() - 2.0 * vab.determinant();
  const double det = v.determinant();

  double disc = sigma * sigma - 4.0 * det;
  if (disc < 0.0) {
    if (disc < -clamp_tol * std::max(1.0, sigma * sigma))
      throw UnphysicalCovarianceError("negative symplectic discriminant " + std::to_string(disc));
    disc = 0.0;
  }
  const double inner = 0.5 * (sigma - std::sqrt(disc));
  if (!(inner > 0.0))
    throw UnphysicalCovarianceError("partially transposed symplectic eigenvalue is not real-positive");

  const double sigma_minus = std::sqrt(inner);
  return {sigma_minus, std::max(0.0, -std::log(2.0 * sigma_minus))};
}

struct EntanglementReport {
  ModePair pair;
  double sigma_minus = 0.0;
  double log_neg = 0.0;
  TwoModeBlocks blocks;
};

inline EntanglementReport pair_report(const CovarianceMatrix& v, ModePair pair,
                                      double clamp_tol = kDefaultDiscriminantTolerance) {
  EntanglementReport r{pair, 0.0, 0.0, reduce_covariance(v, pair)};
  const Negativity n = log_negativity(r.blocks.full(), clamp_tol);
  r.sigma_minus = n.sigma_minus;
  r.log_neg = n.log_neg;
  return r;
}

/// Pairs reported by all_pair_report, in output order.
inline std::vector<ModePair> report_pairs(ModeOrdering ord) {
  std::vector<ModePair> pairs{{Mode::a, Mode::b1}, {Mode::a, Mode::b2}, {Mode::b1, Mode::b2}};
  if (ord.aux_present()) {
    pairs.push_back({Mode::as, Mode::b1});
    pairs.push_back({Mode::as, Mode::b2});
    pairs.push_back({Mode::a, Mode::as});
  }
  return pairs;
}

inline std::vector<EntanglementReport> all_pair_report(const CovarianceMatrix& v,
                                                       double clamp_tol = kDefaultDiscriminantTolerance) {
  std::vector<EntanglementReport> out;
  for (ModePair p : report_pairs(v.ordering())) out.push_back(pair_report(v, p, clamp_tol));
  return out;
}

}  // namespace optonet
