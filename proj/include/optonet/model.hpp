#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "optonet/errors.hpp"
#include "optonet/modes.hpp"
#include "optonet/params.hpp"

namespace optonet {

inline constexpr double kDefaultStabilityMargin = 1e-9;

/// Linearized drift matrix A (u' = A u + N) and diagonal diffusion matrix Q,
/// both laid out by `ordering`.
struct DriftDiffusion {
  Eigen::MatrixXd drift;
  Eigen::MatrixXd diffusion;
  ModeOrdering ordering;

  int dimension() const { return ordering.dimension(); }
};

/// Assembles (A, Q) for the quadratic fluctuation Hamiltonian
///
///   H = sum_l w_l b_l'b_l + Dc a'a + Ds as'as + J (a'as + h.c.) + eta (b1'b2 + h.c.)
///       + sum_l [G_l (a + a')(b_l + b_l') + G_sl (as + as')(b_l + b_l')]
///
/// with quadratures X = (o' + o)/sqrt2, Y = i(o' - o)/sqrt2 and every mode
/// damped at its own rate. Each bath contributes (2 nbar + 1) rate to both of
/// its mode's diagonal diffusion entries; cavity baths are at zero temperature.
inline DriftDiffusion build_drift_diffusion(const NetworkParams& p) {
  validate(p);
  const ModeOrdering ord(p.aux_present);
  const int n = ord.dimension();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);

  auto X = [&](Mode m) { return ord.x_index(m); };
  auto Y = [&](Mode m) { return ord.y_index(m); };

  // Free rotation and damping of a single mode.
  auto oscillator = [&](Mode m, double freq, double decay) {
    a(X(m), X(m)) = -decay;
    a(X(m), Y(m)) = freq;
    a(Y(m), X(m)) = -freq;
    a(Y(m), Y(m)) = -decay;
  };
  // Beam-splitter hopping h (o1'o2 + h.c.) = h (X1 X2 + Y1 Y2).
  auto hopping = [&](Mode m1, Mode m2, double h) {
    a(X(m1), Y(m2)) += h;
    a(Y(m1), X(m2)) -= h;
    a(X(m2), Y(m1)) += h;
    a(Y(m2), X(m1)) -= h;
  };
  // Linearized radiation pressure G (o1 + o1')(o2 + o2') = 2G X1 X2.
  auto position_coupling = [&](Mode m1, Mode m2, double g) {
    a(Y(m1), X(m2)) -= 2.0 * g;
    a(Y(m2), X(m1)) -= 2.0 * g;
  };

  oscillator(Mode::b1, p.omega1, p.gamma1);
  oscillator(Mode::b2, p.omega2, p.gamma2);
  oscillator(Mode::a, p.delta_c, p.kappa);
  hopping(Mode::b1, Mode::b2, p.eta_hop);
  position_coupling(Mode::a, Mode::b1, p.g1);
  position_coupling(Mode::a, Mode::b2, p.g2);

  auto noise = [&](Mode m, double rate) {
    q(X(m), X(m)) = rate;
    q(Y(m), Y(m)) = rate;
  };
  noise(Mode::b1, (2.0 * p.nbar1 + 1.0) * p.gamma1);
  noise(Mode::b2, (2.0 * p.nbar2 + 1.0) * p.gamma2);
  noise(Mode::a, p.kappa);

  if (ord.aux_present()) {
    oscillator(Mode::as, p.delta_s, p.kappa_s);
    hopping(Mode::a, Mode::as, p.j_hop);
    position_coupling(Mode::as, Mode::b1, p.gs1);
    position_coupling(Mode::as, Mode::b2, p.gs2);
    noise(Mode::as, p.kappa_s);
  }
  return {std::move(a), std::move(q), ord};
}

enum class Stability { stable, unstable, marginal };

inline constexpr std::string_view stability_name(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
  }
  return "?";
}

struct StabilityVerdict {
  Stability kind = Stability::unstable;
  double max_real = 0.0;
  std::vector<std::complex<double>> spectrum;  // sorted by descending real part

  bool stable() const { return kind == Stability::stable; }
};

inline std::string dump_matrix(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os.precision(17);
  os << m;
  return os.str();
}

/// Eigenvalue criterion: stable iff max Re(eig A) < -margin, marginal iff
/// |max Re| <= margin, unstable otherwise.
inline StabilityVerdict check_stability(const DriftDiffusion& dd,
                                        double margin = kDefaultStabilityMargin) {
  if (dd.drift.rows() != dd.drift.cols() || dd.drift.rows() != dd.dimension())
    throw ContractError("drift matrix shape does not match its mode ordering");
  if (!(margin >= 0.0)) throw ContractError("stability margin must be >= 0");

  Eigen::EigenSolver<Eigen::MatrixXd> solver(dd.drift, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration failed for drift matrix:\n" + dump_matrix(dd.drift));

  StabilityVerdict v;
  const auto& ev = solver.eigenvalues();
  v.spectrum.assign(ev.data(), ev.data() + ev.size());
  std::sort(v.spectrum.begin(), v.spectrum.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  v.max_real = v.spectrum.front().real();
  if (!std::isfinite(v.max_real))
    throw NumericalError("non-finite eigenvalue for drift matrix:\n" + dump_matrix(dd.drift));

  if (v.max_real < -margin)
    v.kind = Stability::stable;
  else if (v.max_real <= margin)
    v.kind = Stability::marginal;
  else
    v.kind = Stability::unstable;
  return v;
}

}  // namespace optonet
