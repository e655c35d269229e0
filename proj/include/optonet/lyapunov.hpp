#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "optonet/errors.hpp"
#include "optonet/model.hpp"

namespace optonet {

inline constexpr double kDefaultResidualTolerance = 1e-10;

namespace detail {

// Diagonal block boundaries of a real quasi-upper-triangular Schur factor.
template <typename MatrixType>
std::vector<std::pair<Eigen::Index, Eigen::Index>> schur_blocks(const MatrixType& t) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  const Eigen::Index n = t.rows();
  for (Eigen::Index i = 0; i < n;) {
    const Eigen::Index size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
    blocks.emplace_back(i, size);
    i += size;
  }
  return blocks;
}

// Solves T11 X + X T22^T = R for blocks of size at most 2x2.
inline Eigen::MatrixXd solve_small_sylvester(const Eigen::MatrixXd& t11, const Eigen::MatrixXd& t22,
                                             const Eigen::MatrixXd& r) {
  const Eigen::Index m = t11.rows(), k = t22.rows();
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(m * k, m * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    sys.block(j * m, j * m, m, m) += t11;
    for (Eigen::Index l = 0; l < k; ++l)
      sys.block(j * m, l * m, m, m).diagonal().array() += t22(j, l);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible())
    throw NumericalError("singular Sylvester block: A and -A share an eigenvalue");
  Eigen::VectorXd x = lu.solve(r.reshaped());
  return x.reshaped(m, k);
}

}  // namespace detail

/// Solves A X + X A^T = C by Bartels-Stewart: reduce A to real Schur form
/// A = U T U^T, back-substitute the quasi-triangular system T Y + Y T^T = U^T C U
/// block-column by block-column from the right, and map back X = U Y U^T.
///
/// Unique iff no two eigenvalues of A sum to zero (always true for Hurwitz A).
template <typename MatrixType>
Eigen::MatrixXd solve_sylvester_lyapunov(const Eigen::MatrixBase<MatrixType>& a_in,
                                         const Eigen::MatrixBase<MatrixType>& c_in) {
  const Eigen::MatrixXd a = a_in;
  const Eigen::MatrixXd c = c_in;
  if (a.rows() != a.cols() || c.rows() != a.rows() || c.cols() != a.cols())
    throw ContractError("Lyapunov operands must be square and of equal size");

  Eigen::RealSchur<Eigen::MatrixXd> schur(a);
  if (schur.info() != Eigen::Success)
    throw NumericalError("real Schur decomposition did not converge:\n" + dump_matrix(a));
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& u = schur.matrixU();

  const Eigen::MatrixXd f = u.transpose() * c * u;
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  const auto blocks = detail::schur_blocks(t);

  for (auto jb = blocks.rbegin(); jb != blocks.rend(); ++jb) {
    const auto [j0, js] = *jb;
    // Right-hand side for block column J: F_J - sum_{K > J} Y_K T_JK^T.
    Eigen::MatrixXd rhs = f.middleCols(j0, js);
    const Eigen::Index tail = n - (j0 + js);
    if (tail > 0)
      rhs -= y.rightCols(tail) * t.block(j0, j0 + js, js, tail).transpose();

    const Eigen::MatrixXd tjj = t.block(j0, j0, js, js);
    for (auto ib = blocks.rbegin(); ib != blocks.rend(); ++ib) {
      const auto [i0, is] = *ib;
      Eigen::MatrixXd r = rhs.middleRows(i0, is);
      const Eigen::Index below = n - (i0 + is);
      if (below > 0)
        r -= t.block(i0, i0 + is, is, below) * y.block(i0 + is, j0, below, js);
      y.block(i0, j0, is, js) = detail::solve_small_sylvester(t.block(i0, i0, is, is), tjj, r);
    }
  }
  return u * y * u.transpose();
}

/// Steady-state covariance V_ij = <u_i u_j + u_j u_i>/2. Symmetrized on construction.
class CovarianceMatrix {
 public:
  CovarianceMatrix(Eigen::MatrixXd v, ModeOrdering ordering) : v_(std::move(v)), ordering_(ordering) {
    if (v_.rows() != v_.cols() || v_.rows() != ordering_.dimension())
      throw ContractError("covariance shape does not match its mode ordering");
    v_ = (0.5 * (v_ + v_.transpose())).eval();
  }

  const Eigen::MatrixXd& matrix() const { return v_; }
  ModeOrdering ordering() const { return ordering_; }
  int dimension() const { return ordering_.dimension(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return v_(i, j); }

 private:
  Eigen::MatrixXd v_;
  ModeOrdering ordering_;
};

/// ||A V + V A^T + Q||_max.
inline double lyapunov_residual(const DriftDiffusion& dd, const Eigen::MatrixXd& v) {
  const auto n = dd.drift.rows();
  if (v.rows() != n || v.cols() != n || dd.diffusion.rows() != n || dd.diffusion.cols() != n)
    throw ContractError("lyapunov_residual: shape mismatch between (A, Q) and V");
  return (dd.drift * v + v * dd.drift.transpose() + dd.diffusion).cwiseAbs().maxCoeff();
}

inline double lyapunov_residual(const DriftDiffusion& dd, const CovarianceMatrix& v) {
  if (v.ordering() != dd.ordering)
    throw ContractError("lyapunov_residual: covariance ordering differs from drift ordering");
  return lyapunov_residual(dd, v.matrix());
}

struct LyapunovOptions {
  double stability_margin = kDefaultStabilityMargin;
  double residual_tolerance = kDefaultResidualTolerance;  // relative to ||Q||_max
};

/// Steady-state covariance of u' = A u + N: the unique solution of
/// A V + V A^T = -Q. Rejects unstable and marginal drift matrices.
inline CovarianceMatrix solve_lyapunov(const DriftDiffusion& dd, const LyapunovOptions& opt = {}) {
  const StabilityVerdict verdict = check_stability(dd, opt.stability_margin);
  if (!verdict.stable())
    throw StabilityError("drift matrix is " + std::string(stability_name(verdict.kind)) +
                             " (max Re eig = " + std::to_string(verdict.max_real) +
                             "); no steady state exists",
                         verdict.max_real);

  const Eigen::MatrixXd minus_q = -dd.diffusion;
  Eigen::MatrixXd v = solve_sylvester_lyapunov(dd.drift, minus_q);
  v = (0.5 * (v + v.transpose())).eval();
  if (!v.allFinite()) throw NumericalError("Lyapunov solve produced non-finite entries");

  const double q_scale = dd.diffusion.cwiseAbs().maxCoeff();
  const double limit = opt.residual_tolerance * q_scale;
  double residual = lyapunov_residual(dd, v);
  if (residual > limit) {
    // One step of iterative refinement on the correction equation.
    const Eigen::MatrixXd r = dd.drift * v + v * dd.drift.transpose() + dd.diffusion;
    const Eigen::MatrixXd minus_r = -r;
    v += solve_sylvester_lyapunov(dd.drift, minus_r);
    v = (0.5 * (v + v.transpose())).eval();
    residual = lyapunov_residual(dd, v);
  }
  if (residual > limit)
    throw NumericalError("Lyapunov residual " + std::to_string(residual) + " exceeds tolerance " +
                         std::to_string(limit));
  return CovarianceMatrix(std::move(v), dd.ordering);
}

/// Symplectic form for [X, Y] = i on each mode, in the given ordering.
inline Eigen::MatrixXd symplectic_form(int mode_count) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * mode_count, 2 * mode_count);
  for (int k = 0; k < mode_count; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega. A physical
/// state has this >= 0 (up to rounding).
inline double physicality_floor(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0)
    throw ContractError("physicality_floor: covariance must be square with even size");
  const int modes = static_cast<int>(v.rows() / 2);
  Eigen::MatrixXcd h = v.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5) * symplectic_form(modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("physicality eigen-decomposition failed");
  return es.eigenvalues().minCoeff();
}

inline double physicality_floor(const CovarianceMatrix& v) { return physicality_floor(v.matrix()); }

}  // namespace optonet
