#include "dirsim/precoding.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dirsim/errors.hpp"

namespace dirsim {

Eigen::MatrixXcd ChannelEstimate::others(int k) const {
  const int k_users = n_users();
  if (k < 0 || k >= k_users) throw ContractViolation("ChannelEstimate::others: index out of range");
  Eigen::MatrixXcd out(n_antennas(), k_users - 1);
  for (int u = 0, c = 0; u < k_users; ++u) {
    if (u != k) out.col(c++) = h_pt.col(u);
  }
  return out;
}

double DeltaEstimates::sum() const {
  return std::accumulate(delta_sq.begin(), delta_sq.end(), 0.0);
}

Precoder zf_precoder(const ChannelEstimate& est, double p0) {
  const int k_users = est.n_users();
  if (k_users < 1 || k_users > est.n_antennas())
    throw ContractViolation("zf_precoder: need 1 <= K <= N_A");
  if (!(p0 > 0.0)) throw ContractViolation("zf_precoder: p0 must be positive");
  if (!est.h_pt.allFinite()) throw ContractViolation("zf_precoder: non-finite channel estimate");

  // Gram matrix of the stacked conjugate-transposed channel H = h_pt^H.
  const Eigen::MatrixXcd gram = est.h_pt.adjoint() * est.h_pt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double cond = (lo > 0.0) ? std::sqrt(hi / lo) : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxZfConditionNumber))
    throw SingularityError("zf_precoder: stacked channel is rank deficient (condition number " +
                               std::to_string(cond) + ")",
                           cond);

  // W = H^H (H H^H)^{-1}
  Eigen::MatrixXcd w = est.h_pt * gram.llt().solve(Eigen::MatrixXcd::Identity(k_users, k_users));
  const double per_user = std::sqrt(p0 / k_users);
  for (int k = 0; k < k_users; ++k) w.col(k) *= per_user / w.col(k).norm();
  return {std::move(w), "zf"};
}

Eigen::VectorXcd fix_global_phase(const Eigen::VectorXcd& v) {
  if (v.size() == 0) return v;
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return v;
  Eigen::Index idx = 0;
  for (; idx < v.size(); ++idx) {
    if (std::abs(v[idx]) >= top * (1.0 - 1e-12)) break;
  }
  const std::complex<double> rot = std::conj(v[idx]) / std::abs(v[idx]);
  Eigen::VectorXcd out = v * rot;
  out[idx] = std::abs(v[idx]);
  return out;
}

Eigen::VectorXcd max_generalized_eigenvector(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n || b.rows() != n || b.cols() != n)
    throw ContractViolation("max_generalized_eigenvector: A and B must be square and equal size");
  if (!a.allFinite() || !b.allFinite())
    throw ContractViolation("max_generalized_eigenvector: non-finite input");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(b);
  const Eigen::VectorXd& lam = eb.eigenvalues();
  const double lam_max = lam.maxCoeff();
  const double lam_min = lam.minCoeff();
  if (!(lam_max > 0.0) || !(lam_min > 1e-12 * lam_max))
    throw ConditioningError("max_generalized_eigenvector: B is not numerically positive definite "
                            "(eigenvalue range " + std::to_string(lam_min) + " .. " +
                            std::to_string(lam_max) + ")");

  // B^{-1/2} from the eigendecomposition of B.
  const Eigen::MatrixXcd& u = eb.eigenvectors();
  const Eigen::MatrixXcd b_inv_half =
      u * lam.cwiseSqrt().cwiseInverse().asDiagonal() * u.adjoint();
  Eigen::MatrixXcd whitened = b_inv_half * a * b_inv_half;
  whitened = (0.5 * (whitened + whitened.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ew(whitened);
  const Eigen::VectorXd& mu = ew.eigenvalues();  // ascending
  const double mu_top = mu[n - 1];
  const double tie_tol = 1e-10 * std::max(std::abs(mu_top), std::numeric_limits<double>::min());
  Eigen::Index degenerate = 1;
  while (degenerate < n && mu_top - mu[n - 1 - degenerate] <= tie_tol) ++degenerate;

  Eigen::VectorXcd w;
  if (degenerate == 1) {
    w = b_inv_half * ew.eigenvectors().col(n - 1);
  } else {
    // Orthonormal basis of the top generalized eigenspace, then project e_j.
    const Eigen::MatrixXcd span = b_inv_half * ew.eigenvectors().rightCols(degenerate);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
    const Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n, degenerate);
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXcd p = q * q.row(j).adjoint();
      if (p.norm() > 1e-8) {
        w = std::move(p);
        break;
      }
    }
  }
  w.normalize();
  return fix_global_phase(w);
}

Precoder ajp_precoder(const ChannelEstimate& est, const DeltaEstimates& deltas, double noise_var,
                      double p0) {
  const int k_users = est.n_users();
  const int n_a = est.n_antennas();
  if (k_users < 1) throw ContractViolation("ajp_precoder: need K >= 1");
  if (!(p0 > 0.0) || !(noise_var > 0.0))
    throw ContractViolation("ajp_precoder: p0 and noise_var must be positive");
  if (static_cast<int>(deltas.delta_sq.size()) != k_users)
    throw ContractViolation("ajp_precoder: one delta per user required");

  const double total_delta = deltas.sum();
  const double noise_term = noise_var * k_users / p0;
  const double per_user = std::sqrt(p0 / k_users);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n_a, n_a);

  Precoder pre{Eigen::MatrixXcd(n_a, k_users), "ajp"};
  for (int k = 0; k < k_users; ++k) {
    const double dk = deltas.delta_sq[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd& h = est.h_pt.col(k);
    const Eigen::MatrixXcd co = est.others(k);
    const Eigen::MatrixXcd a = h * h.adjoint() + dk * eye;
    const Eigen::MatrixXcd b = co * co.adjoint() + (noise_term + (total_delta - dk)) * eye;
    pre.w.col(k) = per_user * max_generalized_eigenvector(a, b);
  }
  return pre;
}

Precoder normalize_power(Precoder pre, double p0) {
  const double total = pre.total_power();
  if (!(total > 0.0)) throw ContractViolation("normalize_power: all-zero precoder");
  if (!(p0 > 0.0)) throw ContractViolation("normalize_power: p0 must be positive");
  pre.w *= std::sqrt(p0 / total);
  return pre;
}

}  // namespace dirsim
