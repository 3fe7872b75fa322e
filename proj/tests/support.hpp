#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

// Test-side helpers. They use <random> distributions directly so that
// oracles never share code with the library's own RandomStream.
namespace testsupport {

inline Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = {n(rng), n(rng)};
  return m;
}

inline Eigen::VectorXcd random_unit(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::VectorXcd v = random_matrix(n, 1, rng);
  return v.normalized();
}

// Hermitian positive definite with a spread spectrum.
inline Eigen::MatrixXcd random_hpd(Eigen::Index n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = random_matrix(n, n, rng);
  return g * g.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(n, n);
}

inline Eigen::MatrixXcd random_psd(Eigen::Index n, Eigen::Index rank, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = random_matrix(n, rank, rng);
  return g * g.adjoint();
}

inline double rayleigh_quotient(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                const Eigen::VectorXcd& w) {
  return (w.adjoint() * a * w).value().real() / (w.adjoint() * b * w).value().real();
}

// Top generalized eigenvector via Cholesky whitening: B = L L^H, solve the
// standard problem on L^{-1} A L^{-H}, map back with L^{-H}.
inline Eigen::VectorXcd cholesky_top_eigenvector(const Eigen::MatrixXcd& a,
                                                 const Eigen::MatrixXcd& b) {
  const Eigen::LLT<Eigen::MatrixXcd> llt(b);
  const Eigen::MatrixXcd l = llt.matrixL();
  const Eigen::MatrixXcd l_inv = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXcd::Identity(a.rows(), a.cols()));
  Eigen::MatrixXcd c = l_inv * a * l_inv.adjoint();
  c = (0.5 * (c + c.adjoint())).eval();
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < c.rows(); ++i)
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
  Eigen::VectorXcd w = l_inv.adjoint() * es.eigenvectors().col(best);
  return w.normalized();
}

// Distance between two unit vectors after the best global phase rotation.
inline double phase_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const std::complex<double> ip = v.dot(u);  // v^H u
  const double mag = std::abs(ip);
  const std::complex<double> rot = mag > 0.0 ? ip / mag : std::complex<double>{1.0, 0.0};
  return (u - v * rot).norm();
}

// Right pseudo-inverse of a wide matrix via SVD.
inline Eigen::MatrixXcd svd_pinv(const Eigen::MatrixXcd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s_inv = svd.singularValues().cwiseInverse();
  return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace testsupport
