#include <doctest.h>

#include <random>

#include "dirsim/errors.hpp"
#include "dirsim/precoding.hpp"
#include "support.hpp"

using namespace dirsim;
using namespace testsupport;

namespace {

double max_iui_ratio(const Eigen::MatrixXcd& h, const Precoder& pre) {
  const Eigen::MatrixXcd g = h.adjoint() * pre.w;
  double worst = 0.0;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < h.cols(); ++k)
    scale = std::max(scale, h.col(k).norm() * pre.w.col(k).norm());
  for (Eigen::Index u = 0; u < g.rows(); ++u)
    for (Eigen::Index k = 0; k < g.cols(); ++k)
      if (u != k) worst = std::max(worst, std::abs(g(u, k)));
  return worst / scale;
}

}  // namespace

TEST_SUITE("precoding") {

TEST_CASE("zf on the identity channel") {
  const Precoder p = zf_precoder({Eigen::MatrixXcd::Identity(2, 2)}, 3.0);
  CHECK(p.label == "zf");
  for (int k = 0; k < 2; ++k) {
    CHECK(p.w.col(k).squaredNorm() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(std::abs(p.w(1 - k, k)) < 1e-15);
  }
}

TEST_CASE("single-user zf is the matched direction") {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXcd h = random_matrix(6, 1, rng);
  const Precoder p = zf_precoder({h}, 2.0);
  CHECK(phase_distance(p.w.col(0).normalized(), h.col(0).normalized()) < 1e-12);
  CHECK(p.total_power() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("zf matches the SVD pseudo-inverse on random 12x16 channels") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::MatrixXcd h = random_matrix(16, 12, rng) * 1e-4;
    const double p0 = 0.01;
    const Precoder p = zf_precoder({h}, p0);
    CHECK(max_iui_ratio(h, p) < 1e-9);
    CHECK(std::abs(p.total_power() - p0) <= 1e-9 * p0);
    const Eigen::MatrixXcd oracle = svd_pinv(h.adjoint());
    for (int k = 0; k < 12; ++k)
      CHECK(phase_distance(p.w.col(k).normalized(), oracle.col(k).normalized()) < 1e-9);
  }
}

TEST_CASE("zf reports rank deficiency") {
  std::mt19937_64 rng(3);
  Eigen::MatrixXcd h = random_matrix(8, 4, rng);
  h.col(3) = h.col(1);
  try {
    zf_precoder({h}, 1.0);
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.condition_number() > kMaxZfConditionNumber);
  }
  CHECK_THROWS_AS(zf_precoder({random_matrix(4, 5, rng)}, 1.0), ContractViolation);
}

TEST_CASE("generalized eigenvector, diagonal and isotropic cases") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 4.0;
  a(1, 1) = 1.0;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::VectorXcd w = max_generalized_eigenvector(a, eye);
  CHECK(std::abs(w[0] - 1.0) < 1e-14);
  CHECK(std::abs(w[1]) < 1e-14);
  CHECK(rayleigh_quotient(a, eye, w) == doctest::Approx(4.0));

  const Eigen::MatrixXcd i4 = Eigen::MatrixXcd::Identity(4, 4);
  const Eigen::VectorXcd t = max_generalized_eigenvector(i4, i4);
  CHECK(t == Eigen::VectorXcd::Unit(4, 0));
  CHECK(rayleigh_quotient(i4, i4, t) == doctest::Approx(1.0));
  CHECK(max_generalized_eigenvector(i4, i4) == t);
}

TEST_CASE("generalized eigenvector against the Cholesky oracle") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::MatrixXcd a = random_psd(8, 8, rng);
    const Eigen::MatrixXcd b = random_hpd(8, rng);
    const Eigen::VectorXcd w = max_generalized_eigenvector(a, b);
    CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    CHECK(phase_distance(w, cholesky_top_eigenvector(a, b)) < 1e-8);
    const double q = rayleigh_quotient(a, b, w);
    for (int i = 0; i < 10000; ++i) {
      const double qi = rayleigh_quotient(a, b, random_unit(8, rng));
      REQUIRE(qi <= q * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("largest entry is real positive") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::VectorXcd w =
        max_generalized_eigenvector(random_psd(6, 2, rng), random_hpd(6, rng));
    Eigen::Index idx = 0;
    w.cwiseAbs().maxCoeff(&idx);
    CHECK(w[idx].imag() == 0.0);
    CHECK(w[idx].real() > 0.0);
  }
  Eigen::VectorXcd v(3);
  v << std::complex<double>(0, 2), 1.0, std::complex<double>(-2, 0);
  const Eigen::VectorXcd f = fix_global_phase(v);
  CHECK(f[0] == std::complex<double>(2.0, 0.0));
  CHECK(std::abs(f[2] - std::complex<double>(0, 2)) < 1e-15);
}

TEST_CASE("degenerate top eigenspace resolves to the projected basis vector") {
  std::mt19937_64 rng(6);
  const int n = 5;
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(n, n, rng));
  const Eigen::MatrixXcd q = qr.householderQ();
  Eigen::VectorXd spectrum(n);
  spectrum << 3.0, 3.0, 1.0, 0.5, 0.2;
  const Eigen::MatrixXcd a = q * spectrum.cast<std::complex<double>>().asDiagonal() * q.adjoint();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);

  const Eigen::MatrixXcd top = q.leftCols(2);
  const Eigen::VectorXcd expected = fix_global_phase((top * top.row(0).adjoint()).normalized());
  const Eigen::VectorXcd w = max_generalized_eigenvector(a, eye);
  CHECK((w - expected).norm() < 1e-10);
  CHECK(rayleigh_quotient(a, eye, w) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("singular denominator is a conditioning error") {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(3, 3);
  b(2, 2) = 0.0;
  CHECK_THROWS_AS(max_generalized_eigenvector(Eigen::MatrixXcd::Identity(3, 3), b),
                  ConditioningError);
  CHECK_THROWS_AS(max_generalized_eigenvector(Eigen::MatrixXcd::Identity(3, 3),
                                              Eigen::MatrixXcd::Identity(2, 2)),
                  ContractViolation);
}

TEST_CASE("positive rescaling of A and B keeps the direction") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::MatrixXcd a = random_psd(8, 3, rng);
    const Eigen::MatrixXcd b = random_hpd(8, rng);
    const Eigen::VectorXcd w = max_generalized_eigenvector(a, b);
    CHECK(phase_distance(max_generalized_eigenvector(7.5 * a, 0.02 * b), w) < 1e-9);
    CHECK(phase_distance(max_generalized_eigenvector(1e-9 * a, 1e-9 * b), w) < 1e-9);
  }
}

TEST_CASE("large self-variance drives the beam toward isotropy") {
  std::mt19937_64 rng(8);
  const int n = 8;
  const Eigen::VectorXcd h = random_matrix(n, 1, rng);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::VectorXcd canonical = max_generalized_eigenvector(eye, eye);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double delta = 0.01; delta < 1e6; delta *= 3.0) {
    const Eigen::MatrixXcd a = h * h.adjoint() + delta * eye;
    const Eigen::VectorXcd w = max_generalized_eigenvector(a, eye);
    const double qw = rayleigh_quotient(a, eye, w);
    const double gap = (qw - rayleigh_quotient(a, eye, canonical)) / qw;
    CHECK(gap >= 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("single-user AJP without aging is the matched direction") {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd h = random_matrix(6, 1, rng);
  const Precoder p = ajp_precoder({h}, DeltaEstimates::zeros(1), 1e-3, 2.0);
  CHECK(p.label == "ajp");
  CHECK(phase_distance(p.w.col(0).normalized(), h.col(0).normalized()) < 1e-10);
}

TEST_CASE("AJP with zero deltas is the max-SLNR beamformer") {
  // For a rank-one numerator the SLNR maximizer is (H~H~^H + s I)^{-1} h.
  std::mt19937_64 rng(10);
  const int n_a = 8, k_users = 5;
  const double noise = 0.3, p0 = 2.0;
  const Eigen::MatrixXcd h = random_matrix(n_a, k_users, rng);
  const Precoder p = ajp_precoder({h}, DeltaEstimates::zeros(k_users), noise, p0);
  for (int k = 0; k < k_users; ++k) {
    Eigen::MatrixXcd b = noise * k_users / p0 * Eigen::MatrixXcd::Identity(n_a, n_a);
    for (int u = 0; u < k_users; ++u)
      if (u != k) b += h.col(u) * h.col(u).adjoint();
    const Eigen::VectorXcd slnr = b.ldlt().solve(h.col(k)).normalized();
    CHECK(phase_distance(p.w.col(k).normalized(), slnr) < 1e-9);
  }
  CHECK(std::abs(p.total_power() - p0) <= 1e-9 * p0);
}

TEST_CASE("AJP beats ZF on its own objective") {
  std::mt19937_64 rng(11);
  const int n_a = 8, k_users = 4;
  const double noise = 0.05, p0 = 1.0;
  const Eigen::MatrixXcd h = random_matrix(n_a, k_users, rng);
  DeltaEstimates d{{0.2, 0.05, 0.4, 0.1}, 1};
  const Precoder ajp = ajp_precoder({h}, d, noise, p0);
  const Precoder zf = zf_precoder({h}, p0);
  const ChannelEstimate est{h};
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n_a, n_a);
  for (int k = 0; k < k_users; ++k) {
    const Eigen::MatrixXcd co = est.others(k);
    const Eigen::MatrixXcd a = h.col(k) * h.col(k).adjoint() + d.delta_sq[k] * eye;
    const Eigen::MatrixXcd b =
        co * co.adjoint() + (noise * k_users / p0 + d.sum() - d.delta_sq[k]) * eye;
    CHECK(rayleigh_quotient(a, b, ajp.w.col(k)) >= rayleigh_quotient(a, b, zf.w.col(k)));
  }
  CHECK(std::abs(ajp.total_power() - p0) <= 1e-9 * p0);
}

TEST_CASE("normalize_power") {
  std::mt19937_64 rng(12);
  Precoder p{random_matrix(4, 3, rng), "x"};
  const Precoder once = normalize_power(p, 2.0);
  CHECK(std::abs(once.total_power() - 2.0) <= 1e-12 * 2.0);
  CHECK((normalize_power(once, 2.0).w - once.w).norm() <= 1e-12 * once.w.norm());

  Precoder big{once.w * 2.0, "x"};
  CHECK((normalize_power(big, 2.0).w - once.w).norm() <= 1e-12 * once.w.norm());

  CHECK_THROWS_AS(normalize_power({Eigen::MatrixXcd::Zero(4, 3), "x"}, 1.0), ContractViolation);
}

TEST_CASE("co-user stacking") {
  std::mt19937_64 rng(13);
  const ChannelEstimate est{random_matrix(4, 3, rng)};
  const Eigen::MatrixXcd o = est.others(1);
  REQUIRE(o.cols() == 2);
  CHECK(o.col(0) == est.h_pt.col(0));
  CHECK(o.col(1) == est.h_pt.col(2));
  CHECK_THROWS_AS(est.others(3), ContractViolation);
}

}  // TEST_SUITE
