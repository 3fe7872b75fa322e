#include <doctest.h>

#include <cmath>
#include <limits>

#include "dirsim/errors.hpp"
#include "dirsim/random_stream.hpp"
#include "dirsim/scenario.hpp"

using namespace dirsim;

TEST_SUITE("scenario") {

TEST_CASE("distance") {
  CHECK(distance({0, 0, 5}, {-2, 0, 5}) == 2.0);
  const Position3D p{1.5, -7.25, 3.0};
  CHECK(distance(p, p) == 0.0);
  CHECK(distance({0, 0, 0}, {3, 4, 0}) == 5.0);
  CHECK(distance({1, 2, 3}, {-4, 5, 9}) == doctest::Approx(std::sqrt(25.0 + 9.0 + 36.0)));
}

TEST_CASE("dBm conversions round-trip") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dbm_to_watts(-4.0) == doctest::Approx(3.981071705534973e-4).epsilon(1e-12));
  for (double dbm = -150.0; dbm <= 60.0; dbm += 0.37) {
    const double back = watts_to_dbm(dbm_to_watts(dbm));
    CHECK(std::abs(back - dbm) <= 1e-12 * std::max(1.0, std::abs(dbm)));
    const double w = dbm_to_watts(dbm);
    CHECK(std::abs(dbm_to_watts(watts_to_dbm(w)) - w) <= 1e-12 * w);
  }
}

TEST_CASE("default config is valid and per-LU power is -2 dBm") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.per_user_power_dbm() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(cfg.frame.t_d_slots() == 108);
  CHECK(cfg.frame.t_c_slots() == 120);
}

TEST_CASE("config validation") {
  ScenarioConfig cfg;
  SUBCASE("more users than antennas") {
    cfg.n_users = 17;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("zero trials") {
    cfg.n_trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("radius must be positive") {
    cfg.lu_region_radius = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("non-finite power") {
    cfg.noise_power_dbm = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("exponent below 2") {
    cfg.path_loss.exp_ap_dirs = 1.9;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("ref loss must be positive") {
    cfg.path_loss.ref_loss_db = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("no DIRS changes while jamming") {
    cfg.frame.q_changes = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.dirs_mode = DirsMode::off;
    cfg.frame.m_feedbacks = 1;
    CHECK_NOTHROW(cfg.validate());
  }
  SUBCASE("more feedback rounds than changes") {
    cfg.frame.q_changes = 2;
    cfg.frame.m_feedbacks = 3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("probabilities must sum to one") {
    cfg.phase_dist.probabilities = {0.3, 0.6};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}

TEST_CASE("mode names") {
  for (DirsMode m : {DirsMode::persistent, DirsMode::temporal, DirsMode::single_change,
                     DirsMode::off})
    CHECK(parse_dirs_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_dirs_mode("sometimes"), ConfigError);
  CHECK(parse_csi_mode("ls") == CsiMode::least_squares);
  CHECK(parse_csi_mode(to_string(CsiMode::perfect)) == CsiMode::perfect);
}

TEST_CASE("place_users stays on the disk") {
  ScenarioConfig cfg;
  auto s = derive_stream(7, 0, "users");
  for (int rep = 0; rep < 200; ++rep) {
    for (const auto& p : place_users(cfg, s)) {
      CHECK(distance(p, cfg.lu_region_center) <= 20.0);
      CHECK(p.z == 0.0);
    }
  }
}

TEST_CASE("place_users on a vanishing disk collapses to the centre") {
  ScenarioConfig cfg;
  cfg.lu_region_radius = 1e-12;
  auto s = derive_stream(7, 0, "users");
  const auto users = place_users(cfg, s);
  REQUIRE(users.size() == 12);
  for (const auto& p : users) CHECK(distance(p, cfg.lu_region_center) <= 1e-12);
}

TEST_CASE("place_users mean and radial law") {
  ScenarioConfig cfg;
  cfg.n_users = 1000;
  auto s = derive_stream(11, 0, "users");
  double sx = 0.0, sy = 0.0;
  int inner = 0;
  const int reps = 100;
  for (int rep = 0; rep < reps; ++rep) {
    for (const auto& p : place_users(cfg, s)) {
      sx += p.x;
      sy += p.y;
      if (distance(p, cfg.lu_region_center) <= 10.0) ++inner;
    }
  }
  const double n = 1000.0 * reps;
  CHECK(std::abs(sx / n - 0.0) < 0.5);
  CHECK(std::abs(sy / n - 180.0) < 0.5);
  // Uniform area density: a quarter of the users lie inside half the radius.
  CHECK(inner / n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("derived streams") {
  auto first_draws = [](RandomStream s) {
    std::vector<std::uint64_t> v(1000);
    for (auto& x : v) x = s.next_u64();
    return v;
  };
  const auto a = first_draws(derive_stream(42, 0, "direct"));
  CHECK(a == first_draws(derive_stream(42, 0, "direct")));

  const auto b = first_draws(derive_stream(42, 1, "direct"));
  const auto c = first_draws(derive_stream(42, 0, "dirs"));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] != b[i]);
    CHECK(a[i] != c[i]);
  }
}

TEST_CASE("uniform and complex normal draws") {
  auto s = derive_stream(3, 0, "test");
  double sum = 0.0, re2 = 0.0, im2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    const auto z = s.complex_normal();
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.02));
}

}  // TEST_SUITE
