#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seesim/channel.hpp"
#include "seesim/units.hpp"
#include "support/test_util.hpp"

using namespace seesim;

TEST_CASE("dbm/watt conversions") {
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
  // delta_f * N0 for 10 MHz and -174 dBm/Hz
  CHECK(dbm_to_watt(-104.0) == doctest::Approx(3.981e-14).epsilon(1e-3));
  CHECK_THROWS_AS(watt_to_dbm(0.0), std::domain_error);
  CHECK_THROWS_AS(watt_to_dbm(-1.0), std::domain_error);

  for (double dbm = -200.0; dbm <= 100.0; dbm += 7.3) {
    CHECK(watt_to_dbm(dbm_to_watt(dbm)) == doctest::Approx(dbm).epsilon(0).scale(1).epsilon(1e-12));
  }
}

TEST_CASE("path loss model") {
  CHECK(path_loss_db(500.0) == doctest::Approx(-137.0608602).epsilon(1e-9));
  CHECK(path_loss_db(1.0) == doctest::Approx(-34.5));
  CHECK(path_loss_db(10.0) == doctest::Approx(-72.5));
  CHECK_THROWS_AS(path_loss_db(0.0), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(-5.0), std::domain_error);
}

TEST_CASE("noise power") {
  SystemConfig cfg = test::desk_config();
  CHECK(cfg.noise_power_w() == doctest::Approx(std::pow(10.0, -13.4)).epsilon(1e-12));
}

TEST_CASE("channel draws are deterministic in (seed, trial)") {
  SystemConfig cfg = test::desk_config(2, 3, 4, 2);
  const ChannelSet a = draw_channel_set(cfg, 5);
  const ChannelSet b = draw_channel_set(cfg, 5);
  REQUIRE(a.subcarriers() == b.subcarriers());
  for (int i = 0; i < a.subcarriers(); ++i) {
    CHECK(a.h_pp[i] == b.h_pp[i]);
    CHECK(a.h_cc[i] == b.h_cc[i]);
    CHECK(a.ed.h_ce[i] == b.ed.h_ce[i]);
  }

  const ChannelSet c = draw_channel_set(cfg, 6);
  CHECK(a.h_pp[0] != c.h_pp[0]);
  CHECK(a.ed.h_ce[0] != c.ed.h_ce[0]);
}

TEST_CASE("antenna-count sweeps keep channel prefixes nested") {
  SystemConfig cfg4 = test::desk_config(2, 4, 4, 2);
  SystemConfig cfg8 = cfg4;
  cfg8.n_c = 8;
  const ChannelSet a = draw_channel_set(cfg4, 3);
  const ChannelSet b = draw_channel_set(cfg8, 3);
  CHECK(b.h_cc[0].head(4) == a.h_cc[0]);
  CHECK(b.h_cp[1].head(4) == a.h_cp[1]);
}

TEST_CASE("per-entry variance matches the path-loss linear scale") {
  SystemConfig cfg = test::desk_config(1, 1, 8, 1);
  const double theta = db_to_linear(path_loss_db(cfg.distance(Link::cc)));
  double acc = 0.0;
  int n = 0;
  for (int trial = 0; trial < 12500; ++trial) {
    const ChannelSet cs = draw_channel_set(cfg, trial);
    acc += cs.h_cc[0].squaredNorm();
    n += 8;
  }
  const double mean = acc / n;
  CHECK(mean == doctest::Approx(theta).epsilon(0.02));
}

TEST_CASE("eavesdropper sample draws are independent of the true channel") {
  SystemConfig cfg = test::desk_config(2, 3, 4, 2);
  cfg.scsi_samples = 3;
  const ChannelSet cs = draw_channel_set(cfg, 0);
  const auto samples = draw_ed_sample_set(cfg, 0);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].h_ce[0] != cs.ed.h_ce[0]);
  CHECK(samples[0].h_ce[0] != samples[1].h_ce[0]);
  // deterministic
  const auto again = draw_ed_sample_set(cfg, 0);
  CHECK(samples[2].h_pe[1] == again[2].h_pe[1]);
}

TEST_CASE("config validation") {
  SystemConfig cfg = test::desk_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.n_c = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = test::desk_config();
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = test::desk_config();
  cfg.r_cu_min = -0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
