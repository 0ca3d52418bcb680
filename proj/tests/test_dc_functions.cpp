#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "seesim/dc_functions.hpp"
#include "seesim/metrics.hpp"
#include "support/test_util.hpp"

using namespace seesim;
using Pair = DcFunctions::Pair;

namespace {

Eigen::Vector3d random_point(RandomStream& rs, const SystemConfig& cfg) {
  return {rs.next_unit() * cfg.p_pbs_total_w / cfg.subcarriers,
          rs.next_unit() * cfg.p_cbs_total_w / (2 * cfg.subcarriers),
          rs.next_unit() * cfg.p_cbs_total_w / (2 * cfg.subcarriers)};
}

PowerAllocation to_alloc(const Eigen::Vector3d& pw) {
  PowerAllocation a = PowerAllocation::zero(1);
  a.p(0) = pw(0);
  a.s(0) = pw(1);
  a.z(0) = pw(2);
  return a;
}

}  // namespace

TEST_CASE("component identities against the rate expressions") {
  SystemConfig cfg = test::desk_config(3);
  auto rs = test::test_stream(11);
  for (std::uint64_t trial = 0; trial < 4; ++trial) {
    const auto inst = test::make_instance(cfg, trial);
    const DcFunctions dc(inst.gains, inst.cs.sigma2);
    for (int i = 0; i < cfg.subcarriers; ++i) {
      const Eigen::Vector3d pw = random_point(rs, cfg);
      const auto comp = dc.eval_components(i, pw);
      const double r_cc = rate_cc(inst.gains, inst.cs.sigma2, i, pw(0), pw(1), pw(2));
      const double r_ce = rate_ce(inst.gains.ed, inst.cs.sigma2, i, pw(0), pw(1), pw(2));
      const double r_pp = rate_pp(inst.gains, inst.cs.sigma2, i, pw(0), pw(1), pw(2));
      const double r_pe = rate_pe(inst.gains.ed, inst.cs.sigma2, i, pw(0), pw(1), pw(2));
      CHECK(comp.f1 - comp.f2 == doctest::Approx(r_cc - r_ce).epsilon(1e-9));
      CHECK(comp.g1 - comp.g2 == doctest::Approx(r_pp - r_pe).epsilon(1e-9));
    }
  }
}

TEST_CASE("components at the zero allocation") {
  SystemConfig cfg = test::desk_config(1);
  const auto inst = test::make_instance(cfg, 5);
  const DcFunctions dc(inst.gains, inst.cs.sigma2);
  const double s2 = inst.cs.sigma2;
  const double expected = std::log2(s2) + cfg.n_e * std::log2(s2);
  CHECK(dc.minuend(Pair::CuSecrecy, 0, Eigen::Vector3d::Zero()) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(dc.pair_value(Pair::CuSecrecy, 0, Eigen::Vector3d::Zero()) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("analytic gradients match finite differences") {
  SystemConfig cfg = test::desk_config(2);
  auto rs = test::test_stream(12);
  const double scale = 1e-3 * cfg.p_cbs_total_w;
  int checked = 0;
  for (std::uint64_t trial = 0; trial < 20 && checked < 100; ++trial) {
    const auto inst = test::make_instance(cfg, trial);
    const DcFunctions dc(inst.gains, inst.cs.sigma2);
    for (int rep = 0; rep < 3; ++rep) {
      const int i = static_cast<int>(rs.next_u64() % cfg.subcarriers);
      Eigen::Vector3d pw = random_point(rs, cfg);
      pw.array() += 1e-4 * scale;  // keep away from the boundary
      for (Pair pair : {Pair::CuSecrecy, Pair::PuSecrecy, Pair::CuRate}) {
        const Eigen::Vector3d g2 = dc.grad_subtrahend(pair, i, pw);
        const Eigen::Vector3d fd2 = test::fd_gradient(
            [&](const Eigen::Vector3d& q) { return dc.subtrahend(pair, i, q); }, pw, scale);
        CHECK((g2 - fd2).norm() <= 1e-5 * std::max(1.0, fd2.norm()));

        const Eigen::Vector3d g1 = dc.grad_minuend(pair, i, pw);
        const Eigen::Vector3d fd1 = test::fd_gradient(
            [&](const Eigen::Vector3d& q) { return dc.minuend(pair, i, q); }, pw, scale);
        CHECK((g1 - fd1).norm() <= 1e-5 * std::max(1.0, fd1.norm()));
      }
      ++checked;
    }
  }
  CHECK(checked >= 60);
}

TEST_CASE("hessian of the concave parts matches finite differences of the gradient") {
  SystemConfig cfg = test::desk_config(1);
  auto rs = test::test_stream(13);
  const double scale = 1e-3 * cfg.p_cbs_total_w;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const auto inst = test::make_instance(cfg, trial);
    const DcFunctions dc(inst.gains, inst.cs.sigma2);
    Eigen::Vector3d pw = random_point(rs, cfg);
    pw.array() += 1e-4 * scale;
    for (Pair pair : {Pair::CuSecrecy, Pair::PuSecrecy}) {
      const Eigen::Matrix3d h = dc.hess_minuend(pair, 0, pw);
      Eigen::Matrix3d fd;
      for (int t = 0; t < 3; ++t) {
        const double step = 1e-6 * std::max(scale, pw(t));
        Eigen::Vector3d hi = pw, lo = pw;
        hi(t) += step;
        lo(t) -= step;
        fd.col(t) = (dc.grad_minuend(pair, 0, hi) - dc.grad_minuend(pair, 0, lo)) / (2 * step);
      }
      CHECK((h - fd).norm() <= 1e-4 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("gradient structure") {
  SystemConfig cfg = test::desk_config(1, 4, 4, 1);
  const auto inst = test::make_instance(cfg, 6);
  const DcFunctions dc(inst.gains, inst.cs.sigma2);
  const double s2 = inst.cs.sigma2;
  const double b = inst.gains.b(0);
  const double c = std::real(inst.gains.c(0)(0, 0));
  const double f = std::real(inst.gains.f(0)(0, 0));
  const double g = std::real(inst.gains.g(0)(0, 0));
  const Eigen::Vector3d pw(0.3, 0.8, 1.1);
  const double den = c * pw(0) + f * pw(1) + g * pw(2) + s2;
  const double ln2 = std::log(2.0);

  const Eigen::Vector3d grad = dc.grad_f2(0, pw);
  CHECK(grad(0) == doctest::Approx((b / (b * pw(0) + s2) + c / den) / ln2).epsilon(1e-10));
  CHECK(grad(1) == doctest::Approx(f / den / ln2).epsilon(1e-10));
  CHECK(grad(2) == doctest::Approx(g / den / ln2).epsilon(1e-10));

  // the subtrahend grows in every power
  CHECK(grad.minCoeff() >= 0.0);
}

TEST_CASE("tangent-plane majorization") {
  SystemConfig cfg = test::desk_config(2);
  auto rs = test::test_stream(14);
  const auto inst = test::make_instance(cfg, 7);
  const DcFunctions dc(inst.gains, inst.cs.sigma2);

  PowerAllocation anchor_alloc = PowerAllocation::zero(2);
  anchor_alloc.p.setConstant(0.2);
  anchor_alloc.s.setConstant(1.0);
  anchor_alloc.z.setConstant(2.0);
  const auto anchor = dc.make_anchor(anchor_alloc);

  SUBCASE("tangency at the anchor") {
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(dc.taylor_f2(anchor, i, anchor_alloc.at(i)) -
                     dc.subtrahend(Pair::CuSecrecy, i, anchor_alloc.at(i))) <= 1e-10);
      CHECK(std::abs(dc.taylor_g2(anchor, i, anchor_alloc.at(i)) -
                     dc.subtrahend(Pair::PuSecrecy, i, anchor_alloc.at(i))) <= 1e-10);
    }
  }

  SUBCASE("upper bound over the feasible box") {
    for (int k = 0; k < 1200; ++k) {
      const int i = static_cast<int>(rs.next_u64() % 2);
      const Eigen::Vector3d pw(rs.next_unit() * cfg.p_pbs_total_w,
                               rs.next_unit() * cfg.p_cbs_total_w,
                               rs.next_unit() * cfg.p_cbs_total_w);
      CHECK(dc.taylor_f2(anchor, i, pw) - dc.subtrahend(Pair::CuSecrecy, i, pw) >= -1e-9);
      CHECK(dc.taylor_g2(anchor, i, pw) - dc.subtrahend(Pair::PuSecrecy, i, pw) >= -1e-9);
    }
  }

  SUBCASE("gap grows along rays from the anchor") {
    const Eigen::Vector3d a0 = anchor_alloc.at(0);
    for (int k = 0; k < 20; ++k) {
      // directions chosen so the whole ray stays in the nonnegative orthant
      Eigen::Vector3d dir;
      for (int t = 0; t < 3; ++t) dir(t) = a0(t) * (rs.next_unit() - 0.5);
      double prev_gap = 0.0;
      for (double t = 0.0; t <= 2.0; t += 0.1) {
        const Eigen::Vector3d pw = a0 + t * dir;
        const double gap = dc.taylor_f2(anchor, 0, pw) - dc.subtrahend(Pair::CuSecrecy, 0, pw);
        CHECK(gap >= prev_gap - 1e-9);
        prev_gap = gap;
      }
    }
  }
}

TEST_CASE("sample-averaged components") {
  SystemConfig cfg = test::desk_config(2, 4, 4, 2);
  cfg.scsi_samples = 5;
  const ChannelSet cs = draw_channel_set(cfg, 8);
  const BeamformerSet beams = build_beamformers_scsi(cs, cfg, 8);
  const EffectiveGains gains = effective_gains(cs, beams);
  std::vector<EdGains> samples;
  for (const auto& ed : draw_ed_sample_set(cfg, 8)) samples.push_back(ed_gains(ed, beams));

  SUBCASE("single true sample reduces to the instantaneous components") {
    const DcFunctions icsi(gains, cs.sigma2);
    const DcFunctions scsi(gains, std::vector<EdGains>{gains.ed}, cs.sigma2);
    const Eigen::Vector3d pw(0.1, 0.8, 1.5);
    for (int i = 0; i < 2; ++i) {
      CHECK(icsi.subtrahend(Pair::CuSecrecy, i, pw) ==
            doctest::Approx(scsi.subtrahend(Pair::CuSecrecy, i, pw)).epsilon(1e-15));
      CHECK((icsi.grad_f2(i, pw) - scsi.grad_f2(i, pw)).norm() <= 1e-15);
    }
  }

  SUBCASE("gradients and majorization hold for the averaged functions") {
    const DcFunctions dc(gains, samples, cs.sigma2);
    auto rs = test::test_stream(15);
    const double scale = 1e-3 * cfg.p_cbs_total_w;
    for (int rep = 0; rep < 30; ++rep) {
      const int i = static_cast<int>(rs.next_u64() % 2);
      Eigen::Vector3d pw = random_point(rs, cfg);
      pw.array() += 1e-4 * scale;
      const Eigen::Vector3d grad = dc.grad_subtrahend(Pair::CuSecrecy, i, pw);
      const Eigen::Vector3d fd = test::fd_gradient(
          [&](const Eigen::Vector3d& q) { return dc.subtrahend(Pair::CuSecrecy, i, q); }, pw,
          scale);
      CHECK((grad - fd).norm() <= 1e-5 * std::max(1.0, fd.norm()));
    }

    PowerAllocation anchor_alloc = PowerAllocation::zero(2);
    anchor_alloc.s.setConstant(0.4);
    const auto anchor = dc.make_anchor(anchor_alloc);
    for (int k = 0; k < 500; ++k) {
      const Eigen::Vector3d pw(rs.next_unit() * cfg.p_pbs_total_w,
                               rs.next_unit() * cfg.p_cbs_total_w,
                               rs.next_unit() * cfg.p_cbs_total_w);
      CHECK(dc.taylor_f2(anchor, 0, pw) - dc.subtrahend(Pair::CuSecrecy, 0, pw) >= -1e-9);
      CHECK(dc.taylor_subtrahend(Pair::PuSecrecy, anchor, 0, pw) -
                dc.subtrahend(Pair::PuSecrecy, 0, pw) >=
            -1e-9);
    }
  }

  SUBCASE("averaged pair value equals the expectation-form rate difference") {
    const DcFunctions dc(gains, samples, cs.sigma2);
    const Eigen::Vector3d pw(0.15, 0.6, 0.9);
    const double r_cc = rate_cc(gains, cs.sigma2, 0, pw(0), pw(1), pw(2));
    const double e_rce = expected_rate_ce(samples, cs.sigma2, 0, pw(0), pw(1), pw(2));
    CHECK(dc.pair_value(Pair::CuSecrecy, 0, pw) == doctest::Approx(r_cc - e_rce).epsilon(1e-9));
  }
}
