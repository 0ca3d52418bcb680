#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "seesim/beamforming.hpp"
#include "support/test_util.hpp"

using namespace seesim;
using std::complex;

namespace {

Eigen::RowVectorXcd random_row(RandomStream& rs, int n) {
  Eigen::RowVectorXcd h(n);
  for (int k = 0; k < n; ++k) h(k) = rs.next_cn(1.0);
  return h;
}

Eigen::VectorXcd random_unit(RandomStream& rs, int n) {
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v(k) = rs.next_cn(1.0);
  return v / v.norm();
}

}  // namespace

TEST_CASE("mrt matched filter") {
  Eigen::RowVectorXcd h(2);
  h << complex<double>(3, 0), complex<double>(0, 4);
  const Eigen::VectorXcd v = mrt_vector(h);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs((h * v).value()) == doctest::Approx(5.0).epsilon(1e-12));

  Eigen::RowVectorXcd e1(3);
  e1 << 1, 0, 0;
  const Eigen::VectorXcd ve = mrt_vector(e1);
  CHECK(std::abs(ve(0) - complex<double>(1, 0)) < 1e-14);
  CHECK(std::abs(ve(1)) < 1e-14);

  Eigen::RowVectorXcd zero = Eigen::RowVectorXcd::Zero(3);
  CHECK_THROWS_AS(mrt_vector(zero), DegenerateChannelError);
}

TEST_CASE("mrt maximizes the matched-filter gain over random directions") {
  auto rs = test::test_stream(1);
  const Eigen::RowVectorXcd h = random_row(rs, 4);
  const double best = std::abs((h * mrt_vector(h)).value());
  for (int k = 0; k < 1000; ++k) {
    const Eigen::VectorXcd u = random_unit(rs, 4);
    CHECK(std::abs((h * u).value()) <= best + 1e-12);
  }
}

TEST_CASE("null-space projector on orthonormal rows") {
  Eigen::RowVectorXcd h_cp = Eigen::RowVectorXcd::Zero(4);
  Eigen::RowVectorXcd h_cc = Eigen::RowVectorXcd::Zero(4);
  h_cp(0) = 1.0;
  h_cc(1) = 1.0;
  const Eigen::MatrixXcd p = an_projector(h_cp, h_cc);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(2, 2) = 1.0;
  expected(3, 3) = 1.0;
  CHECK((p - expected).norm() < 1e-12);
}

TEST_CASE("projector identities on random channels") {
  auto rs = test::test_stream(2);
  for (int k = 0; k < 50; ++k) {
    const Eigen::RowVectorXcd h_cp = random_row(rs, 5);
    const Eigen::RowVectorXcd h_cc = random_row(rs, 5);
    const Eigen::MatrixXcd p = an_projector(h_cp, h_cc);
    CHECK((p * p - p).norm() <= 1e-10);
    CHECK((p - p.adjoint()).norm() <= 1e-12);
    CHECK((h_cc * p).norm() <= 1e-10 * h_cc.norm());
    CHECK((h_cp * p).norm() <= 1e-10 * h_cp.norm());
    CHECK(std::real(p.trace()) == doctest::Approx(3.0).epsilon(1e-9));
  }
}

TEST_CASE("projector rank drops by one for dependent rows") {
  auto rs = test::test_stream(3);
  const Eigen::RowVectorXcd h = random_row(rs, 4);
  const Eigen::MatrixXcd p = an_projector(h, h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
  int rank = 0;
  for (int k = 0; k < 4; ++k)
    if (es.eigenvalues()(k) > 0.5) ++rank;
  CHECK(rank == 3);
  CHECK_THROWS_AS(an_projector(h.head(2), h.head(2)), std::invalid_argument);
}

TEST_CASE("steered AN beamformer") {
  auto rs = test::test_stream(4);
  SUBCASE("single eavesdropper antenna attains the null-space maximum") {
    const Eigen::RowVectorXcd h_cp = random_row(rs, 4);
    const Eigen::RowVectorXcd h_cc = random_row(rs, 4);
    const Eigen::MatrixXcd h_ce = random_row(rs, 4);
    const Eigen::VectorXcd vz = an_beamformer_icsi(h_cp, h_cc, h_ce);
    const Eigen::MatrixXcd psi = an_projector(h_cp, h_cc);
    const double gain = (h_ce * vz).norm();
    for (int k = 0; k < 500; ++k) {
      Eigen::VectorXcd u = psi * random_unit(rs, 4);
      if (u.norm() < 1e-9) continue;
      u /= u.norm();
      CHECK((h_ce * u).norm() <= gain + 1e-10);
    }
  }
  SUBCASE("null-space and unit-norm contracts over random draws") {
    for (int k = 0; k < 1000; ++k) {
      const Eigen::RowVectorXcd h_cp = random_row(rs, 4);
      const Eigen::RowVectorXcd h_cc = random_row(rs, 4);
      Eigen::MatrixXcd h_ce(2, 4);
      h_ce.row(0) = random_row(rs, 4);
      h_ce.row(1) = random_row(rs, 4);
      const Eigen::VectorXcd vz = an_beamformer_icsi(h_cp, h_cc, h_ce);
      CHECK(vz.norm() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK((h_cc * vz).norm() <= 1e-10 * h_cc.norm());
      CHECK((h_cp * vz).norm() <= 1e-10 * h_cp.norm());
    }
  }
}

TEST_CASE("isotropic AN beamformer covariance matches the projector") {
  auto rs = test::test_stream(5);
  const Eigen::RowVectorXcd h_cp = random_row(rs, 4);
  const Eigen::RowVectorXcd h_cc = random_row(rs, 4);
  const Eigen::MatrixXcd psi = an_projector(h_cp, h_cc);

  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(4, 4);
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXcd vz = an_beamformer_scsi(h_cp, h_cc, rs);
    CHECK(vz.norm() == doctest::Approx(1.0).epsilon(1e-10));
    if (k < 100) {
      CHECK((h_cc * vz).norm() <= 1e-10 * h_cc.norm());
      CHECK((h_cp * vz).norm() <= 1e-10 * h_cp.norm());
    }
    cov += vz * vz.adjoint();
  }
  cov /= draws;
  const Eigen::MatrixXcd target = psi / 2.0;  // rank(psi) = 2
  CHECK((cov - target).norm() <= 0.05 * target.norm());
}

TEST_CASE("effective gains match their defining products") {
  SystemConfig cfg = test::desk_config(3, 4, 4, 2);
  const auto inst = test::make_instance(cfg, 11);
  for (int i = 0; i < cfg.subcarriers; ++i) {
    // MRT gain equals the squared channel norm
    CHECK(inst.gains.e(i) == doctest::Approx(inst.cs.h_cc[i].squaredNorm()).epsilon(1e-12));
    CHECK(inst.gains.a(i) == doctest::Approx(inst.cs.h_pp[i].squaredNorm()).epsilon(1e-12));
    // AN leaks nothing into the legitimate receivers
    CHECK(inst.gains.zleak_cu(i) <= 1e-20 * inst.cs.h_cc[i].squaredNorm());
    CHECK(inst.gains.zleak_pu(i) <= 1e-20 * inst.cs.h_cp[i].squaredNorm());

    const Eigen::MatrixXcd f = inst.gains.f(i);
    CHECK((f - f.adjoint()).norm() <= 1e-12 * std::max(f.norm(), 1e-300));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12 * f.norm());
    // rank one: second eigenvalue vanishes
    CHECK(es.eigenvalues()(0) <= 1e-10 * es.eigenvalues()(1));
    CHECK(std::real(f.trace()) ==
          doctest::Approx((inst.cs.ed.h_ce[i] * inst.beams.v_s[i]).squaredNorm()).epsilon(1e-12));

    // recompute from raw channels
    const double b = std::norm((inst.cs.h_pc[i] * inst.beams.v_p[i]).value());
    CHECK(inst.gains.b(i) == doctest::Approx(b).epsilon(1e-12));
  }
}
