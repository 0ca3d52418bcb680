#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "seesim/allocation.hpp"
#include "seesim/beamforming.hpp"

namespace seesim {

// Rates are in bits/s/Hz throughout; the bandwidth enters only through
// sigma^2 = delta_f * N0.
struct RateBundle {
  Eigen::VectorXd r_pp, r_cc;  // legitimate rates per subcarrier
  Eigen::VectorXd r_pe, r_ce;  // eavesdropper rates per subcarrier
  Eigen::VectorXd sr_cu;       // [r_cc - r_ce]^+
  Eigen::VectorXd sr_pu;       // [r_pp - r_pe]^+
  double r_sec = 0.0;          // sum of sr_cu
  double p_tot = 0.0;          // CBS transmit power + circuit power
  double see = 0.0;            // r_sec / p_tot
};

// log2 det of a Hermitian positive-definite matrix via Cholesky
double logdet2_hermitian(const Eigen::MatrixXcd& m);

double sinr_pu(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz);
double sinr_cu(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz);

double rate_pp(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz);
double rate_cc(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz);

// Eavesdropper rates for one realization of the ED gains.
double rate_pe(const EdGains& ed, double sigma2, int i, double pp, double ps, double pz);
double rate_ce(const EdGains& ed, double sigma2, int i, double pp, double ps, double pz);

// Sample-average expectations over a fixed ED realization set.
double expected_rate_pe(std::span<const EdGains> samples, double sigma2, int i, double pp,
                        double ps, double pz);
double expected_rate_ce(std::span<const EdGains> samples, double sigma2, int i, double pp,
                        double ps, double pz);

double total_power(const PowerAllocation& alloc, double p_b);

// Full bundle for the realization carried inside the gains.
RateBundle see_bundle(const EffectiveGains& g, double sigma2, const PowerAllocation& alloc,
                      double p_b);

// Bundle with eavesdropper rates replaced by sample averages.
RateBundle see_bundle_expected(const EffectiveGains& g, std::span<const EdGains> samples,
                               double sigma2, const PowerAllocation& alloc, double p_b);

}  // namespace seesim
