#include "seesim/config.hpp"

#include <stdexcept>
#include <string>

namespace seesim {

const char* link_name(Link link) {
  switch (link) {
    case Link::pp: return "pp";
    case Link::pc: return "pc";
    case Link::pe: return "pe";
    case Link::cp: return "cp";
    case Link::cc: return "cc";
    case Link::ce: return "ce";
  }
  return "?";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("SystemConfig: " + what);
}

}  // namespace

void SystemConfig::validate() const {
  require(subcarriers >= 1, "subcarriers must be >= 1");
  require(n_p >= 1 && n_e >= 1, "antenna counts must be >= 1");
  require(n_c >= 3, "n_c must be >= 3 so the AN null space is nonempty");
  require(p_pbs_total_w > 0 && p_cbs_total_w > 0, "power budgets must be positive");
  require(p_b_w > 0, "circuit power must be positive");
  require(delta_f_hz > 0, "bandwidth must be positive");
  require(n0_w_per_hz > 0, "noise spectral density must be positive");
  require(r_cu_min >= 0 && r_pu_min >= 0, "rate thresholds must be >= 0");
  for (double d : distance_m) require(d > 0, "link distances must be positive");
  require(epsilon > 0, "epsilon must be positive");
  require(m_max >= 1 && n_max >= 1, "iteration caps must be >= 1");
  require(scsi_samples >= 1, "scsi_samples must be >= 1");
  require(p_p_fixed_w > 0, "fixed PBS per-subcarrier power must be positive");
}

}  // namespace seesim
