#pragma once

#include <cmath>
#include <stdexcept>

namespace seesim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
  if (x <= 0.0) throw std::domain_error("linear_to_db: value must be positive");
  return 10.0 * std::log10(x);
}

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watt_to_dbm(double w) {
  if (w <= 0.0) throw std::domain_error("watt_to_dbm: power must be positive");
  return 10.0 * std::log10(w) + 30.0;
}

}  // namespace seesim
