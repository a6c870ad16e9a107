// power.cpp - Device-count power arithmetic.

#include "mbaa/power.hpp"

#include <stdexcept>

namespace mbaa {

void PowerParams::validate() const {
  if (n_antennas < 1 || n_rf_chains < 1) {
    throw std::invalid_argument("need at least one antenna and one RF chain");
  }
  if (p_multibit_ps_mw < 0.0 || p_1bit_ps_mw < 0.0 || p_switch_mw < 0.0) {
    throw std::invalid_argument("device powers must be non-negative");
  }
}

double analog_power_delta(const PowerParams& p) {
  p.validate();
  return static_cast<double>(p.n_antennas) * p.n_rf_chains *
         (p.p_multibit_ps_mw - p.p_1bit_ps_mw - p.p_switch_mw);
}

double selection_network_power(const PowerParams& p) {
  p.validate();
  return static_cast<double>(p.n_antennas) * p.n_rf_chains *
         (p.p_1bit_ps_mw + p.p_switch_mw);
}

double phased_array_power(const PowerParams& p) {
  p.validate();
  return static_cast<double>(p.n_antennas) * p.n_rf_chains * p.p_multibit_ps_mw;
}

}  // namespace mbaa
