// power.hpp - Analog beamforming power accounting.
//
// A multi-beam array's selection network spends one 1-bit phase shifter plus
// one switch per beam-port/RF-chain path; a fully-connected phased array
// spends one multi-bit phase shifter per antenna/RF-chain path. Both count
// N*M devices, so the architectures differ by N*M times the per-device gap.

#pragma once

namespace mbaa {

struct PowerParams {
  int n_antennas = 64;
  int n_rf_chains = 8;
  double p_multibit_ps_mw = 30.0;
  double p_1bit_ps_mw = 5.0;
  double p_switch_mw = 5.0;

  void validate() const;
};

/// Extra analog beamforming power a multi-bit phased array spends over the
/// selection network: N*M*(p_multibit - p_1bit - p_switch) mW. Negative when
/// the 1-bit path is costlier.
double analog_power_delta(const PowerParams& p);

/// Selection-network total: N*M*(p_1bit + p_switch) mW.
double selection_network_power(const PowerParams& p);

/// Fully-connected phased-array total: N*M*p_multibit mW.
double phased_array_power(const PowerParams& p);

}  // namespace mbaa
