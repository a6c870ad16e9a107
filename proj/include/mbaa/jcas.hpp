// jcas.hpp - Dual-function schedules: one communication beam plus sensing
// beams sharing a single RF chain.
//
// Each time unit selects the fixed communication beam and x sensing beams
// with even power split over the x+1 active ports. Type-1 slides a regular
// window over the non-communication beams (deterministic, hence traceable);
// type-2 draws the sensing subset at random each unit, which scrambles
// amplitude and phase everywhere except the communication direction.

#pragma once

#include <cstdint>
#include <vector>

#include "mbaa/array.hpp"
#include "mbaa/selection.hpp"

namespace mbaa {

enum class JcasScheme { Type1, Type2 };

struct JcasConfig {
  int n_beams = 16;
  int comm_beam = 0;
  int n_sensing = 4;  // x, the simultaneously selected sensing beams
  JcasScheme scheme = JcasScheme::Type1;
  int time_units = 1000;
  std::uint64_t rng_seed = 1;
  // First sensing index of the type-1 cycle; -1 means N - n_sensing, which
  // starts the window on the top x beams.
  int sensing_start = -1;

  void validate() const;
};

// One selection per time unit; every slot holds the comm beam plus exactly
// n_sensing sensing beams under even power split.
struct JcasSchedule {
  int comm_beam = 0;
  int n_sensing = 0;
  std::vector<SelectionVector> slots;
};

/// Regular scheme: the sensing window walks the N-1 non-communication beams
/// cyclically, advancing one position per time unit (period N-1). Signs
/// alternate within each contiguous index run of the sensing set; the comm
/// beam always carries +1.
JcasSchedule type1_schedule(const JcasConfig& cfg);

/// Random scheme: per time unit, a uniform x-subset of the non-communication
/// beams with independent random signs; seed-deterministic.
JcasSchedule type2_schedule(const JcasConfig& cfg);

JcasSchedule make_schedule(const JcasConfig& cfg);

/// Fraction of time units in which each beam is selected (comm beam = 1).
std::vector<double> selection_frequency(const JcasSchedule& schedule, int n_beams);

struct ApgCurve {
  std::vector<double> u;
  std::vector<double> apg;  // mean over time of |combined gain|^2
};

ApgCurve average_power_gain(const JcasSchedule& schedule, const ArrayConfig& cfg,
                            const std::vector<double>& u_grid);

struct TradeoffPoint {
  int x = 0;
  double comm_power_gain = 0.0;
  double sensing_apg = 0.0;
};

/// Sweep the sensing-beam count: communication power gain at the comm
/// pointing versus sensing APG at the probe angle, one type-1 schedule per x.
std::vector<TradeoffPoint> tradeoff_curves(const ArrayConfig& cfg,
                                           const JcasConfig& base, int x_min,
                                           int x_max, double sensing_probe_u);

// Complex gain per (time unit, angle) with per-angle temporal statistics.
struct SecrecyMap {
  std::vector<double> u;
  int time_units = 0;
  std::vector<cplx> gains;  // time-major: gains[t * u.size() + i]
  std::vector<double> amp_mean, amp_std;
  std::vector<double> phase_mean, phase_std;  // circular statistics

  const cplx& at(int t, std::size_t iu) const { return gains[t * u.size() + iu]; }
};

SecrecyMap secrecy_map(const JcasSchedule& schedule, const ArrayConfig& cfg,
                       const std::vector<double>& u_grid);

}  // namespace mbaa
