// aoa.hpp - Snapshot simulation and ratio-based angle estimation.
//
// Two overlapping base-2 wide beams D and E observe the same incident path.
// The ratio of their power difference to their power sum is a monotone
// function of the angle between the beam pointings and is independent of the
// source signal, so inverting a tabulated model of that ratio recovers the
// angle from one pair of measurements. A multi-section descent over
// synthesized wide beams locates the right beam pair in logarithmic time.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "mbaa/array.hpp"
#include "mbaa/selection.hpp"

namespace mbaa {

struct Path {
  double u = 0.0;
  cplx amplitude{1.0, 0.0};
};

// Incident paths; estimation scenarios need at least one.
struct PathSet {
  std::vector<Path> paths;
};

// One complex sample per configured measurement beam plus the SNR used to
// generate it (+infinity for noiseless snapshots).
struct Observation {
  std::vector<cplx> samples;
  double snr_db = 0.0;
};

/// Simulate one snapshot: sample k = sum_p combined_gain(sel_k, u_p) * amp_p
/// plus circularly-symmetric complex Gaussian noise whose power is set by
/// snr_db against a unit-amplitude path through a 0 dB-gain beam.
/// Deterministic for a given rng_seed; snr_db = +infinity disables noise.
Observation simulate_snapshot(const ArrayConfig& cfg,
                              const std::vector<SelectionVector>& selections,
                              const PathSet& scene, double snr_db,
                              std::uint64_t rng_seed);

// Monotone table of F(u) = (gD^2 - gE^2)/(gD^2 + gE^2) for the base-2 pair
// D = base2(n), E = base2(n+1) (spanning ports n, n+1, n+2), tabulated
// between the two base-2 pointings. F is strictly decreasing with F > 0 at
// the D end and F < 0 at the E end; both are asserted at construction.
class RatioModel {
 public:
  int beam() const { return beam_; }
  double lo() const { return u_.front(); }
  double hi() const { return u_.back(); }

  // Forward model by linear interpolation (u clamped to [lo, hi]).
  double ratio_at(double u) const;
  // Monotone inversion; ratios beyond the table range clamp to the nearest
  // endpoint. Table nodes invert exactly.
  double invert(double ratio) const;

  const std::vector<double>& grid_u() const { return u_; }
  const std::vector<double>& grid_ratio() const { return f_; }

  friend RatioModel build_ratio_model(const ArrayConfig& cfg, int beam,
                                      std::size_t grid_size);

 private:
  int beam_ = 0;
  std::vector<double> u_;  // unwrapped, strictly increasing
  std::vector<double> f_;  // strictly decreasing
};

/// Tabulate the ratio model for the pair D = base2(beam), E = base2(beam+1)
/// on grid_size points (>= 64). Throws std::logic_error if the tabulated
/// ratio fails strict monotonicity (a kernel bug, not a usage error).
RatioModel build_ratio_model(const ArrayConfig& cfg, int beam,
                             std::size_t grid_size = 4096);

/// Invert the power ratio of a two-sample observation (x_D, x_E) through the
/// model. Throws std::invalid_argument on zero total power. The estimate is
/// wrapped to [-pi, pi) and lies within the model interval.
double estimate_aoa(const Observation& obs, const RatioModel& model);

using MeasureFn = std::function<cplx(const SelectionVector&)>;

struct SearchResult {
  int base2_index = 0;  // pair (d, d+1) judged to bracket the path
  double u_hat = 0.0;
  int oracle_calls = 0;
};

/// Multi-section spatial search: split the covering beam run into `branching`
/// sub-runs, measure power through one synthesized wide beam per sub-run,
/// descend into the strongest until a single DFT beam remains, then take two
/// fresh base-2 measurements around it and invert the ratio model.
/// Oracle calls <= branching * ceil(log_branching(run length)) + 2.
SearchResult multisection_search(const ArrayConfig& cfg, const MeasureFn& measure,
                                 const AngularInterval& region, int branching = 2,
                                 std::size_t model_grid = 4096);

struct RmseSweepPoint {
  double snr_db = 0.0;
  int trials = 0;
  double rmse_rad = 0.0;
  double bias_rad = 0.0;
};

/// Monte Carlo accuracy sweep for the base-2 pair at `beam`: per SNR point,
/// `trials` single-path scenes with angles uniform over the model interval
/// interior, simulated and estimated with per-trial derived seeds.
std::vector<RmseSweepPoint> aoa_rmse_sweep(const ArrayConfig& cfg, int beam,
                                           const std::vector<double>& snr_db,
                                           int trials, std::uint64_t seed,
                                           std::size_t model_grid = 4096);

}  // namespace mbaa
