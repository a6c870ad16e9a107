// aoa.cpp - Snapshot simulation, ratio model, multi-section search.

#include "mbaa/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mbaa {

namespace {

// Stateless 64-bit mix for deriving independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e9b5ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Observation simulate_snapshot(const ArrayConfig& cfg,
                              const std::vector<SelectionVector>& selections,
                              const PathSet& scene, double snr_db,
                              std::uint64_t rng_seed) {
  cfg.validate();
  if (scene.paths.empty()) {
    throw std::invalid_argument("scene has no incident paths");
  }
  if (selections.empty()) {
    throw std::invalid_argument("no measurement selections configured");
  }

  Observation obs;
  obs.snr_db = snr_db;
  obs.samples.reserve(selections.size());

  const bool noiseless = std::isinf(snr_db) && snr_db > 0.0;
  if (!noiseless && !std::isfinite(snr_db)) {
    throw std::invalid_argument("snr_db must be finite or +infinity");
  }
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Per-measurement noise power against a unit path through a 0 dB beam.
  const double sigma = noiseless ? 0.0 : std::sqrt(std::pow(10.0, -snr_db / 10.0));

  for (const SelectionVector& sel : selections) {
    cplx sample(0.0, 0.0);
    for (const Path& p : scene.paths) {
      sample += combined_gain(cfg, sel, p.u, 1.0) * p.amplitude;
    }
    if (!noiseless) {
      sample += sigma * std::sqrt(0.5) * cplx(gauss(rng), gauss(rng));
    }
    obs.samples.push_back(sample);
  }
  return obs;
}

double RatioModel::ratio_at(double u) const {
  if (u <= u_.front()) return f_.front();
  if (u >= u_.back()) return f_.back();
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - u_.begin()) - 1;
  const double t = (u - u_[i]) / (u_[i + 1] - u_[i]);
  return f_[i] + t * (f_[i + 1] - f_[i]);
}

double RatioModel::invert(double ratio) const {
  if (ratio >= f_.front()) return u_.front();
  if (ratio <= f_.back()) return u_.back();
  // f_ is strictly decreasing: binary search for the bracketing segment.
  std::size_t lo = 0, hi = f_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (f_[mid] >= ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (f_[lo] == ratio) return u_[lo];
  const double t = (ratio - f_[lo]) / (f_[hi] - f_[lo]);
  return u_[lo] + t * (u_[hi] - u_[lo]);
}

RatioModel build_ratio_model(const ArrayConfig& cfg, int beam,
                             std::size_t grid_size) {
  cfg.validate();
  if (beam < 0 || beam >= cfg.n_beams) {
    throw std::invalid_argument("beam index out of range");
  }
  if (grid_size < 64) {
    throw std::invalid_argument("ratio model needs at least 64 grid points");
  }

  const int n = cfg.n_beams;
  const SelectionVector sel_d = base2_beam(cfg, beam);
  const SelectionVector sel_e = base2_beam(cfg, (beam + 1) % n);
  // Unwrapped interval between the two base-2 pointings.
  const double lo = kTwoPi * (beam + 0.5) / n;
  const double hi = kTwoPi * (beam + 1.5) / n;

  RatioModel model;
  model.beam_ = beam;
  model.u_.resize(grid_size);
  model.f_.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(grid_size - 1);
    const double gd = std::abs(combined_gain(cfg, sel_d, wrap_angle(u), 1.0));
    const double ge = std::abs(combined_gain(cfg, sel_e, wrap_angle(u), 1.0));
    const double pd = gd * gd, pe = ge * ge;
    model.u_[i] = u;
    model.f_[i] = (pd - pe) / (pd + pe);
  }

  for (std::size_t i = 1; i < grid_size; ++i) {
    if (!(model.f_[i] < model.f_[i - 1])) {
      throw std::logic_error("ratio table is not strictly decreasing");
    }
  }
  if (!(model.f_.front() > 0.0) || !(model.f_.back() < 0.0)) {
    throw std::logic_error("ratio table endpoints have unexpected signs");
  }
  return model;
}

double estimate_aoa(const Observation& obs, const RatioModel& model) {
  if (obs.samples.size() < 2) {
    throw std::invalid_argument("ratio estimation needs the two samples (x_D, x_E)");
  }
  const double pd = std::norm(obs.samples[0]);
  const double pe = std::norm(obs.samples[1]);
  const double total = pd + pe;
  if (!(total > 0.0)) {
    throw std::invalid_argument("zero total power: no signal to estimate from");
  }
  return wrap_angle(model.invert((pd - pe) / total));
}

SearchResult multisection_search(const ArrayConfig& cfg, const MeasureFn& measure,
                                 const AngularInterval& region, int branching,
                                 std::size_t model_grid) {
  cfg.validate();
  if (branching < 2) {
    throw std::invalid_argument("branching factor must be at least 2");
  }
  const int n = cfg.n_beams;
  const double delta = kTwoPi / n;
  if (!region.full_circle() && region.width() < 2.0 * delta) {
    throw std::invalid_argument("search region narrower than one beam pair");
  }

  BeamRun run = beam_run_covering(cfg, region);
  SearchResult result;

  while (run.length > 1) {
    // Split into `branching` near-equal contiguous sub-runs and keep the one
    // with the strongest wide-beam power.
    const int parts = std::min(branching, run.length);
    const int base = run.length / parts;
    const int extra = run.length % parts;
    int offset = 0;
    double best_power = -1.0;
    BeamRun best{};
    for (int p = 0; p < parts; ++p) {
      const int len = base + (p < extra ? 1 : 0);
      const BeamRun sub{(run.start + offset) % n, len};
      offset += len;
      const cplx sample = measure(run_selection(cfg, sub));
      ++result.oracle_calls;
      const double power = std::norm(sample);
      if (power > best_power) {
        best_power = power;
        best = sub;
      }
    }
    run = best;
  }

  // Fresh base-2 measurements bracketing the surviving beam b: the pair
  // pointings sit at u_b -/+ pi/N, exactly b's mainlobe half-widths.
  const int b = run.start;
  const int d = (b - 1 + n) % n;
  const cplx x_d = measure(base2_beam(cfg, d));
  const cplx x_e = measure(base2_beam(cfg, b));
  result.oracle_calls += 2;

  const RatioModel model = build_ratio_model(cfg, d, model_grid);
  Observation obs;
  obs.samples = {x_d, x_e};
  obs.snr_db = std::numeric_limits<double>::infinity();
  result.u_hat = estimate_aoa(obs, model);
  result.base2_index = (std::norm(x_d) >= std::norm(x_e)) ? d : b;
  return result;
}

std::vector<RmseSweepPoint> aoa_rmse_sweep(const ArrayConfig& cfg, int beam,
                                           const std::vector<double>& snr_db,
                                           int trials, std::uint64_t seed,
                                           std::size_t model_grid) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  const RatioModel model = build_ratio_model(cfg, beam, model_grid);
  const std::vector<SelectionVector> pair = {base2_beam(cfg, beam),
                                             base2_beam(cfg, (beam + 1) % cfg.n_beams)};
  const double lo = model.lo(), hi = model.hi();

  std::vector<RmseSweepPoint> sweep;
  sweep.reserve(snr_db.size());
  for (std::size_t s = 0; s < snr_db.size(); ++s) {
    double sq_sum = 0.0, err_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed =
          splitmix64(seed ^ (0x51ed2701ULL * (s + 1)) ^ static_cast<std::uint64_t>(t));
      std::mt19937_64 rng(trial_seed);
      std::uniform_real_distribution<double> angle(lo, hi);
      const double u_true = angle(rng);

      PathSet scene;
      scene.paths.push_back({wrap_angle(u_true), cplx(1.0, 0.0)});
      const Observation obs =
          simulate_snapshot(cfg, pair, scene, snr_db[s], splitmix64(trial_seed));
      const double u_hat = estimate_aoa(obs, model);
      // Compare on the circle; the interval may straddle the seam.
      const double err = wrap_angle(u_hat - u_true);
      sq_sum += err * err;
      err_sum += err;
    }
    sweep.push_back({snr_db[s], trials, std::sqrt(sq_sum / trials), err_sum / trials});
  }
  return sweep;
}

}  // namespace mbaa
