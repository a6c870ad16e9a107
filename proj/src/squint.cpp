// squint.cpp - Shift law, wideband maps, squint compensation, region logic.

#include "mbaa/squint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mbaa {

void FrequencyBand::validate() const {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::invalid_argument("band edge rho must lie in (0, 1)");
  }
  if (n_points < 8) {
    throw std::invalid_argument("frequency grid needs at least 8 points");
  }
}

std::vector<double> FrequencyBand::grid() const {
  validate();
  std::vector<double> f(n_points);
  for (int i = 0; i < n_points; ++i) {
    f[i] = rho + (1.0 - rho) * static_cast<double>(i) / (n_points - 1);
  }
  return f;
}

int shifted_beam_index(int beam, double rho) {
  if (beam < 0) throw std::invalid_argument("beam index must be non-negative");
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::invalid_argument("rho must lie in (0, 1)");
  }
  return static_cast<int>(std::floor(static_cast<double>(beam) / rho + 0.5));
}

GainGrid wideband_gain_map(const ArrayConfig& cfg, const SelectionVector& sel,
                           const FrequencyBand& band,
                           const std::vector<double>& u_grid) {
  sel.validate(cfg);
  const double amp = sel.amplitude();
  std::vector<cplx> weights(cfg.n_beams);
  for (int b = 0; b < cfg.n_beams; ++b) {
    weights[b] = cplx(amp * sel.weights[b], 0.0);
  }
  return sample_pattern(cfg, weights, u_grid, band.grid());
}

SelectionVector squint_compensated_selection(const ArrayConfig& cfg, int target_beam,
                                             const FrequencyBand& band) {
  cfg.validate();
  band.validate();
  if (target_beam < 0 || target_beam >= cfg.n_beams) {
    throw std::invalid_argument(
        "target beam " + std::to_string(target_beam) + " outside [0, " +
        std::to_string(cfg.n_beams) + "); clip the target into the index space");
  }
  // Smallest n whose drifted index reaches the target; the drift law is
  // monotone in n, so a forward scan suffices at desk scale.
  int first = target_beam;
  for (int n = 0; n <= target_beam; ++n) {
    if (shifted_beam_index(n, band.rho) >= target_beam) {
      first = n;
      break;
    }
  }
  return run_selection(cfg, {first, target_beam - first + 1}, Normalization::Unit);
}

FrequencyProfile profile_at(const ArrayConfig& cfg, const SelectionVector& sel,
                            const FrequencyBand& band, double u) {
  sel.validate(cfg);
  FrequencyProfile profile;
  const std::vector<double> freqs = band.grid();
  profile.powers.reserve(freqs.size());
  for (double f : freqs) {
    profile.powers.push_back(std::abs(combined_gain(cfg, sel, u, f)));
  }
  return profile;
}

RegionClassification classify_region(const FrequencyProfile& profile,
                                     double high_thresh_db, double low_thresh_db) {
  if (profile.powers.empty()) {
    throw std::invalid_argument("empty frequency profile");
  }
  if (!(low_thresh_db < high_thresh_db)) {
    throw std::invalid_argument("low threshold must lie below high threshold");
  }

  const std::size_t n = profile.powers.size();
  std::vector<double> db(n);
  bool all_high = true, all_low = true;
  for (std::size_t i = 0; i < n; ++i) {
    db[i] = amp_db(profile.powers[i]);
    if (db[i] < high_thresh_db) all_high = false;
    if (db[i] > low_thresh_db) all_low = false;
  }
  if (all_high) return {RegionLabel::R3, true};
  if (all_low) return {RegionLabel::R1, true};

  // Transition profile: locate the above-threshold portion.
  std::size_t first_high = n, last_high = 0;
  std::size_t high_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (db[i] >= high_thresh_db) {
      first_high = std::min(first_high, i);
      last_high = i;
      ++high_count;
    }
  }
  if (high_count > 0) {
    const bool is_suffix = (last_high == n - 1) && (high_count == n - first_high);
    const bool is_prefix = (first_high == 0) && (high_count == last_high + 1);
    if (is_suffix && !is_prefix) return {RegionLabel::R2, true};
    if (is_prefix && !is_suffix) return {RegionLabel::R4, true};
  }

  // Neither clean shape: decide by which end carries the larger mean level.
  double low_end = 0.0, high_end = 0.0;
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) low_end += profile.powers[i];
  for (std::size_t i = n - half; i < n; ++i) high_end += profile.powers[i];
  return {high_end >= low_end ? RegionLabel::R2 : RegionLabel::R4, false};
}

ProfileMatch match_beam_by_profile(const FrequencyProfile& profile,
                                   const std::map<int, FrequencyProfile>& references) {
  if (references.empty()) {
    throw std::invalid_argument("no reference profiles to match against");
  }
  const auto normalized = [](const std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = norm > 0.0 ? v[i] / norm : 0.0;
    }
    return out;
  };

  const std::vector<double> p = normalized(profile.powers);
  ProfileMatch best;
  bool first = true;
  for (const auto& [beam, ref] : references) {
    if (ref.powers.size() != profile.powers.size()) {
      throw std::invalid_argument("reference profile length mismatch");
    }
    const std::vector<double> r = normalized(ref.powers);
    double residual = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double d = p[i] - r[i];
      residual += d * d;
    }
    if (first || residual < best.residual) {
      best = {beam, residual};
      first = false;
    }
  }
  return best;
}

const char* region_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::R1: return "R1";
    case RegionLabel::R2: return "R2";
    case RegionLabel::R3: return "R3";
    case RegionLabel::R4: return "R4";
  }
  return "?";
}

}  // namespace mbaa
