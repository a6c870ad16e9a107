// squint.hpp - Wideband beam squint: gain maps, the shift law, compensation,
// and spatial-frequency profile classification.
//
// With spacing fixed in highest-frequency wavelengths, the inter-element
// phase scales with the normalized frequency f, so a fixed beam's mainlobe
// drifts toward larger angles as f falls below 1. Over a band [rho, 1] the
// drift follows the index law x = round(n/rho). Selecting the whole drift
// range keeps a target direction covered across the band, and the per-angle
// gain-versus-frequency profile localizes an incident path to one of four
// angular regions.

#pragma once

#include <map>
#include <vector>

#include "mbaa/array.hpp"
#include "mbaa/selection.hpp"

namespace mbaa {

// Operating band normalized by its highest frequency: [rho, 1].
struct FrequencyBand {
  double rho = 0.9;
  int n_points = 64;

  void validate() const;
  // n_points uniform frequencies from rho to 1 inclusive.
  std::vector<double> grid() const;
};

// Gain magnitude per frequency grid point at one incidence angle.
struct FrequencyProfile {
  std::vector<double> powers;
};

enum class RegionLabel { R1, R2, R3, R4 };

const char* region_name(RegionLabel label);

struct RegionClassification {
  RegionLabel label = RegionLabel::R1;
  // False when a transition profile matched neither the rising (R2) nor the
  // falling (R4) shape and the majority end decided.
  bool matched_shape = true;
};

/// Index the mainlobe of beam n drifts to at the band's low edge:
/// round-half-up of n/rho. Always >= n.
int shifted_beam_index(int beam, double rho);

/// |combined gain| map of a selection over angle x frequency; the f = 1 slice
/// is the narrowband pattern (same code path as sample_pattern).
GainGrid wideband_gain_map(const ArrayConfig& cfg, const SelectionVector& sel,
                           const FrequencyBand& band,
                           const std::vector<double>& u_grid);

/// Squint-robust selection for receiving the full band from the pointing of
/// `target_beam`: beams n..target with alternating signs, where n is the
/// smallest index whose drifted position reaches the target.
SelectionVector squint_compensated_selection(const ArrayConfig& cfg, int target_beam,
                                             const FrequencyBand& band);

/// Gain-versus-frequency profile of a selection at one incidence angle.
FrequencyProfile profile_at(const ArrayConfig& cfg, const SelectionVector& sel,
                            const FrequencyBand& band, double u);

/// Classify a profile against amplitude thresholds in dB:
///   R3  all points at or above the high threshold,
///   R1  all points at or below the low threshold,
///   R2  the above-threshold portion sits at the high-frequency end,
///   R4  the above-threshold portion sits at the low-frequency end.
/// Profiles matching neither transition shape fall back to the majority end
/// (flagged via matched_shape).
RegionClassification classify_region(const FrequencyProfile& profile,
                                     double high_thresh_db, double low_thresh_db);

struct ProfileMatch {
  int beam = -1;
  double residual = 0.0;
};

/// Nearest reference profile by normalized least squares over the frequency
/// grid. Throws on an empty reference set.
ProfileMatch match_beam_by_profile(const FrequencyProfile& profile,
                                   const std::map<int, FrequencyProfile>& references);

}  // namespace mbaa
