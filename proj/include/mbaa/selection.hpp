// selection.hpp - Beam selection vectors and flat-mainlobe synthesis.
//
// The analog selection network between beam ports and one RF chain gives each
// port a weight in {-1, 0, +1}: a closed switch plus a 1-bit phase shifter.
// Selecting a contiguous run of DFT beams with alternating signs superimposes
// their mainlobes into one wide, approximately flat lobe; the two-beam case
// (the base-2 wide beam) points at the crossover of its constituents with a
// 2/(N*sin(pi/(2N))) ~ 4/pi amplitude there.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbaa/array.hpp"

namespace mbaa {

enum class Normalization {
  Unit,            // selected ports applied with amplitude 1
  EvenPowerSplit,  // amplitude 1/sqrt(K) over the K selected ports
};

// Per-port weights in {-1, 0, +1} plus the power-split convention; the unit
// of analog beamforming control.
struct SelectionVector {
  std::vector<std::int8_t> weights;
  Normalization normalization = Normalization::Unit;

  int count_selected() const;
  // Applied per-port amplitude: 1 or 1/sqrt(K). Requires K >= 1.
  double amplitude() const;
  // Throws std::invalid_argument on weights outside {-1,0,+1} or, when
  // require_nonzero, on an all-zero selection.
  void validate(const ArrayConfig& cfg, bool require_nonzero = true) const;

  // Compact text form "0,+1,-1,0,...".
  std::string to_string() const;
  static SelectionVector parse(const std::string& text,
                               Normalization norm = Normalization::Unit);
};

// Wrapping interval on the angle circle, spanned counter-clockwise from lo to
// hi. Width lies in (0, 2*pi]; lo == hi is rejected (use width 2*pi for the
// full circle by passing hi = lo + 2*pi).
struct AngularInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const;
  bool contains(double u) const;
  bool full_circle() const;
  void validate() const;
};

bool intervals_overlap(const AngularInterval& a, const AngularInterval& b);

// Contiguous run of beam indices (start, start+1, ..., start+length-1 mod N).
struct BeamRun {
  int start = 0;
  int length = 0;
};

/// Minimal contiguous run of beams whose union of first-null mainlobes covers
/// the interval; ties resolve toward fewer beams. A full-circle interval maps
/// to all N beams.
BeamRun beam_run_covering(const ArrayConfig& cfg, const AngularInterval& target);

/// Selection with +1,-1,+1,... alternating along the run, starting at +1.
SelectionVector run_selection(const ArrayConfig& cfg, const BeamRun& run,
                              Normalization norm = Normalization::Unit);

/// Wide-beam synthesis covering every target interval: each target maps to
/// its covering run, signs alternate within each run (runs restart at +1
/// independently), all other weights stay 0. Throws on an empty target list,
/// overlapping targets, or targets whose covering runs collide.
SelectionVector synthesize_mainlobes(const ArrayConfig& cfg,
                                     const std::vector<AngularInterval>& targets,
                                     Normalization norm = Normalization::Unit);

/// The base-2 wide beam: ports n and n+1 (mod N) with weights (+1, -1).
/// Its combined pattern peaks at the crossover u_n + pi/N.
SelectionVector base2_beam(const ArrayConfig& cfg, int beam);

/// Pointing direction of a base-2 beam, u_n + pi/N wrapped to [-pi, pi).
double base2_pointing(const ArrayConfig& cfg, int beam);

/// Combined complex gain a * sum_n w_n * beam_gain(n, u, f_norm) with
/// a = 1 (unit) or 1/sqrt(K) (even power split).
cplx combined_gain(const ArrayConfig& cfg, const SelectionVector& sel, double u,
                   double f_norm = 1.0);

struct RippleBounds {
  double min_db;
  double max_db;
};

/// Min/max of 20*log10|combined_gain| over the target interior, sampled with
/// the given margin from each edge (default one beam spacing, which skips the
/// roll-off of a synthesized lobe). Throws when the interval is narrower than
/// the two margins. Pass margin 0 to sample the full interval.
RippleBounds mainlobe_ripple(const ArrayConfig& cfg, const SelectionVector& sel,
                             const AngularInterval& target,
                             std::size_t samples = 2048, double margin = -1.0);

}  // namespace mbaa
