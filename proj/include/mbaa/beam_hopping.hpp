// beam_hopping.hpp - Index modulation over the beams covering dominant paths.
//
// With a few dominant propagation paths each covered by its own beam, the
// identity of the transmit beam subset itself carries information: 2^b
// subsets form a codebook, each symbol selects one subset, and the receiver
// demodulates by nearest expected sample. Even power split over the selected
// beams matches the single-RF-chain hardware.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mbaa/array.hpp"

namespace mbaa {

// Effective complex gain per available beam: path gain times beam gain at
// the path angle, folded into one scalar per beam.
struct BhChannel {
  std::vector<int> beams;
  std::vector<cplx> gains;

  cplx gain_for(int beam) const;
  void validate() const;
};

/// All non-empty subsets of the given beams in deterministic
/// size-then-lexicographic order. Input size capped at 12.
std::vector<std::vector<int>> enumerate_subsets(const std::vector<int>& beams);

struct BhCodebook {
  int bits_per_symbol = 0;
  std::vector<int> available_beams;
  std::vector<std::vector<int>> subsets;  // 2^bits entries
};

/// Noiseless receiver sample for a subset: even power split over its beams,
/// (1/sqrt(|S|)) * sum of their channel gains.
cplx expected_symbol(const std::vector<int>& subset, const BhChannel& channel);

/// Pick the 2^bits codebook: rank subsets by received power, greedily skip
/// candidates whose expected sample coincides with an already accepted one,
/// and fill from the skipped candidates in rank order if the guard leaves the
/// codebook short (degenerate equal-gain channels).
BhCodebook select_codebook(const std::vector<std::vector<int>>& subsets,
                           const BhChannel& channel, int bits);

/// Map a b-bit word to its beam subset.
const std::vector<int>& modulate(unsigned word, const BhCodebook& codebook);

/// Maximum-likelihood demodulation: nearest expected sample. The noise
/// variance does not move the decision under equal priors, but callers pass
/// it to document the receiver model.
unsigned demodulate(cplx received, const BhCodebook& codebook,
                    const BhChannel& channel, double noise_var);

struct BerPoint {
  double snr_db = 0.0;
  int symbols = 0;
  long long bit_errors = 0;
  double ber = 0.0;
};

/// Monte Carlo bit error rate over an SNR sweep; SNR is measured against the
/// mean received constellation power. Deterministic per seed.
std::vector<BerPoint> bh_ber_sweep(const BhCodebook& codebook, const BhChannel& channel,
                                   const std::vector<double>& snr_db, int symbols,
                                   std::uint64_t seed);

}  // namespace mbaa
