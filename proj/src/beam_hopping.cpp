// beam_hopping.cpp - Subset enumeration, codebook selection, (de)modulation.

#include "mbaa/beam_hopping.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mbaa {

cplx BhChannel::gain_for(int beam) const {
  for (std::size_t i = 0; i < beams.size(); ++i) {
    if (beams[i] == beam) return gains[i];
  }
  throw std::invalid_argument("beam not present in the channel");
}

void BhChannel::validate() const {
  if (beams.size() != gains.size()) {
    throw std::invalid_argument("channel beam/gain length mismatch");
  }
  for (const cplx& g : gains) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
      throw std::invalid_argument("channel gains must be finite");
    }
  }
}

std::vector<std::vector<int>> enumerate_subsets(const std::vector<int>& beams) {
  if (beams.empty()) throw std::invalid_argument("no beams to enumerate");
  if (beams.size() > 12) {
    throw std::invalid_argument("subset enumeration capped at 12 beams");
  }
  const int n = static_cast<int>(beams.size());
  std::vector<std::vector<int>> subsets;
  subsets.reserve((1u << n) - 1);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(beams[i]);
    }
    subsets.push_back(std::move(s));
  }
  // Size-then-lexicographic, on positions within the input list.
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return subsets;
}

cplx expected_symbol(const std::vector<int>& subset, const BhChannel& channel) {
  if (subset.empty()) throw std::invalid_argument("empty beam subset");
  cplx acc(0.0, 0.0);
  for (int b : subset) acc += channel.gain_for(b);
  return acc / std::sqrt(static_cast<double>(subset.size()));
}

BhCodebook select_codebook(const std::vector<std::vector<int>>& subsets,
                           const BhChannel& channel, int bits) {
  channel.validate();
  if (bits < 0 || bits > 20) throw std::invalid_argument("unreasonable bit count");
  const std::size_t want = 1u << bits;
  if (subsets.size() < want) {
    throw std::invalid_argument("not enough subsets for the requested bit count");
  }

  struct Ranked {
    std::size_t order;
    double power;
    cplx expected;
  };
  std::vector<Ranked> ranked(subsets.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const cplx e = expected_symbol(subsets[i], channel);
    ranked[i] = {i, std::norm(e), e};
    scale = std::max(scale, std::abs(e));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) { return a.power > b.power; });

  // Guard against coincident constellation points; ties in degenerate
  // channels are filled back in rank order.
  const double guard = 1e-9 * std::max(scale, 1.0);
  std::vector<std::size_t> accepted, skipped;
  for (const Ranked& r : ranked) {
    if (accepted.size() == want) break;
    bool distinct = true;
    for (std::size_t a : accepted) {
      cplx other(0, 0);
      for (const Ranked& q : ranked) {
        if (q.order == a) {
          other = q.expected;
          break;
        }
      }
      if (std::abs(r.expected - other) < guard) {
        distinct = false;
        break;
      }
    }
    if (distinct) {
      accepted.push_back(r.order);
    } else {
      skipped.push_back(r.order);
    }
  }
  for (std::size_t s : skipped) {
    if (accepted.size() == want) break;
    accepted.push_back(s);
  }

  BhCodebook codebook;
  codebook.bits_per_symbol = bits;
  codebook.available_beams = channel.beams;
  codebook.subsets.reserve(want);
  for (std::size_t i = 0; i < want; ++i) {
    codebook.subsets.push_back(subsets[accepted[i]]);
  }
  return codebook;
}

const std::vector<int>& modulate(unsigned word, const BhCodebook& codebook) {
  if (word >= codebook.subsets.size()) {
    throw std::invalid_argument("word exceeds the codebook size");
  }
  return codebook.subsets[word];
}

unsigned demodulate(cplx received, const BhCodebook& codebook,
                    const BhChannel& channel, double /*noise_var*/) {
  if (codebook.subsets.empty()) throw std::invalid_argument("empty codebook");
  unsigned best = 0;
  double best_dist = 0.0;
  for (std::size_t w = 0; w < codebook.subsets.size(); ++w) {
    const double d = std::norm(received - expected_symbol(codebook.subsets[w], channel));
    if (w == 0 || d < best_dist) {
      best_dist = d;
      best = static_cast<unsigned>(w);
    }
  }
  return best;
}

std::vector<BerPoint> bh_ber_sweep(const BhCodebook& codebook, const BhChannel& channel,
                                   const std::vector<double>& snr_db, int symbols,
                                   std::uint64_t seed) {
  if (symbols < 1) throw std::invalid_argument("need at least one symbol");
  const int bits = codebook.bits_per_symbol;
  const unsigned words = 1u << bits;

  double mean_power = 0.0;
  std::vector<cplx> expected(words);
  for (unsigned w = 0; w < words; ++w) {
    expected[w] = expected_symbol(codebook.subsets[w], channel);
    mean_power += std::norm(expected[w]);
  }
  mean_power /= words;

  std::vector<BerPoint> sweep;
  sweep.reserve(snr_db.size());
  for (std::size_t s = 0; s < snr_db.size(); ++s) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (s + 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double noise_var = mean_power * std::pow(10.0, -snr_db[s] / 10.0);
    const double sigma = std::sqrt(0.5 * noise_var);

    long long errors = 0;
    for (int k = 0; k < symbols; ++k) {
      const unsigned word = static_cast<unsigned>(rng() % words);
      const cplx rx = expected[word] + sigma * cplx(gauss(rng), gauss(rng));
      const unsigned decided = demodulate(rx, codebook, channel, noise_var);
      unsigned diff = word ^ decided;
      while (diff) {
        errors += diff & 1u;
        diff >>= 1;
      }
    }
    sweep.push_back({snr_db[s], symbols, errors,
                     bits > 0 ? static_cast<double>(errors) /
                                    (static_cast<double>(symbols) * bits)
                              : 0.0});
  }
  return sweep;
}

}  // namespace mbaa
