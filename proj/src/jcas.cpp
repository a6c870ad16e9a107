// jcas.cpp - Schedule generation, average power gain, trade-off, secrecy map.

#include "mbaa/jcas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mbaa {

namespace {

// Assemble one slot from the comm beam and a sensing index set: even power
// split, +1 on the comm beam, alternating signs within each contiguous
// circular run of sensing indices (each run restarts at +1). `signs`, when
// non-null, overrides the per-beam sensing signs (type-2 randomization).
SelectionVector make_slot(int n_beams, int comm_beam, std::vector<int> sensing,
                          const std::vector<int>* signs) {
  SelectionVector sel;
  sel.normalization = Normalization::EvenPowerSplit;
  sel.weights.assign(n_beams, 0);
  sel.weights[comm_beam] = 1;

  std::sort(sensing.begin(), sensing.end());
  if (signs != nullptr) {
    for (std::size_t i = 0; i < sensing.size(); ++i) {
      sel.weights[sensing[i]] = static_cast<std::int8_t>((*signs)[i]);
    }
    return sel;
  }

  // Walk each maximal circular run from its start (the member whose
  // predecessor is outside the set). The comm beam is never a member, so
  // every non-empty set has at least one run start.
  std::vector<char> in_set(n_beams, 0);
  for (int b : sensing) in_set[b] = 1;
  for (int b : sensing) {
    if (in_set[(b - 1 + n_beams) % n_beams]) continue;
    int idx = b, k = 0;
    while (in_set[idx] && sel.weights[idx] == 0) {
      sel.weights[idx] = (k % 2 == 0) ? 1 : -1;
      idx = (idx + 1) % n_beams;
      ++k;
    }
  }
  return sel;
}

}  // namespace

void JcasConfig::validate() const {
  if (n_beams < 2) throw std::invalid_argument("need at least 2 beams");
  if (comm_beam < 0 || comm_beam >= n_beams) {
    throw std::invalid_argument("comm beam index out of range");
  }
  if (n_sensing < 1 || n_sensing > n_beams - 1) {
    throw std::invalid_argument("sensing beam count must lie in [1, N-1]");
  }
  if (time_units < 1) throw std::invalid_argument("need at least one time unit");
  if (sensing_start != -1 && (sensing_start < 0 || sensing_start >= n_beams)) {
    throw std::invalid_argument("sensing start index out of range");
  }
  if (sensing_start == comm_beam) {
    throw std::invalid_argument("sensing start must differ from the comm beam");
  }
}

JcasSchedule type1_schedule(const JcasConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_beams;
  const int x = cfg.n_sensing;

  // The cycle runs over the N-1 non-communication indices so every sensing
  // beam is visited equally often (period N-1).
  std::vector<int> ring;
  ring.reserve(n - 1);
  for (int k = 1; k < n; ++k) ring.push_back((cfg.comm_beam + k) % n);

  const int start_beam = cfg.sensing_start >= 0 ? cfg.sensing_start
                                                : (n - x + n) % n;
  const auto it = std::find(ring.begin(), ring.end(), start_beam);
  const int p0 = static_cast<int>(it - ring.begin());

  JcasSchedule schedule;
  schedule.comm_beam = cfg.comm_beam;
  schedule.n_sensing = x;
  schedule.slots.reserve(cfg.time_units);
  const int period = n - 1;
  for (int t = 0; t < cfg.time_units; ++t) {
    std::vector<int> sensing(x);
    for (int k = 0; k < x; ++k) {
      sensing[k] = ring[(p0 + t + k) % period];
    }
    schedule.slots.push_back(make_slot(n, cfg.comm_beam, std::move(sensing), nullptr));
  }
  return schedule;
}

JcasSchedule type2_schedule(const JcasConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_beams;
  const int x = cfg.n_sensing;

  std::vector<int> candidates;
  candidates.reserve(n - 1);
  for (int b = 0; b < n; ++b) {
    if (b != cfg.comm_beam) candidates.push_back(b);
  }

  std::mt19937_64 rng(cfg.rng_seed);
  JcasSchedule schedule;
  schedule.comm_beam = cfg.comm_beam;
  schedule.n_sensing = x;
  schedule.slots.reserve(cfg.time_units);
  for (int t = 0; t < cfg.time_units; ++t) {
    // Partial Fisher-Yates draw of a uniform x-subset.
    std::vector<int> pool = candidates;
    std::vector<int> sensing(x);
    std::vector<int> signs(x);
    for (int k = 0; k < x; ++k) {
      std::uniform_int_distribution<int> pick(k, static_cast<int>(pool.size()) - 1);
      std::swap(pool[k], pool[pick(rng)]);
      sensing[k] = pool[k];
      signs[k] = (rng() & 1ULL) ? 1 : -1;
    }
    // Keep signs attached to sorted beam order for determinism.
    std::vector<std::pair<int, int>> paired(x);
    for (int k = 0; k < x; ++k) paired[k] = {sensing[k], signs[k]};
    std::sort(paired.begin(), paired.end());
    for (int k = 0; k < x; ++k) {
      sensing[k] = paired[k].first;
      signs[k] = paired[k].second;
    }
    schedule.slots.push_back(make_slot(n, cfg.comm_beam, std::move(sensing), &signs));
  }
  return schedule;
}

JcasSchedule make_schedule(const JcasConfig& cfg) {
  return cfg.scheme == JcasScheme::Type1 ? type1_schedule(cfg) : type2_schedule(cfg);
}

std::vector<double> selection_frequency(const JcasSchedule& schedule, int n_beams) {
  std::vector<double> freq(n_beams, 0.0);
  for (const SelectionVector& slot : schedule.slots) {
    for (int b = 0; b < n_beams; ++b) {
      if (slot.weights[b] != 0) freq[b] += 1.0;
    }
  }
  for (double& f : freq) f /= static_cast<double>(schedule.slots.size());
  return freq;
}

ApgCurve average_power_gain(const JcasSchedule& schedule, const ArrayConfig& cfg,
                            const std::vector<double>& u_grid) {
  cfg.validate();
  if (schedule.slots.empty()) {
    throw std::invalid_argument("empty schedule");
  }

  // Per-beam gains over the grid once; each slot then combines in O(K).
  const int n = cfg.n_beams;
  std::vector<std::vector<cplx>> gains(n, std::vector<cplx>(u_grid.size()));
  for (int b = 0; b < n; ++b) {
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
      gains[b][i] = beam_gain(cfg, b, u_grid[i], 1.0);
    }
  }

  ApgCurve curve;
  curve.u = u_grid;
  curve.apg.assign(u_grid.size(), 0.0);
  for (const SelectionVector& slot : schedule.slots) {
    const double amp = slot.amplitude();
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
      cplx acc(0.0, 0.0);
      for (int b = 0; b < n; ++b) {
        if (slot.weights[b] != 0) {
          acc += static_cast<double>(slot.weights[b]) * gains[b][i];
        }
      }
      curve.apg[i] += std::norm(amp * acc);
    }
  }
  for (double& v : curve.apg) v /= static_cast<double>(schedule.slots.size());
  return curve;
}

std::vector<TradeoffPoint> tradeoff_curves(const ArrayConfig& cfg,
                                           const JcasConfig& base, int x_min,
                                           int x_max, double sensing_probe_u) {
  cfg.validate();
  if (x_min < 1 || x_max > cfg.n_beams - 1 || x_min > x_max) {
    throw std::invalid_argument("sensing count range out of [1, N-1]");
  }

  const double comm_u = beam_pointing(cfg, base.comm_beam);
  std::vector<TradeoffPoint> table;
  table.reserve(x_max - x_min + 1);
  for (int x = x_min; x <= x_max; ++x) {
    JcasConfig c = base;
    c.scheme = JcasScheme::Type1;
    c.n_sensing = x;
    c.sensing_start = -1;
    const JcasSchedule schedule = type1_schedule(c);
    const ApgCurve curve =
        average_power_gain(schedule, cfg, {comm_u, sensing_probe_u});
    table.push_back({x, curve.apg[0], curve.apg[1]});
  }
  return table;
}

SecrecyMap secrecy_map(const JcasSchedule& schedule, const ArrayConfig& cfg,
                       const std::vector<double>& u_grid) {
  cfg.validate();
  if (schedule.slots.empty()) {
    throw std::invalid_argument("empty schedule");
  }
  const int n = cfg.n_beams;
  const int t_units = static_cast<int>(schedule.slots.size());

  std::vector<std::vector<cplx>> gains(n, std::vector<cplx>(u_grid.size()));
  for (int b = 0; b < n; ++b) {
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
      gains[b][i] = beam_gain(cfg, b, u_grid[i], 1.0);
    }
  }

  SecrecyMap map;
  map.u = u_grid;
  map.time_units = t_units;
  map.gains.resize(static_cast<std::size_t>(t_units) * u_grid.size());
  for (int t = 0; t < t_units; ++t) {
    const SelectionVector& slot = schedule.slots[t];
    const double amp = slot.amplitude();
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
      cplx acc(0.0, 0.0);
      for (int b = 0; b < n; ++b) {
        if (slot.weights[b] != 0) {
          acc += static_cast<double>(slot.weights[b]) * gains[b][i];
        }
      }
      map.gains[static_cast<std::size_t>(t) * u_grid.size() + i] = amp * acc;
    }
  }

  const std::size_t nu = u_grid.size();
  map.amp_mean.assign(nu, 0.0);
  map.amp_std.assign(nu, 0.0);
  map.phase_mean.assign(nu, 0.0);
  map.phase_std.assign(nu, 0.0);
  for (std::size_t i = 0; i < nu; ++i) {
    double mean = 0.0;
    cplx dir(0.0, 0.0);
    for (int t = 0; t < t_units; ++t) {
      const cplx g = map.at(t, i);
      mean += std::abs(g);
      if (std::abs(g) > 0.0) dir += g / std::abs(g);
    }
    mean /= t_units;
    double var = 0.0;
    for (int t = 0; t < t_units; ++t) {
      const double d = std::abs(map.at(t, i)) - mean;
      var += d * d;
    }
    map.amp_mean[i] = mean;
    map.amp_std[i] = std::sqrt(var / t_units);
    // Circular phase statistics from the mean resultant vector.
    const double r = std::abs(dir) / t_units;
    map.phase_mean[i] = std::arg(dir);
    map.phase_std[i] = r > 0.0 ? std::sqrt(std::max(0.0, -2.0 * std::log(r))) : 0.0;
  }
  return map;
}

}  // namespace mbaa
