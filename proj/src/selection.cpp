// selection.cpp - Selection vectors, covering runs, wide-beam synthesis.

#include "mbaa/selection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbaa {

namespace {

// Tolerance (in beam-index units) for deciding boundary-exact coverage.
constexpr double kIndexTol = 1e-9;

double positive_mod_2pi(double a) {
  double m = std::fmod(a, kTwoPi);
  if (m < 0.0) m += kTwoPi;
  return m;
}

}  // namespace

int SelectionVector::count_selected() const {
  int k = 0;
  for (std::int8_t w : weights) {
    if (w != 0) ++k;
  }
  return k;
}

double SelectionVector::amplitude() const {
  const int k = count_selected();
  if (k == 0) throw std::invalid_argument("selection has no active ports");
  return normalization == Normalization::EvenPowerSplit ? 1.0 / std::sqrt(k) : 1.0;
}

void SelectionVector::validate(const ArrayConfig& cfg, bool require_nonzero) const {
  cfg.validate();
  if (weights.size() != static_cast<std::size_t>(cfg.n_beams)) {
    throw std::invalid_argument("selection length does not match n_beams");
  }
  for (std::int8_t w : weights) {
    if (w < -1 || w > 1) {
      throw std::invalid_argument("selection weights must lie in {-1, 0, +1}");
    }
  }
  if (require_nonzero && count_selected() == 0) {
    throw std::invalid_argument("selection has no active ports");
  }
}

std::string SelectionVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i) out += ',';
    if (weights[i] > 0) {
      out += "+1";
    } else if (weights[i] < 0) {
      out += "-1";
    } else {
      out += '0';
    }
  }
  return out;
}

SelectionVector SelectionVector::parse(const std::string& text, Normalization norm) {
  SelectionVector sel;
  sel.normalization = norm;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // Strip surrounding spaces.
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw std::invalid_argument("empty selection token");
    }
    tok = tok.substr(b, e - b + 1);
    if (tok == "0") {
      sel.weights.push_back(0);
    } else if (tok == "+1" || tok == "1") {
      sel.weights.push_back(1);
    } else if (tok == "-1") {
      sel.weights.push_back(-1);
    } else {
      throw std::invalid_argument("bad selection token '" + tok + "'");
    }
  }
  if (sel.weights.empty()) {
    throw std::invalid_argument("empty selection string");
  }
  return sel;
}

double AngularInterval::width() const {
  const double w = positive_mod_2pi(hi - lo);
  // hi == lo + 2*pi (any representation with zero residue) means full circle.
  return w == 0.0 ? kTwoPi : w;
}

bool AngularInterval::full_circle() const { return width() >= kTwoPi; }

bool AngularInterval::contains(double u) const {
  if (full_circle()) return true;
  return positive_mod_2pi(u - lo) <= width();
}

void AngularInterval::validate() const {
  if (hi == lo) {
    throw std::invalid_argument("angular interval has zero width");
  }
}

bool intervals_overlap(const AngularInterval& a, const AngularInterval& b) {
  if (a.full_circle() || b.full_circle()) return true;
  return a.contains(b.lo) || a.contains(b.hi) || b.contains(a.lo) || b.contains(a.hi);
}

BeamRun beam_run_covering(const ArrayConfig& cfg, const AngularInterval& target) {
  cfg.validate();
  target.validate();
  const int n = cfg.n_beams;
  if (target.full_circle()) return {0, n};

  const double delta = kTwoPi / n;
  const double lo_idx = target.lo / delta;
  const double hi_idx = lo_idx + target.width() / delta;

  // Beam k's mainlobe spans (u_k - delta, u_k + delta). The widest-start /
  // earliest-end choice below is the fewest-beams covering run; exact
  // boundary contact counts as covered.
  int first = static_cast<int>(std::floor(lo_idx + 1.0 + kIndexTol));
  int last = static_cast<int>(std::ceil(hi_idx - 1.0 - kIndexTol));
  if (last < first) {
    // Interval narrower than one beam spacing: any single beam from
    // [last, first] covers it; take the one nearest the midpoint.
    const int mid = static_cast<int>(std::floor(0.5 * (lo_idx + hi_idx) + 0.5));
    first = last = mid;
  }
  int length = last - first + 1;
  if (length >= n) return {0, n};

  int start = first % n;
  if (start < 0) start += n;
  return {start, length};
}

SelectionVector run_selection(const ArrayConfig& cfg, const BeamRun& run,
                              Normalization norm) {
  cfg.validate();
  if (run.length < 1 || run.length > cfg.n_beams) {
    throw std::invalid_argument("beam run length out of range");
  }
  SelectionVector sel;
  sel.normalization = norm;
  sel.weights.assign(cfg.n_beams, 0);
  for (int k = 0; k < run.length; ++k) {
    const int idx = (run.start + k) % cfg.n_beams;
    if (sel.weights[idx] != 0) {
      throw std::invalid_argument("beam run wraps onto itself");
    }
    sel.weights[idx] = (k % 2 == 0) ? 1 : -1;
  }
  return sel;
}

SelectionVector synthesize_mainlobes(const ArrayConfig& cfg,
                                     const std::vector<AngularInterval>& targets,
                                     Normalization norm) {
  cfg.validate();
  if (targets.empty()) {
    throw std::invalid_argument("no target intervals given");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    targets[i].validate();
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (intervals_overlap(targets[i], targets[j])) {
        throw std::invalid_argument("target intervals overlap");
      }
    }
  }

  SelectionVector sel;
  sel.normalization = norm;
  sel.weights.assign(cfg.n_beams, 0);
  for (const AngularInterval& target : targets) {
    const BeamRun run = beam_run_covering(cfg, target);
    const SelectionVector part = run_selection(cfg, run, norm);
    for (int i = 0; i < cfg.n_beams; ++i) {
      if (part.weights[i] == 0) continue;
      if (sel.weights[i] != 0) {
        throw std::invalid_argument(
            "covering runs of two targets collide on beam " + std::to_string(i) +
            "; widen the gap between targets");
      }
      sel.weights[i] = part.weights[i];
    }
  }
  return sel;
}

SelectionVector base2_beam(const ArrayConfig& cfg, int beam) {
  cfg.validate();
  if (beam < 0 || beam >= cfg.n_beams) {
    throw std::invalid_argument("beam index out of range");
  }
  return run_selection(cfg, {beam, 2}, Normalization::Unit);
}

double base2_pointing(const ArrayConfig& cfg, int beam) {
  cfg.validate();
  if (beam < 0 || beam >= cfg.n_beams) {
    throw std::invalid_argument("beam index out of range");
  }
  return wrap_angle(kTwoPi * beam / cfg.n_beams + kPi / cfg.n_beams);
}

cplx combined_gain(const ArrayConfig& cfg, const SelectionVector& sel, double u,
                   double f_norm) {
  sel.validate(cfg);
  cplx acc(0.0, 0.0);
  for (int b = 0; b < cfg.n_beams; ++b) {
    if (sel.weights[b] == 0) continue;
    acc += static_cast<double>(sel.weights[b]) * beam_gain(cfg, b, u, f_norm);
  }
  return sel.amplitude() * acc;
}

RippleBounds mainlobe_ripple(const ArrayConfig& cfg, const SelectionVector& sel,
                             const AngularInterval& target, std::size_t samples,
                             double margin) {
  sel.validate(cfg);
  target.validate();
  if (margin < 0.0) margin = kTwoPi / cfg.n_beams;
  const double interior = target.width() - 2.0 * margin;
  if (!(interior > 0.0)) {
    throw std::invalid_argument("target interval narrower than two edge margins");
  }
  if (samples < 2) throw std::invalid_argument("need at least 2 ripple samples");

  double min_db = 0.0, max_db = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = wrap_angle(target.lo + margin +
                                interior * static_cast<double>(i) /
                                    static_cast<double>(samples - 1));
    const double g = amp_db(std::abs(combined_gain(cfg, sel, u, 1.0)));
    if (i == 0 || g < min_db) min_db = g;
    if (i == 0 || g > max_db) max_db = g;
  }
  return {min_db, max_db};
}

}  // namespace mbaa
