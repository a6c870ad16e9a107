// test_aoa.cpp - Snapshots, ratio model, estimation, multi-section search.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mbaa/aoa.hpp"

using namespace mbaa;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ArrayConfig make_cfg(int n) {
  ArrayConfig cfg;
  cfg.n_beams = n;
  return cfg;
}

PathSet one_path(double u, cplx amp = cplx(1.0, 0.0)) {
  PathSet scene;
  scene.paths.push_back({u, amp});
  return scene;
}

// Exhaustive scan oracle: the base-2 pair with the strongest noiseless
// receive power for a single path (ties resolve to the lowest index, as in
// the search itself).
int exhaustive_base2_argmax(const ArrayConfig& cfg, double u) {
  int best = 0;
  double best_power = -1.0;
  for (int d = 0; d < cfg.n_beams; ++d) {
    const double p = std::norm(combined_gain(cfg, base2_beam(cfg, d), u, 1.0));
    if (p > best_power + 1e-15) {
      best_power = p;
      best = d;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("noiseless snapshots reproduce combined gains") {
  const ArrayConfig cfg = make_cfg(16);
  SelectionVector one_hot;
  one_hot.weights.assign(16, 0);
  one_hot.weights[5] = 1;

  const cplx amp(0.8, -0.3);
  const Observation at_peak = simulate_snapshot(
      cfg, {one_hot}, one_path(beam_pointing(cfg, 5), amp), kInf, 1);
  // Unit-magnitude peak; the sign carries the port parity.
  CHECK(std::abs(std::abs(at_peak.samples[0]) - std::abs(amp)) < 1e-12);
  CHECK(std::abs(at_peak.samples[0] -
                 amp * combined_gain(cfg, one_hot, beam_pointing(cfg, 5), 1.0)) <
        1e-12);

  const Observation at_null = simulate_snapshot(
      cfg, {one_hot}, one_path(beam_pointing(cfg, 6), amp), kInf, 1);
  CHECK(std::abs(at_null.samples[0]) < 1e-9);

  // Path at the crossover of a base-2 pair: |x_D| = |amp| * 2/(N sin(pi/2N)).
  const SelectionVector d = base2_beam(cfg, 5);
  const Observation at_cross =
      simulate_snapshot(cfg, {d}, one_path(base2_pointing(cfg, 5), amp), kInf, 1);
  CHECK(std::abs(at_cross.samples[0]) ==
        doctest::Approx(std::abs(amp) * 1.275287155).epsilon(1e-9));

  // Two paths superpose linearly.
  PathSet scene;
  scene.paths.push_back({beam_pointing(cfg, 5), cplx(1.0, 0.0)});
  scene.paths.push_back({0.7, cplx(0.0, 0.5)});
  const Observation multi = simulate_snapshot(cfg, {one_hot}, scene, kInf, 9);
  const cplx expect = combined_gain(cfg, one_hot, beam_pointing(cfg, 5), 1.0) +
                      combined_gain(cfg, one_hot, 0.7, 1.0) * cplx(0.0, 0.5);
  CHECK(std::abs(multi.samples[0] - expect) < 1e-12);

  CHECK_THROWS_AS(simulate_snapshot(cfg, {one_hot}, PathSet{}, kInf, 1),
                  std::invalid_argument);
}

TEST_CASE("snapshots are seed-deterministic") {
  const ArrayConfig cfg = make_cfg(16);
  const std::vector<SelectionVector> sels = {base2_beam(cfg, 5), base2_beam(cfg, 6)};
  const Observation a = simulate_snapshot(cfg, sels, one_path(2.3), 10.0, 42);
  const Observation b = simulate_snapshot(cfg, sels, one_path(2.3), 10.0, 42);
  const Observation c = simulate_snapshot(cfg, sels, one_path(2.3), 10.0, 43);
  REQUIRE(a.samples.size() == 2);
  CHECK(a.samples[0] == b.samples[0]);
  CHECK(a.samples[1] == b.samples[1]);
  CHECK(a.samples[0] != c.samples[0]);
}

TEST_CASE("ratio model shape") {
  const ArrayConfig cfg = make_cfg(16);
  const RatioModel model = build_ratio_model(cfg, 5, 4096);

  CHECK(model.lo() == doctest::Approx(kTwoPi * 5.5 / 16.0));
  CHECK(model.hi() == doctest::Approx(kTwoPi * 6.5 / 16.0));
  // Midpoint (= pointing of beam 6) balances the pair.
  CHECK(model.ratio_at(kTwoPi * 6.0 / 16.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(model.ratio_at(model.lo()) > 0.0);
  CHECK(model.ratio_at(model.hi()) < 0.0);

  const auto& ratios = model.grid_ratio();
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    CHECK(ratios[i] < ratios[i - 1]);  // strictly decreasing
  }

  CHECK_THROWS_AS(build_ratio_model(cfg, 5, 32), std::invalid_argument);
  CHECK_THROWS_AS(build_ratio_model(cfg, 16, 4096), std::invalid_argument);
}

TEST_CASE("table nodes invert exactly") {
  const ArrayConfig cfg = make_cfg(16);
  const RatioModel model = build_ratio_model(cfg, 2, 512);
  const auto& us = model.grid_u();
  const auto& ratios = model.grid_ratio();
  for (std::size_t i = 0; i < us.size(); ++i) {
    CHECK(model.invert(ratios[i]) == us[i]);
  }
}

TEST_CASE("estimation basics") {
  const ArrayConfig cfg = make_cfg(16);
  const RatioModel model = build_ratio_model(cfg, 5, 4096);
  const std::vector<SelectionVector> pair = {base2_beam(cfg, 5), base2_beam(cfg, 6)};

  SUBCASE("midpoint path balances the pair") {
    const double mid = kTwoPi * 6.0 / 16.0;
    const Observation obs = simulate_snapshot(cfg, pair, one_path(mid), kInf, 1);
    const double u_hat = estimate_aoa(obs, model);
    CHECK(angle_distance(u_hat, mid) < (model.hi() - model.lo()) / 4096.0);
  }

  SUBCASE("noiseless round trip across the interval") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(model.lo(), model.hi());
    const double bound = 2.0 * (model.hi() - model.lo()) / 4096.0;
    for (int t = 0; t < 256; ++t) {
      const double u_true = angle(rng);
      const Observation obs =
          simulate_snapshot(cfg, pair, one_path(wrap_angle(u_true)), kInf, t);
      CHECK(angle_distance(estimate_aoa(obs, model), u_true) < bound);
    }
  }

  SUBCASE("ratios beyond the table clamp to the endpoints") {
    Observation obs;
    obs.samples = {cplx(1.0, 0.0), cplx(0.0, 0.0)};  // r = +1 > F(lo)
    CHECK(estimate_aoa(obs, model) == doctest::Approx(wrap_angle(model.lo())));
    obs.samples = {cplx(0.0, 0.0), cplx(1.0, 0.0)};  // r = -1 < F(hi)
    CHECK(estimate_aoa(obs, model) == doctest::Approx(wrap_angle(model.hi())));
  }

  SUBCASE("zero total power throws") {
    Observation obs;
    obs.samples = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    CHECK_THROWS_AS(estimate_aoa(obs, model), std::invalid_argument);
  }

  SUBCASE("scale invariance of the ratio") {
    const Observation obs = simulate_snapshot(cfg, pair, one_path(2.25), 15.0, 77);
    const double base = estimate_aoa(obs, model);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int t = 0; t < 32; ++t) {
      const cplx c(coef(rng), coef(rng));
      if (std::abs(c) < 1e-3) continue;
      Observation scaled;
      scaled.samples = {c * obs.samples[0], c * obs.samples[1]};
      CHECK(angle_distance(estimate_aoa(scaled, model), base) < 1e-9);
    }
  }
}

TEST_CASE("rmse sweep behaves with SNR") {
  const ArrayConfig cfg = make_cfg(16);
  const std::vector<double> snrs = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  const auto sweep = aoa_rmse_sweep(cfg, 5, snrs, 3000, 2024);
  REQUIRE(sweep.size() == snrs.size());

  // Accuracy target at 20 dB: a twentieth of the first-null beamwidth.
  const double bound = (4.0 * kPi / 16.0) / 20.0;
  CHECK(sweep[4].rmse_rad < bound);

  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].rmse_rad <= sweep[i - 1].rmse_rad + 1e-12);
  }
  for (const auto& point : sweep) {
    CHECK(std::abs(point.bias_rad) < point.rmse_rad + 1e-12);
    CHECK(point.trials == 3000);
  }
}

TEST_CASE("multisection search finds the bracketing pair") {
  const ArrayConfig cfg = make_cfg(128);
  const AngularInterval full{-kPi, -kPi + kTwoPi};

  SUBCASE("logarithmic budget and oracle equivalence over random scenes") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int t = 0; t < 200; ++t) {
      const double u_true = angle(rng);
      int calls = 0;
      const MeasureFn measure = [&](const SelectionVector& sel) {
        ++calls;
        return combined_gain(cfg, sel, u_true, 1.0);
      };
      const SearchResult r = multisection_search(cfg, measure, full, 2);
      CHECK(r.oracle_calls == calls);
      CHECK(r.oracle_calls <= 2 * 7 + 2);  // 2*ceil(log2 128) + 2
      CHECK(r.base2_index == exhaustive_base2_argmax(cfg, u_true));
      CHECK(angle_distance(r.u_hat, u_true) < kTwoPi / 128.0 / 16.0);
    }
  }

  SUBCASE("paths exactly at DFT pointings") {
    for (int b = 0; b < 128; ++b) {
      const double u_true = beam_pointing(cfg, b);
      const MeasureFn measure = [&](const SelectionVector& sel) {
        return combined_gain(cfg, sel, u_true, 1.0);
      };
      const SearchResult r = multisection_search(cfg, measure, full, 2);
      CHECK(r.oracle_calls <= 16);
      CHECK(angle_distance(r.u_hat, u_true) < kTwoPi / 128.0 / 10.0);
    }
  }

  SUBCASE("paths exactly at base-2 pointings") {
    for (int d = 0; d < 128; d += 7) {
      const double u_true = base2_pointing(cfg, d);
      const MeasureFn measure = [&](const SelectionVector& sel) {
        return combined_gain(cfg, sel, u_true, 1.0);
      };
      const SearchResult r = multisection_search(cfg, measure, full, 2);
      CHECK(angle_distance(r.u_hat, u_true) < kTwoPi / 128.0 / 100.0);
    }
  }

  SUBCASE("higher branching keeps its own budget") {
    const double u_true = 1.7;
    int calls = 0;
    const MeasureFn measure = [&](const SelectionVector& sel) {
      ++calls;
      return combined_gain(cfg, sel, u_true, 1.0);
    };
    const SearchResult r = multisection_search(cfg, measure, full, 3);
    CHECK(r.oracle_calls == calls);
    CHECK(r.oracle_calls <= 3 * 5 + 2);  // 3*ceil(log3 128) + 2
    CHECK(r.base2_index == exhaustive_base2_argmax(cfg, u_true));
  }

  SUBCASE("restricted search region") {
    const double u_true = beam_pointing(cfg, 40) + 0.7 * kPi / 128.0;
    const MeasureFn measure = [&](const SelectionVector& sel) {
      return combined_gain(cfg, sel, u_true, 1.0);
    };
    const AngularInterval region{beam_pointing(cfg, 32), beam_pointing(cfg, 48)};
    const SearchResult r = multisection_search(cfg, measure, region, 2);
    CHECK(r.base2_index == exhaustive_base2_argmax(cfg, u_true));
    CHECK(angle_distance(r.u_hat, u_true) < kTwoPi / 128.0 / 16.0);
  }

  SUBCASE("regions narrower than a beam pair are rejected") {
    const MeasureFn measure = [&](const SelectionVector&) { return cplx(0.0, 0.0); };
    CHECK_THROWS_AS(
        multisection_search(cfg, measure, {0.0, 0.5 * kTwoPi / 128.0}, 2),
        std::invalid_argument);
    CHECK_THROWS_AS(multisection_search(cfg, measure, full, 1), std::invalid_argument);
  }
}
