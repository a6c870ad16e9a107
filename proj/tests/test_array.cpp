// test_array.cpp - DFT kernel, steering, pattern features.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mbaa/array.hpp"

using namespace mbaa;

namespace {

ArrayConfig make_cfg(int n, DftSign sign = DftSign::NegativeExponent) {
  ArrayConfig cfg;
  cfg.n_beams = n;
  cfg.dft_sign = sign;
  return cfg;
}

// Independent route: apply the DFT column to the physical steering vector.
// Negative-exponent columns combine transposed, positive-exponent columns
// Hermitian; the magnitudes agree with beam_gain either way.
double inner_product_gain(const ArrayConfig& cfg, int beam, double u, double f) {
  const std::vector<cplx> a = steering_vector(cfg, u, f);
  cplx acc(0.0, 0.0);
  for (int m = 0; m < cfg.n_beams; ++m) {
    cplx w = dft_weight(cfg, beam, m);
    if (cfg.dft_sign == DftSign::PositiveExponent) w = std::conj(w);
    acc += w * a[m];
  }
  return std::abs(acc) / cfg.n_beams;
}

}  // namespace

TEST_CASE("wrap_angle maps into [-pi, pi)") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(kTwoPi + 0.25) == doctest::Approx(0.25));
  CHECK(angle_distance(-kPi + 0.1, kPi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("dft_weight examples and range checks") {
  const ArrayConfig cfg16 = make_cfg(16);
  CHECK(dft_weight(cfg16, 0, 5).real() == doctest::Approx(1.0));
  CHECK(dft_weight(cfg16, 0, 5).imag() == doctest::Approx(0.0));

  const ArrayConfig cfg4 = make_cfg(4);
  const cplx w11 = dft_weight(cfg4, 1, 1);  // exp(-j*pi/2) = -j
  CHECK(w11.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w11.imag() == doctest::Approx(-1.0));

  const ArrayConfig cfg4p = make_cfg(4, DftSign::PositiveExponent);
  CHECK(dft_weight(cfg4p, 1, 1).imag() == doctest::Approx(1.0));

  CHECK_THROWS_AS(dft_weight(cfg16, 16, 0), std::invalid_argument);
  CHECK_THROWS_AS(dft_weight(cfg16, 0, -1), std::invalid_argument);
}

TEST_CASE("DFT rows are orthogonal") {
  for (int n : {5, 16}) {
    const ArrayConfig cfg = make_cfg(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        cplx acc(0.0, 0.0);
        for (int m = 0; m < n; ++m) {
          acc += dft_weight(cfg, a, m) * std::conj(dft_weight(cfg, b, m));
        }
        if (a == b) {
          CHECK(std::abs(acc - cplx(n, 0.0)) < 1e-9 * n);
        } else {
          CHECK(std::abs(acc) < 1e-9 * n);
        }
      }
    }
  }
}

TEST_CASE("physical angle to beamspace") {
  CHECK(physical_to_beamspace(kPi / 2.0, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(physical_to_beamspace(0.0, 0.5) == doctest::Approx(kPi));
  CHECK(physical_to_beamspace(kPi / 3.0, 0.5) == doctest::Approx(kPi / 2.0));
  CHECK_THROWS_AS(physical_to_beamspace(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("beam pointing directions") {
  const ArrayConfig cfg16 = make_cfg(16);
  CHECK(beam_pointing(cfg16, 0) == doctest::Approx(0.0));
  CHECK(beam_pointing(cfg16, 4) == doctest::Approx(kPi / 2.0));

  const ArrayConfig cfg128 = make_cfg(128);
  CHECK(beam_pointing(cfg128, 64) == doctest::Approx(-kPi));  // wraps
  CHECK_THROWS_AS(beam_pointing(cfg16, 16), std::invalid_argument);
}

TEST_CASE("dirichlet kernel values") {
  CHECK(dirichlet(16, 0.0) == doctest::Approx(16.0));
  CHECK(dirichlet(16, kTwoPi / 16.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dirichlet(16, kPi / 16.0) ==
        doctest::Approx(1.0 / std::sin(kPi / 32.0)).epsilon(1e-12));
  // -3.9 dB crossover loss relative to the peak of N.
  CHECK(amp_db(dirichlet(16, kPi / 16.0) / 16.0) == doctest::Approx(-3.92).epsilon(0.02));
  // Even N: sign alternates per 2*pi turn, magnitude is 2*pi-periodic.
  CHECK(dirichlet(16, kTwoPi + 0.3) == doctest::Approx(-dirichlet(16, 0.3)));
  CHECK(dirichlet(16, kTwoPi) == doctest::Approx(-16.0));
  CHECK(std::abs(dirichlet(16, 7.0)) <= 16.0);
  CHECK_THROWS_AS(dirichlet(1, 0.1), std::invalid_argument);
}

TEST_CASE("steering vector phases") {
  const ArrayConfig cfg4 = make_cfg(4);
  const auto ones = steering_vector(cfg4, 0.0, 1.0);
  for (const cplx& v : ones) {
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(v.imag() == doctest::Approx(0.0));
  }
  const auto a1 = steering_vector(cfg4, kPi / 2.0, 1.0);
  for (int m = 0; m < 4; ++m) {
    CHECK(angle_distance(std::arg(a1[m]), m * kPi / 2.0) < 1e-12);
    CHECK(std::abs(a1[m]) == doctest::Approx(1.0));
  }
  const auto a2 = steering_vector(cfg4, kPi / 2.0, 0.5);
  for (int m = 0; m < 4; ++m) {
    CHECK(std::arg(a2[m]) == doctest::Approx(m * kPi / 4.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(steering_vector(cfg4, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(steering_vector(cfg4, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("beam gain peaks, nulls and crossover") {
  const ArrayConfig cfg = make_cfg(16);
  for (int n = 0; n < 16; ++n) {
    CHECK(std::abs(beam_gain(cfg, n, beam_pointing(cfg, n), 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (int other = 0; other < 16; ++other) {
      if (other == n) continue;
      CHECK(std::abs(beam_gain(cfg, n, beam_pointing(cfg, other), 1.0)) < 1e-9);
    }
  }
  const double crossover =
      std::abs(beam_gain(cfg, 3, beam_pointing(cfg, 3) + kPi / 16.0, 1.0));
  CHECK(crossover == doctest::Approx(1.0 / (16.0 * std::sin(kPi / 32.0))).epsilon(1e-12));
  CHECK(amp_db(crossover) == doctest::Approx(-3.92).epsilon(0.02));
}

TEST_CASE("beam gain matches the closed-form kernel") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> freq(0.2, 1.0);
  for (int n_beams : {8, 16, 128}) {
    const ArrayConfig cfg = make_cfg(n_beams);
    for (int trial = 0; trial < 200; ++trial) {
      const int beam = static_cast<int>(rng() % n_beams);
      const double u = angle(rng);
      const double f = freq(rng);
      const cplx g = beam_gain(cfg, beam, u, f);
      const double parity = (beam % 2 == 0) ? 1.0 : -1.0;
      const double phi = wrap_angle(u * f - kTwoPi * beam / n_beams);
      const double closed = parity * dirichlet(n_beams, phi) / n_beams;
      CHECK(std::abs(g - cplx(closed, 0.0)) < 1e-12);
      CHECK(std::abs(g.imag()) == 0.0);  // pattern is real by construction
    }
  }
}

TEST_CASE("beam gain magnitude equals the DFT/steering inner product") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> freq(0.2, 1.0);
  for (DftSign sign : {DftSign::NegativeExponent, DftSign::PositiveExponent}) {
    const ArrayConfig cfg = make_cfg(16, sign);
    for (int trial = 0; trial < 100; ++trial) {
      const int beam = static_cast<int>(rng() % 16);
      const double u = angle(rng);
      const double f = freq(rng);
      CHECK(std::abs(std::abs(beam_gain(cfg, beam, u, f)) -
                     inner_product_gain(cfg, beam, u, f)) < 1e-12);
    }
  }
}

TEST_CASE("pointing-grid energy of a single beam") {
  const ArrayConfig cfg = make_cfg(16);
  for (int n = 0; n < 16; ++n) {
    double energy = 0.0;
    for (int k = 0; k < 16; ++k) {
      energy += std::norm(beam_gain(cfg, n, beam_pointing(cfg, k), 1.0));
    }
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("first sidelobe level") {
  for (int n : {16, 64, 128}) {
    const ArrayConfig cfg = make_cfg(n);
    const double delta = kTwoPi / n;
    double peak = 0.0;
    for (int i = 1; i < 4096; ++i) {
      const double u = delta + delta * i / 4096.0;  // between first and second null
      peak = std::max(peak, std::abs(beam_gain(cfg, 0, u, 1.0)));
    }
    CHECK(amp_db(peak) == doctest::Approx(-13.26).epsilon(0.012));
  }
}

TEST_CASE("sample_pattern matches per-beam sums and measures beamwidth") {
  const ArrayConfig cfg = make_cfg(16);

  SUBCASE("one-hot weights reproduce beam_gain") {
    std::vector<cplx> w(16, cplx(0.0, 0.0));
    w[3] = cplx(1.0, 0.0);
    const auto grid = sample_pattern(cfg, w, uniform_angle_grid(256), {0.5, 1.0});
    for (std::size_t i = 0; i < grid.n_angles(); ++i) {
      for (std::size_t j = 0; j < grid.n_freqs(); ++j) {
        CHECK(std::abs(grid.at(i, j) -
                       beam_gain(cfg, 3, grid.u_grid[i], grid.f_grid[j])) < 1e-12);
      }
    }
  }

  SUBCASE("zero weights give a zero grid") {
    const std::vector<cplx> w(16, cplx(0.0, 0.0));
    const auto grid = sample_pattern(cfg, w, uniform_angle_grid(64), {1.0});
    for (const cplx& v : grid.values) CHECK(std::abs(v) == 0.0);
  }

  SUBCASE("random complex weights match the direct sum") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<cplx> w(16);
    for (auto& c : w) c = cplx(coef(rng), coef(rng));
    const auto grid = sample_pattern(cfg, w, uniform_angle_grid(128), {0.7, 1.0});
    for (std::size_t i = 0; i < grid.n_angles(); i += 7) {
      for (std::size_t j = 0; j < grid.n_freqs(); ++j) {
        cplx direct(0.0, 0.0);
        for (int b = 0; b < 16; ++b) {
          direct += w[b] * beam_gain(cfg, b, grid.u_grid[i], grid.f_grid[j]);
        }
        CHECK(std::abs(grid.at(i, j) - direct) < 1e-12);
      }
    }
  }

  SUBCASE("first-null beamwidth is 4*pi/N") {
    for (int n : {16, 64, 128}) {
      const ArrayConfig c = make_cfg(n);
      // The pattern is real: bisect the sign changes bracketing the peak.
      const auto gain_at = [&](double u) {
        return beam_gain(c, 2, u, 1.0).real();
      };
      const double u_peak = kTwoPi * 2 / n;
      const double step = kTwoPi / 4096.0;
      double left = u_peak, right = u_peak;
      while (gain_at(left) > 0.0) left -= step;
      while (gain_at(right) > 0.0) right += step;
      // left/right are the first samples at or beyond the bracketing nulls,
      // so the measured width is grid-resolution accurate.
      const double width = right - left;
      CHECK(std::abs(width - 4.0 * kPi / n) <= 2.0 * step + 1e-12);
    }
  }

  SUBCASE("argument errors") {
    std::vector<cplx> w(15, cplx(1.0, 0.0));
    CHECK_THROWS_AS(sample_pattern(cfg, w, uniform_angle_grid(8), {1.0}),
                    std::invalid_argument);
    std::vector<cplx> w16(16, cplx(1.0, 0.0));
    CHECK_THROWS_AS(sample_pattern(cfg, w16, {0.2, 0.1}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_pattern(cfg, w16, {0.1, 0.2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(sample_pattern(cfg, w16, {0.1, 0.2}, {1.5}), std::invalid_argument);
  }
}

TEST_CASE("config validation") {
  ArrayConfig bad;
  bad.n_beams = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.n_beams = 8;
  bad.spacing = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
