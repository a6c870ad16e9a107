// array.hpp - DFT beamspace engine for analog multi-beam antenna arrays.
//
// An N-port multi-beam array maps beam-port signals onto N antennas through a
// fixed N-point DFT, steering N simultaneous beams with pointing directions
// u_n = 2*pi*n/N in beamspace. Everything else in this library (beam
// synthesis, angle estimation, wideband maps, scheduling) is built on the
// per-port gain kernel defined here.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mbaa {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// 20*log10 amplitude -> dB (amplitude convention).
double amp_db(double amplitude);

/// 10*log10 power -> dB.
double power_db(double power);

/// Wrap an angle into the principal beamspace interval [-pi, pi).
double wrap_angle(double u);

/// Circular distance |a - b| on the angle circle, in [0, pi].
double angle_distance(double a, double b);

enum class DftSign {
  NegativeExponent,  // entry exp(-j*2*pi*n*m/N), the default
  PositiveExponent,  // entry exp(+j*2*pi*n*m/N)
};

enum class GainReference {
  SingleBeamPeak,  // 0 dB = the peak amplitude of one DFT beam
};

// Static description of the array: port/antenna count, spacing in reference
// (highest-frequency) wavelengths, and the DFT phase convention. All gain
// magnitudes are convention independent.
struct ArrayConfig {
  int n_beams = 16;
  double spacing = 0.5;
  DftSign dft_sign = DftSign::NegativeExponent;
  GainReference gain_reference = GainReference::SingleBeamPeak;

  // Throws std::invalid_argument when n_beams < 2 or spacing <= 0.
  void validate() const;
};

/// Entry (beam, antenna) of the N-point DFT matrix the analog network
/// realizes. Unit modulus; the full matrix is unitary up to sqrt(N).
cplx dft_weight(const ArrayConfig& cfg, int beam, int antenna);

/// Beamspace angle u = 2*pi*d*cos(alpha) for a physical angle alpha (radians,
/// [0, pi]) and antenna spacing d in wavelengths. d = 0.5 maps [0, pi] onto
/// [-pi, pi].
double physical_to_beamspace(double alpha_rad, double spacing_wavelengths);

/// Pointing direction u_n = 2*pi*n/N of beam n, wrapped to [-pi, pi).
double beam_pointing(const ArrayConfig& cfg, int beam);

/// The beamspace pattern kernel sin(N*phi/2)/sin(phi/2). The removable
/// singularity at phi = 2*pi*k is filled with the limit value +/-N. Peak
/// value N, zeros at nonzero multiples of 2*pi/N, magnitude 2*pi-periodic
/// (the sign alternates each 2*pi turn when N is even).
double dirichlet(int n, double phi);

/// Physical steering vector at beamspace angle u and normalized frequency
/// f_norm in (0, 1]: element m carries phase m*u*f_norm (spacing fixed in
/// reference wavelengths, so the inter-element phase scales linearly with
/// frequency). f_norm = 1 is the narrowband design frequency.
std::vector<cplx> steering_vector(const ArrayConfig& cfg, double u, double f_norm);

/// Complex gain of beam port n toward beamspace angle u at normalized
/// frequency f_norm, referenced so a beam peak has amplitude 1 (0 dB).
///
/// Phases are referenced to the array centre and ports carry the parity
/// (-1)^n, which makes each port's pattern the real kernel
/// (-1)^n * dirichlet(N, u*f_norm - u_n)/N. Adjacent ports are then exactly
/// antiphase where their mainlobes intersect -- the property the 1-bit
/// sign-flip selection network exploits. Requires even N for a globally
/// consistent parity around the circle.
cplx beam_gain(const ArrayConfig& cfg, int beam, double u, double f_norm = 1.0);

// Sampled complex gain over an angle grid and an optional frequency grid.
// Row-major with the angle index outermost.
struct GainGrid {
  std::vector<double> u_grid;
  std::vector<double> f_grid;
  std::vector<cplx> values;

  const cplx& at(std::size_t iu, std::size_t ifreq) const {
    return values[iu * f_grid.size() + ifreq];
  }
  std::size_t n_angles() const { return u_grid.size(); }
  std::size_t n_freqs() const { return f_grid.size(); }
};

/// Evaluate values[i][j] = sum_n weights[n] * beam_gain(n, u_grid[i],
/// f_grid[j]) for a full complex weight vector over the beam ports.
/// Grids must be strictly increasing; weights.size() must equal n_beams.
GainGrid sample_pattern(const ArrayConfig& cfg, const std::vector<cplx>& weights,
                        const std::vector<double>& u_grid,
                        const std::vector<double>& f_grid);

/// n uniform angles covering one full turn [lo, lo + 2*pi), the default
/// pattern grid. Narrowband patterns are representative independent, but
/// wideband maps scale the coordinate by f, so squint experiments use
/// lo = 0 (the coordinate their region geometry is defined in) while
/// narrowband work keeps the principal lo = -pi.
std::vector<double> uniform_angle_grid(std::size_t n = 4096, double lo = -kPi);

}  // namespace mbaa
