// main.cpp - mbaasim: experiment runner for the multi-beam array library.
//
// Every subcommand is fully determined by its flags plus --seed and writes
// CSV with a '#' comment header carrying the resolved parameters, so a rerun
// with the same arguments is byte identical.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbaa/aoa.hpp"
#include "mbaa/array.hpp"
#include "mbaa/beam_hopping.hpp"
#include "mbaa/csv.hpp"
#include "mbaa/jcas.hpp"
#include "mbaa/power.hpp"
#include "mbaa/selection.hpp"
#include "mbaa/squint.hpp"

using namespace mbaa;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs `body` against the chosen sink ("-" = stdout). Returns the exit code.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  body(file);
  if (!file.good()) {
    std::cerr << "error: write failure on '" << path << "'\n";
    return 1;
  }
  return 0;
}

// "a-b,c-d,..." -> beam index runs.
std::vector<std::pair<int, int>> parse_beam_runs(const std::string& text) {
  std::vector<std::pair<int, int>> runs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) {
      const int b = std::stoi(tok);
      runs.emplace_back(b, b);
    } else {
      runs.emplace_back(std::stoi(tok.substr(0, dash)),
                        std::stoi(tok.substr(dash + 1)));
    }
  }
  if (runs.empty()) throw std::invalid_argument("no beam runs given");
  return runs;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// "mag@deg,mag@deg,..." -> complex gains.
std::vector<cplx> parse_gain_list(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto at = tok.find('@');
    const double mag = std::stod(at == std::string::npos ? tok : tok.substr(0, at));
    const double deg = at == std::string::npos ? 0.0 : std::stod(tok.substr(at + 1));
    out.push_back(std::polar(mag, deg * kPi / 180.0));
  }
  if (out.empty()) throw std::invalid_argument("empty gain list");
  return out;
}

std::vector<double> snr_points(double lo, double hi, double step) {
  if (step <= 0.0) throw std::invalid_argument("snr step must be positive");
  std::vector<double> v;
  for (double s = lo; s <= hi + 1e-9; s += step) v.push_back(s);
  return v;
}

void add_config_and_out(CLI::App* sub, std::string& config, std::string& out) {
  sub->add_option("--config", config,
                  "flat key=value configuration file (command line overrides)");
  sub->add_option("--out", out, "output path ('-' for stdout)")
      ->capture_default_str();
}

// Expand "--config FILE" into the equivalent command-line tokens before the
// real parse. Keys are option names without the leading dashes; tokens the
// user already passed win. Unknown keys surface as ordinary usage errors.
std::vector<std::string> inject_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot read configuration file '" + path + "'");
  }
  std::vector<std::string> out = args;
  std::string line;
  while (std::getline(file, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    const std::string flag = "--" + key;
    bool already = false;
    for (const std::string& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) already = true;
    }
    if (!already) {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

// ---- subcommand parameter blocks -------------------------------------------

struct PatternOpts {
  int n_beams = 16;
  int beam = 3;
  double f_norm = 1.0;
  int grid = 4096;
  std::string config;
  std::string out = "-";
};

struct SynthOpts {
  int n_beams = 16;
  std::string target_beams = "1-4,12-13";
  int grid = 4096;
  bool even_split = false;
  std::string config;
  std::string out = "-";
};

struct AoaOpts {
  int n_beams = 16;
  int beam = 5;
  double snr_min = 0.0, snr_max = 30.0, snr_step = 5.0;
  int trials = 2000;
  int grid = 4096;
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

struct SearchOpts {
  int n_beams = 128;
  int branching = 2;
  int trials = 50;
  double snr_db = kInf;
  int grid = 4096;
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

struct SquintOpts {
  int n_beams = 128;
  double rho = 0.9;
  int f_points = 64;
  int first_beam = 64;
  int last_beam = 115;
  int grid = 1024;
  std::string config;
  std::string out = "-";
};

struct ApgOpts {
  int n_beams = 16;
  int comm_beam = 0;
  int x_sensing = 4;
  int time_units = 1000;
  int grid = 1024;
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

struct TradeoffOpts {
  int n_beams = 16;
  int comm_beam = 0;
  int time_units = 990;
  int x_min = 2, x_max = 15;
  double probe_u = kPi;
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

struct SecrecyOpts {
  int n_beams = 16;
  int comm_beam = 0;
  int x_sensing = 4;
  int time_units = 50;
  int grid = 256;
  std::string scheme = "type2";
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

struct BhOpts {
  std::string path_beams = "2,6,11";
  std::string path_gains = "1.0@0,0.9@120,0.8@-110";
  int bits = 2;
  double snr_min = 0.0, snr_max = 30.0, snr_step = 5.0;
  int symbols = 10000;
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

struct PowerOpts {
  int n_antennas = 64;
  int rf_chains = 8;
  double multibit_mw = 30.0;
  double onebit_mw = 5.0;
  double switch_mw = 5.0;
  std::string config;
  std::string out = "-";
};

// ---- subcommand bodies ------------------------------------------------------

int run_pattern(const PatternOpts& o) {
  ArrayConfig cfg;
  cfg.n_beams = o.n_beams;
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = pattern (single DFT beam gain over angle)");
    csv.comment("n_beams = " + std::to_string(o.n_beams));
    csv.comment("beam = " + std::to_string(o.beam));
    csv.comment("f_norm = " + format_g9(o.f_norm));
    csv.comment("grid = " + std::to_string(o.grid));
    csv.row(std::vector<std::string>{"u_rad", "re", "im", "amp", "amp_db"});
    for (double u : uniform_angle_grid(o.grid)) {
      const cplx g = beam_gain(cfg, o.beam, u, o.f_norm);
      csv.row({u, g.real(), g.imag(), std::abs(g), amp_db(std::abs(g) + 1e-300)});
    }
  });
}

int run_synthesize(const SynthOpts& o) {
  ArrayConfig cfg;
  cfg.n_beams = o.n_beams;
  const double delta = kTwoPi / o.n_beams;
  std::vector<AngularInterval> targets;
  for (const auto& [a, b] : parse_beam_runs(o.target_beams)) {
    targets.push_back({wrap_angle(a * delta - 0.5 * delta),
                       wrap_angle(b * delta + 0.5 * delta)});
  }
  const SelectionVector sel = synthesize_mainlobes(
      cfg, targets, o.even_split ? Normalization::EvenPowerSplit : Normalization::Unit);
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = synthesize (flat-mainlobe wide beam)");
    csv.comment("n_beams = " + std::to_string(o.n_beams));
    csv.comment("target_beams = " + o.target_beams);
    csv.comment("normalization = " + std::string(o.even_split ? "even-split" : "unit"));
    csv.comment("selection = " + sel.to_string());
    csv.comment("grid = " + std::to_string(o.grid));
    csv.row(std::vector<std::string>{"u_rad", "amp", "amp_db"});
    for (double u : uniform_angle_grid(o.grid)) {
      const double g = std::abs(combined_gain(cfg, sel, u, 1.0));
      csv.row({u, g, amp_db(g + 1e-300)});
    }
  });
}

int run_aoa(const AoaOpts& o) {
  ArrayConfig cfg;
  cfg.n_beams = o.n_beams;
  const auto sweep = aoa_rmse_sweep(cfg, o.beam, snr_points(o.snr_min, o.snr_max, o.snr_step),
                                    o.trials, o.seed, o.grid);
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = aoa (base-2 pair ratio estimator accuracy sweep)");
    csv.comment("n_beams = " + std::to_string(o.n_beams));
    csv.comment("beam = " + std::to_string(o.beam));
    csv.comment("trials = " + std::to_string(o.trials));
    csv.comment("grid = " + std::to_string(o.grid));
    csv.comment("seed = " + std::to_string(o.seed));
    csv.row(std::vector<std::string>{"snr_db", "trials", "rmse_rad", "bias_rad"});
    for (const auto& p : sweep) {
      csv.row(std::vector<std::string>{format_g9(p.snr_db), std::to_string(p.trials),
                                       format_g9(p.rmse_rad), format_g9(p.bias_rad)});
    }
  });
}

int run_search(const SearchOpts& o) {
  ArrayConfig cfg;
  cfg.n_beams = o.n_beams;
  const AngularInterval full{-kPi, kPi};
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = search (multi-section spatial descent + ratio estimate)");
    csv.comment("n_beams = " + std::to_string(o.n_beams));
    csv.comment("branching = " + std::to_string(o.branching));
    csv.comment("trials = " + std::to_string(o.trials));
    csv.comment("snr_db = " + format_g9(o.snr_db));
    csv.comment("seed = " + std::to_string(o.seed));
    csv.row(std::vector<std::string>{"trial", "true_u", "est_u", "base2_index",
                                     "oracle_calls"});
    for (int t = 0; t < o.trials; ++t) {
      std::mt19937_64 rng(o.seed + 0x9e3779b97f4a7c15ULL * (t + 1));
      std::uniform_real_distribution<double> angle(-kPi, kPi);
      std::normal_distribution<double> gauss(0.0, 1.0);
      const double u_true = angle(rng);
      const bool noiseless = std::isinf(o.snr_db) && o.snr_db > 0.0;
      const double sigma =
          noiseless ? 0.0 : std::sqrt(std::pow(10.0, -o.snr_db / 10.0));
      const MeasureFn measure = [&](const SelectionVector& sel) {
        cplx sample = combined_gain(cfg, sel, u_true, 1.0);
        if (!noiseless) {
          sample += sigma * std::sqrt(0.5) * cplx(gauss(rng), gauss(rng));
        }
        return sample;
      };
      const SearchResult r = multisection_search(cfg, measure, full, o.branching, o.grid);
      csv.row(std::vector<std::string>{std::to_string(t), format_g9(u_true),
                                       format_g9(r.u_hat),
                                       std::to_string(r.base2_index),
                                       std::to_string(r.oracle_calls)});
    }
  });
}

int run_squint(const SquintOpts& o) {
  ArrayConfig cfg;
  cfg.n_beams = o.n_beams;
  if (o.last_beam < o.first_beam) {
    throw std::invalid_argument("last beam must not precede first beam");
  }
  const SelectionVector sel =
      run_selection(cfg, {o.first_beam, o.last_beam - o.first_beam + 1});
  const FrequencyBand band{o.rho, o.f_points};
  // Wideband region geometry lives in the [0, 2*pi) coordinate.
  const auto map = wideband_gain_map(cfg, sel, band, uniform_angle_grid(o.grid, 0.0));
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = squint (|gain| over angle x normalized frequency)");
    csv.comment("n_beams = " + std::to_string(o.n_beams));
    csv.comment("rho = " + format_g9(o.rho));
    csv.comment("selected_beams = " + std::to_string(o.first_beam) + "-" +
                std::to_string(o.last_beam));
    csv.comment("grid = " + std::to_string(o.grid));
    csv.comment("f_points = " + std::to_string(o.f_points));
    std::vector<std::string> header{"u_rad"};
    for (double f : map.f_grid) header.push_back(format_g9(f));
    csv.row(header);
    for (std::size_t i = 0; i < map.n_angles(); ++i) {
      std::vector<double> row{map.u_grid[i]};
      for (std::size_t j = 0; j < map.n_freqs(); ++j) {
        row.push_back(std::abs(map.at(i, j)));
      }
      csv.row(row);
    }
  });
}

void write_apg(std::ostream& os, const char* scheme, const ApgOpts& o,
               const ApgCurve& curve) {
  CsvWriter csv(os);
  csv.comment("experiment = jcas-apg (average power gain over angle)");
  csv.comment("scheme = " + std::string(scheme));
  csv.comment("n_beams = " + std::to_string(o.n_beams));
  csv.comment("comm_beam = " + std::to_string(o.comm_beam));
  csv.comment("x_sensing = " + std::to_string(o.x_sensing));
  csv.comment("time_units = " + std::to_string(o.time_units));
  csv.comment("seed = " + std::to_string(o.seed));
  csv.row(std::vector<std::string>{"u_rad", "apg_db"});
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    csv.row({curve.u[i], power_db(curve.apg[i] + 1e-300)});
  }
}

int run_jcas_apg(const ApgOpts& o) {
  ArrayConfig acfg;
  acfg.n_beams = o.n_beams;
  JcasConfig jcfg;
  jcfg.n_beams = o.n_beams;
  jcfg.comm_beam = o.comm_beam;
  jcfg.n_sensing = o.x_sensing;
  jcfg.time_units = o.time_units;
  jcfg.rng_seed = o.seed;

  const auto u_grid = uniform_angle_grid(o.grid);
  jcfg.scheme = JcasScheme::Type1;
  const ApgCurve type1 = average_power_gain(type1_schedule(jcfg), acfg, u_grid);
  jcfg.scheme = JcasScheme::Type2;
  const ApgCurve type2 = average_power_gain(type2_schedule(jcfg), acfg, u_grid);

  if (o.out == "-") {
    write_apg(std::cout, "type1", o, type1);
    write_apg(std::cout, "type2", o, type2);
    return 0;
  }
  const auto dot = o.out.rfind('.');
  const std::string stem = dot == std::string::npos ? o.out : o.out.substr(0, dot);
  const std::string ext = dot == std::string::npos ? ".csv" : o.out.substr(dot);
  int rc = with_output(stem + ".type1" + ext,
                       [&](std::ostream& os) { write_apg(os, "type1", o, type1); });
  if (rc != 0) return rc;
  return with_output(stem + ".type2" + ext,
                     [&](std::ostream& os) { write_apg(os, "type2", o, type2); });
}

int run_jcas_tradeoff(const TradeoffOpts& o) {
  ArrayConfig acfg;
  acfg.n_beams = o.n_beams;
  JcasConfig base;
  base.n_beams = o.n_beams;
  base.comm_beam = o.comm_beam;
  base.time_units = o.time_units;
  base.rng_seed = o.seed;
  const auto table = tradeoff_curves(acfg, base, o.x_min, o.x_max, o.probe_u);
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = jcas-tradeoff (comm vs sensing power over x)");
    csv.comment("n_beams = " + std::to_string(o.n_beams));
    csv.comment("comm_beam = " + std::to_string(o.comm_beam));
    csv.comment("time_units = " + std::to_string(o.time_units));
    csv.comment("probe_u = " + format_g9(o.probe_u));
    csv.row(std::vector<std::string>{"x", "comm_db", "sensing_db"});
    for (const TradeoffPoint& p : table) {
      csv.row(std::vector<std::string>{std::to_string(p.x),
                                       format_g9(power_db(p.comm_power_gain)),
                                       format_g9(power_db(p.sensing_apg))});
    }
  });
}

void write_secrecy_matrix(std::ostream& os, const SecrecyOpts& o, const SecrecyMap& map,
                          bool phase) {
  CsvWriter csv(os);
  csv.comment(std::string("experiment = jcas-secrecy (") +
              (phase ? "phase" : "amplitude") + " per time unit x angle)");
  csv.comment("scheme = " + o.scheme);
  csv.comment("n_beams = " + std::to_string(o.n_beams));
  csv.comment("comm_beam = " + std::to_string(o.comm_beam));
  csv.comment("x_sensing = " + std::to_string(o.x_sensing));
  csv.comment("time_units = " + std::to_string(o.time_units));
  csv.comment("seed = " + std::to_string(o.seed));
  std::vector<std::string> header{"t"};
  for (double u : map.u) header.push_back(format_g9(u));
  csv.row(header);
  for (int t = 0; t < map.time_units; ++t) {
    std::vector<double> row{static_cast<double>(t)};
    for (std::size_t i = 0; i < map.u.size(); ++i) {
      row.push_back(phase ? std::arg(map.at(t, i)) : std::abs(map.at(t, i)));
    }
    csv.row(row);
  }
}

int run_jcas_secrecy(const SecrecyOpts& o) {
  ArrayConfig acfg;
  acfg.n_beams = o.n_beams;
  JcasConfig jcfg;
  jcfg.n_beams = o.n_beams;
  jcfg.comm_beam = o.comm_beam;
  jcfg.n_sensing = o.x_sensing;
  jcfg.time_units = o.time_units;
  jcfg.rng_seed = o.seed;
  if (o.scheme == "type1") {
    jcfg.scheme = JcasScheme::Type1;
  } else if (o.scheme == "type2") {
    jcfg.scheme = JcasScheme::Type2;
  } else {
    throw std::invalid_argument("scheme must be type1 or type2");
  }
  const SecrecyMap map =
      secrecy_map(make_schedule(jcfg), acfg, uniform_angle_grid(o.grid));

  if (o.out == "-") {
    write_secrecy_matrix(std::cout, o, map, false);
    write_secrecy_matrix(std::cout, o, map, true);
    return 0;
  }
  const auto dot = o.out.rfind('.');
  const std::string stem = dot == std::string::npos ? o.out : o.out.substr(0, dot);
  const std::string ext = dot == std::string::npos ? ".csv" : o.out.substr(dot);
  int rc = with_output(o.out,
                       [&](std::ostream& os) { write_secrecy_matrix(os, o, map, false); });
  if (rc != 0) return rc;
  return with_output(stem + ".phase" + ext,
                     [&](std::ostream& os) { write_secrecy_matrix(os, o, map, true); });
}

int run_bh(const BhOpts& o) {
  BhChannel channel;
  channel.beams = parse_int_list(o.path_beams);
  channel.gains = parse_gain_list(o.path_gains);
  channel.validate();
  const BhCodebook codebook =
      select_codebook(enumerate_subsets(channel.beams), channel, o.bits);
  const auto sweep = bh_ber_sweep(codebook, channel,
                                  snr_points(o.snr_min, o.snr_max, o.snr_step),
                                  o.symbols, o.seed);
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = bh (beam-hopping index modulation BER sweep)");
    csv.comment("path_beams = " + o.path_beams);
    csv.comment("path_gains = " + o.path_gains);
    csv.comment("bits = " + std::to_string(o.bits));
    csv.comment("symbols = " + std::to_string(o.symbols));
    csv.comment("seed = " + std::to_string(o.seed));
    std::string subsets;
    for (std::size_t w = 0; w < codebook.subsets.size(); ++w) {
      if (w) subsets += " ";
      subsets += "{";
      for (std::size_t i = 0; i < codebook.subsets[w].size(); ++i) {
        if (i) subsets += "+";
        subsets += std::to_string(codebook.subsets[w][i]);
      }
      subsets += "}";
    }
    csv.comment("codebook = " + subsets);
    csv.row(std::vector<std::string>{"snr_db", "symbols", "bit_errors", "ber"});
    for (const BerPoint& p : sweep) {
      csv.row(std::vector<std::string>{format_g9(p.snr_db), std::to_string(p.symbols),
                                       std::to_string(p.bit_errors), format_g9(p.ber)});
    }
  });
}

int run_power(const PowerOpts& o) {
  const PowerParams params{o.n_antennas, o.rf_chains, o.multibit_mw, o.onebit_mw,
                           o.switch_mw};
  return with_output(o.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.comment("experiment = power (analog beamforming power accounting, mW)");
    csv.comment("n_antennas = " + std::to_string(o.n_antennas));
    csv.comment("rf_chains = " + std::to_string(o.rf_chains));
    csv.comment("multibit_ps_mw = " + format_g9(o.multibit_mw));
    csv.comment("onebit_ps_mw = " + format_g9(o.onebit_mw));
    csv.comment("switch_mw = " + format_g9(o.switch_mw));
    csv.row(std::vector<std::string>{"architecture", "total_mw"});
    csv.row(std::vector<std::string>{"selection-network",
                                     format_g9(selection_network_power(params))});
    csv.row(std::vector<std::string>{"phased-array",
                                     format_g9(phased_array_power(params))});
    csv.row(std::vector<std::string>{"delta", format_g9(analog_power_delta(params))});
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mbaasim - analog multi-beam antenna array experiments"};
  app.require_subcommand(1);

  PatternOpts pattern_opts;
  auto* pattern = app.add_subcommand(
      "pattern", "single DFT beam gain pattern over the angle circle");
  pattern->add_option("--n-beams", pattern_opts.n_beams)->capture_default_str();
  pattern->add_option("--beam", pattern_opts.beam)->capture_default_str();
  pattern->add_option("--f-norm", pattern_opts.f_norm)->capture_default_str();
  pattern->add_option("--grid", pattern_opts.grid)->capture_default_str();
  add_config_and_out(pattern, pattern_opts.config, pattern_opts.out);

  SynthOpts synth_opts;
  auto* synth = app.add_subcommand(
      "synthesize", "flat wide beam from alternating-sign beam runs");
  synth->add_option("--n-beams", synth_opts.n_beams)->capture_default_str();
  synth->add_option("--target-beams", synth_opts.target_beams,
                    "comma-separated index runs, e.g. 1-4,12-13")
      ->capture_default_str();
  synth->add_option("--grid", synth_opts.grid)->capture_default_str();
  synth->add_flag("--even-split", synth_opts.even_split,
                  "even power split over the selected ports");
  add_config_and_out(synth, synth_opts.config, synth_opts.out);

  AoaOpts aoa_opts;
  auto* aoa = app.add_subcommand(
      "aoa", "ratio-estimator RMSE/bias over an SNR sweep");
  aoa->add_option("--n-beams", aoa_opts.n_beams)->capture_default_str();
  aoa->add_option("--beam", aoa_opts.beam, "base-2 pair anchor index")
      ->capture_default_str();
  aoa->add_option("--snr-min", aoa_opts.snr_min)->capture_default_str();
  aoa->add_option("--snr-max", aoa_opts.snr_max)->capture_default_str();
  aoa->add_option("--snr-step", aoa_opts.snr_step)->capture_default_str();
  aoa->add_option("--trials", aoa_opts.trials)->capture_default_str();
  aoa->add_option("--grid", aoa_opts.grid)->capture_default_str();
  aoa->add_option("--seed", aoa_opts.seed)->capture_default_str();
  add_config_and_out(aoa, aoa_opts.config, aoa_opts.out);

  SearchOpts search_opts;
  auto* search = app.add_subcommand(
      "search", "logarithmic multi-section angle search over random scenes");
  search->add_option("--n-beams", search_opts.n_beams)->capture_default_str();
  search->add_option("--branching", search_opts.branching)->capture_default_str();
  search->add_option("--trials", search_opts.trials)->capture_default_str();
  search->add_option("--snr-db", search_opts.snr_db, "per-measurement SNR (inf = noiseless)")
      ->capture_default_str();
  search->add_option("--grid", search_opts.grid)->capture_default_str();
  search->add_option("--seed", search_opts.seed)->capture_default_str();
  add_config_and_out(search, search_opts.config, search_opts.out);

  SquintOpts squint_opts;
  auto* squint = app.add_subcommand(
      "squint", "wideband |gain| map of a selected beam run over angle x frequency");
  squint->add_option("--n-beams", squint_opts.n_beams)->capture_default_str();
  squint->add_option("--rho", squint_opts.rho, "lowest normalized frequency")
      ->capture_default_str();
  squint->add_option("--f-points", squint_opts.f_points)->capture_default_str();
  squint->add_option("--first-beam", squint_opts.first_beam)->capture_default_str();
  squint->add_option("--last-beam", squint_opts.last_beam)->capture_default_str();
  squint->add_option("--grid", squint_opts.grid)->capture_default_str();
  add_config_and_out(squint, squint_opts.config, squint_opts.out);

  ApgOpts apg_opts;
  auto* apg = app.add_subcommand(
      "jcas-apg", "average power gain curves for both scheduling schemes");
  apg->add_option("--n-beams", apg_opts.n_beams)->capture_default_str();
  apg->add_option("--comm-beam", apg_opts.comm_beam)->capture_default_str();
  apg->add_option("--x-sensing", apg_opts.x_sensing)->capture_default_str();
  apg->add_option("--time-units", apg_opts.time_units)->capture_default_str();
  apg->add_option("--grid", apg_opts.grid)->capture_default_str();
  apg->add_option("--seed", apg_opts.seed)->capture_default_str();
  add_config_and_out(apg, apg_opts.config, apg_opts.out);

  TradeoffOpts trade_opts;
  auto* trade = app.add_subcommand(
      "jcas-tradeoff", "comm vs sensing power gain versus the sensing-beam count");
  trade->add_option("--n-beams", trade_opts.n_beams)->capture_default_str();
  trade->add_option("--comm-beam", trade_opts.comm_beam)->capture_default_str();
  trade->add_option("--time-units", trade_opts.time_units)->capture_default_str();
  trade->add_option("--x-min", trade_opts.x_min)->capture_default_str();
  trade->add_option("--x-max", trade_opts.x_max)->capture_default_str();
  trade->add_option("--probe-u", trade_opts.probe_u, "sensing probe angle (rad)")
      ->capture_default_str();
  trade->add_option("--seed", trade_opts.seed)->capture_default_str();
  add_config_and_out(trade, trade_opts.config, trade_opts.out);

  SecrecyOpts sec_opts;
  auto* sec = app.add_subcommand(
      "jcas-secrecy", "per-time-unit gain matrices (amplitude + phase companion)");
  sec->add_option("--n-beams", sec_opts.n_beams)->capture_default_str();
  sec->add_option("--comm-beam", sec_opts.comm_beam)->capture_default_str();
  sec->add_option("--x-sensing", sec_opts.x_sensing)->capture_default_str();
  sec->add_option("--time-units", sec_opts.time_units)->capture_default_str();
  sec->add_option("--grid", sec_opts.grid)->capture_default_str();
  sec->add_option("--scheme", sec_opts.scheme, "type1 or type2")->capture_default_str();
  sec->add_option("--seed", sec_opts.seed)->capture_default_str();
  add_config_and_out(sec, sec_opts.config, sec_opts.out);

  BhOpts bh_opts;
  auto* bh = app.add_subcommand(
      "bh", "beam-hopping index modulation BER sweep");
  bh->add_option("--path-beams", bh_opts.path_beams, "beams covering dominant paths")
      ->capture_default_str();
  bh->add_option("--path-gains", bh_opts.path_gains, "per-beam gain as mag@deg list")
      ->capture_default_str();
  bh->add_option("--bits", bh_opts.bits)->capture_default_str();
  bh->add_option("--snr-min", bh_opts.snr_min)->capture_default_str();
  bh->add_option("--snr-max", bh_opts.snr_max)->capture_default_str();
  bh->add_option("--snr-step", bh_opts.snr_step)->capture_default_str();
  bh->add_option("--symbols", bh_opts.symbols)->capture_default_str();
  bh->add_option("--seed", bh_opts.seed)->capture_default_str();
  add_config_and_out(bh, bh_opts.config, bh_opts.out);

  PowerOpts power_opts;
  auto* power = app.add_subcommand(
      "power", "analog beamforming power table for both architectures");
  power->add_option("--n-antennas", power_opts.n_antennas)->capture_default_str();
  power->add_option("--rf-chains", power_opts.rf_chains)->capture_default_str();
  power->add_option("--multibit-mw", power_opts.multibit_mw)->capture_default_str();
  power->add_option("--onebit-mw", power_opts.onebit_mw)->capture_default_str();
  power->add_option("--switch-mw", power_opts.switch_mw)->capture_default_str();
  add_config_and_out(power, power_opts.config, power_opts.out);

  std::vector<std::string> expanded;
  try {
    expanded = inject_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> cargs;
  cargs.push_back(argv[0]);
  for (const std::string& s : expanded) cargs.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (pattern->parsed()) return run_pattern(pattern_opts);
    if (synth->parsed()) return run_synthesize(synth_opts);
    if (aoa->parsed()) return run_aoa(aoa_opts);
    if (search->parsed()) return run_search(search_opts);
    if (squint->parsed()) return run_squint(squint_opts);
    if (apg->parsed()) return run_jcas_apg(apg_opts);
    if (trade->parsed()) return run_jcas_tradeoff(trade_opts);
    if (sec->parsed()) return run_jcas_secrecy(sec_opts);
    if (bh->parsed()) return run_bh(bh_opts);
    if (power->parsed()) return run_power(power_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
