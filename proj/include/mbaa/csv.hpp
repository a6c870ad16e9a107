// csv.hpp - Deterministic CSV emission for experiment outputs.
//
// UTF-8, comma delimited, '#'-prefixed comment lines for the resolved
// parameter set, floats at 9 significant digits via printf formatting so
// byte-identical reruns never depend on stream locale state.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mbaa {

/// Locale-independent "%.9g" rendering.
std::string format_g9(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  /// "# key = value"-style comment line.
  void comment(const std::string& line);
  /// Plain header or data row from pre-rendered cells.
  void row(const std::vector<std::string>& cells);
  /// Data row of doubles, each at 9 significant digits.
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

}  // namespace mbaa
