#pragma once

/// @file csv.hpp
/// @brief CSV output with round-trip-safe (17 significant digit) numbers.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "vmom/errors.hpp"

namespace vmom {

/// Format with 17 significant digits — enough to round-trip any double.
/// Negative zero is normalized so exact-zero tensor entries print as "0".
inline std::string format_full(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw config_error("cannot open output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_full(values[i]);
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace vmom
