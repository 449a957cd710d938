#ifndef CHAOSKIT_CSV_HPP
#define CHAOSKIT_CSV_HPP

#include <charconv>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>

// Locale-free CSV emission: '.' decimal point, comma separator, LF line
// endings, floats printed to a fixed number of significant digits via
// std::to_chars so identical inputs always produce identical bytes.

namespace chaoskit {

constexpr int kMinPrecision = 6;
constexpr int kMaxPrecision = 17;  // round-trips every double exactly

/// Shortest-general rendering of v at the given significant-digit count.
inline std::string format_double(double v, int precision = kMaxPrecision) {
  if (precision < kMinPrecision || precision > kMaxPrecision) {
    throw std::domain_error("format_double: precision must be in [6, 17]");
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, precision);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

/// Row-oriented CSV writer over any ostream; callers fix the column count
/// by always calling field() the same number of times per row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision = kMaxPrecision)
      : out_(out), precision_(precision) {
    if (precision < kMinPrecision || precision > kMaxPrecision) {
      throw std::domain_error("CsvWriter: precision must be in [6, 17]");
    }
  }

  CsvWriter& field(const std::string& text) {
    separate();
    out_ << text;
    return *this;
  }

  CsvWriter& field(const char* text) { return field(std::string(text)); }

  CsvWriter& field(double v) { return field(format_double(v, precision_)); }

  CsvWriter& field(int v) { return field(std::to_string(v)); }

  CsvWriter& field(std::size_t v) { return field(std::to_string(v)); }

  CsvWriter& field(bool v) { return field(v ? "true" : "false"); }

  void end_row() {
    out_ << '\n';
    started_ = false;
  }

 private:
  void separate() {
    if (started_) out_ << ',';
    started_ = true;
  }

  std::ostream& out_;
  int precision_;
  bool started_ = false;
};

}  // namespace chaoskit

#endif  // CHAOSKIT_CSV_HPP
