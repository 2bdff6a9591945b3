#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "hosc/error.hpp"

namespace hosc {

namespace detail {

/// Recursive-descent evaluator for time expressions such as `3T/16`,
/// `T/2 + 0.1` or `2*T`. `T` is the oscillator period.
class TimeParser {
 public:
  TimeParser(std::string_view text, double period) : text_(text), period_(period) {}

  double parse() {
    const double value = expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  double expr() {
    double value = term();
    for (;;) {
      skip_space();
      if (accept('+')) value += term();
      else if (accept('-')) value -= term();
      else return value;
    }
  }

  double term() {
    double value = unary();
    for (;;) {
      skip_space();
      if (accept('*')) value *= unary();
      else if (accept('/')) {
        const double d = unary();
        if (d == 0.0) error("division by zero");
        value /= d;
      } else if (peek() == 'T' || peek() == '(') {
        value *= unary();  // implicit product: 3T, 2(T/4)
      } else {
        return value;
      }
    }
  }

  double unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  double primary() {
    skip_space();
    if (accept('T')) return period_;
    if (accept('(')) {
      const double value = expr();
      skip_space();
      if (!accept(')')) error("missing ')'");
      return value;
    }
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double value = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) error("expected a number or T");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return value;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::parse_error, "time expression '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  double period_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline double parse_time(std::string_view text, double period) { return detail::TimeParser(text, period).parse(); }

/// Either `start:end:count` (count evenly spaced times, both ends included) or
/// a comma-separated list of expressions.
inline std::vector<double> parse_times(std::string_view text, double period) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  std::vector<double> times;
  if (sep == ':') {
    if (parts.size() != 3) fail(ErrorCode::parse_error, "range must be start:end:count");
    const double t0 = parse_time(parts[0], period);
    const double t1 = parse_time(parts[1], period);
    const double count = parse_time(parts[2], period);
    if (count < 1.0 || count != std::floor(count)) fail(ErrorCode::parse_error, "range count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t k = 0; k < n; ++k) {
      times.push_back(n == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    return times;
  }
  for (auto p : parts) times.push_back(parse_time(p, period));
  return times;
}

}  // namespace hosc
