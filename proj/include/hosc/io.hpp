#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"
#include "hosc/moments.hpp"
#include "hosc/transform.hpp"

namespace hosc::io {

using nlohmann::json;

/// %.17g, so every double round-trips. Non-finite values are written as null.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& out, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        out << json(it.key()).dump() << ':';
        write_json(out, it.value());
      }
      out << '}';
      break;
    }
    case json::value_t::array: {
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ',';
        write_json(out, j[i]);
      }
      out << ']';
      break;
    }
    case json::value_t::number_float:
      out << format_number(j.get<double>());
      break;
    default:
      out << j.dump();
  }
}

inline json complex_array(std::span<const Complex> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(json::array({v.real(), v.imag()}));
  return arr;
}

inline std::vector<Complex> read_complex_array(const json& arr) {
  if (!arr.is_array()) fail(ErrorCode::parse_error, "expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      fail(ErrorCode::parse_error, "expected [re, im]");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Compact JSON with full-precision numbers.
inline std::string dump(const json& j) {
  std::ostringstream out;
  detail::write_json(out, j);
  return out.str();
}

inline json params_to_json(const OscillatorParams& p) {
  return {{"hbar", p.hbar()}, {"mass", p.mass()}, {"omega", p.omega()}};
}

inline OscillatorParams params_from_json(const json& j) {
  return OscillatorParams::make(detail::field<double>(j, "hbar"), detail::field<double>(j, "mass"),
                                detail::field<double>(j, "omega"));
}

inline json wave_to_json(const SampledWave& f) {
  const Grid& g = f.grid();
  return {{"params", params_to_json(f.params())},
          {"grid", {{"x_min", g.x_min()}, {"x_max", g.x_max()}, {"n_points", g.size()}}},
          {"values", detail::complex_array(f.values())}};
}

inline SampledWave wave_from_json(const json& j) {
  const OscillatorParams params = params_from_json(detail::field<json>(j, "params"));
  const json g = detail::field<json>(j, "grid");
  const Grid grid = Grid::make(detail::field<double>(g, "x_min"), detail::field<double>(g, "x_max"),
                               detail::field<std::size_t>(g, "n_points"));
  std::vector<Complex> values = detail::read_complex_array(detail::field<json>(j, "values"));
  if (values.size() != grid.size()) fail(ErrorCode::parse_error, "value count does not match n_points");
  return SampledWave(params, grid, std::move(values));
}

inline json coeffs_to_json(const SpectralCoeffs& c) {
  return {{"params", params_to_json(c.params)},
          {"n_max", c.n_max()},
          {"c", detail::complex_array(c.c)},
          {"residual", c.residual}};
}

inline SpectralCoeffs coeffs_from_json(const json& j) {
  SpectralCoeffs c{params_from_json(detail::field<json>(j, "params")),
                   detail::read_complex_array(detail::field<json>(j, "c"))};
  if (c.n_max() != detail::field<int>(j, "n_max")) fail(ErrorCode::parse_error, "n_max does not match c");
  c.residual = detail::field<double>(j, "residual");
  return c;
}

inline json constants_to_json(const MomentConstants& c) {
  return {{"eps", c.eps}, {"amp", c.amp}, {"K", c.K}, {"t0", c.t0}};
}

inline MomentConstants constants_from_json(const json& j) {
  return {detail::field<double>(j, "eps"), detail::field<double>(j, "amp"), detail::field<double>(j, "K"),
          detail::field<double>(j, "t0")};
}

/// b2 is null when the state had no covariance (infinite b^2).
inline json stable_to_json(const StableForm& sf) {
  return {{"s", sf.s},
          {"b2", sf.b2 ? json(*sf.b2) : json(nullptr)},
          {"constants", constants_to_json(sf.constants)},
          {"wave", wave_to_json(sf.wave)}};
}

inline StableForm stable_from_json(const json& j) {
  const json b2 = detail::field<json>(j, "b2");
  std::optional<double> b2_value;
  if (!b2.is_null()) b2_value = detail::field<double>(j, "b2");
  return {wave_from_json(detail::field<json>(j, "wave")), detail::field<double>(j, "s"), b2_value,
          constants_from_json(detail::field<json>(j, "constants"))};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, "'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io_error, "write to '" + path + "' failed");
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, dump(j) + "\n"); }

/// One row of the moment time series.
struct MomentRow {
  double t = 0.0;
  FirstMoments first;
  SecondMoments second;
  MomentConstants constants;
  EnergySplit energy;
};

inline MomentRow make_moment_row(double t, const FirstMoments& f1, const SecondMoments& m2,
                                 const OscillatorParams& params) {
  return {t, f1, m2, moment_constants(m2, params), energy_split(f1, m2, params)};
}

inline std::string moments_csv(const std::vector<MomentRow>& rows) {
  std::string out = "t,x_mean,p_mean,dx2,dp2,dxp,K,eps,E_c,E_q\n";
  for (const auto& r : rows) {
    const double values[] = {r.t,         r.first.x_mean, r.first.p_mean, r.second.dx2,     r.second.dp2,
                             r.second.dxp, r.constants.K, r.constants.eps, r.energy.classical, r.energy.quantal};
    for (std::size_t i = 0; i < std::size(values); ++i) {
      if (i) out += ',';
      out += format_number(values[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hosc::io
