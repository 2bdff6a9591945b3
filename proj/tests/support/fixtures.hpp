#pragma once

#include <gtest/gtest.h>

#include "hosc.hpp"

namespace fixture {

inline const hosc::OscillatorParams& unit_params() {
  static const hosc::OscillatorParams p{};
  return p;
}

/// hbar = 0.7, m = 1.9, omega = 2.3: catches places where a unit was dropped.
inline const hosc::OscillatorParams& odd_params() {
  static const hosc::OscillatorParams p = hosc::OscillatorParams::make(0.7, 1.9, 2.3);
  return p;
}

inline const hosc::EigenbasisTable& default_basis(const hosc::OscillatorParams& p = unit_params()) {
  static const hosc::EigenbasisTable unit = hosc::build_default_basis(unit_params(), hosc::default_grid(unit_params()));
  static const hosc::EigenbasisTable odd = hosc::build_default_basis(odd_params(), hosc::default_grid(odd_params()));
  return p == unit_params() ? unit : odd;
}

}  // namespace fixture

#define EXPECT_HOSC_ERROR(stmt, expected)                                               \
  do {                                                                                 \
    try {                                                                              \
      stmt;                                                                            \
      ADD_FAILURE() << "expected " << hosc::to_string(expected) << ", nothing thrown"; \
    } catch (const hosc::Error& e) {                                                   \
      EXPECT_EQ(e.code(), expected) << e.what();                                       \
    }                                                                                  \
  } while (0)
