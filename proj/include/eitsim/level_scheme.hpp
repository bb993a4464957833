#pragma once

#include <array>
#include <string>
#include <string_view>

#include "eitsim/constants.hpp"

namespace eitsim {

enum class SchemeId { A, B };

struct LevelQuantumNumbers {
  double g_f = 0.0;
  int m_f = 0;
  double gm() const { return g_f * m_f; }
};

// Levels are indexed 1..4 as in the usual Lambda labelling: 1 and 2 are the
// ground states, 3 the excited state, 4 the extra excited hyperfine level.
struct LevelScheme {
  SchemeId id = SchemeId::A;
  std::array<LevelQuantumNumbers, 4> levels{};
  double f13 = 0.0, f23 = 0.0, f14 = 0.0, f24 = 0.0;
  double beta14 = 0.0, beta24 = 0.0;
  bool has_level4 = false;

  // Linear Zeeman shift of level (1..4) in rad/s at field bz (gauss).
  double zeeman_shift(int level, double bz, const PhysicalConstants& c = kRb87) const;
  // Two-photon resonance shift per gauss, rad/s/G.
  double resonance_slope(const PhysicalConstants& c = kRb87) const;
};

LevelScheme make_scheme(SchemeId id);
SchemeId parse_scheme_id(std::string_view text);
std::string to_string(SchemeId id);

}  // namespace eitsim
