#include "eitsim/level_scheme.hpp"

#include <cmath>

#include "eitsim/errors.hpp"

namespace eitsim {

namespace {
constexpr double kGround1 = -0.5;  // F=1
constexpr double kGround2 = 0.5;   // F=2
constexpr double kExcited1 = -1.0 / 6.0;  // F'=1
constexpr double kExcited2 = 1.0 / 6.0;   // F'=2
}  // namespace

double LevelScheme::zeeman_shift(int level, double bz, const PhysicalConstants& c) const {
  if (level < 1 || level > 4) throw DomainError("level", "must be 1..4");
  if (level == 4 && !has_level4) return 0.0;
  return c.zeeman_slope * levels[level - 1].gm() * bz;
}

double LevelScheme::resonance_slope(const PhysicalConstants& c) const {
  return c.zeeman_slope * (levels[1].gm() - levels[0].gm());
}

LevelScheme make_scheme(SchemeId id) {
  LevelScheme s;
  s.id = id;
  if (id == SchemeId::A) {
    s.levels = {LevelQuantumNumbers{kGround2, -2}, LevelQuantumNumbers{kGround1, 0},
                LevelQuantumNumbers{kExcited1, -1}, LevelQuantumNumbers{kExcited2, -1}};
    s.f13 = 0.5;
    s.f23 = 1.0 / 12.0;
    s.beta14 = 1.0 / std::sqrt(3.0);
    s.beta24 = -std::sqrt(3.0);
    s.f14 = s.beta14 * s.beta14 * s.f13;
    s.f24 = s.beta24 * s.beta24 * s.f23;
    s.has_level4 = true;
  } else {
    s.levels = {LevelQuantumNumbers{kGround1, 1}, LevelQuantumNumbers{kGround2, 1},
                LevelQuantumNumbers{kExcited2, 2}, LevelQuantumNumbers{}};
    s.f13 = 0.5;
    s.f23 = 1.0 / 6.0;
    s.has_level4 = false;
  }
  return s;
}

SchemeId parse_scheme_id(std::string_view text) {
  if (text == "A" || text == "a") return SchemeId::A;
  if (text == "B" || text == "b") return SchemeId::B;
  throw DomainError("scheme", "unknown scheme '" + std::string(text) + "' (expected A or B)");
}

std::string to_string(SchemeId id) { return id == SchemeId::A ? "A" : "B"; }

}  // namespace eitsim
