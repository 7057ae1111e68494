#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sixfold {

// Local symbols of a subdivided tile: four corners, four side midpoints,
// three interior nodes.
enum class Sym : std::uint8_t { UL, UR, LR, LL, U, R, D, L, A, B, C };

inline const char* sym_name(Sym s) {
  switch (s) {
    case Sym::UL: return "UL";
    case Sym::UR: return "UR";
    case Sym::LR: return "LR";
    case Sym::LL: return "LL";
    case Sym::U: return "U";
    case Sym::R: return "R";
    case Sym::D: return "D";
    case Sym::L: return "L";
    case Sym::A: return "A";
    case Sym::B: return "B";
    case Sym::C: return "C";
  }
  return "?";
}

inline std::optional<Sym> sym_from(const std::string& s) {
  static const std::array<Sym, 11> all = {Sym::UL, Sym::UR, Sym::LR, Sym::LL,
                                          Sym::U,  Sym::R,  Sym::D,  Sym::L,
                                          Sym::A,  Sym::B,  Sym::C};
  for (Sym v : all) {
    if (s == sym_name(v)) return v;
  }
  return std::nullopt;
}

enum class ChildPos : std::uint8_t {
  LeftUpper = 0,
  Middle = 1,
  RightUpper = 2,
  RightLower = 3,
  Lower = 4,
  LeftLower = 5,
};

inline constexpr int kChildCount = 6;

inline const char* child_pos_name(ChildPos p) {
  switch (p) {
    case ChildPos::LeftUpper: return "LeftUpper";
    case ChildPos::Middle: return "Middle";
    case ChildPos::RightUpper: return "RightUpper";
    case ChildPos::RightLower: return "RightLower";
    case ChildPos::Lower: return "Lower";
    case ChildPos::LeftLower: return "LeftLower";
  }
  return "?";
}

inline std::optional<ChildPos> child_pos_from(const std::string& s) {
  for (int i = 0; i < kChildCount; ++i) {
    auto p = static_cast<ChildPos>(i);
    if (s == child_pos_name(p)) return p;
  }
  return std::nullopt;
}

// Clockwise corner cycles of the six child quads, in tile-local symbols.
// The quads themselves are fixed; a rule table only chooses which cycle
// entry plays the logical upper-left corner of each child.
inline const std::array<std::array<Sym, 4>, 6>& child_quads() {
  static const std::array<std::array<Sym, 4>, 6> quads = {{
      {Sym::UL, Sym::U, Sym::A, Sym::L},   // LeftUpper
      {Sym::U, Sym::B, Sym::C, Sym::A},    // Middle
      {Sym::U, Sym::UR, Sym::R, Sym::B},   // RightUpper
      {Sym::B, Sym::R, Sym::LR, Sym::C},   // RightLower
      {Sym::LR, Sym::D, Sym::LL, Sym::C},  // Lower
      {Sym::L, Sym::A, Sym::C, Sym::LL},   // LeftLower
  }};
  return quads;
}

// Orientation table: for every child position, the logical corner
// quadruple (UL, UR, LR, LL) as tile-local symbols.
struct RuleTable {
  std::array<std::array<Sym, 4>, 6> corners;

  const std::array<Sym, 4>& logical(ChildPos p) const {
    return corners[static_cast<int>(p)];
  }
};

inline RuleTable default_rule_table() {
  RuleTable t;
  t.corners = {{
      {Sym::UL, Sym::U, Sym::A, Sym::L},   // LeftUpper: UL stays at parent UL
      {Sym::U, Sym::B, Sym::C, Sym::A},    // Middle
      {Sym::UR, Sym::R, Sym::B, Sym::U},   // RightUpper: UL at parent UR
      {Sym::LR, Sym::C, Sym::B, Sym::R},   // RightLower: UL at parent LR
      {Sym::LR, Sym::D, Sym::LL, Sym::C},  // Lower: UL at parent LR
      {Sym::C, Sym::LL, Sym::L, Sym::A},   // LeftLower: UR at parent LL
  }};
  return t;
}

namespace detail {

inline int index_of(const std::array<Sym, 4>& quad, Sym s) {
  for (int i = 0; i < 4; ++i) {
    if (quad[i] == s) return i;
  }
  return -1;
}

// 0..3 = rotation offset, -1 = not a rotation of the canonical cycle.
inline int rotation_offset(const std::array<Sym, 4>& canon,
                           const std::array<Sym, 4>& logical) {
  for (int k = 0; k < 4; ++k) {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) ok = logical[i] == canon[(k + i) % 4];
    if (ok) return k;
  }
  return -1;
}

inline bool is_reflection(const std::array<Sym, 4>& canon,
                          const std::array<Sym, 4>& logical) {
  std::array<Sym, 4> rev = {canon[0], canon[3], canon[2], canon[1]};
  return rotation_offset(rev, logical) >= 0;
}

}  // namespace detail

inline std::vector<std::string> validate_rule_table(const RuleTable& t) {
  std::vector<std::string> out;
  for (int i = 0; i < kChildCount; ++i) {
    auto pos = static_cast<ChildPos>(i);
    const auto& canon = child_quads()[i];
    const auto& logical = t.corners[i];
    if (detail::rotation_offset(canon, logical) < 0) {
      if (detail::is_reflection(canon, logical)) {
        out.push_back(std::string("reflection at ") + child_pos_name(pos));
      } else {
        out.push_back(std::string("corner set mismatch at ") +
                      child_pos_name(pos));
      }
      continue;
    }
    switch (pos) {
      case ChildPos::LeftUpper:
        if (logical[0] != Sym::UL)
          out.push_back("LeftUpper child must keep logical UL at parent UL");
        break;
      case ChildPos::RightUpper:
        if (logical[0] != Sym::UR)
          out.push_back("RightUpper child must have logical UL at parent UR");
        break;
      case ChildPos::RightLower:
        if (logical[0] != Sym::LR)
          out.push_back("RightLower child must have logical UL at parent LR");
        break;
      case ChildPos::Lower:
        if (logical[0] != Sym::LR)
          out.push_back("Lower child must have logical UL at parent LR");
        break;
      default:
        break;
    }
  }
  // The two children meeting the parent LL corner attach by logical UR and
  // logical LR, one each.
  {
    int lo = detail::index_of(t.logical(ChildPos::Lower), Sym::LL);
    int ll = detail::index_of(t.logical(ChildPos::LeftLower), Sym::LL);
    if (lo >= 0 && ll >= 0) {
      bool ok = (lo == 1 && ll == 2) || (lo == 2 && ll == 1);
      if (!ok)
        out.push_back(
            "children at parent LL must attach by logical UR and logical LR");
    }
  }
  return out;
}

}  // namespace sixfold
