#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "sixfold/core.hpp"
#include "sixfold/paths.hpp"

namespace sixfold {

namespace detail {

struct ScriptStep {
  ChildPos child;
  int lo_q, hi_q;  // sub-span in quarter units of the current span
};

using Script = std::array<ScriptStep, 6>;

// Corner scripts, one per logical position of the middle corner, for the
// clockwise traversal prev -> corner -> next. Derived by tracing the
// subdivision layout; each step flips a corner path of one child.
inline const std::array<Script, 4>& corner_scripts() {
  using P = ChildPos;
  static const std::array<Script, 4> s = {{
      // through UL (cw: LL -> UL -> UR)
      {{{P::LeftUpper, 1, 3},
        {P::LeftLower, 0, 2},
        {P::Middle, 1, 3},
        {P::RightUpper, 2, 4},
        {P::RightLower, 1, 3},
        {P::Lower, 0, 2}}},
      // through UR (cw: UL -> UR -> LR)
      {{{P::RightUpper, 1, 3},
        {P::RightLower, 2, 4},
        {P::Middle, 1, 3},
        {P::LeftUpper, 0, 2},
        {P::LeftLower, 1, 3},
        {P::Lower, 2, 4}}},
      // through LR (cw: UR -> LR -> LL)
      {{{P::Lower, 2, 4},
        {P::RightLower, 1, 3},
        {P::RightUpper, 0, 2},
        {P::Middle, 1, 3},
        {P::LeftLower, 2, 4},
        {P::LeftUpper, 1, 3}}},
      // through LL (cw: LR -> LL -> UL)
      {{{P::Lower, 0, 2},
        {P::LeftLower, 1, 3},
        {P::LeftUpper, 2, 4},
        {P::Middle, 1, 3},
        {P::RightLower, 0, 2},
        {P::RightUpper, 1, 3}}},
  }};
  return s;
}

// Mid-side scripts: path from a side midpoint to the opposite one.
// Indexed by (start side, route): 0 = top start via right / via left,
// 1 = left start via top / via bottom.
inline const std::array<std::array<Script, 2>, 2>& mid_scripts() {
  using P = ChildPos;
  static const std::array<std::array<Script, 2>, 2> s = {{
      {{// top -> bottom via right
        {{{P::RightUpper, 0, 2},
          {P::RightLower, 1, 3},
          {P::Middle, 0, 2},
          {P::Lower, 2, 4},
          {P::LeftLower, 1, 3},
          {P::LeftUpper, 0, 2}}},
        // top -> bottom via left
        {{{P::LeftUpper, 0, 2},
          {P::LeftLower, 1, 3},
          {P::Middle, 0, 2},
          {P::Lower, 2, 4},
          {P::RightLower, 1, 3},
          {P::RightUpper, 0, 2}}}}},
      {{// left -> right via top
        {{{P::LeftUpper, 0, 2},
          {P::RightUpper, 2, 4},
          {P::Middle, 1, 3},
          {P::LeftLower, 0, 2},
          {P::RightLower, 2, 4},
          {P::Lower, 1, 3}}},
        // left -> right via bottom
        {{{P::Lower, 1, 3},
          {P::LeftLower, 0, 2},
          {P::RightLower, 2, 4},
          {P::Middle, 1, 3},
          {P::LeftUpper, 0, 2},
          {P::RightUpper, 2, 4}}}}},
  }};
  return s;
}

class FlipEngine {
 public:
  FlipEngine(const Complex& c, Path& work, std::vector<Move>& out)
      : c_(c), work_(work), out_(out) {}

  // Flips the corner path on [lo, hi] across tile t.
  void flip_corner_span(TileId t, int lo, int hi) {
    const MacroTile& tile = c_.tile(t);
    if (hi - lo == 2) {
      emit(t, lo + 1);
      return;
    }
    int mid = (lo + hi) / 2;
    int j = corner_index(tile, work_.v[static_cast<std::size_t>(mid)]);
    if (j < 0) throw std::invalid_argument("path is not of the required shape");
    VertexId prev = tile.corners[(j + 3) % 4];
    VertexId next = tile.corners[(j + 1) % 4];
    bool cw;
    if (work_.v[static_cast<std::size_t>(lo)] == prev &&
        work_.v[static_cast<std::size_t>(hi)] == next) {
      cw = true;
    } else if (work_.v[static_cast<std::size_t>(lo)] == next &&
               work_.v[static_cast<std::size_t>(hi)] == prev) {
      cw = false;
    } else {
      throw std::invalid_argument("path is not of the required shape");
    }
    apply_script(tile, corner_scripts()[static_cast<std::size_t>(j)], lo, hi,
                 !cw);
  }

  void apply_script(const MacroTile& tile, const Script& script, int lo,
                    int hi, bool mirrored) {
    int q = (hi - lo) / 4;
    for (const auto& step : script) {
      int a = mirrored ? 4 - step.hi_q : step.lo_q;
      int b = mirrored ? 4 - step.lo_q : step.hi_q;
      TileId child = tile.children[static_cast<int>(step.child)];
      if (child == kNone)
        throw std::invalid_argument("tile has no subdivision children");
      flip_corner_span(child, lo + a * q, lo + b * q);
    }
  }

 private:
  void emit(TileId t, int pos) {
    Move m{pos, t};
    work_ = apply_move(c_, work_, m);
    out_.push_back(m);
  }

  static int corner_index(const MacroTile& t, VertexId v) {
    for (int i = 0; i < 4; ++i) {
      if (t.corners[i] == v) return i;
    }
    return -1;
  }

  const Complex& c_;
  Path& work_;
  std::vector<Move>& out_;
};

inline std::vector<VertexId> corner_route(const Complex& c, TileId t,
                                          VertexId from, VertexId via,
                                          VertexId to) {
  const MacroTile& tile = c.tile(t);
  int j = -1;
  for (int i = 0; i < 4; ++i) {
    if (tile.corners[i] == via) j = i;
  }
  if (j < 0) throw std::invalid_argument("path is not of the required shape");
  int side_in, side_out;
  bool fwd = tile.corners[(j + 3) % 4] == from;
  if (fwd) {
    side_in = (j + 3) % 4;
    side_out = j;
  } else {
    side_in = j;
    side_out = (j + 3) % 4;
  }
  (void)to;
  std::vector<VertexId> route;
  auto first = walk_side(c, t, side_in);
  auto second = walk_side(c, t, side_out);
  if (!fwd) {
    std::reverse(first.begin(), first.end());
    std::reverse(second.begin(), second.end());
  }
  route = first;
  route.insert(route.end(), second.begin() + 1, second.end());
  return route;
}

}  // namespace detail

// Transforms a path along two adjacent sides of the tile (corner to corner
// through the shared corner), or from a side midpoint to the opposite side
// midpoint, into the complementary route. Returns the concrete move
// sequence; every intermediate path is validated by apply_move.
inline std::vector<Move> macro_flip(const Complex& c, const Path& p,
                                    TileId t) {
  require_valid_path(c, p);
  const MacroTile& tile = c.tile(t);
  std::size_t len = p.length();
  if (len < 2 || len % 4 != 0) {
    if (len != 2) throw std::invalid_argument("path is not of the required shape");
  }

  auto is_corner = [&](VertexId v) {
    for (VertexId cv : tile.corners) {
      if (cv == v) return true;
    }
    return false;
  };

  Path work = p;
  std::vector<Move> out;
  detail::FlipEngine engine(c, work, out);

  if (is_corner(p.v.front()) && is_corner(p.v.back())) {
    // Corner variant: endpoints are opposite corners, the path runs along
    // the two sides meeting at the middle corner.
    VertexId via = p.v[p.v.size() / 2];
    auto route =
        detail::corner_route(c, t, p.v.front(), via, p.v.back());
    if (route != p.v)
      throw std::invalid_argument("path is not of the required shape");
    engine.flip_corner_span(t, 0, static_cast<int>(len));
    return out;
  }

  // Mid-side variant.
  if (!tile.has_children())
    throw std::invalid_argument("path is not of the required shape");
  std::array<VertexId, 4> mids{};
  for (int s = 0; s < 4; ++s) mids[s] = side_mid(c, t, s);
  int start_side = -1;
  for (int s = 0; s < 4; ++s) {
    if (p.v.front() == mids[s]) start_side = s;
  }
  if (start_side < 0 || p.v.back() != mids[(start_side + 2) % 4])
    throw std::invalid_argument("path is not of the required shape");

  // Normalize to a top or left start; bottom and right starts are the
  // reversed traversals of the same routes.
  bool reversed = start_side == 1 || start_side == 2;
  Path norm = p;
  if (reversed) std::reverse(norm.v.begin(), norm.v.end());
  int ns = reversed ? (start_side + 2) % 4 : start_side;  // 0 = top, 3 = left

  int q = static_cast<int>(len) / 4;
  // Identify the route by the corner passed after the first quarter.
  VertexId c_first = norm.v[static_cast<std::size_t>(q)];
  int route;
  std::array<VertexId, 2> expect_corners{};
  if (ns == 0) {
    // top start: via right passes UR then LR, via left passes UL then LL.
    if (c_first == tile.corners[1]) {
      route = 0;
      expect_corners = {tile.corners[1], tile.corners[2]};
    } else if (c_first == tile.corners[0]) {
      route = 1;
      expect_corners = {tile.corners[0], tile.corners[3]};
    } else {
      throw std::invalid_argument("path is not of the required shape");
    }
  } else if (ns == 3) {
    // left start: via top passes UL then UR, via bottom passes LL then LR.
    if (c_first == tile.corners[0]) {
      route = 0;
      expect_corners = {tile.corners[0], tile.corners[1]};
    } else if (c_first == tile.corners[3]) {
      route = 1;
      expect_corners = {tile.corners[3], tile.corners[2]};
    } else {
      throw std::invalid_argument("path is not of the required shape");
    }
  } else {
    throw std::invalid_argument("path is not of the required shape");
  }
  if (norm.v[static_cast<std::size_t>(3 * q)] != expect_corners[1])
    throw std::invalid_argument("path is not of the required shape");

  // The route must be one of the two boundary arcs between the opposite
  // midpoints; pick the arc by its first passed corner and compare exactly.
  {
    std::vector<VertexId> cyc = tile_boundary_cycle(c, t);
    std::size_t n = cyc.size();
    std::size_t i0 = static_cast<std::size_t>(
        std::find(cyc.begin(), cyc.end(), norm.v.front()) - cyc.begin());
    auto arc = [&](bool forward) {
      std::vector<VertexId> out;
      for (std::size_t kk = 0;; ++kk) {
        std::size_t idx = forward ? (i0 + kk) % n : (i0 + n - (kk % n)) % n;
        out.push_back(cyc[idx]);
        if (kk > 0 && cyc[idx] == norm.v.back()) break;
        if (kk > n) throw std::logic_error("boundary arc failed to close");
      }
      return out;
    };
    std::vector<VertexId> expected = arc(true);
    if (expected.size() != len + 1 ||
        expected[static_cast<std::size_t>(q)] != c_first)
      expected = arc(false);
    if (expected != norm.v)
      throw std::invalid_argument("path is not of the required shape");
  }

  const detail::Script& script =
      detail::mid_scripts()[ns == 0 ? 0 : 1][static_cast<std::size_t>(route)];
  if (!reversed) {
    work = norm;
    detail::FlipEngine eng(c, work, out);
    eng.apply_script(tile, script, 0, static_cast<int>(len), false);
    return out;
  }
  // Reversed traversal: run the script mirrored on the original path.
  detail::FlipEngine eng(c, work, out);
  eng.apply_script(tile, script, 0, static_cast<int>(len), true);
  return out;
}

// Result of wiggling a full macrotile side into the pasted tile glued over
// its midpoint.
struct WiggleResult {
  std::vector<Move> moves;
  PastingId pasting = kNone;
  Path result;
};

// The path must run along a full side of a macrotile of level >= 4 whose
// mid-side pasting exists; the middle half is flipped across the pasted
// tile, leaving the carrying plane between the two quarter points.
inline WiggleResult wiggle_into_pasting(const Complex& c, const Path& p) {
  require_valid_path(c, p);
  std::size_t len = p.length();
  if (len < 8 || len % 4 != 0)
    throw std::invalid_argument("no pasting over the side midpoint");
  VertexId h = p.v[len / 2];
  const Vertex& hv = c.vertex(h);
  if (hv.carrier == kNone)
    throw std::invalid_argument("path middle is not a side midpoint");
  auto full = walk_edge(c, hv.carrier);
  if (full != p.v) {
    std::reverse(full.begin(), full.end());
    if (full != p.v)
      throw std::invalid_argument("path does not follow one macro-edge side");
  }
  VertexId g1 = p.v[len / 4];
  VertexId g2 = p.v[3 * len / 4];
  PastingId found = kNone;
  for (std::size_t i = 0; i < c.pastings.size(); ++i) {
    const auto& rec = c.pastings[i];
    if (rec.site.y != h) continue;
    if ((rec.site.x1 == g1 && rec.site.z1 == g2) ||
        (rec.site.x1 == g2 && rec.site.z1 == g1)) {
      found = static_cast<PastingId>(i);
      break;
    }
  }
  if (found == kNone) throw std::invalid_argument("no pasting");
  const auto& rec = c.pastings[found];

  WiggleResult res;
  Path work = p;
  std::vector<Move> moves;
  detail::FlipEngine eng(c, work, moves);
  eng.flip_corner_span(rec.tile, static_cast<int>(len) / 4,
                       3 * static_cast<int>(len) / 4);
  res.moves = std::move(moves);
  res.pasting = found;
  res.result = work;
  return res;
}

}  // namespace sixfold
