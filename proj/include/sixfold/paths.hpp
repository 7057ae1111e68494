#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sixfold/core.hpp"

namespace sixfold {

// A walk over current graph edges. Vertices may repeat; consecutive
// entries must be joined by a graph edge.
struct Path {
  std::vector<VertexId> v;

  std::size_t length() const { return v.empty() ? 0 : v.size() - 1; }
  bool operator==(const Path& o) const { return v == o.v; }
};

// Replacement of the two tile sides meeting at v[pos] by the complementary
// pair of sides of the same minimal tile.
struct Move {
  std::int32_t pos = 0;
  TileId tile = kNone;

  bool operator==(const Move& o) const {
    return pos == o.pos && tile == o.tile;
  }
};

inline bool is_valid_path(const Complex& c, const Path& p) {
  if (p.v.empty()) return false;
  for (VertexId v : p.v) {
    if (v < 0 || v >= static_cast<VertexId>(c.vertices.size())) return false;
  }
  for (std::size_t i = 0; i + 1 < p.v.size(); ++i) {
    if (c.leaf_between(p.v[i], p.v[i + 1]) == kNone) return false;
  }
  return true;
}

inline void require_valid_path(const Complex& c, const Path& p) {
  if (!is_valid_path(c, p)) throw std::invalid_argument("invalid path");
}

// Null form: an immediate backtrack over one edge of a minimal tile.
inline bool is_null_form(const Complex& c, const Path& p) {
  require_valid_path(c, p);
  for (std::size_t i = 1; i + 1 < p.v.size(); ++i) {
    if (p.v[i - 1] == p.v[i + 1]) return true;
  }
  return false;
}

inline bool is_null_form_unchecked(const Path& p) {
  for (std::size_t i = 1; i + 1 < p.v.size(); ++i) {
    if (p.v[i - 1] == p.v[i + 1]) return true;
  }
  return false;
}

namespace detail {

inline int corner_index(const MacroTile& t, VertexId v) {
  for (int i = 0; i < 4; ++i) {
    if (t.corners[i] == v) return i;
  }
  return -1;
}

// Moves available at one interior position of the path, sorted by tile id.
inline void moves_at(const Complex& c, const Path& p, std::size_t i,
                     std::vector<Move>& out) {
  VertexId u = p.v[i - 1], v = p.v[i], w = p.v[i + 1];
  if (u == w) return;
  EdgeId e1 = c.leaf_between(u, v);
  EdgeId e2 = c.leaf_between(v, w);
  std::vector<TileId> common;
  for (TileId t : c.edges[e1].faces) {
    const auto& fs = c.edges[e2].faces;
    if (std::find(fs.begin(), fs.end(), t) != fs.end()) common.push_back(t);
  }
  std::sort(common.begin(), common.end());
  common.erase(std::unique(common.begin(), common.end()), common.end());
  for (TileId t : common) {
    out.push_back({static_cast<std::int32_t>(i), t});
  }
}

}  // namespace detail

// Every applicable local replacement, ordered by position then tile id.
inline std::vector<Move> local_moves(const Complex& c, const Path& p) {
  require_valid_path(c, p);
  std::vector<Move> out;
  for (std::size_t i = 1; i + 1 < p.v.size(); ++i) detail::moves_at(c, p, i, out);
  return out;
}

// Applies a move, checking it is legal on this path.
inline Path apply_move(const Complex& c, const Path& p, const Move& m) {
  if (m.pos <= 0 || static_cast<std::size_t>(m.pos) + 1 >= p.v.size())
    throw std::invalid_argument("move position out of range");
  const MacroTile& t = c.tile(m.tile);
  if (t.has_children()) throw std::invalid_argument("move tile not minimal");
  VertexId u = p.v[m.pos - 1], v = p.v[m.pos], w = p.v[m.pos + 1];
  int j = detail::corner_index(t, v);
  if (j < 0) throw std::invalid_argument("move vertex not on tile");
  VertexId prev = t.corners[(j + 3) % 4];
  VertexId next = t.corners[(j + 1) % 4];
  if (!((u == prev && w == next) || (u == next && w == prev)))
    throw std::invalid_argument("move edges are not adjacent tile sides");
  Path q = p;
  q.v[m.pos] = t.corners[(j + 2) % 4];
  return q;
}

inline Path apply_moves(const Complex& c, Path p,
                        const std::vector<Move>& moves) {
  for (const auto& m : moves) p = apply_move(c, p, m);
  return p;
}

// --- line-based text format -------------------------------------------

inline std::string path_to_text(const Path& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    if (i) os << ' ';
    os << p.v[i];
  }
  return os.str();
}

inline Path path_from_text(const std::string& line) {
  Path p;
  std::istringstream is(line);
  VertexId v;
  while (is >> v) p.v.push_back(v);
  if (p.v.empty()) throw std::invalid_argument("empty path line");
  return p;
}

inline std::string moves_to_text(const std::vector<Move>& moves) {
  std::ostringstream os;
  for (const auto& m : moves) os << m.pos << ' ' << m.tile << '\n';
  return os.str();
}

inline std::vector<Move> moves_from_text(const std::string& text) {
  std::vector<Move> out;
  std::istringstream is(text);
  Move m;
  while (is >> m.pos >> m.tile) out.push_back(m);
  return out;
}

}  // namespace sixfold
