#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "sixfold/core.hpp"
#include "sixfold/paths.hpp"

namespace sixfold {

// True when the outgoing edge continues along the vertex's own macro-edge
// (side vertices) or along an interior macro-edge of the owning tile
// (interior vertices). Undefined for corner and edge-mid vertices.
inline bool is_main_edge(const Complex& c, VertexId v, EdgeId e) {
  const Vertex& vx = c.vertex(v);
  const MacroEdge& me = c.edge(e);
  if (me.ends[0] != v && me.ends[1] != v)
    throw std::invalid_argument("edge is not incident to vertex");
  switch (vx.kind.cls) {
    case VertexClass::Side:
      return c.edges[e].root == c.edges[vx.carrier].root;
    case VertexClass::Interior: {
      const MacroEdge& root = c.root_edge(e);
      return root.owner == vx.owner && !root.boundary_type();
    }
    default:
      throw std::domain_error(
          "main edge undefined for corner/edge-mid vertices");
  }
}

struct Pattern {
  struct Entry {
    VertexId v;
    VertexKind kind;
    std::int32_t path_index;
  };
  std::vector<Entry> seq;
};

// Deletes side vertices whose entry and exit both run along main edges;
// everything else, interior vertices in particular, stays.
inline Pattern pattern_of(const Complex& c, const Path& p) {
  require_valid_path(c, p);
  // The pattern is defined for plane paths only.
  if (p.v.size() >= 2) {
    std::vector<PlaneId> common = c.edge(c.leaf_between(p.v[0], p.v[1])).planes;
    for (std::size_t i = 1; i + 1 < p.v.size(); ++i) {
      const auto& pl = c.edge(c.leaf_between(p.v[i], p.v[i + 1])).planes;
      std::vector<PlaneId> next;
      std::set_intersection(common.begin(), common.end(), pl.begin(), pl.end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    if (common.empty())
      throw std::invalid_argument("pattern requires a plane path");
  }
  Pattern out;
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    const Vertex& vx = c.vertex(p.v[i]);
    if (vx.kind.cls == VertexClass::Side && i > 0 && i + 1 < p.v.size()) {
      EdgeId e1 = c.leaf_between(p.v[i - 1], p.v[i]);
      EdgeId e2 = c.leaf_between(p.v[i], p.v[i + 1]);
      if (is_main_edge(c, p.v[i], e1) && is_main_edge(c, p.v[i], e2)) continue;
    }
    out.seq.push_back({p.v[i], vx.kind, static_cast<std::int32_t>(i)});
  }
  return out;
}

struct DeadMatch {
  std::int32_t pattern_index;  // position of the first of the three entries
  TileId tile;
  std::string name;  // AUB, ACB, CXD, BUA, BCA, DXC
};

// Occurrences of the dead patterns AUB, ACB, CXD and their mirrors, with
// all three vertices in the named roles of one macrotile.
inline std::vector<DeadMatch> find_dead_patterns(const Complex& c,
                                                 const Pattern& pat) {
  std::vector<DeadMatch> out;
  auto interior_role = [&](VertexId v, Sym label) -> TileId {
    const Vertex& vx = c.vertex(v);
    if (vx.kind.cls != VertexClass::Interior || vx.kind.a != label)
      return kNone;
    return vx.owner;
  };
  for (std::size_t i = 0; i + 2 < pat.seq.size(); ++i) {
    VertexId p = pat.seq[i].v;
    VertexId q = pat.seq[i + 1].v;
    VertexId r = pat.seq[i + 2].v;
    auto idx = static_cast<std::int32_t>(i);
    // A ? B with ? = top midpoint or C of the same tile.
    if (TileId t = interior_role(p, Sym::A); t != kNone) {
      const auto& tl = c.tiles[t];
      if (r == tl.interior[1]) {
        if (q == side_mid(c, t, 0)) out.push_back({idx, t, "AUB"});
        if (q == tl.interior[2]) out.push_back({idx, t, "ACB"});
      }
    }
    if (TileId t = interior_role(p, Sym::B); t != kNone) {
      const auto& tl = c.tiles[t];
      if (r == tl.interior[0]) {
        if (q == side_mid(c, t, 0)) out.push_back({idx, t, "BUA"});
        if (q == tl.interior[2]) out.push_back({idx, t, "BCA"});
      }
    }
    // C X D with X a lower corner of the same tile.
    if (TileId t = interior_role(p, Sym::C); t != kNone) {
      const auto& tl = c.tiles[t];
      if ((q == tl.corners[2] || q == tl.corners[3]) &&
          r == side_mid(c, t, 2))
        out.push_back({idx, t, "CXD"});
    }
    if (TileId t = interior_role(r, Sym::C); t != kNone) {
      const auto& tl = c.tiles[t];
      if ((q == tl.corners[2] || q == tl.corners[3]) &&
          p == side_mid(c, t, 2))
        out.push_back({idx, t, "DXC"});
    }
  }
  return out;
}

struct IncorrectSegment {
  std::int32_t pos;  // index of the middle vertex
  TileId tile;       // minimal macrotile carrying the segment
};

// Triples x, y, z with y on the boundary of a macrotile holding both x and
// z strictly inside; reported with the smallest such tile.
inline std::vector<IncorrectSegment> incorrect_segments(const Complex& c,
                                                        const Path& p) {
  require_valid_path(c, p);
  std::vector<IncorrectSegment> out;
  for (std::size_t i = 1; i + 1 < p.v.size(); ++i) {
    auto cx = strict_enclosing_chain(c, p.v[i - 1]);
    if (cx.empty()) continue;
    auto cz = strict_enclosing_chain(c, p.v[i + 1]);
    if (cz.empty()) continue;
    std::unordered_set<TileId> zset(cz.begin(), cz.end());
    for (TileId t : cx) {
      if (!zset.count(t)) continue;
      if (on_tile_boundary(c, p.v[i], t)) {
        out.push_back({static_cast<std::int32_t>(i), t});
        break;
      }
    }
  }
  return out;
}

}  // namespace sixfold
