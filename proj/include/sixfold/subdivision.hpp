#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "sixfold/core.hpp"

namespace sixfold {

namespace detail {

// Letter of the side (U/R/D/L) a node plays in a minimal tile.
inline Sym side_letter_in(const Complex& c, const MacroTile& t, EdgeId node) {
  static const std::array<Sym, 4> letters = {Sym::U, Sym::R, Sym::D, Sym::L};
  for (int i = 0; i < 4; ++i) {
    if (t.sides[i] == node) return letters[i];
  }
  throw std::logic_error("node is not a side of the tile");
}

// True when the tile's clockwise corner cycle traverses a -> b.
inline bool traverses_forward(const MacroTile& t, VertexId a, VertexId b) {
  for (int i = 0; i < 4; ++i) {
    if (t.corners[i] == a && t.corners[(i + 1) % 4] == b) return true;
  }
  return false;
}

inline void begin_round(Complex& c) {
  if (!c.mid_round) {
    c.mid_round = true;
    c.round_base_depth = c.max_depth;
    ++c.round;
  }
}

// Splits a leaf node: creates its midpoint vertex and two half edges,
// updating adjacency, rotations and plane membership.
inline VertexId split_edge(Complex& c, EdgeId e, RoundReport* rep) {
  MacroEdge& node = c.edges[e];
  if (!node.leaf()) throw std::logic_error("splitting a non-leaf edge");
  VertexId u = node.ends[0];
  VertexId w = node.ends[1];

  const MacroEdge& root = c.edges[node.root];
  PlaneId owner_plane = c.tiles[root.owner].plane;

  // The subdividing tiles flanking this node in the owner plane fix the
  // midpoint's kind; the vertex type never changes afterwards.
  const MacroTile* fwd = nullptr;
  const MacroTile* bwd = nullptr;
  for (TileId ft : node.faces) {
    const MacroTile& t = c.tiles[ft];
    if (t.plane != owner_plane) continue;
    if (traverses_forward(t, u, w)) {
      fwd = &t;
    } else {
      bwd = &t;
    }
  }
  VertexKind kind;
  TileId owner = kNone;
  if (fwd && bwd) {
    kind = {VertexClass::Side, side_letter_in(c, *fwd, e),
            side_letter_in(c, *bwd, e)};
    owner = root.owner;
  } else {
    const MacroTile* only = fwd ? fwd : bwd;
    if (!only) throw std::logic_error("edge without a face in owner plane");
    kind = {VertexClass::EdgeMid, side_letter_in(c, *only, e), Sym::UL};
    owner = only->id;
  }

  int depth = c.round_base_depth + 1;
  VertexId m = c.new_vertex(kind, depth, owner, owner_plane, e);
  for (PlaneId p : c.edges[e].planes) c.vertices[m].add_plane(p);

  EdgeId h0 = c.new_edge(c.edges[e].edge_type, c.edges[e].owner, u, m,
                         c.edges[e].planes, e);
  EdgeId h1 = c.new_edge(c.edges[e].edge_type, c.edges[e].owner, m, w,
                         c.edges[e].planes, e);
  c.edges[e].midpoint = m;
  c.edges[e].halves = {h0, h1};
  c.unlink_leaf(e);
  c.link_leaf(h0);
  c.link_leaf(h1);
  for (PlaneId p : c.edges[e].planes) {
    c.rot_replace(p, u, w, m);
    c.rot_replace(p, w, u, m);
    c.rot_of(p, m) = {u, w};
  }
  if (rep) {
    ++rep->split_edges;
    ++rep->vertices_by_class[static_cast<int>(kind.cls)];
  }
  return m;
}

// Creates the six children of a tile whose side midpoints and interior
// vertices already exist, wiring logical corners per the rule table.
inline void create_children(Complex& c, TileId parent,
                            const std::array<VertexId, 4>& mids,
                            const std::array<VertexId, 3>& inner) {
  const std::array<VertexId, 4> pc = c.tiles[parent].corners;
  const PlaneId pplane = c.tiles[parent].plane;
  auto resolve = [&](Sym s) -> VertexId {
    switch (s) {
      case Sym::UL: return pc[0];
      case Sym::UR: return pc[1];
      case Sym::LR: return pc[2];
      case Sym::LL: return pc[3];
      case Sym::U: return mids[0];
      case Sym::R: return mids[1];
      case Sym::D: return mids[2];
      case Sym::L: return mids[3];
      case Sym::A: return inner[0];
      case Sym::B: return inner[1];
      case Sym::C: return inner[2];
    }
    return kNone;
  };
  for (int i = 0; i < kChildCount; ++i) {
    const auto& logical = c.table.corners[i];
    MacroTile child;
    child.id = static_cast<TileId>(c.tiles.size());
    for (int k = 0; k < 4; ++k) child.corners[k] = resolve(logical[k]);
    child.parent = parent;
    child.position = static_cast<TilePos>(i);
    child.rotation_qt = static_cast<std::uint8_t>(
        detail::rotation_offset(child_quads()[i], logical));
    child.created_round = c.round;
    child.birth_level = 1;
    child.plane = pplane;
    for (int k = 0; k < 4; ++k) {
      EdgeId s = c.leaf_between(child.corners[k], child.corners[(k + 1) % 4]);
      if (s == kNone) throw std::logic_error("child side edge missing");
      child.sides[k] = s;
    }
    c.tiles.push_back(child);
    c.tiles[parent].children[i] = child.id;
    for (EdgeId s : c.tiles.back().sides) c.register_face(s, child.id);
  }
}

inline void subdivide_tile_inner(Complex& c, TileId t, RoundReport* rep) {
  MacroTile& tl = c.tiles[t];
  PlaneId p = tl.plane;

  std::array<VertexId, 4> mids{};
  for (int i = 0; i < 4; ++i) {
    EdgeId side = tl.sides[i];
    if (c.edges[side].leaf()) {
      mids[i] = split_edge(c, side, rep);
    } else {
      // A coplanar neighbor subdivided first this round.
      mids[i] = c.edges[side].midpoint;
    }
  }

  int depth = c.round_base_depth + 1;
  VertexId a = c.new_vertex({VertexClass::Interior, Sym::A, Sym::A}, depth, t,
                            p, kNone);
  VertexId b = c.new_vertex({VertexClass::Interior, Sym::B, Sym::B}, depth, t,
                            p, kNone);
  VertexId cv = c.new_vertex({VertexClass::Interior, Sym::C, Sym::C}, depth, t,
                             p, kNone);
  for (VertexId v : {a, b, cv}) c.vertices[v].add_plane(p);
  if (rep) rep->vertices_by_class[static_cast<int>(VertexClass::Interior)] += 3;

  const auto& cs = c.tiles[t].corners;
  struct EdgeSpec {
    std::int8_t type;
    VertexId a, b;
  };
  const std::array<EdgeSpec, 8> specs = {{
      {1, mids[0], a},   // U -> A
      {2, a, mids[3]},   // A -> L
      {3, a, cv},        // A -> C
      {4, b, mids[0]},   // B -> U
      {5, b, mids[1]},   // B -> R
      {6, cv, b},        // C -> B
      {7, cv, cs[3]},    // C -> LL
      {8, cv, cs[2]},    // C -> LR
  }};
  for (const auto& s : specs) {
    EdgeId e = c.new_edge(s.type, t, s.a, s.b, {p}, kNone);
    c.link_leaf(e);
    if (rep) ++rep->edges_by_type[s.type];
  }

  // Rotation surgery: interior stubs enter each side wedge right after the
  // ray toward the clockwise-next corner; the two corner stubs sit inside
  // the corner wedges at LL and LR.
  c.rot_insert_after(p, mids[0], cs[1], {b, a});
  c.rot_insert_after(p, mids[1], cs[2], {b});
  c.rot_insert_after(p, mids[3], cs[0], {a});
  c.rot_insert_after(p, cs[3], mids[3], {cv});
  c.rot_insert_after(p, cs[2], mids[2], {cv});
  c.rot_of(p, a) = {mids[0], cv, mids[3]};
  c.rot_of(p, b) = {mids[1], cv, mids[0]};
  c.rot_of(p, cv) = {cs[2], cs[3], a, b};

  c.tiles[t].interior = {a, b, cv};
  c.tiles[t].subdivided_round = c.round;
  create_children(c, t, mids, {a, b, cv});
  if (rep) ++rep->subdivided_tiles;
}

}  // namespace detail

// Splits one minimal tile into its six children. Midpoints already created
// by a neighbor in the same round are reused.
inline std::array<TileId, 6> subdivide_tile(Complex& c, TileId t) {
  const MacroTile& tl = c.tile(t);
  if (tl.has_children()) {
    if (tl.subdivided_round == c.round && c.mid_round)
      throw std::invalid_argument("tile already subdivided this round");
    throw std::invalid_argument("tile not minimal");
  }
  detail::begin_round(c);
  detail::subdivide_tile_inner(c, t, nullptr);
  return c.tiles[t].children;
}

// One global round: every minimal tile, in every plane, is subdivided.
inline RoundReport subdivide_round(Complex& c) {
  RoundReport rep;
  detail::begin_round(c);
  rep.round = c.round;
  std::vector<TileId> minimal;
  for (const auto& t : c.tiles) {
    if (!t.has_children()) minimal.push_back(t.id);
  }
  for (TileId t : minimal) detail::subdivide_tile_inner(c, t, &rep);
  c.mid_round = false;
  rep.new_max_depth = c.max_depth;
  c.rounds_log.push_back(rep);
  return rep;
}

}  // namespace sixfold
