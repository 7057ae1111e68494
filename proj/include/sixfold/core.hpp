#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sixfold/rule_table.hpp"

namespace sixfold {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using TileId = std::int32_t;
using PlaneId = std::int32_t;
using PastingId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

enum class VertexClass : std::uint8_t { Corner, EdgeMid, Interior, Side };

inline const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::Corner: return "corner";
    case VertexClass::EdgeMid: return "edgemid";
    case VertexClass::Interior: return "interior";
    case VertexClass::Side: return "side";
  }
  return "?";
}

// Corner: a = corner position (UL/UR/LR/LL).
// EdgeMid: a = side letter (U/R/D/L) in the tile whose side middle it is.
// Interior: a = label (A/B/C).
// Side: ordered pair (a, b); a is the side letter in the tile on the
// A-side of the carrying interior macro-edge.
struct VertexKind {
  VertexClass cls = VertexClass::Corner;
  Sym a = Sym::UL;
  Sym b = Sym::UL;

  bool operator==(const VertexKind& o) const {
    if (cls != o.cls) return false;
    if (cls == VertexClass::Side) return a == o.a && b == o.b;
    return a == o.a;
  }
};

inline std::string kind_label(const VertexKind& k) {
  std::string s = vertex_class_name(k.cls);
  s += '(';
  s += sym_name(k.a);
  if (k.cls == VertexClass::Side) {
    s += ',';
    s += sym_name(k.b);
  }
  s += ')';
  return s;
}

struct Vertex {
  VertexId id = kNone;
  VertexKind kind;
  int depth = 0;
  int created_round = 0;
  TileId owner = kNone;
  PlaneId home_plane = kNone;
  // For midpoint vertices (EdgeMid/Side): the macro-edge node whose
  // midpoint this vertex is. kNone otherwise.
  EdgeId carrier = kNone;
  std::vector<PlaneId> planes;  // sorted

  void add_plane(PlaneId p) {
    auto it = std::lower_bound(planes.begin(), planes.end(), p);
    if (it == planes.end() || *it != p) planes.insert(it, p);
  }
};

// A node in a macro-edge tree. Top-level nodes carry the edge identity
// (type, owner); splitting a leaf attaches a midpoint and two halves that
// inherit type, owner and root. Leaves are the current graph edges.
struct MacroEdge {
  EdgeId id = kNone;
  std::int8_t edge_type = 0;  // 1..8 interior, 9..12 boundary
  TileId owner = kNone;
  std::array<VertexId, 2> ends{kNone, kNone};
  VertexId midpoint = kNone;
  std::array<EdgeId, 2> halves{kNone, kNone};
  EdgeId parent = kNone;
  EdgeId root = kNone;
  int created_round = 0;
  std::vector<PlaneId> planes;  // sorted, size 1 or 2
  // Minimal tiles listing this node as a side. Maintained for leaves;
  // stale once the node is split (never queried then).
  std::vector<TileId> faces;

  bool leaf() const { return midpoint == kNone; }
  bool boundary_type() const { return edge_type >= 9; }
  bool in_plane(PlaneId p) const {
    return std::find(planes.begin(), planes.end(), p) != planes.end();
  }
};

enum class TilePos : std::uint8_t {
  LeftUpper = 0,
  Middle = 1,
  RightUpper = 2,
  RightLower = 3,
  Lower = 4,
  LeftLower = 5,
  Root = 6,
  Pasted = 7,
};

inline const char* tile_pos_name(TilePos p) {
  if (p == TilePos::Root) return "Root";
  if (p == TilePos::Pasted) return "Pasted";
  return child_pos_name(static_cast<ChildPos>(p));
}

struct MacroTile {
  TileId id = kNone;
  std::array<VertexId, 4> corners{kNone, kNone, kNone, kNone};  // UL,UR,LR,LL
  TileId parent = kNone;
  TilePos position = TilePos::Root;
  std::uint8_t rotation_qt = 0;  // quarter turns wrt the canonical quad cycle
  int created_round = 0;
  std::int8_t birth_level = 1;
  bool pasted = false;
  VertexId core = kNone;
  PlaneId plane = kNone;
  int subdivided_round = kNone;
  std::array<TileId, 6> children{kNone, kNone, kNone, kNone, kNone, kNone};
  std::array<EdgeId, 4> sides{kNone, kNone, kNone, kNone};  // top,right,bottom,left
  std::array<VertexId, 3> interior{kNone, kNone, kNone};    // A,B,C

  bool has_children() const { return children[0] != kNone; }
};

struct Plane {
  PlaneId id = kNone;
  TileId root_tile = kNone;
  PastingId origin_pasting = kNone;
  // Clockwise cyclic neighbor order per vertex.
  std::unordered_map<VertexId, std::vector<VertexId>> rot;
};

struct RoundReport {
  int round = 0;
  std::array<long, 4> vertices_by_class{};  // Corner, EdgeMid, Interior, Side
  std::array<long, 13> edges_by_type{};     // indexed by type, 1..12
  long split_edges = 0;
  int new_max_depth = 0;
  long subdivided_tiles = 0;
};

struct PastingSite {
  VertexId x1 = kNone, x2 = kNone, y = kNone, z2 = kNone, z1 = kNone;
  std::vector<TileId> host_tiles;
  PlaneId base_plane = kNone;
  EdgeId x_half = kNone;  // macro-edge node (y .. x1) whose midpoint is x2
  EdgeId z_half = kNone;  // macro-edge node (y .. z1) whose midpoint is z2
};

struct PastingRecord {
  PastingSite site;
  int round = 0;
  std::array<VertexId, 6> created{kNone, kNone, kNone,
                                  kNone, kNone, kNone};  // t1,t2,t3,ta,tb,tc
  std::vector<EdgeId> created_edges;                     // new leaf edges
  PlaneId plane = kNone;
  TileId tile = kNone;
  std::vector<EdgeId> entry_edges;
};

namespace detail {
inline std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}
}  // namespace detail

struct Complex {
  std::vector<Vertex> vertices;
  std::vector<MacroEdge> edges;
  std::vector<MacroTile> tiles;
  std::vector<Plane> planes;
  RuleTable table;
  int round = 0;
  int max_depth = -1;
  bool mid_round = false;
  int round_base_depth = -1;
  std::vector<RoundReport> rounds_log;
  std::vector<PastingRecord> pastings;

  // Derived indexes, kept in sync by mutation helpers.
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj;
  std::unordered_map<std::uint64_t, EdgeId> leaf_of;

  const Vertex& vertex(VertexId v) const {
    if (v < 0 || v >= static_cast<VertexId>(vertices.size()))
      throw std::invalid_argument("unknown vertex id " + std::to_string(v));
    return vertices[v];
  }
  const MacroEdge& edge(EdgeId e) const {
    if (e < 0 || e >= static_cast<EdgeId>(edges.size()))
      throw std::invalid_argument("unknown edge id " + std::to_string(e));
    return edges[e];
  }
  const MacroTile& tile(TileId t) const {
    if (t < 0 || t >= static_cast<TileId>(tiles.size()))
      throw std::invalid_argument("unknown tile id " + std::to_string(t));
    return tiles[t];
  }
  const Plane& plane(PlaneId p) const {
    if (p < 0 || p >= static_cast<PlaneId>(planes.size()))
      throw std::invalid_argument("unknown plane id " + std::to_string(p));
    return planes[p];
  }

  EdgeId leaf_between(VertexId a, VertexId b) const {
    auto it = leaf_of.find(detail::pair_key(a, b));
    return it == leaf_of.end() ? kNone : it->second;
  }

  const MacroEdge& root_edge(EdgeId e) const { return edges[edges[e].root]; }

  // --- mutation helpers -------------------------------------------------

  VertexId new_vertex(VertexKind kind, int depth, TileId owner,
                      PlaneId home, EdgeId carrier) {
    Vertex v;
    v.id = static_cast<VertexId>(vertices.size());
    v.kind = kind;
    v.depth = depth;
    v.created_round = round;
    v.owner = owner;
    v.home_plane = home;
    v.carrier = carrier;
    vertices.push_back(std::move(v));
    adj.emplace_back();
    if (depth > max_depth) max_depth = depth;
    return vertices.back().id;
  }

  EdgeId new_edge(std::int8_t type, TileId owner, VertexId a, VertexId b,
                  const std::vector<PlaneId>& in_planes, EdgeId parent_node) {
    MacroEdge e;
    e.id = static_cast<EdgeId>(edges.size());
    e.edge_type = type;
    e.owner = owner;
    e.ends = {a, b};
    e.parent = parent_node;
    e.root = parent_node == kNone ? e.id : edges[parent_node].root;
    e.created_round = round;
    e.planes = in_planes;
    edges.push_back(std::move(e));
    return edges.back().id;
  }

  void link_leaf(EdgeId e) {
    const auto& me = edges[e];
    adj[me.ends[0]].push_back({me.ends[1], e});
    adj[me.ends[1]].push_back({me.ends[0], e});
    leaf_of[detail::pair_key(me.ends[0], me.ends[1])] = e;
  }

  void unlink_leaf(EdgeId e) {
    const auto& me = edges[e];
    auto drop = [&](VertexId from, VertexId to) {
      auto& lst = adj[from];
      for (auto it = lst.begin(); it != lst.end(); ++it) {
        if (it->second == e) {
          lst.erase(it);
          return;
        }
      }
      (void)to;
    };
    drop(me.ends[0], me.ends[1]);
    drop(me.ends[1], me.ends[0]);
    leaf_of.erase(detail::pair_key(me.ends[0], me.ends[1]));
  }

  std::vector<VertexId>& rot_of(PlaneId p, VertexId v) { return planes[p].rot[v]; }

  void rot_replace(PlaneId p, VertexId v, VertexId from, VertexId to) {
    auto& cyc = planes[p].rot[v];
    for (auto& n : cyc) {
      if (n == from) {
        n = to;
        return;
      }
    }
    throw std::logic_error("rotation entry not found");
  }

  void rot_insert_after(PlaneId p, VertexId v, VertexId after,
                        const std::vector<VertexId>& add) {
    auto& cyc = planes[p].rot[v];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] == after) {
        cyc.insert(cyc.begin() + static_cast<long>(i) + 1, add.begin(),
                   add.end());
        return;
      }
    }
    throw std::logic_error("rotation anchor not found");
  }

  void register_face(EdgeId side, TileId t) { edges[side].faces.push_back(t); }
};

// --- levels -----------------------------------------------------------

inline int tile_level(const Complex& c, TileId t, int round) {
  const auto& tl = c.tile(t);
  if (round < tl.created_round)
    throw std::invalid_argument("tile not yet created");
  return tl.birth_level + (round - tl.created_round);
}

inline int tile_level(const Complex& c, TileId t) {
  return tile_level(c, t, c.round);
}

inline int edge_level(const Complex& c, EdgeId e, int round) {
  const auto& me = c.edge(e);
  if (round < me.created_round)
    throw std::invalid_argument("edge not yet created");
  return tile_level(c, c.edges[me.root].owner, round);
}

inline int edge_level(const Complex& c, EdgeId e) {
  return edge_level(c, e, c.round);
}

// --- bootstrap ----------------------------------------------------------

inline Complex make_level1_complex(const RuleTable& t) {
  auto violations = validate_rule_table(t);
  if (!violations.empty())
    throw std::invalid_argument("invalid rule table: " + violations.front());
  Complex c;
  c.table = t;
  c.planes.push_back(Plane{0, 0, kNone, {}});
  const std::array<Sym, 4> pos = {Sym::UL, Sym::UR, Sym::LR, Sym::LL};
  std::array<VertexId, 4> corner{};
  for (int i = 0; i < 4; ++i) {
    corner[i] = c.new_vertex({VertexClass::Corner, pos[i], pos[i]}, -1, 0, 0,
                             kNone);
  }
  // Boundary edge types: 9 left, 10 right, 11 top, 12 bottom; endpoint
  // order follows the clockwise boundary cycle.
  EdgeId top = c.new_edge(11, 0, corner[0], corner[1], {0}, kNone);
  EdgeId right = c.new_edge(10, 0, corner[1], corner[2], {0}, kNone);
  EdgeId bottom = c.new_edge(12, 0, corner[2], corner[3], {0}, kNone);
  EdgeId left = c.new_edge(9, 0, corner[3], corner[0], {0}, kNone);
  for (EdgeId e : {top, right, bottom, left}) c.link_leaf(e);

  MacroTile root;
  root.id = 0;
  root.corners = corner;
  root.position = TilePos::Root;
  root.birth_level = 1;
  root.plane = 0;
  root.sides = {top, right, bottom, left};
  c.tiles.push_back(root);
  for (EdgeId e : {top, right, bottom, left}) c.register_face(e, 0);

  c.planes[0].rot[corner[0]] = {corner[1], corner[3]};
  c.planes[0].rot[corner[1]] = {corner[2], corner[0]};
  c.planes[0].rot[corner[2]] = {corner[3], corner[1]};
  c.planes[0].rot[corner[3]] = {corner[0], corner[2]};
  for (int i = 0; i < 4; ++i) c.vertices[corner[i]].add_plane(0);
  return c;
}

// --- rotation order -----------------------------------------------------

inline std::vector<VertexId> rotation_order(const Complex& c, VertexId v,
                                            PlaneId p) {
  const auto& pl = c.plane(p);
  auto it = pl.rot.find(v);
  if (it == pl.rot.end())
    throw std::invalid_argument("vertex not present in plane");
  std::vector<VertexId> cyc = it->second;
  // Canonical starting point so the cyclic sequence is reproducible.
  auto mn = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), mn, cyc.end());
  return cyc;
}

inline std::vector<VertexId> rotation_order(const Complex& c, VertexId v) {
  return rotation_order(c, v, c.vertex(v).home_plane);
}

// --- walks and regions ----------------------------------------------------

// Vertex sequence along a macro-edge node, from ends[0] to ends[1].
inline void walk_edge_into(const Complex& c, EdgeId e,
                           std::vector<VertexId>& out) {
  const auto& me = c.edge(e);
  if (me.leaf()) {
    out.push_back(me.ends[1]);
    return;
  }
  walk_edge_into(c, me.halves[0], out);
  walk_edge_into(c, me.halves[1], out);
}

inline std::vector<VertexId> walk_edge(const Complex& c, EdgeId e) {
  std::vector<VertexId> out;
  out.push_back(c.edge(e).ends[0]);
  walk_edge_into(c, e, out);
  return out;
}

// Side walk oriented from corners[side] to corners[(side+1)%4].
inline std::vector<VertexId> walk_side(const Complex& c, TileId t, int side) {
  const auto& tl = c.tile(t);
  auto out = walk_edge(c, tl.sides[side]);
  VertexId from = tl.corners[side];
  if (out.front() != from) std::reverse(out.begin(), out.end());
  if (out.front() != from)
    throw std::logic_error("side walk does not start at tile corner");
  return out;
}

inline std::vector<VertexId> tile_boundary_cycle(const Complex& c, TileId t) {
  std::vector<VertexId> cyc;
  for (int s = 0; s < 4; ++s) {
    auto w = walk_side(c, t, s);
    cyc.insert(cyc.end(), w.begin(), w.end() - 1);
  }
  return cyc;
}

inline VertexId side_mid(const Complex& c, TileId t, int side) {
  return c.edge(c.tile(t).sides[side]).midpoint;
}

// All vertices in the closed planar region of a tile.
inline std::vector<VertexId> region_vertices(const Complex& c, TileId t) {
  std::vector<VertexId> out;
  std::vector<TileId> stack = {t};
  while (!stack.empty()) {
    TileId cur = stack.back();
    stack.pop_back();
    const auto& tl = c.tiles[cur];
    if (tl.has_children()) {
      for (TileId ch : tl.children) stack.push_back(ch);
    } else {
      for (VertexId v : tl.corners) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<VertexId> boundary_vertices(const Complex& c, TileId t) {
  std::vector<VertexId> out;
  for (int s = 0; s < 4; ++s) {
    auto w = walk_side(c, t, s);
    out.insert(out.end(), w.begin(), w.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool on_tile_boundary(const Complex& c, VertexId v, TileId t) {
  const auto& tl = c.tile(t);
  for (VertexId cv : tl.corners) {
    if (cv == v) return true;
  }
  EdgeId node = c.vertex(v).carrier;
  while (node != kNone) {
    for (EdgeId s : tl.sides) {
      if (node == s) return true;
    }
    node = c.edges[node].parent;
  }
  return false;
}

// Tiles strictly containing v, innermost first.
inline std::vector<TileId> strict_enclosing_chain(const Complex& c,
                                                  VertexId v) {
  const auto& vx = c.vertex(v);
  TileId start = kNone;
  switch (vx.kind.cls) {
    case VertexClass::Interior:
      start = vx.owner;
      break;
    case VertexClass::Side:
      start = c.root_edge(vx.carrier).owner;
      break;
    default:
      return {};
  }
  std::vector<TileId> out;
  for (TileId t = start; t != kNone; t = c.tiles[t].parent) out.push_back(t);
  return out;
}

// --- structural validation ------------------------------------------------

struct PlaneStats {
  PlaneId plane = kNone;
  long v = 0, e = 0, f = 0;
  long euler() const { return v - e + f; }
};

struct StructureReport {
  std::vector<PlaneStats> plane_stats;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline StructureReport validate_complex(const Complex& c) {
  StructureReport rep;
  std::size_t nplanes = c.planes.size();

  // Per-plane counts. Faces are the childless tiles of the plane.
  std::vector<long> vcount(nplanes, 0), ecount(nplanes, 0), fcount(nplanes, 0);
  for (const auto& pl : c.planes) {
    vcount[pl.id] = static_cast<long>(pl.rot.size());
    long deg = 0;
    for (const auto& kv : pl.rot) deg += static_cast<long>(kv.second.size());
    if (deg % 2 != 0) {
      rep.violations.push_back("odd total rotation degree in plane " +
                               std::to_string(pl.id));
    }
    ecount[pl.id] = deg / 2;
  }
  std::vector<std::vector<TileId>> plane_faces(nplanes);
  for (const auto& t : c.tiles) {
    if (!t.has_children()) {
      ++fcount[t.plane];
      plane_faces[t.plane].push_back(t.id);
    }
  }
  for (std::size_t p = 0; p < nplanes; ++p) {
    rep.plane_stats.push_back(
        {static_cast<PlaneId>(p), vcount[p], ecount[p], fcount[p]});
    if (vcount[p] - ecount[p] + fcount[p] != 1) {
      rep.violations.push_back("plane " + std::to_string(p) +
                               " euler characteristic != 1");
    }
  }

  // Minimal tiles must be simple 4-cycles over current leaves.
  std::unordered_map<EdgeId, std::vector<PlaneId>> leaf_face_planes;
  for (const auto& t : c.tiles) {
    if (t.has_children()) continue;
    std::unordered_set<VertexId> distinct(t.corners.begin(), t.corners.end());
    if (distinct.size() != 4) {
      rep.violations.push_back("minimal tile " + std::to_string(t.id) +
                               " corners not distinct");
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      VertexId a = t.corners[i];
      VertexId b = t.corners[(i + 1) % 4];
      EdgeId leaf = c.leaf_between(a, b);
      if (leaf == kNone) {
        rep.violations.push_back("minimal tile cycle broken at tile " +
                                 std::to_string(t.id));
        continue;
      }
      leaf_face_planes[leaf].push_back(t.plane);
    }
  }

  // Every leaf is a side of at least one minimal tile; in the plane of its
  // owner an interior edge bounds two faces, a boundary edge one.
  for (const auto& me : c.edges) {
    if (!me.leaf()) continue;
    auto it = leaf_face_planes.find(me.id);
    if (it == leaf_face_planes.end()) {
      rep.violations.push_back("orphan graph edge " + std::to_string(me.id));
      continue;
    }
    PlaneId owner_plane = c.tiles[c.root_edge(me.id).owner].plane;
    long n = static_cast<long>(
        std::count(it->second.begin(), it->second.end(), owner_plane));
    long want = c.root_edge(me.id).boundary_type() ? 1 : 2;
    if (n != want) {
      rep.violations.push_back("edge " + std::to_string(me.id) + " has " +
                               std::to_string(n) + " faces in owner plane, " +
                               "expected " + std::to_string(want));
    }
  }

  // Depth rules.
  for (const auto& me : c.edges) {
    if (me.midpoint == kNone) continue;
    int dm = c.vertices[me.midpoint].depth;
    if (dm <= c.vertices[me.ends[0]].depth ||
        dm <= c.vertices[me.ends[1]].depth) {
      rep.violations.push_back("midpoint depth not above endpoints at edge " +
                               std::to_string(me.id));
    }
  }
  int seen_max = -1;
  for (const auto& v : c.vertices) {
    seen_max = std::max(seen_max, v.depth);
    if (v.depth < -1)
      rep.violations.push_back("vertex depth below -1 at " +
                               std::to_string(v.id));
  }
  if (seen_max != c.max_depth)
    rep.violations.push_back("max_depth bookkeeping mismatch");

  // Rotation systems agree with the adjacency restricted to each plane,
  // and their face orbits close up to exactly F + 1 per plane.
  for (const auto& pl : c.planes) {
    long directed = 0;
    for (const auto& kv : pl.rot) {
      VertexId v = kv.first;
      for (VertexId n : kv.second) {
        EdgeId leaf = c.leaf_between(v, n);
        if (leaf == kNone || !c.edges[leaf].in_plane(pl.id)) {
          rep.violations.push_back("rotation entry without matching edge in "
                                   "plane " +
                                   std::to_string(pl.id));
          continue;
        }
        ++directed;
      }
    }
    // Face tracing: successor of (u -> v) is (v -> w) with w immediately
    // after u in the clockwise cycle at v.
    std::unordered_set<std::uint64_t> seen;
    long orbits = 0;
    for (const auto& kv : pl.rot) {
      VertexId u0 = kv.first;
      for (VertexId v0 : kv.second) {
        std::uint64_t key0 =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u0))
             << 32) |
            static_cast<std::uint32_t>(v0);
        if (seen.count(key0)) continue;
        ++orbits;
        VertexId u = u0, v = v0;
        for (long guard = 0; guard <= directed; ++guard) {
          std::uint64_t key =
              (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u))
               << 32) |
              static_cast<std::uint32_t>(v);
          if (!seen.insert(key).second) break;
          const auto& cyc = pl.rot.at(v);
          auto it = std::find(cyc.begin(), cyc.end(), u);
          if (it == cyc.end()) break;
          VertexId w = cyc[(static_cast<std::size_t>(it - cyc.begin()) + 1) %
                           cyc.size()];
          u = v;
          v = w;
        }
      }
    }
    if (orbits != fcount[pl.id] + 1) {
      rep.violations.push_back("plane " + std::to_string(pl.id) +
                               " rotation system traces " +
                               std::to_string(orbits) + " faces, expected " +
                               std::to_string(fcount[pl.id] + 1));
    }
  }
  return rep;
}

}  // namespace sixfold
