#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sixfold/core.hpp"
#include "sixfold/subdivision.hpp"

namespace sixfold {

namespace detail {

// Current leaf of the subtree of `node` incident to vertex v, where v is
// one of the subtree span's endpoints.
inline EdgeId leaf_at(const Complex& c, EdgeId node, VertexId v) {
  EdgeId cur = node;
  while (!c.edges[cur].leaf()) {
    const auto& me = c.edges[cur];
    cur = (c.edges[me.halves[0]].ends[0] == v ||
           c.edges[me.halves[0]].ends[1] == v)
              ? me.halves[0]
              : me.halves[1];
  }
  const auto& le = c.edges[cur];
  if (le.ends[0] != v && le.ends[1] != v)
    throw std::logic_error("vertex not on edge span");
  return cur;
}

inline bool node_within(const Complex& c, EdgeId node, EdgeId ancestor) {
  for (EdgeId e = node; e != kNone; e = c.edges[e].parent) {
    if (e == ancestor) return true;
  }
  return false;
}

inline int core_class_rank(const VertexKind& k) {
  switch (k.cls) {
    case VertexClass::Side:
    case VertexClass::EdgeMid:
      return 0;
    case VertexClass::Interior:
      if (k.a == Sym::C) return 1;
      if (k.a == Sym::A) return 2;
      return 3;
    case VertexClass::Corner:
      return 4;
  }
  return 5;
}

}  // namespace detail

// Deterministic total order on the incoming graph edges of a vertex:
// planar edges of the home plane first (level descending, ties clockwise
// from a canonical start ray), then edges into pasted areas grouped by the
// pasting core (core depth ascending, then core kind class), numbered
// within a core by the core's incoming side the vertex does not lie on,
// then level descending and edge type ascending.
class IncomingOrderer {
 public:
  explicit IncomingOrderer(const Complex& c) : c_(c) {}

  const std::vector<EdgeId>& order(VertexId v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    auto computed = compute(v);
    return memo_.emplace(v, std::move(computed)).first->second;
  }

  // True when ray a strictly precedes ray b at v.
  bool precedes(VertexId v, EdgeId a, EdgeId b) {
    return rank(v, a) < rank(v, b);
  }

  int rank(VertexId v, EdgeId e) {
    const auto& ord = order(v);
    auto it = std::find(ord.begin(), ord.end(), e);
    if (it == ord.end())
      throw std::invalid_argument("edge is not incident to vertex");
    return static_cast<int>(it - ord.begin());
  }

 private:
  struct PastedKey {
    int core_depth;
    int core_class;
    VertexId core;
    int inherited;
    int neg_level;
    int type;
    VertexId nbr;
    bool operator<(const PastedKey& o) const {
      return std::tie(core_depth, core_class, core, inherited, neg_level, type,
                      nbr) < std::tie(o.core_depth, o.core_class, o.core,
                                      o.inherited, o.neg_level, o.type, o.nbr);
    }
  };

  std::vector<EdgeId> compute(VertexId v) {
    const Vertex& vx = c_.vertex(v);
    PlaneId home = vx.home_plane;
    std::vector<EdgeId> planar;
    std::vector<EdgeId> pasted;
    for (const auto& [nbr, e] : c_.adj[v]) {
      (void)nbr;
      // A ray belongs to the plane whose structure drew its macro-edge;
      // rays of other planes lead into pasted areas.
      if (owner_plane(e) == home) {
        planar.push_back(e);
      } else {
        pasted.push_back(e);
      }
    }

    // Canonical start ray: maximal level, then smallest edge type, then the
    // ray toward the first endpoint of the carrying macro-edge.
    std::vector<EdgeId> sorted_planar;
    if (!planar.empty()) {
      auto level_of = [&](EdgeId e) { return edge_level(c_, e, c_.round); };
      auto type_of = [&](EdgeId e) { return c_.root_edge(e).edge_type; };
      EdgeId start = planar.front();
      for (EdgeId e : planar) {
        if (std::make_tuple(-level_of(e), type_of(e), half_side(v, e)) <
            std::make_tuple(-level_of(start), type_of(start),
                            half_side(v, start)))
          start = e;
      }
      // Clockwise linearization of the home rotation from the start ray.
      const auto& cyc = c_.plane(home).rot.at(v);
      std::unordered_map<VertexId, int> pos;
      for (std::size_t i = 0; i < cyc.size(); ++i)
        pos[cyc[i]] = static_cast<int>(i);
      VertexId start_nbr = other_end(start, v);
      int start_pos = pos.at(start_nbr);
      int n = static_cast<int>(cyc.size());
      auto rot_index = [&](EdgeId e) {
        return (pos.at(other_end(e, v)) - start_pos + n) % n;
      };
      sorted_planar = planar;
      std::sort(sorted_planar.begin(), sorted_planar.end(),
                [&](EdgeId a, EdgeId b) {
                  return std::make_pair(-level_of(a), rot_index(a)) <
                         std::make_pair(-level_of(b), rot_index(b));
                });
    }

    std::vector<std::pair<PastedKey, EdgeId>> keyed;
    for (EdgeId e : pasted) {
      keyed.push_back({pasted_key(v, e), e});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      return a.first < b.first;
    });

    std::vector<EdgeId> out = std::move(sorted_planar);
    for (const auto& [k, e] : keyed) {
      (void)k;
      out.push_back(e);
    }
    return out;
  }

  VertexId other_end(EdgeId e, VertexId v) const {
    const auto& me = c_.edges[e];
    return me.ends[0] == v ? me.ends[1] : me.ends[0];
  }

  // 0 when the ray lies on the half toward the carrier's first endpoint,
  // 1 toward the second, 2 when v is an endpoint of the root edge itself.
  int half_side(VertexId v, EdgeId e) const {
    EdgeId carrier = c_.vertex(v).carrier;
    if (carrier == kNone) return 2;
    if (c_.edges[e].root != c_.edges[carrier].root) return 2;
    if (detail::node_within(c_, e, c_.edges[carrier].halves[0])) return 0;
    if (detail::node_within(c_, e, c_.edges[carrier].halves[1])) return 1;
    return 2;
  }

  PlaneId owner_plane(EdgeId e) const {
    return c_.tiles[c_.root_edge(e).owner].plane;
  }

  PastedKey pasted_key(VertexId v, EdgeId e) {
    const Plane& pl = c_.plane(owner_plane(e));
    if (pl.origin_pasting == kNone)
      throw std::logic_error("pasted ray into a plane without pasting record");
    const PastingRecord& rec = c_.pastings[pl.origin_pasting];
    VertexId core = rec.site.y;
    const Vertex& cv = c_.vertex(core);

    bool on_top = v == rec.site.x1;
    bool on_left = v == rec.site.z1;
    if (!on_top && !on_left) {
      EdgeId carrier = c_.vertex(v).carrier;
      if (carrier != kNone) {
        on_top = detail::node_within(c_, carrier, rec.site.x_half);
        on_left = detail::node_within(c_, carrier, rec.site.z_half);
      }
    }
    if (!on_top && !on_left)
      throw std::logic_error("pasted ray from a vertex off the attaching sides");
    // The inherited number is the rank, at the core, of the attaching side
    // the vertex does not lie on.
    EdgeId inherited_ray = on_top ? detail::leaf_at(c_, rec.site.z_half, core)
                                  : detail::leaf_at(c_, rec.site.x_half, core);
    int inherited = rank(core, inherited_ray);

    PastedKey k;
    k.core_depth = cv.depth;
    k.core_class = detail::core_class_rank(cv.kind);
    k.core = core;
    k.inherited = inherited;
    k.neg_level = -edge_level(c_, e, c_.round);
    k.type = c_.root_edge(e).edge_type;
    k.nbr = other_end(e, v);
    return k;
  }

  const Complex& c_;
  std::unordered_map<VertexId, std::vector<EdgeId>> memo_;
};

inline std::vector<EdgeId> incoming_edge_order(const Complex& c, VertexId v) {
  IncomingOrderer ord(c);
  return ord.order(v);
}

// --- site enumeration -----------------------------------------------------

namespace detail {

struct SiteCandidate {
  VertexId x1, x2;
  EdgeId half;   // node (y .. x1), midpoint x2
  EdgeId ray;    // current leaf (y, x2)
  int level;     // level of the macro-edge x1 lies on
};

inline std::vector<SiteCandidate> site_candidates(const Complex& c,
                                                  VertexId y, int k) {
  std::vector<SiteCandidate> out;
  for (const auto& [nbr, e] : c.adj[y]) {
    const Vertex& m = c.vertices[nbr];
    if (m.depth != k || m.carrier == kNone) continue;
    if (m.created_round != c.round) continue;
    const MacroEdge& half = c.edges[m.carrier];
    VertexId x1;
    if (half.ends[0] == y) {
      x1 = half.ends[1];
    } else if (half.ends[1] == y) {
      x1 = half.ends[0];
    } else {
      continue;
    }
    const Vertex& xv = c.vertices[x1];
    if (xv.depth != k - 1) continue;
    if (xv.kind.cls != VertexClass::Side && xv.kind.cls != VertexClass::EdgeMid)
      continue;
    out.push_back({x1, nbr, m.carrier, e,
                   tile_level(c, c.root_edge(m.carrier).owner, c.round)});
  }
  std::sort(out.begin(), out.end(),
            [](const SiteCandidate& a, const SiteCandidate& b) {
              return a.x1 < b.x1;
            });
  return out;
}

inline std::unordered_set<std::uint64_t> corner_triples(const Complex& c) {
  std::unordered_set<std::uint64_t> set;
  auto pack = [](VertexId a, VertexId b, VertexId d) {
    std::array<VertexId, 3> t = {a, b, d};
    std::sort(t.begin(), t.end());
    return (static_cast<std::uint64_t>(t[0]) << 42) |
           (static_cast<std::uint64_t>(t[1]) << 21) |
           static_cast<std::uint64_t>(t[2]);
  };
  for (const auto& t : c.tiles) {
    const auto& cs = t.corners;
    set.insert(pack(cs[0], cs[1], cs[2]));
    set.insert(pack(cs[0], cs[1], cs[3]));
    set.insert(pack(cs[0], cs[2], cs[3]));
    set.insert(pack(cs[1], cs[2], cs[3]));
  }
  return set;
}

}  // namespace detail

// All oriented pasting sites of the current complex. Each unordered site
// appears exactly once, oriented so the macro-edge carrying x1 has the
// larger level, or on equal levels precedes in the incoming numbering of
// the core.
inline std::vector<PastingSite> enumerate_pasting_sites(const Complex& c) {
  if (c.mid_round) throw std::logic_error("enumeration during an open round");
  int k = c.max_depth;
  auto triples = detail::corner_triples(c);
  auto pack = [](VertexId a, VertexId b, VertexId d) {
    std::array<VertexId, 3> t = {a, b, d};
    std::sort(t.begin(), t.end());
    return (static_cast<std::uint64_t>(t[0]) << 42) |
           (static_cast<std::uint64_t>(t[1]) << 21) |
           static_cast<std::uint64_t>(t[2]);
  };
  IncomingOrderer ord(c);
  std::vector<PastingSite> sites;
  for (const auto& vy : c.vertices) {
    if (vy.depth != k - 2) continue;
    VertexId y = vy.id;
    auto cands = detail::site_candidates(c, y, k);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        const auto& a = cands[i];
        const auto& b = cands[j];
        if (a.x1 == b.x1) continue;
        if (triples.count(pack(a.x1, y, b.x1))) continue;
        const detail::SiteCandidate* xs;
        const detail::SiteCandidate* zs;
        if (a.level != b.level) {
          xs = a.level > b.level ? &a : &b;
          zs = a.level > b.level ? &b : &a;
        } else {
          bool a_first = ord.precedes(y, a.ray, b.ray);
          xs = a_first ? &a : &b;
          zs = a_first ? &b : &a;
        }
        PastingSite s;
        s.x1 = xs->x1;
        s.x2 = xs->x2;
        s.y = y;
        s.z2 = zs->x2;
        s.z1 = zs->x1;
        s.x_half = xs->half;
        s.z_half = zs->half;
        TileId hx = c.root_edge(xs->half).owner;
        TileId hz = c.root_edge(zs->half).owner;
        s.host_tiles = {hx};
        if (hz != hx) s.host_tiles.push_back(hz);
        s.base_plane = c.tiles[c.vertex(y).owner].plane;
        sites.push_back(s);
      }
    }
  }
  // Canonical application order: by core, then by the core's incoming
  // numbering of the two carrying rays.
  std::sort(sites.begin(), sites.end(),
            [&](const PastingSite& s1, const PastingSite& s2) {
              if (s1.y != s2.y) return s1.y < s2.y;
              int rx1 = ord.rank(s1.y, detail::leaf_at(c, s1.x_half, s1.y));
              int rx2 = ord.rank(s2.y, detail::leaf_at(c, s2.x_half, s2.y));
              if (rx1 != rx2) return rx1 < rx2;
              int rz1 = ord.rank(s1.y, detail::leaf_at(c, s1.z_half, s1.y));
              int rz2 = ord.rank(s2.y, detail::leaf_at(c, s2.z_half, s2.y));
              return rz1 < rz2;
            });
  return sites;
}

// Glues a fresh level-2 shaped macrotile over an enumerated site, in a new
// plane of its own.
inline PastingRecord apply_pasting(Complex& c, const PastingSite& site) {
  int k = c.max_depth;
  auto check = [&](bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(std::string("stale site: ") + what);
  };
  check(c.vertex(site.y).depth == k - 2, "core depth");
  check(c.vertex(site.x1).depth == k - 1 && c.vertex(site.z1).depth == k - 1,
        "outer depth");
  check(c.edge(site.x_half).midpoint == site.x2 &&
            c.edge(site.z_half).midpoint == site.z2,
        "midpoints");
  for (EdgeId h : {site.x_half, site.z_half}) {
    for (EdgeId half : c.edge(h).halves) check(c.edge(half).leaf(), "split");
  }

  PlaneId p = static_cast<PlaneId>(c.planes.size());
  c.planes.push_back(Plane{p, kNone, kNone, {}});
  TileId tid = static_cast<TileId>(c.tiles.size());

  auto mk = [&](VertexKind kind, int depth) {
    VertexId v = c.new_vertex(kind, depth, tid, p, kNone);
    c.vertices[v].add_plane(p);
    return v;
  };
  VertexId t1 = mk({VertexClass::Corner, Sym::LR, Sym::LR}, k - 1);
  VertexId t2 = mk({VertexClass::EdgeMid, Sym::R, Sym::R}, k);
  VertexId t3 = mk({VertexClass::EdgeMid, Sym::D, Sym::D}, k);
  VertexId ta = mk({VertexClass::Interior, Sym::A, Sym::A}, k);
  VertexId tb = mk({VertexClass::Interior, Sym::B, Sym::B}, k);
  VertexId tc = mk({VertexClass::Interior, Sym::C, Sym::C}, k);

  std::vector<EdgeId> created;
  // Right and bottom boundary macro-edges arrive pre-split, like the sides
  // of any level-2 tile.
  EdgeId right = c.new_edge(10, tid, site.x1, t1, {p}, kNone);
  EdgeId r0 = c.new_edge(10, tid, site.x1, t2, {p}, right);
  EdgeId r1 = c.new_edge(10, tid, t2, t1, {p}, right);
  c.edges[right].midpoint = t2;
  c.edges[right].halves = {r0, r1};
  c.vertices[t2].carrier = right;
  EdgeId bottom = c.new_edge(12, tid, t1, site.z1, {p}, kNone);
  EdgeId b0 = c.new_edge(12, tid, t1, t3, {p}, bottom);
  EdgeId b1 = c.new_edge(12, tid, t3, site.z1, {p}, bottom);
  c.edges[bottom].midpoint = t3;
  c.edges[bottom].halves = {b0, b1};
  c.vertices[t3].carrier = bottom;
  for (EdgeId e : {r0, r1, b0, b1}) {
    c.link_leaf(e);
    created.push_back(e);
  }

  struct EdgeSpec {
    std::int8_t type;
    VertexId a, b;
  };
  const std::array<EdgeSpec, 8> specs = {{
      {1, site.x2, ta},
      {2, ta, site.z2},
      {3, ta, tc},
      {4, tb, site.x2},
      {5, tb, t2},
      {6, tc, tb},
      {7, tc, site.z1},
      {8, tc, t1},
  }};
  for (const auto& s : specs) {
    EdgeId e = c.new_edge(s.type, tid, s.a, s.b, {p}, kNone);
    c.link_leaf(e);
    created.push_back(e);
  }

  // The four attached graph edges join the new plane.
  std::array<EdgeId, 4> shared{};
  shared[0] = detail::leaf_at(c, site.x_half, site.x1);
  shared[1] = detail::leaf_at(c, site.x_half, site.y);
  shared[2] = detail::leaf_at(c, site.z_half, site.y);
  shared[3] = detail::leaf_at(c, site.z_half, site.z1);
  for (EdgeId e : shared) {
    c.edges[e].planes.push_back(p);
    std::sort(c.edges[e].planes.begin(), c.edges[e].planes.end());
  }
  for (VertexId v : {site.x1, site.x2, site.y, site.z2, site.z1})
    c.vertices[v].add_plane(p);

  // Fresh rotation system for the pasted plane.
  c.rot_of(p, site.y) = {site.x2, site.z2};
  c.rot_of(p, site.x2) = {site.x1, tb, ta, site.y};
  c.rot_of(p, site.x1) = {t2, site.x2};
  c.rot_of(p, site.z2) = {site.z1, site.y, ta};
  c.rot_of(p, site.z1) = {site.z2, tc, t3};
  c.rot_of(p, t1) = {t3, tc, t2};
  c.rot_of(p, t2) = {t1, tb, site.x1};
  c.rot_of(p, t3) = {t1, site.z1};
  c.rot_of(p, ta) = {site.x2, tc, site.z2};
  c.rot_of(p, tb) = {t2, tc, site.x2};
  c.rot_of(p, tc) = {t1, site.z1, ta, tb};

  MacroTile tile;
  tile.id = tid;
  tile.corners = {site.y, site.x1, t1, site.z1};
  tile.position = TilePos::Pasted;
  tile.created_round = c.round;
  tile.birth_level = 2;
  tile.pasted = true;
  tile.core = site.y;
  tile.plane = p;
  tile.sides = {site.x_half, right, bottom, site.z_half};
  tile.interior = {ta, tb, tc};
  c.tiles.push_back(tile);
  c.planes[p].root_tile = tid;

  detail::create_children(c, tid, {site.x2, t2, t3, site.z2}, {ta, tb, tc});

  PastingRecord rec;
  rec.site = site;
  rec.round = c.round;
  rec.created = {t1, t2, t3, ta, tb, tc};
  rec.created_edges = created;
  rec.plane = p;
  rec.tile = tid;
  for (EdgeId e : created) {
    const auto& me = c.edges[e];
    int attached = 0;
    for (VertexId v : {site.x1, site.x2, site.z2, site.z1}) {
      if (me.ends[0] == v || me.ends[1] == v) ++attached;
    }
    if (attached == 1) rec.entry_edges.push_back(e);
  }
  c.planes[p].origin_pasting = static_cast<PastingId>(c.pastings.size());
  c.pastings.push_back(rec);
  return rec;
}

// Applies every enumerated site, in canonical order.
inline std::vector<PastingRecord> pasting_round(Complex& c) {
  auto sites = enumerate_pasting_sites(c);
  std::vector<PastingRecord> out;
  out.reserve(sites.size());
  for (const auto& s : sites) out.push_back(apply_pasting(c, s));
  return out;
}

}  // namespace sixfold
