#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sixfold/builder.hpp"
#include "sixfold/core.hpp"
#include "sixfold/flips.hpp"
#include "sixfold/geodesy.hpp"
#include "sixfold/pasting.hpp"
#include "sixfold/paths.hpp"
#include "sixfold/patterns.hpp"
#include "sixfold/search.hpp"
#include "sixfold/subdivision.hpp"

namespace sixfold {

struct Budgets {
  long closure = 2000000;
  long reduce = 400000;
  std::uint64_t seed = 12345;
  int sample_pairs = 1000;
};

enum class Verdict { pass, fail, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct LemmaReport {
  std::string id;
  int level = 0;
  std::string params;
  Verdict verdict = Verdict::fail;
  std::vector<std::string> witness;
  std::string note;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic walk of the requested length ending at `target`, with no
// immediate backtracks; the step into the target avoids `avoid_last`.
inline std::optional<std::vector<VertexId>> walk_ending_at(
    const Complex& c, VertexId target, int len, VertexId avoid_last = kNone) {
  std::vector<VertexId> walk = {target};
  // Extend backwards greedily; adjacency order is deterministic.
  for (int i = 0; i < len; ++i) {
    VertexId cur = walk.back();
    VertexId prev = walk.size() >= 2 ? walk[walk.size() - 2] : kNone;
    VertexId pick = kNone;
    for (const auto& [n, e] : c.adj[cur]) {
      (void)e;
      if (n == prev) continue;
      if (i == 0 && n == avoid_last) continue;
      pick = n;
      break;
    }
    if (pick == kNone) return std::nullopt;
    walk.push_back(pick);
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

inline std::optional<std::vector<VertexId>> walk_starting_at(
    const Complex& c, VertexId start, int len, VertexId avoid_first = kNone) {
  auto w = walk_ending_at(c, start, len, avoid_first);
  if (!w) return std::nullopt;
  std::reverse(w->begin(), w->end());
  return w;
}

// Depth-first search for a walk of fixed length inside an allowed vertex
// set, starting with a forced first step.
inline bool find_walk_rec(const Complex& c, std::vector<VertexId>& walk,
                          int len,
                          const std::vector<VertexId>& allowed_sorted) {
  if (static_cast<int>(walk.size()) == len + 1) return true;
  VertexId cur = walk.back();
  VertexId prev = walk.size() >= 2 ? walk[walk.size() - 2] : kNone;
  for (const auto& [n, e] : c.adj[cur]) {
    (void)e;
    if (n == prev) continue;
    if (!std::binary_search(allowed_sorted.begin(), allowed_sorted.end(), n))
      continue;
    walk.push_back(n);
    if (find_walk_rec(c, walk, len, allowed_sorted)) return true;
    walk.pop_back();
  }
  return false;
}

inline Path concat(const std::vector<std::vector<VertexId>>& parts) {
  Path p;
  for (const auto& part : parts) {
    if (p.v.empty()) {
      p.v = part;
    } else {
      p.v.insert(p.v.end(), part.begin(), part.end());
    }
  }
  return p;
}

inline std::string show_path(const Path& p) { return path_to_text(p); }

inline TileId descend(const Complex& c, TileId t,
                      std::initializer_list<ChildPos> steps) {
  for (ChildPos s : steps) {
    t = c.tile(t).children[static_cast<int>(s)];
    if (t == kNone) throw std::logic_error("descend hit an unsubdivided tile");
  }
  return t;
}

// A base-plane tile of the requested level in a fully built complex.
inline TileId base_tile_of_level(const Complex& c, int level) {
  TileId t = 0;
  while (tile_level(c, t, c.round) > level) {
    t = c.tile(t).children[static_cast<int>(ChildPos::Middle)];
    if (t == kNone) throw std::logic_error("no tile of requested level");
  }
  return t;
}

}  // namespace detail

// --- L1: degree growth bound ------------------------------------------

inline LemmaReport lemma_degree_bound(const RuleTable& table,
                                      const Budgets&) {
  LemmaReport rep;
  rep.id = "L1";
  rep.level = 7;
  rep.params = "levels=4..7";
  std::map<int, std::vector<int>> degs;          // level -> degree per vertex
  std::map<int, std::map<int, long>> level_mult;  // level -> max rays per edge level
  Complex c = build_complex(7, table, [&](const Complex& cc, int lvl) {
    if (lvl < 4) return;
    std::vector<int> d(cc.vertices.size());
    for (std::size_t v = 0; v < cc.vertices.size(); ++v)
      d[v] = static_cast<int>(cc.adj[v].size());
    degs[lvl] = std::move(d);
    std::map<int, long> mult;
    for (std::size_t v = 0; v < cc.vertices.size(); ++v) {
      std::map<int, long> per_level;
      for (const auto& [n, e] : cc.adj[v]) {
        (void)n;
        ++per_level[edge_level(cc, e, cc.round)];
      }
      for (const auto& [l, k] : per_level)
        mult[l] = std::max(mult[l], k);
    }
    long mx = 0;
    for (const auto& [l, k] : mult) {
      (void)l;
      mx = std::max(mx, k);
    }
    level_mult[lvl][0] = mx;
  });

  rep.verdict = Verdict::pass;
  const auto& d6 = degs[6];
  const auto& d7 = degs[7];
  // Vertices at least three rounds old by complex(6) must not change
  // degree between the last two levels.
  int cutoff_round = 5 - 3;
  for (std::size_t v = 0; v < d6.size(); ++v) {
    if (c.vertices[v].created_round > cutoff_round) continue;
    if (d6[v] != d7[v]) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("vertex " + std::to_string(v) + " degree " +
                            std::to_string(d6[v]) + " -> " +
                            std::to_string(d7[v]));
      break;
    }
  }
  int max6 = *std::max_element(d6.begin(), d6.end());
  int max7 = *std::max_element(d7.begin(), d7.end());
  if (max6 != max7) {
    rep.verdict = Verdict::fail;
    rep.witness.push_back("max degree " + std::to_string(max6) + " vs " +
                          std::to_string(max7));
  }
  long m6 = level_mult[6][0];
  long m7 = level_mult[7][0];
  if (m6 != m7) {
    rep.verdict = Verdict::fail;
    rep.witness.push_back("per-level incoming multiplicity " +
                          std::to_string(m6) + " vs " + std::to_string(m7));
  }
  rep.note = "max degree " + std::to_string(max7) +
             ", max per-level incoming rays " + std::to_string(m7);
  return rep;
}

// --- L2: side vertices sit on side middles ------------------------------

inline LemmaReport lemma_side_vertex(const Complex& c) {
  LemmaReport rep;
  rep.id = "L2";
  rep.level = c.round + 1;
  rep.params = "exhaustive over the given complex";
  rep.verdict = Verdict::pass;
  // Tiles that recorded each node as a side.
  std::unordered_map<EdgeId, std::vector<TileId>> side_tiles;
  for (const auto& t : c.tiles) {
    for (EdgeId s : t.sides) side_tiles[s].push_back(t.id);
  }
  for (const auto& v : c.vertices) {
    if (v.kind.cls != VertexClass::Side && v.kind.cls != VertexClass::EdgeMid)
      continue;
    const auto& root = c.root_edge(v.carrier);
    bool on_boundary_edge = root.boundary_type();
    if (v.kind.cls == VertexClass::Side && on_boundary_edge) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("side vertex " + std::to_string(v.id) +
                            " on boundary-type edge");
      break;
    }
    auto it = side_tiles.find(v.carrier);
    std::vector<TileId> owners;
    if (it != side_tiles.end()) {
      PlaneId owner_plane = c.tiles[root.owner].plane;
      for (TileId t : it->second) {
        if (c.tiles[t].plane == owner_plane) owners.push_back(t);
      }
    }
    std::size_t want = v.kind.cls == VertexClass::Side ? 2 : 1;
    bool ok = owners.size() == want;
    if (ok && want == 2) {
      ok = tile_level(c, owners[0], c.round) ==
               tile_level(c, owners[1], c.round) &&
           c.tiles[owners[0]].plane == c.tiles[owners[1]].plane;
    }
    if (!ok) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("vertex " + std::to_string(v.id) + " has " +
                            std::to_string(owners.size()) +
                            " coplanar side-owning tiles");
      break;
    }
  }
  return rep;
}

// --- L3: macro flip ----------------------------------------------------

inline LemmaReport lemma_macro_flip(const RuleTable& table, int max_level = 5) {
  LemmaReport rep;
  rep.id = "L3";
  rep.level = max_level;
  rep.params = "levels=1.." + std::to_string(max_level);
  rep.verdict = Verdict::pass;
  Complex c = build_complex(std::max(2, max_level), table);
  long total_moves = 0;
  for (int n = 1; n <= max_level && rep.verdict == Verdict::pass; ++n) {
    TileId t = detail::base_tile_of_level(c, n);
    const auto& tl = c.tile(t);
    for (int j = 0; j < 4 && rep.verdict == Verdict::pass; ++j) {
      // Corner path through corners[j], clockwise.
      VertexId from = tl.corners[(j + 3) % 4];
      VertexId via = tl.corners[j];
      VertexId to = tl.corners[(j + 1) % 4];
      Path p{detail::concat({flips_route(c, t, from, via, to)})};
      Path expect{detail::concat({flips_route(c, t, from,
                                              tl.corners[(j + 2) % 4], to)})};
      auto moves = macro_flip(c, p, t);
      total_moves += static_cast<long>(moves.size());
      Path got = apply_moves(c, p, moves);
      if (!(got == expect) ||
          moves.size() != static_cast<std::size_t>(std::pow(6, n - 1))) {
        rep.verdict = Verdict::fail;
        rep.witness.push_back("corner flip mismatch at level " +
                              std::to_string(n));
        break;
      }
      if (n <= 4) {
        // Involution: flipping the complementary path returns the original.
        auto back = macro_flip(c, got, t);
        if (!(apply_moves(c, got, back) == p)) {
          rep.verdict = Verdict::fail;
          rep.witness.push_back("flip involution failed at level " +
                                std::to_string(n));
        }
      }
    }
    if (n >= 2 && rep.verdict == Verdict::pass) {
      for (int s = 0; s < 4 && rep.verdict == Verdict::pass; ++s) {
        Path p = mid_route(c, t, s);
        auto moves = macro_flip(c, p, t);
        total_moves += static_cast<long>(moves.size());
        Path got = apply_moves(c, p, moves);
        Path expect = mid_route_complement(c, t, s);
        if (!(got == expect)) {
          rep.verdict = Verdict::fail;
          rep.witness.push_back("mid-side flip mismatch at level " +
                                std::to_string(n));
        }
      }
    }
  }
  rep.note = "total moves " + std::to_string(total_moves);
  return rep;
}

// Route along two adjacent sides of a tile, from -> via -> to.
inline std::vector<VertexId> flips_route(const Complex& c, TileId t,
                                         VertexId from, VertexId via,
                                         VertexId to) {
  return sixfold::detail::corner_route(c, t, from, via, to);
}

// Boundary arc between opposite side midpoints, starting at side s and
// passing the corner after it.
inline Path mid_route(const Complex& c, TileId t, int s) {
  VertexId a = side_mid(c, t, s);
  VertexId b = side_mid(c, t, (s + 2) % 4);
  auto cyc = tile_boundary_cycle(c, t);
  std::size_t n = cyc.size();
  std::size_t i0 = static_cast<std::size_t>(
      std::find(cyc.begin(), cyc.end(), a) - cyc.begin());
  Path p;
  for (std::size_t k = 0;; ++k) {
    VertexId cur = cyc[(i0 + k) % n];
    p.v.push_back(cur);
    if (k > 0 && cur == b) break;
  }
  return p;
}

inline Path mid_route_complement(const Complex& c, TileId t, int s) {
  VertexId a = side_mid(c, t, s);
  VertexId b = side_mid(c, t, (s + 2) % 4);
  auto cyc = tile_boundary_cycle(c, t);
  std::size_t n = cyc.size();
  std::size_t i0 = static_cast<std::size_t>(
      std::find(cyc.begin(), cyc.end(), a) - cyc.begin());
  Path p;
  for (std::size_t k = 0;; ++k) {
    VertexId cur = cyc[(i0 + n - (k % n)) % n];
    p.v.push_back(cur);
    if (k > 0 && cur == b) break;
  }
  return p;
}

// --- L4: push to boundary, geodesic lengths --------------------------------

inline LemmaReport lemma_boundary_push(const RuleTable& table,
                                       const Budgets& budgets,
                                       int max_level = 6) {
  LemmaReport rep;
  rep.id = "L4";
  rep.level = max_level;
  rep.params = "lengths at levels 1.." + std::to_string(max_level) +
               ", push samples at levels 2..3";
  rep.verdict = Verdict::pass;
  Complex c6 = build_complex(max_level, table);
  for (int n = 1; n <= max_level; ++n) {
    TileId t = detail::base_tile_of_level(c6, n);
    const auto& tl = c6.tile(t);
    long want = 1L << n;
    if (distance(c6, tl.corners[0], tl.corners[2]) != want ||
        distance(c6, tl.corners[1], tl.corners[3]) != want) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("corner distance != 2^n at level " +
                            std::to_string(n));
    }
    if (n >= 2) {
      if (distance(c6, side_mid(c6, t, 0), side_mid(c6, t, 2)) != want ||
          distance(c6, side_mid(c6, t, 1), side_mid(c6, t, 3)) != want) {
        rep.verdict = Verdict::fail;
        rep.witness.push_back("mid-side distance != 2^n at level " +
                              std::to_string(n));
      }
    }
  }

  // Push-out samples.
  Complex c2 = build_complex(2, table);
  {
    const auto& tl = c2.tile(0);
    Path p{{tl.corners[0], side_mid(c2, 0, 0), c2.tile(0).interior[0],
            c2.tile(0).interior[2], tl.corners[2]}};
    auto res = push_to_boundary(c2, p, 0, budgets.closure);
    if (res.outcome != PushOutcome::BoundaryForm) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("expected boundary form for " +
                            detail::show_path(p));
    }
    // A path already on the boundary stays put.
    Path q{flips_route(c2, 0, tl.corners[0], tl.corners[1], tl.corners[2])};
    auto res2 = push_to_boundary(c2, q, 0, budgets.closure);
    if (res2.outcome != PushOutcome::BoundaryForm || !res2.moves.empty()) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("boundary path did not come back unchanged");
    }
  }
  Complex c3 = build_complex(3, table);
  {
    // Interior paths with boundary endpoints resolve to one of the two
    // lemma outcomes under a generous budget.
    const auto& tl = c3.tile(0);
    VertexId u = side_mid(c3, 0, 0);
    std::vector<Path> samples;
    samples.push_back(Path{{tl.corners[0],
                            c3.vertex(u).id == u ? u : u, tl.interior[0],
                            tl.interior[2], tl.corners[2]}});
    for (auto& p : samples) {
      // Rebuild the sample on the finer graph: route through the
      // half-points along the straight macro-edges.
      Path q;
      for (std::size_t i = 0; i + 1 < p.v.size(); ++i) {
        EdgeId leaf = c3.leaf_between(p.v[i], p.v[i + 1]);
        if (leaf != kNone) {
          if (q.v.empty()) q.v.push_back(p.v[i]);
          q.v.push_back(p.v[i + 1]);
          continue;
        }
        auto da = bfs_distances(c3, p.v[i]);
        // straight 2-step connection via the split midpoint
        VertexId mid = kNone;
        for (const auto& [n, e] : c3.adj[p.v[i]]) {
          (void)e;
          if (c3.leaf_between(n, p.v[i + 1]) != kNone) {
            mid = n;
            break;
          }
        }
        (void)da;
        if (mid == kNone) throw std::logic_error("sample path broke");
        if (q.v.empty()) q.v.push_back(p.v[i]);
        q.v.push_back(mid);
        q.v.push_back(p.v[i + 1]);
      }
      auto res = push_to_boundary(c3, q, 0, budgets.closure);
      if (res.outcome == PushOutcome::Exhausted) {
        rep.verdict = Verdict::fail;
        rep.witness.push_back("push exhausted for " + detail::show_path(q));
      }
    }
  }
  return rep;
}

// --- L5: wiggle into the mid-side pasting -----------------------------

inline LemmaReport lemma_wiggle(const RuleTable& table) {
  LemmaReport rep;
  rep.id = "L5";
  rep.level = 5;
  rep.params = "all level-4 sides of complex(5)";
  rep.verdict = Verdict::pass;
  Complex c = build_complex(5, table);
  std::vector<EdgeId> sides;
  for (const auto& t : c.tiles) {
    if (t.plane != 0) continue;
    if (tile_level(c, t.id, c.round) != 4) continue;
    for (EdgeId s : t.sides) sides.push_back(s);
  }
  std::sort(sides.begin(), sides.end());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
  long count = 0;
  for (EdgeId s : sides) {
    Path p{walk_edge(c, s)};
    WiggleResult res;
    try {
      res = wiggle_into_pasting(c, p);
    } catch (const std::exception& e) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("side " + std::to_string(s) + ": " + e.what());
      break;
    }
    VertexId h = p.v[p.length() / 2];
    VertexId f = res.result.v[p.length() / 2];
    const auto& rec = c.pastings[res.pasting];
    bool left_plane = c.vertex(f).home_plane == rec.plane &&
                      c.vertex(f).planes == std::vector<PlaneId>{rec.plane};
    if (!left_plane || distance(c, h, f) < 2) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("wiggle result stayed near the carrying plane");
      break;
    }
    ++count;
  }
  rep.note = "sides checked: " + std::to_string(count);
  return rep;
}

// --- shared harness for the reduction lemmas ---------------------------

namespace detail {

struct ReductionCase {
  std::string name;
  Path path;
  const Complex* complex;
  bool must_pass;  // smallest level: exhaustive expectation
};

inline void run_reduction_cases(LemmaReport& rep,
                                const std::vector<ReductionCase>& cases,
                                long reduce_budget) {
  rep.verdict = Verdict::pass;
  bool saw_inconclusive = false;
  for (const auto& rc : cases) {
    auto res = reduce_search(*rc.complex, rc.path, reduce_budget);
    if (res.moves) {
      Path final = apply_moves(*rc.complex, rc.path, *res.moves);
      if (!is_null_form(*rc.complex, final)) {
        rep.verdict = Verdict::fail;
        rep.witness.push_back(rc.name + ": witness does not replay to null");
        return;
      }
      rep.witness.push_back(rc.name + ": null after " +
                            std::to_string(res.moves->size()) + " moves (" +
                            std::to_string(res.visited) + " visited)");
      continue;
    }
    if (res.exhausted) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back(rc.name + ": closure exhausted without null form");
      return;
    }
    if (rc.must_pass) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back(rc.name + ": budget too small at smallest level");
      return;
    }
    saw_inconclusive = true;
    rep.witness.push_back(rc.name + ": inconclusive at budget " +
                          std::to_string(reduce_budget));
  }
  if (rep.verdict == Verdict::pass && saw_inconclusive)
    rep.verdict = Verdict::inconclusive;
}

}  // namespace detail

// --- L6: local segment extraction ------------------------------------------

inline LemmaReport lemma_local_segment(const RuleTable& table,
                                       const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L6";
  rep.level = 3;
  rep.params = "part1 length 5*2^(n-2), part2 length 2^n, n=2 exhaustive, n=3 bounded";
  static Complex c2, c3;
  c2 = build_complex(2, table);
  c3 = build_complex(3, table);
  const auto& t2 = c2.tile(0);
  std::vector<detail::ReductionCase> cases;

  // n = 2, part 1: a boundary arc of length 5.
  {
    auto cyc = tile_boundary_cycle(c2, 0);
    Path p;
    for (int i = 0; i <= 5; ++i) p.v.push_back(cyc[static_cast<std::size_t>(i)]);
    cases.push_back({"part1-n2", p, &c2, true});
  }
  // n = 2, part 2: corner into the interior, length 4.
  {
    Path p{{t2.corners[0], side_mid(c2, 0, 0), t2.interior[1], t2.interior[2],
            t2.interior[0]}};
    cases.push_back({"part2-n2", p, &c2, true});
  }
  // n = 3, part 1: boundary arc of length 10.
  {
    auto cyc = tile_boundary_cycle(c3, 0);
    Path p;
    for (int i = 0; i <= 10; ++i)
      p.v.push_back(cyc[static_cast<std::size_t>(i)]);
    cases.push_back({"part1-n3", p, &c3, false});
  }
  // n = 3, part 2: corner to a strictly interior vertex, length 8.
  {
    const auto& t3 = c3.tile(0);
    VertexId q1 = side_mid(c3, 0, 0) == kNone ? kNone : kNone;
    (void)q1;
    auto top = walk_side(c3, 0, 0);  // UL .. UR, 4 edges
    VertexId mtop_left = top[1];
    VertexId u = top[2];
    VertexId mua = c3.edge(c3.leaf_between(u, kNone) == kNone
                               ? 0
                               : 0).id;  // placeholder, resolved below
    (void)mua;
    // u -> midpoint toward A -> A
    VertexId mid_ua = kNone;
    for (const auto& [n, e] : c3.adj[u]) {
      (void)e;
      const auto& root = c3.root_edge(c3.leaf_between(u, n));
      if (root.edge_type == 1 && root.owner == 0) mid_ua = n;
    }
    VertexId a_root = t3.interior[0];
    TileId lu = c3.tile(0).children[static_cast<int>(ChildPos::LeftUpper)];
    VertexId c_lu = c3.tile(lu).interior[2];
    VertexId b_lu = c3.tile(lu).interior[1];
    Path p{{t3.corners[0], mtop_left, u, mid_ua, a_root, c_lu, b_lu, mid_ua,
            a_root}};
    cases.push_back({"part2-n3", p, &c3, false});
  }
  detail::run_reduction_cases(rep, cases, budgets.reduce);
  return rep;
}

// --- L7: non-extendable paths ---------------------------------------------

inline LemmaReport lemma_non_extendable(const RuleTable& table,
                                        const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L7";
  rep.level = 3;
  rep.params = "mid-to-mid path in a level-2 subtile, extensions longer than it";
  static Complex c3;
  c3 = build_complex(3, table);
  TileId t = c3.tile(0).children[static_cast<int>(ChildPos::LeftUpper)];
  Path p = mid_route(c3, t, 0);  // length 4
  std::vector<detail::ReductionCase> cases;
  {
    auto w = detail::walk_starting_at(c3, p.v.back(), 5,
                                      p.v[p.v.size() - 2]);
    Path pw = p;
    pw.v.insert(pw.v.end(), w->begin() + 1, w->end());
    cases.push_back({"PW", pw, &c3, true});
  }
  {
    auto w = detail::walk_ending_at(c3, p.v.front(), 5, p.v[1]);
    Path wp;
    wp.v = *w;
    wp.v.insert(wp.v.end(), p.v.begin() + 1, p.v.end());
    cases.push_back({"WP", wp, &c3, true});
  }
  detail::run_reduction_cases(rep, cases, budgets.reduce);
  return rep;
}

// --- L8: dead patterns -------------------------------------------------

inline LemmaReport lemma_dead_patterns(const RuleTable& table,
                                       const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L8";
  rep.level = 3;
  rep.params =
      "AUB/ACB/CXD and mirrors in a level-2 subtile, wings twice the middle; "
      "level-3 carrier bounded";
  static Complex c3;
  c3 = build_complex(3, table);
  TileId lu = c3.tile(0).children[static_cast<int>(ChildPos::LeftUpper)];
  const auto& tl = c3.tile(lu);
  VertexId a = tl.interior[0], b = tl.interior[1], cv = tl.interior[2];
  VertexId mtop = side_mid(c3, lu, 0);
  VertexId mright = side_mid(c3, lu, 1);
  VertexId mbot = side_mid(c3, lu, 2);

  std::vector<detail::ReductionCase> cases;
  auto add_case = [&](const std::string& name, const Path& w2,
                      const std::string& want) {
    // Wings built deterministically, at least twice the middle length.
    int wing = 2 * static_cast<int>(w2.length());
    auto w1 = detail::walk_ending_at(c3, w2.v.front(), wing, w2.v[1]);
    auto w3 = detail::walk_starting_at(c3, w2.v.back(), wing,
                                       w2.v[w2.v.size() - 2]);
    Path full;
    full.v = *w1;
    full.v.insert(full.v.end(), w2.v.begin() + 1, w2.v.end());
    full.v.insert(full.v.end(), w3->begin() + 1, w3->end());
    // The middle subpath carries the named dead pattern.
    auto pat = pattern_of(c3, w2);
    auto matches = find_dead_patterns(c3, pat);
    bool found = false;
    for (const auto& m : matches) found = found || m.name == want;
    if (!found) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back(name + ": constructed carrier lacks pattern " +
                            want);
      return;
    }
    cases.push_back({name, full, &c3, true});
  };

  add_case("AUB-n2", Path{{a, mtop, b}}, "AUB");
  add_case("ACB-n2", Path{{a, cv, b}}, "ACB");
  add_case("CXD-n2", Path{{cv, tl.corners[3], mbot}}, "CXD");
  add_case("BUA-n2", Path{{b, mtop, a}}, "BUA");
  add_case("BCA-n2", Path{{b, cv, a}}, "BCA");
  add_case("DXC-n2", Path{{mbot, tl.corners[3], cv}}, "DXC");
  (void)mright;

  if (rep.verdict != Verdict::fail) {
    // Level-3 carrier: the root's own A -> U -> B path, wings of twice its
    // length; bounded search.
    const auto& rt = c3.tile(0);
    VertexId u = side_mid(c3, 0, 0);
    VertexId mua = kNone, mub = kNone;
    for (const auto& [n, e] : c3.adj[u]) {
      const auto& root = c3.root_edge(e);
      if (root.owner == 0 && root.edge_type == 1) mua = n;
      if (root.owner == 0 && root.edge_type == 4) mub = n;
    }
    Path w2{{rt.interior[0], mua, u, mub, rt.interior[1]}};
    auto pat = pattern_of(c3, w2);
    bool found = false;
    for (const auto& m : find_dead_patterns(c3, pat))
      found = found || (m.name == "AUB" && m.tile == 0);
    if (!found) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("level-3 AUB carrier pattern not recognized");
    } else {
      int wing = 2 * static_cast<int>(w2.length());
      auto w1 = detail::walk_ending_at(c3, w2.v.front(), wing, w2.v[1]);
      auto w3 = detail::walk_starting_at(c3, w2.v.back(), wing,
                                         w2.v[w2.v.size() - 2]);
      Path full;
      full.v = *w1;
      full.v.insert(full.v.end(), w2.v.begin() + 1, w2.v.end());
      full.v.insert(full.v.end(), w3->begin() + 1, w3->end());
      cases.push_back({"AUB-n3", full, &c3, false});
    }
  }
  if (rep.verdict != Verdict::fail)
    detail::run_reduction_cases(rep, cases, budgets.reduce);
  return rep;
}

// --- L9: dead paths in the lower subtile --------------------------------

inline LemmaReport lemma_lower_subtile(const RuleTable& table,
                                       const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L9";
  rep.level = 3;
  rep.params = "wings longer than 2^(n+1); n=2 exhaustive, n=3 bounded";
  static Complex c3;
  c3 = build_complex(3, table);
  std::vector<detail::ReductionCase> cases;
  {
    // n = 2: the Middle subtile; its lower-left corner is the root's A
    // vertex, the C edge runs to its own interior C.
    TileId m = c3.tile(0).children[static_cast<int>(ChildPos::Middle)];
    const auto& tm = c3.tile(m);
    VertexId y = tm.corners[3];
    VertexId x = tm.interior[2];
    VertexId z = side_mid(c3, m, 2);
    int wing = (1 << 3) + 1;
    auto w1 = detail::walk_ending_at(c3, x, wing, y);
    auto w2 = detail::walk_starting_at(c3, z, wing, y);
    Path full;
    full.v = *w1;
    full.v.push_back(y);
    full.v.push_back(z);
    full.v.insert(full.v.end(), w2->begin() + 1, w2->end());
    cases.push_back({"lower-n2", full, &c3, true});
  }
  {
    // n = 3: the root tile itself.
    const auto& rt = c3.tile(0);
    VertexId y = rt.corners[3];
    VertexId x = kNone, z = kNone;
    for (const auto& [n, e] : c3.adj[y]) {
      const auto& root = c3.root_edge(e);
      if (root.owner == 0 && root.edge_type == 7) x = n;
      if (root.owner == 0 && root.edge_type == 12) z = n;
    }
    int wing = (1 << 4) + 1;
    auto w1 = detail::walk_ending_at(c3, x, wing, y);
    auto w2 = detail::walk_starting_at(c3, z, wing, y);
    Path full;
    full.v = *w1;
    full.v.push_back(y);
    full.v.push_back(z);
    full.v.insert(full.v.end(), w2->begin() + 1, w2->end());
    cases.push_back({"lower-n3", full, &c3, false});
  }
  detail::run_reduction_cases(rep, cases, budgets.reduce);
  return rep;
}

// --- L10: incorrect segments -----------------------------------------------

inline LemmaReport lemma_incorrect_segments(const RuleTable& table,
                                            const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L10";
  rep.level = 3;
  rep.params = "wings longer than 2^(n+2); n=2 exhaustive, n=2 subtile bounded";
  static Complex c2, c3;
  c2 = build_complex(2, table);
  c3 = build_complex(3, table);
  std::vector<detail::ReductionCase> cases;
  {
    // Smallest case: A U B across the level-2 complex, wings of length 17.
    const auto& t = c2.tile(0);
    VertexId a = t.interior[0], b = t.interior[1];
    VertexId u = side_mid(c2, 0, 0);
    Path mid{{a, u, b}};
    auto segs = incorrect_segments(c2, mid);
    if (segs.size() != 1 || segs[0].tile != 0) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("A U B not recognized as an incorrect segment");
      return rep;
    }
    auto w1 = detail::walk_ending_at(c2, a, 17, u);
    auto w2 = detail::walk_starting_at(c2, b, 17, u);
    Path full;
    full.v = *w1;
    full.v.push_back(u);
    full.v.insert(full.v.end(), w2->begin(), w2->end());
    cases.push_back({"incorrect-n2", full, &c2, true});
  }
  {
    // Level-2 subtile inside complex(3), wings of length 17.
    TileId lu = c3.tile(0).children[static_cast<int>(ChildPos::LeftUpper)];
    const auto& tl = c3.tile(lu);
    VertexId a = tl.interior[0], b = tl.interior[1];
    VertexId u = side_mid(c3, lu, 0);
    auto w1 = detail::walk_ending_at(c3, a, 17, u);
    auto w2 = detail::walk_starting_at(c3, b, 17, u);
    Path full;
    full.v = *w1;
    full.v.push_back(u);
    full.v.insert(full.v.end(), w2->begin(), w2->end());
    cases.push_back({"incorrect-subtile", full, &c3, false});
  }
  detail::run_reduction_cases(rep, cases, budgets.reduce);
  return rep;
}

// --- L11: path correctness ---------------------------------------------

inline LemmaReport lemma_path_correctness(const RuleTable& table,
                                          const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L11";
  rep.level = 3;
  rep.params = "exhaustive closures at levels 2 and 3";
  rep.verdict = Verdict::pass;
  for (int n = 2; n <= 3; ++n) {
    Complex c = build_complex(n, table);
    const auto& t = c.tile(0);
    Path p{flips_route(c, 0, t.corners[0], t.corners[1], t.corners[2])};
    Path complement{
        flips_route(c, 0, t.corners[0], t.corners[3], t.corners[2])};
    auto sum = flip_closure(c, p, budgets.closure, &complement, true);
    std::ostringstream os;
    os << "level " << n << ": visited " << sum.visited;
    rep.witness.push_back(os.str());
    if (sum.null_found || sum.incorrect_found) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("closure reached a null form or incorrect segment");
      return rep;
    }
    if (!sum.exhausted) {
      rep.verdict = Verdict::inconclusive;
      rep.witness.push_back("closure budget exhausted");
      return rep;
    }
    if (!sum.target_found) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("complementary route missing from the closure");
      return rep;
    }
  }
  return rep;
}

// --- L12: pasting preserves distances; entry distances ------------------

inline LemmaReport lemma_pasting_distance(const RuleTable& table,
                                          const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L12";
  rep.level = 5;
  rep.params = "full check at complex(4), sampled pairs at complex(5), "
               "entry distances exhaustive at complex(5)";
  rep.verdict = Verdict::pass;

  // Full pre/post check across the first pasting round.
  {
    Complex c = build_complex(3, table);
    subdivide_round(c);
    std::size_t nv = c.vertices.size();
    std::vector<std::vector<int>> before(nv);
    for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v)
      before[static_cast<std::size_t>(v)] = bfs_distances(c, v);
    pasting_round(c);
    for (VertexId v = 0;
         v < static_cast<VertexId>(nv) && rep.verdict == Verdict::pass; ++v) {
      auto after = bfs_distances(c, v);
      for (std::size_t u = 0; u < nv; ++u) {
        if (after[u] != before[static_cast<std::size_t>(v)][u]) {
          rep.verdict = Verdict::fail;
          rep.witness.push_back("distance changed between " +
                                std::to_string(v) + " and " +
                                std::to_string(u));
          break;
        }
      }
    }
  }

  // Sampled pairs across the complex(5) pasting round.
  if (rep.verdict == Verdict::pass) {
    Complex c = build_complex(4, table);
    subdivide_round(c);
    std::size_t nv = c.vertices.size();
    std::uint64_t state = budgets.seed;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int i = 0; i < budgets.sample_pairs; ++i) {
      auto a = static_cast<VertexId>(detail::splitmix64(state) % nv);
      auto b = static_cast<VertexId>(detail::splitmix64(state) % nv);
      pairs.push_back({a, b});
    }
    std::vector<int> before;
    before.reserve(pairs.size());
    for (auto [a, b] : pairs) before.push_back(distance(c, a, b));
    pasting_round(c);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (distance(c, pairs[i].first, pairs[i].second) != before[i]) {
        rep.verdict = Verdict::fail;
        rep.witness.push_back("sampled distance changed");
        break;
      }
    }
  }

  // Entry distances.
  if (rep.verdict == Verdict::pass) {
    Complex c = build_complex(5, table);
    auto rows = pasting_entry_distances(c);
    long fresh = 0;
    for (const auto& r : rows) {
      long bound = 1L << (r.pasted_level - 1);
      if (r.dist_to_boundary < bound) {
        rep.verdict = Verdict::fail;
        rep.witness.push_back(
            "entry " + std::to_string(r.entry) + " at distance " +
            std::to_string(r.dist_to_boundary) + " < " + std::to_string(bound));
        break;
      }
      if (r.pasted_level == 2 && r.dist_to_boundary >= 2) ++fresh;
    }
    rep.note = "entry rows checked: " + std::to_string(rows.size()) +
               ", fresh level-2 rows: " + std::to_string(fresh);
  }
  return rep;
}

// --- L13: paths into pasted areas ----------------------------------------

inline LemmaReport lemma_pasting_paths(const RuleTable& table,
                                       const Budgets& budgets) {
  LemmaReport rep;
  rep.id = "L13";
  rep.level = 5;
  rep.params = "three-entry candidates at complex(5); bounded entry walk at "
               "level 3";
  rep.verdict = Verdict::pass;

  // Part 1: a path entering three pastings, with planar connecting
  // segments, cannot lie in one macrotile: its edges share no plane.
  {
    Complex c = build_complex(5, table);
    std::vector<const PastingRecord*> recs;
    for (const auto& r : c.pastings) {
      if (r.round == 3) recs.push_back(&r);
      if (recs.size() == 3) break;
    }
    if (recs.size() < 3) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("not enough pastings for the candidate");
      return rep;
    }
    // Base-plane BFS between the hop points.
    auto base_path = [&](VertexId from, VertexId to) {
      std::vector<VertexId> prev(c.vertices.size(), kNone);
      std::vector<int> dist(c.vertices.size(), -1);
      std::deque<VertexId> q;
      dist[from] = 0;
      q.push_back(from);
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        if (v == to) break;
        for (const auto& [n, e] : c.adj[v]) {
          if (dist[n] >= 0) continue;
          if (!c.edges[e].in_plane(0)) continue;
          dist[n] = dist[v] + 1;
          prev[n] = v;
          q.push_back(n);
        }
      }
      std::vector<VertexId> out;
      for (VertexId v = to; v != kNone; v = prev[v]) out.push_back(v);
      std::reverse(out.begin(), out.end());
      return out;
    };
    Path p;
    for (int i = 0; i < 3; ++i) {
      const auto& s = recs[static_cast<std::size_t>(i)]->site;
      VertexId ta = recs[static_cast<std::size_t>(i)]->created[3];
      if (i == 0) {
        p.v = {s.x2, ta, s.z2};
      } else {
        auto hop = base_path(p.v.back(), s.x2);
        p.v.insert(p.v.end(), hop.begin() + 1, hop.end());
        p.v.push_back(ta);
        p.v.push_back(s.z2);
      }
    }
    require_valid_path(c, p);
    std::vector<PlaneId> common = c.edge(c.leaf_between(p.v[0], p.v[1])).planes;
    for (std::size_t i = 1; i + 1 < p.v.size(); ++i) {
      const auto& pl = c.edge(c.leaf_between(p.v[i], p.v[i + 1])).planes;
      std::vector<PlaneId> next;
      std::set_intersection(common.begin(), common.end(), pl.begin(),
                            pl.end(), std::back_inserter(next));
      common = std::move(next);
    }
    if (!common.empty()) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("three-entry candidate fits one plane");
      return rep;
    }
    rep.witness.push_back("three-entry candidate spans multiple planes: " +
                          detail::show_path(p));
  }

  // Part 2: entry walks of length 2^(n+1) with no exits reduce to null.
  static Complex c4, c5;
  c4 = build_complex(4, table);
  c5 = build_complex(5, table);
  std::vector<detail::ReductionCase> cases;
  {
    const auto& rec = c4.pastings.front();
    VertexId x1 = rec.site.x1;
    VertexId t1 = rec.created[0], t2 = rec.created[1];
    VertexId tb = rec.created[4], tc = rec.created[5];
    Path p{{x1, t2, t1, tc, tb, t2, t1, tc, tb}};
    cases.push_back({"entry-n2", p, &c4, true});
  }
  {
    // A pasting from the complex(4) round, one subdivision later: level 3.
    const PastingRecord* rec = nullptr;
    for (const auto& r : c5.pastings) {
      if (r.round == 3) {
        rec = &r;
        break;
      }
    }
    auto attach = walk_edge(c5, rec->site.x_half);
    {
      auto left = walk_edge(c5, rec->site.z_half);
      attach.insert(attach.end(), left.begin(), left.end());
    }
    std::sort(attach.begin(), attach.end());
    std::vector<VertexId> allowed;
    for (const auto& kv : c5.plane(rec->plane).rot) {
      if (!std::binary_search(attach.begin(), attach.end(), kv.first))
        allowed.push_back(kv.first);
    }
    std::sort(allowed.begin(), allowed.end());
    VertexId x1 = rec->site.x1;
    VertexId first = kNone;
    for (const auto& [n, e] : c5.adj[x1]) {
      if (c5.tiles[c5.root_edge(e).owner].plane == rec->plane &&
          std::binary_search(allowed.begin(), allowed.end(), n)) {
        first = n;
        break;
      }
    }
    std::vector<VertexId> walk = {x1, first};
    if (!detail::find_walk_rec(c5, walk, 16, allowed)) {
      rep.verdict = Verdict::fail;
      rep.witness.push_back("no interior entry walk of length 16 found");
      return rep;
    }
    cases.push_back({"entry-n3", Path{walk}, &c5, false});
  }
  detail::run_reduction_cases(rep, cases, budgets.reduce);
  return rep;
}

// --- suite ---------------------------------------------------------------

inline std::vector<LemmaReport> run_suite(const Complex& c,
                                          const std::vector<std::string>& sel,
                                          const Budgets& budgets) {
  auto selected = [&](const std::string& id) {
    return sel.empty() || std::find(sel.begin(), sel.end(), id) != sel.end();
  };
  std::vector<LemmaReport> out;
  const RuleTable& table = c.table;
  if (selected("L1")) out.push_back(lemma_degree_bound(table, budgets));
  if (selected("L2")) out.push_back(lemma_side_vertex(c));
  if (selected("L3")) out.push_back(lemma_macro_flip(table));
  if (selected("L4")) out.push_back(lemma_boundary_push(table, budgets));
  if (selected("L5")) out.push_back(lemma_wiggle(table));
  if (selected("L6")) out.push_back(lemma_local_segment(table, budgets));
  if (selected("L7")) out.push_back(lemma_non_extendable(table, budgets));
  if (selected("L8")) out.push_back(lemma_dead_patterns(table, budgets));
  if (selected("L9")) out.push_back(lemma_lower_subtile(table, budgets));
  if (selected("L10")) out.push_back(lemma_incorrect_segments(table, budgets));
  if (selected("L11")) out.push_back(lemma_path_correctness(table, budgets));
  if (selected("L12")) out.push_back(lemma_pasting_distance(table, budgets));
  if (selected("L13")) out.push_back(lemma_pasting_paths(table, budgets));
  if (!sel.empty()) {
    for (const auto& id : sel) {
      bool known = false;
      for (const auto& r : out) known = known || r.id == id;
      if (!known) throw std::invalid_argument("unknown lemma id " + id);
    }
  }
  return out;
}

inline std::string serialize_reports(const std::vector<LemmaReport>& reports,
                                     const Budgets& budgets) {
  std::ostringstream os;
  os << "# lemma suite report\n";
  os << "budgets: closure=" << budgets.closure << " reduce=" << budgets.reduce
     << " seed=" << budgets.seed << " sample_pairs=" << budgets.sample_pairs
     << "\n\n";
  for (const auto& r : reports) {
    os << "[" << r.id << "]\n";
    os << "level: " << r.level << "\n";
    os << "params: " << r.params << "\n";
    os << "verdict: " << verdict_name(r.verdict) << "\n";
    if (!r.note.empty()) os << "note: " << r.note << "\n";
    for (const auto& w : r.witness) os << "witness: " << w << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace sixfold
