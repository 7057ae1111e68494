#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "sixfold/core.hpp"
#include "sixfold/paths.hpp"
#include "sixfold/patterns.hpp"

namespace sixfold {

namespace detail {

struct PathHash {
  std::size_t operator()(const std::vector<VertexId>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (VertexId x : v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

struct ClosureSummary {
  long visited = 0;
  bool null_found = false;
  bool incorrect_found = false;
  bool exhausted = false;
  bool target_found = false;
  bool budget_hit = false;
};

// Breadth-first closure of a path under local moves, with exact vertex-id
// deduplication. Null-form or incorrect-segment detection short-circuits.
inline ClosureSummary flip_closure(const Complex& c, const Path& start,
                                   long budget,
                                   const Path* target = nullptr,
                                   bool check_incorrect = true) {
  require_valid_path(c, start);
  ClosureSummary sum;
  std::unordered_set<std::vector<VertexId>, detail::PathHash> seen;
  std::deque<std::vector<VertexId>> queue;
  seen.insert(start.v);
  queue.push_back(start.v);
  auto inspect = [&](const std::vector<VertexId>& v) {
    Path p{v};
    if (is_null_form_unchecked(p)) sum.null_found = true;
    if (target && v == target->v) sum.target_found = true;
    if (check_incorrect && !sum.incorrect_found) {
      if (!incorrect_segments(c, p).empty()) sum.incorrect_found = true;
    }
  };
  inspect(start.v);
  ++sum.visited;
  while (!queue.empty()) {
    if (sum.null_found || sum.incorrect_found) return sum;
    if (sum.visited >= budget) {
      sum.budget_hit = true;
      return sum;
    }
    Path cur{queue.front()};
    queue.pop_front();
    for (const Move& m : local_moves(c, cur)) {
      Path nxt = apply_move(c, cur, m);
      auto ins = seen.insert(nxt.v);
      if (!ins.second) continue;
      inspect(nxt.v);
      ++sum.visited;
      if (sum.null_found || sum.incorrect_found) return sum;
      if (sum.visited >= budget) {
        sum.budget_hit = true;
        return sum;
      }
      queue.push_back(std::move(nxt.v));
    }
  }
  sum.exhausted = true;
  return sum;
}

struct ReduceResult {
  std::optional<std::vector<Move>> moves;
  bool exhausted = false;  // the whole closure was enumerated, no null form
  long visited = 0;
};

// Breadth-first search for a move sequence reaching a null form. An empty
// result with exhausted == false is inconclusive: the budget ran out.
inline ReduceResult reduce_search(const Complex& c, const Path& start,
                                  long budget) {
  require_valid_path(c, start);
  ReduceResult res;
  if (is_null_form_unchecked(start)) {
    res.moves = std::vector<Move>{};
    res.visited = 1;
    return res;
  }
  struct Node {
    std::vector<VertexId> v;
    long parent;
    Move via;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::vector<VertexId>, detail::PathHash> seen;
  nodes.push_back({start.v, -1, Move{}});
  seen.insert(start.v);
  auto unwind = [&](long idx) {
    std::vector<Move> moves;
    for (long i = idx; nodes[i].parent >= 0; i = nodes[i].parent)
      moves.push_back(nodes[i].via);
    std::reverse(moves.begin(), moves.end());
    return moves;
  };
  for (long head = 0; head < static_cast<long>(nodes.size()); ++head) {
    if (static_cast<long>(nodes.size()) >= budget) {
      res.visited = static_cast<long>(nodes.size());
      return res;
    }
    Path cur{nodes[head].v};
    for (const Move& m : local_moves(c, cur)) {
      Path nxt = apply_move(c, cur, m);
      if (!seen.insert(nxt.v).second) continue;
      nodes.push_back({nxt.v, head, m});
      if (is_null_form_unchecked(nxt)) {
        res.moves = unwind(static_cast<long>(nodes.size()) - 1);
        res.visited = static_cast<long>(nodes.size());
        return res;
      }
      if (static_cast<long>(nodes.size()) >= budget) {
        res.visited = static_cast<long>(nodes.size());
        return res;
      }
    }
  }
  res.exhausted = true;
  res.visited = static_cast<long>(nodes.size());
  return res;
}

inline std::optional<std::vector<Move>> reduce_to_null(const Complex& c,
                                                       const Path& start,
                                                       long budget) {
  return reduce_search(c, start, budget).moves;
}

enum class PushOutcome { NullWitness, BoundaryForm, Exhausted };

struct PushResult {
  PushOutcome outcome = PushOutcome::Exhausted;
  std::vector<Move> moves;
  long visited = 0;
};

// Searches the in-tile flip closure for either a null form or a form lying
// entirely on the tile boundary. Exhausted is a permitted outcome; the
// search never leaves the tile region.
inline PushResult push_to_boundary(const Complex& c, const Path& start,
                                   TileId t, long budget) {
  require_valid_path(c, start);
  auto region = region_vertices(c, t);
  auto in_region = [&](VertexId v) {
    return std::binary_search(region.begin(), region.end(), v);
  };
  auto boundary = boundary_vertices(c, t);
  auto on_boundary = [&](VertexId v) {
    return std::binary_search(boundary.begin(), boundary.end(), v);
  };
  for (VertexId v : start.v) {
    if (!in_region(v)) throw std::invalid_argument("path leaves the tile");
  }
  if (!on_boundary(start.v.front()) || !on_boundary(start.v.back()))
    throw std::invalid_argument("endpoints not on boundary");

  // Moves are restricted to tiles of the same planar subdivision.
  std::unordered_map<TileId, bool> inside_memo;
  auto tile_inside = [&](TileId m) {
    auto it = inside_memo.find(m);
    if (it != inside_memo.end()) return it->second;
    bool ok = false;
    for (TileId cur = m; cur != kNone; cur = c.tiles[cur].parent) {
      if (cur == t) {
        ok = true;
        break;
      }
    }
    inside_memo[m] = ok;
    return ok;
  };

  struct Node {
    std::vector<VertexId> v;
    long parent;
    Move via;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::vector<VertexId>, detail::PathHash> seen;
  nodes.push_back({start.v, -1, Move{}});
  seen.insert(start.v);
  PushResult res;
  auto unwind = [&](long idx) {
    std::vector<Move> moves;
    for (long i = idx; nodes[i].parent >= 0; i = nodes[i].parent)
      moves.push_back(nodes[i].via);
    std::reverse(moves.begin(), moves.end());
    return moves;
  };
  auto classify = [&](const std::vector<VertexId>& v, long idx) -> bool {
    Path p{v};
    if (is_null_form_unchecked(p)) {
      res.outcome = PushOutcome::NullWitness;
      res.moves = unwind(idx);
      return true;
    }
    bool all = true;
    for (VertexId x : v) {
      if (!on_boundary(x)) {
        all = false;
        break;
      }
    }
    if (all) {
      res.outcome = PushOutcome::BoundaryForm;
      res.moves = unwind(idx);
      return true;
    }
    return false;
  };
  if (classify(start.v, 0)) {
    res.visited = 1;
    return res;
  }
  for (long head = 0; head < static_cast<long>(nodes.size()); ++head) {
    res.visited = static_cast<long>(nodes.size());
    if (res.visited >= budget) return res;
    Path cur{nodes[head].v};
    for (const Move& m : local_moves(c, cur)) {
      if (!tile_inside(m.tile)) continue;
      Path nxt = apply_move(c, cur, m);
      if (!seen.insert(nxt.v).second) continue;
      nodes.push_back({nxt.v, head, m});
      if (classify(nxt.v, static_cast<long>(nodes.size()) - 1)) {
        res.visited = static_cast<long>(nodes.size());
        return res;
      }
      if (static_cast<long>(nodes.size()) >= budget) {
        res.visited = static_cast<long>(nodes.size());
        return res;
      }
    }
  }
  res.visited = static_cast<long>(nodes.size());
  return res;
}

}  // namespace sixfold
