#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sixfold/core.hpp"
#include "sixfold/pasting.hpp"

namespace sixfold {

inline std::vector<int> bfs_distances(const Complex& c, VertexId from) {
  std::vector<int> dist(c.vertices.size(), -1);
  std::deque<VertexId> q;
  dist[from] = 0;
  q.push_back(from);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (const auto& [n, e] : c.adj[v]) {
      (void)e;
      if (dist[n] < 0) {
        dist[n] = dist[v] + 1;
        q.push_back(n);
      }
    }
  }
  return dist;
}

inline int distance(const Complex& c, VertexId a, VertexId b) {
  c.vertex(a);
  c.vertex(b);
  auto d = bfs_distances(c, a);
  if (d[b] < 0)
    throw std::logic_error("disconnected vertices: structural violation");
  return d[b];
}

struct GeodesicBundle {
  VertexId source = kNone, target = kNone;
  int dist = 0;
  long geodesic_count = 0;  // saturated at the cap
  bool count_capped = false;
  std::vector<VertexId> midpoints;  // vertices at distance ceil(D/2) on
                                    // some geodesic, sorted
  int spread = 0;                   // max pairwise distance within midpoints
};

// Midpoints come from the layered shortest-path structure and do not
// depend on the enumeration cap; only the geodesic count saturates.
inline GeodesicBundle geodesic_bundle(const Complex& c, VertexId a,
                                      VertexId b, long cap = 1000000) {
  GeodesicBundle out;
  out.source = a;
  out.target = b;
  auto da = bfs_distances(c, a);
  auto db = bfs_distances(c, b);
  if (da[b] < 0) throw std::logic_error("disconnected vertices");
  int D = da[b];
  out.dist = D;

  std::vector<VertexId> on_geo;
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertices.size()); ++v) {
    if (da[v] >= 0 && db[v] >= 0 && da[v] + db[v] == D) on_geo.push_back(v);
  }
  int half = (D + 1) / 2;
  for (VertexId v : on_geo) {
    if (da[v] == half) out.midpoints.push_back(v);
  }
  std::sort(out.midpoints.begin(), out.midpoints.end());

  // Path count over the layered DAG, saturating at the cap.
  std::vector<long> cnt(c.vertices.size(), 0);
  cnt[a] = 1;
  std::sort(on_geo.begin(), on_geo.end(),
            [&](VertexId x, VertexId y) { return da[x] < da[y]; });
  for (VertexId v : on_geo) {
    if (v == a) continue;
    long total = 0;
    for (const auto& [n, e] : c.adj[v]) {
      (void)e;
      if (da[n] >= 0 && db[n] >= 0 && da[n] + db[n] == D &&
          da[n] + 1 == da[v]) {
        total += cnt[n];
        if (total >= cap) {
          total = cap;
          break;
        }
      }
    }
    cnt[v] = total;
  }
  out.geodesic_count = cnt[b];
  out.count_capped = cnt[b] >= cap;

  int spread = 0;
  for (VertexId m : out.midpoints) {
    auto dm = bfs_distances(c, m);
    for (VertexId m2 : out.midpoints) spread = std::max(spread, dm[m2]);
  }
  out.spread = spread;
  return out;
}

struct ScanRow {
  VertexId a = kNone, b = kNone;
  int dist = 0;
  int spread = 0;
  double ratio = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
};

inline ScanResult ellipticity_scan(
    const Complex& c, const std::vector<std::pair<VertexId, VertexId>>& pairs,
    long cap = 1000000) {
  ScanResult out;
  for (const auto& [a, b] : pairs) {
    auto bundle = geodesic_bundle(c, a, b, cap);
    ScanRow row;
    row.a = a;
    row.b = b;
    row.dist = bundle.dist;
    row.spread = bundle.spread;
    row.ratio = bundle.dist > 0
                    ? static_cast<double>(bundle.spread) / bundle.dist
                    : 0.0;
    out.rows.push_back(row);
  }
  if (!out.rows.empty()) {
    std::vector<double> ratios;
    for (const auto& r : out.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    out.min_ratio = ratios.front();
    out.median_ratio = ratios[ratios.size() / 2];
  }
  return out;
}

struct EntryDistance {
  VertexId entry = kNone;
  PastingId pasting = kNone;
  int pasted_level = 0;
  TileId host = kNone;
  int dist_to_boundary = 0;
};

// For every vertex with an entry edge into a pasted tile, and every
// macrotile strictly containing it whose boundary the pasted tile avoids,
// the distance from the vertex to that boundary.
inline std::vector<EntryDistance> pasting_entry_distances(const Complex& c) {
  std::vector<EntryDistance> out;
  for (std::size_t pi = 0; pi < c.pastings.size(); ++pi) {
    const auto& rec = c.pastings[pi];
    int level = tile_level(c, rec.tile, c.round);
    auto pasted_region = region_vertices(c, rec.tile);

    // Vertices on the attaching sides holding an edge drawn by the pasted
    // structure.
    std::vector<VertexId> attach = walk_edge(c, rec.site.x_half);
    {
      auto left = walk_edge(c, rec.site.z_half);
      attach.insert(attach.end(), left.begin(), left.end());
    }
    std::sort(attach.begin(), attach.end());
    attach.erase(std::unique(attach.begin(), attach.end()), attach.end());

    for (VertexId v : attach) {
      if (v == rec.site.y) continue;
      bool has_entry = false;
      for (const auto& [n, e] : c.adj[v]) {
        (void)n;
        if (c.tiles[c.root_edge(e).owner].plane == rec.plane &&
            c.vertex(v).home_plane != rec.plane) {
          has_entry = true;
          break;
        }
      }
      if (!has_entry) continue;
      for (TileId host : strict_enclosing_chain(c, v)) {
        auto hb = boundary_vertices(c, host);
        bool touches = false;
        for (VertexId pv : pasted_region) {
          if (std::binary_search(hb.begin(), hb.end(), pv)) {
            touches = true;
            break;
          }
        }
        if (touches) continue;
        // BFS from v until the host boundary.
        std::vector<int> dist(c.vertices.size(), -1);
        std::deque<VertexId> q;
        dist[v] = 0;
        q.push_back(v);
        int best = -1;
        while (!q.empty() && best < 0) {
          VertexId cur = q.front();
          q.pop_front();
          if (std::binary_search(hb.begin(), hb.end(), cur)) {
            best = dist[cur];
            break;
          }
          for (const auto& [n, e] : c.adj[cur]) {
            (void)e;
            if (dist[n] < 0) {
              dist[n] = dist[cur] + 1;
              q.push_back(n);
            }
          }
        }
        out.push_back({v, static_cast<PastingId>(pi), level, host, best});
      }
    }
  }
  return out;
}

}  // namespace sixfold
