#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sixfold/core.hpp"

namespace sixfold {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

// --- rule table -----------------------------------------------------------

inline json rule_table_to_json(const RuleTable& t) {
  json out = json::object();
  for (int i = 0; i < kChildCount; ++i) {
    json quad = json::array();
    for (Sym s : t.corners[i]) quad.push_back(sym_name(s));
    out[child_pos_name(static_cast<ChildPos>(i))] = quad;
  }
  return out;
}

inline RuleTable rule_table_from_json(const json& j) {
  RuleTable t = default_rule_table();
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto pos = child_pos_from(it.key());
    if (!pos) throw std::invalid_argument("unknown child position " + it.key());
    const json& quad = it.value();
    if (!quad.is_array() || quad.size() != 4)
      throw std::invalid_argument("child corners must be a 4-array");
    for (int k = 0; k < 4; ++k) {
      auto s = sym_from(quad[static_cast<std::size_t>(k)].get<std::string>());
      if (!s) throw std::invalid_argument("unknown corner symbol");
      t.corners[static_cast<int>(*pos)][k] = *s;
    }
  }
  return t;
}

inline RuleTable load_rule_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rule file " + path);
  json j;
  in >> j;
  return rule_table_from_json(j);
}

// --- complex document -------------------------------------------------

inline json complex_to_json(const Complex& c) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["rule_table"] = rule_table_to_json(c.table);
  doc["round"] = c.round;
  doc["max_depth"] = c.max_depth;
  doc["round_base_depth"] = c.round_base_depth;

  json vs = json::array();
  for (const auto& v : c.vertices) {
    vs.push_back(json::array({static_cast<int>(v.kind.cls),
                              static_cast<int>(v.kind.a),
                              static_cast<int>(v.kind.b), v.depth,
                              v.created_round, v.owner, v.home_plane,
                              v.carrier, json(v.planes)}));
  }
  doc["vertices"] = std::move(vs);

  json es = json::array();
  for (const auto& e : c.edges) {
    es.push_back(json::array({static_cast<int>(e.edge_type), e.owner,
                              e.ends[0], e.ends[1], e.midpoint, e.halves[0],
                              e.halves[1], e.parent, e.root, e.created_round,
                              json(e.planes)}));
  }
  doc["edges"] = std::move(es);

  json ts = json::array();
  for (const auto& t : c.tiles) {
    ts.push_back(json::array(
        {json(t.corners), t.parent, static_cast<int>(t.position),
         static_cast<int>(t.rotation_qt), t.created_round,
         static_cast<int>(t.birth_level), t.pasted, t.core, t.plane,
         t.subdivided_round, json(t.children), json(t.sides),
         json(t.interior)}));
  }
  doc["tiles"] = std::move(ts);

  json ps = json::array();
  for (const auto& p : c.planes) {
    std::vector<VertexId> keys;
    keys.reserve(p.rot.size());
    for (const auto& kv : p.rot) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    json rot = json::array();
    for (VertexId v : keys) rot.push_back(json::array({v, json(p.rot.at(v))}));
    ps.push_back(json::object({{"id", p.id},
                               {"root_tile", p.root_tile},
                               {"origin_pasting", p.origin_pasting},
                               {"rot", std::move(rot)}}));
  }
  doc["planes"] = std::move(ps);

  json pastes = json::array();
  for (const auto& r : c.pastings) {
    pastes.push_back(json::object(
        {{"site",
          json::array({r.site.x1, r.site.x2, r.site.y, r.site.z2, r.site.z1,
                       r.site.x_half, r.site.z_half, json(r.site.host_tiles),
                       r.site.base_plane})},
         {"round", r.round},
         {"created", json(r.created)},
         {"created_edges", json(r.created_edges)},
         {"plane", r.plane},
         {"tile", r.tile},
         {"entry_edges", json(r.entry_edges)}}));
  }
  doc["pastings"] = std::move(pastes);

  json rounds = json::array();
  for (const auto& r : c.rounds_log) {
    rounds.push_back(json::array({r.round, json(r.vertices_by_class),
                                  json(r.edges_by_type), r.split_edges,
                                  r.new_max_depth, r.subdivided_tiles}));
  }
  doc["rounds_log"] = std::move(rounds);
  return doc;
}

inline Complex complex_from_json(const json& doc) {
  if (!doc.contains("format_version") ||
      doc["format_version"].get<int>() != kFormatVersion)
    throw std::invalid_argument("unsupported document format version");
  Complex c;
  c.table = rule_table_from_json(doc.at("rule_table"));
  c.round = doc.at("round").get<int>();
  c.max_depth = doc.at("max_depth").get<int>();
  c.round_base_depth = doc.at("round_base_depth").get<int>();

  for (const auto& jv : doc.at("vertices")) {
    Vertex v;
    v.id = static_cast<VertexId>(c.vertices.size());
    v.kind.cls = static_cast<VertexClass>(jv[0].get<int>());
    v.kind.a = static_cast<Sym>(jv[1].get<int>());
    v.kind.b = static_cast<Sym>(jv[2].get<int>());
    v.depth = jv[3].get<int>();
    v.created_round = jv[4].get<int>();
    v.owner = jv[5].get<TileId>();
    v.home_plane = jv[6].get<PlaneId>();
    v.carrier = jv[7].get<EdgeId>();
    v.planes = jv[8].get<std::vector<PlaneId>>();
    c.vertices.push_back(std::move(v));
  }
  for (const auto& je : doc.at("edges")) {
    MacroEdge e;
    e.id = static_cast<EdgeId>(c.edges.size());
    e.edge_type = static_cast<std::int8_t>(je[0].get<int>());
    e.owner = je[1].get<TileId>();
    e.ends = {je[2].get<VertexId>(), je[3].get<VertexId>()};
    e.midpoint = je[4].get<VertexId>();
    e.halves = {je[5].get<EdgeId>(), je[6].get<EdgeId>()};
    e.parent = je[7].get<EdgeId>();
    e.root = je[8].get<EdgeId>();
    e.created_round = je[9].get<int>();
    e.planes = je[10].get<std::vector<PlaneId>>();
    c.edges.push_back(std::move(e));
  }
  for (const auto& jt : doc.at("tiles")) {
    MacroTile t;
    t.id = static_cast<TileId>(c.tiles.size());
    auto cr = jt[0].get<std::vector<VertexId>>();
    std::copy_n(cr.begin(), 4, t.corners.begin());
    t.parent = jt[1].get<TileId>();
    t.position = static_cast<TilePos>(jt[2].get<int>());
    t.rotation_qt = static_cast<std::uint8_t>(jt[3].get<int>());
    t.created_round = jt[4].get<int>();
    t.birth_level = static_cast<std::int8_t>(jt[5].get<int>());
    t.pasted = jt[6].get<bool>();
    t.core = jt[7].get<VertexId>();
    t.plane = jt[8].get<PlaneId>();
    t.subdivided_round = jt[9].get<int>();
    auto ch = jt[10].get<std::vector<TileId>>();
    std::copy_n(ch.begin(), 6, t.children.begin());
    auto sd = jt[11].get<std::vector<EdgeId>>();
    std::copy_n(sd.begin(), 4, t.sides.begin());
    auto iv = jt[12].get<std::vector<VertexId>>();
    std::copy_n(iv.begin(), 3, t.interior.begin());
    c.tiles.push_back(std::move(t));
  }
  for (const auto& jp : doc.at("planes")) {
    Plane p;
    p.id = jp.at("id").get<PlaneId>();
    p.root_tile = jp.at("root_tile").get<TileId>();
    p.origin_pasting = jp.at("origin_pasting").get<PastingId>();
    for (const auto& entry : jp.at("rot")) {
      p.rot[entry[0].get<VertexId>()] =
          entry[1].get<std::vector<VertexId>>();
    }
    c.planes.push_back(std::move(p));
  }
  for (const auto& jr : doc.at("pastings")) {
    PastingRecord r;
    const auto& s = jr.at("site");
    r.site.x1 = s[0].get<VertexId>();
    r.site.x2 = s[1].get<VertexId>();
    r.site.y = s[2].get<VertexId>();
    r.site.z2 = s[3].get<VertexId>();
    r.site.z1 = s[4].get<VertexId>();
    r.site.x_half = s[5].get<EdgeId>();
    r.site.z_half = s[6].get<EdgeId>();
    r.site.host_tiles = s[7].get<std::vector<TileId>>();
    r.site.base_plane = s[8].get<PlaneId>();
    r.round = jr.at("round").get<int>();
    auto cr = jr.at("created").get<std::vector<VertexId>>();
    std::copy_n(cr.begin(), 6, r.created.begin());
    r.created_edges = jr.at("created_edges").get<std::vector<EdgeId>>();
    r.plane = jr.at("plane").get<PlaneId>();
    r.tile = jr.at("tile").get<TileId>();
    r.entry_edges = jr.at("entry_edges").get<std::vector<EdgeId>>();
    c.pastings.push_back(std::move(r));
  }
  for (const auto& jr : doc.at("rounds_log")) {
    RoundReport r;
    r.round = jr[0].get<int>();
    auto vb = jr[1].get<std::vector<long>>();
    std::copy_n(vb.begin(), 4, r.vertices_by_class.begin());
    auto eb = jr[2].get<std::vector<long>>();
    std::copy_n(eb.begin(), 13, r.edges_by_type.begin());
    r.split_edges = jr[3].get<long>();
    r.new_max_depth = jr[4].get<int>();
    r.subdivided_tiles = jr[5].get<long>();
    c.rounds_log.push_back(r);
  }

  // Derived indexes.
  c.adj.assign(c.vertices.size(), {});
  for (const auto& e : c.edges) {
    if (e.leaf()) {
      c.adj[e.ends[0]].push_back({e.ends[1], e.id});
      c.adj[e.ends[1]].push_back({e.ends[0], e.id});
      c.leaf_of[detail::pair_key(e.ends[0], e.ends[1])] = e.id;
    }
  }
  for (const auto& t : c.tiles) {
    if (t.has_children()) continue;
    for (EdgeId s : t.sides) c.edges[s].faces.push_back(t.id);
  }
  return c;
}

inline std::string complex_to_text(const Complex& c) {
  return complex_to_json(c).dump(1, '\t') + "\n";
}

inline Complex complex_from_text(const std::string& text) {
  return complex_from_json(json::parse(text));
}

inline void save_complex(const Complex& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << complex_to_text(c);
}

inline Complex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open document " + path);
  json j;
  in >> j;
  return complex_from_json(j);
}

// --- DOT export -----------------------------------------------------------

// One undirected graph per selected plane; labels carry kind and depth.
inline std::string export_dot(const Complex& c,
                              PlaneId plane_filter = kNone) {
  std::ostringstream os;
  for (const auto& pl : c.planes) {
    if (plane_filter != kNone && pl.id != plane_filter) continue;
    os << "graph plane_" << pl.id << " {\n";
    std::vector<VertexId> keys;
    for (const auto& kv : pl.rot) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (VertexId v : keys) {
      os << "  v" << v << " [label=\"" << kind_label(c.vertices[v].kind)
         << " d=" << c.vertices[v].depth << "\"];\n";
    }
    std::vector<std::pair<VertexId, VertexId>> seen;
    for (VertexId v : keys) {
      for (VertexId n : pl.rot.at(v)) {
        if (v < n) seen.push_back({v, n});
      }
    }
    std::sort(seen.begin(), seen.end());
    for (const auto& [a, b] : seen) os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
  }
  if (plane_filter != kNone &&
      (plane_filter < 0 || plane_filter >= static_cast<PlaneId>(c.planes.size())))
    throw std::invalid_argument("unknown plane");
  return os.str();
}

}  // namespace sixfold
