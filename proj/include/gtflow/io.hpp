#pragma once

// JSON and DOT formats. Exact numbers are written as strings ("12",
// "-3/4"); structural indices are plain JSON integers.

#include "gtflow/combinatorics.hpp"
#include "gtflow/embedding.hpp"
#include "gtflow/flow.hpp"
#include "gtflow/subdivision.hpp"
#include "gtflow/transform.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace gtflow {

using Json = nlohmann::ordered_json;

class IoError : public Error {
public:
  using Error::Error;
};

namespace io {

inline Json exact(const Rational& q) { return format_rational(q); }
inline Json exact(const Integer& z) { return z.str(); }

inline Rational read_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw IoError("expected an integer or a rational string");
}

inline std::int64_t read_int(const Json& j) {
  Rational q = read_rational(j);
  if (!is_integral(q)) throw IoError("expected an integer");
  return to_i64(to_integer(q));
}

// Posets: {"elements": [ids], "covers": [[lower, upper], ...], "marked": {id: value}}.
// "marking" is accepted as an alias on input.

inline Json to_json(const Poset& p) {
  Json j;
  j["elements"] = p.ids();
  Json covers = Json::array();
  for (auto [a, b] : p.cover_list()) covers.push_back({p.id(a), p.id(b)});
  j["covers"] = covers;
  return j;
}

inline Json to_json(const MarkedPoset& mp) {
  Json j = to_json(mp.poset());
  Json m = Json::object();
  for (int v : mp.marked_elements()) m[mp.poset().id(v)] = exact(mp.value(v));
  j["marked"] = m;
  return j;
}

inline MarkedPoset marked_poset_from_json(const Json& j) {
  try {
    auto ids = j.at("elements").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) index[ids[i]] = i;
    auto find = [&](const Json& id) {
      auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw IoError("unknown element '" + id.get<std::string>() + "'");
      return it->second;
    };
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) covers.emplace_back(find(c.at(0)), find(c.at(1)));
    Marking marking(ids.size());
    const char* key = j.contains("marked") ? "marked" : "marking";
    if (j.contains(key))
      for (const auto& [id, value] : j.at(key).items()) marking[find(Json(id))] = read_rational(value);
    return MarkedPoset(Poset::from_covers(std::move(ids), covers), std::move(marking));
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed poset: ") + e.what());
  }
}

inline Poset poset_from_json(const Json& j) { return marked_poset_from_json(j).poset(); }

// Embeddings: {"poset": ..., "faces": [{"id", "left", "right"}]} or
// {"poset": ..., "coordinates": {id: [w, h]}}. Outer boundaries are ["^1", "^0"].

inline Json to_json(const BoundedEmbedding& emb) {
  Json j;
  j["poset"] = to_json(emb.base());
  Json faces = Json::array();
  for (const auto& f : emb.faces()) {
    Json fj;
    fj["id"] = f.id;
    for (auto side : {std::make_pair("left", &f.left), std::make_pair("right", &f.right)}) {
      Json chain = Json::array();
      for (int v : *side.second) chain.push_back(emb.element_id(v));
      fj[side.first] = chain;
    }
    faces.push_back(fj);
  }
  j["faces"] = faces;
  if (emb.base().marked_elements().empty()) j["hat_values"] = {exact(emb.value(emb.bottom())), exact(emb.value(emb.top()))};
  return j;
}

inline BoundedEmbedding embedding_from_json(const Json& j) {
  try {
    MarkedPoset base = marked_poset_from_json(j.at("poset"));
    std::pair<Rational, Rational> hats{0, 1};
    if (j.contains("hat_values")) hats = {read_rational(j["hat_values"].at(0)), read_rational(j["hat_values"].at(1))};
    if (j.contains("coordinates")) {
      std::vector<Point2> pts(base.size());
      std::vector<bool> seen(base.size(), false);
      for (const auto& [id, wh] : j.at("coordinates").items()) {
        int v = base.poset().index_of(id);
        pts[v] = {read_rational(wh.at(0)), read_rational(wh.at(1))};
        seen[v] = true;
      }
      for (int v = 0; v < base.size(); ++v)
        if (!seen[v]) throw IoError("no coordinates for '" + base.poset().id(v) + "'");
      return embedding_from_coordinates(base, pts, hats);
    }
    const int n = base.size();
    auto index = [&](const std::string& id) {
      if (id == kBottomId) return n;
      if (id == kTopId) return n + 1;
      return base.poset().index_of(id);
    };
    std::vector<Face> faces;
    for (const auto& fj : j.at("faces")) {
      Face f;
      f.id = fj.contains("id") ? fj["id"].get<std::string>() : "F" + std::to_string(faces.size());
      for (const auto& id : fj.at("left")) f.left.push_back(index(id.get<std::string>()));
      for (const auto& id : fj.at("right")) f.right.push_back(index(id.get<std::string>()));
      f.left_outer = f.left == std::vector<int>{n + 1, n};
      f.right_outer = f.right == std::vector<int>{n + 1, n};
      faces.push_back(std::move(f));
    }
    return BoundedEmbedding(std::move(base), std::move(faces), {}, hats);
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed embedding: ") + e.what());
  }
}

// Networks: {"vertices": V, "labels": [...], "edges": [[t, h], ...], "netflow": ["a_0", ...]}.

inline Json to_json(const FlowNetwork& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  if (!g.labels().empty()) j["labels"] = g.labels();
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.tail, e.head});
  j["edges"] = edges;
  Json a = Json::array();
  for (auto x : g.netflow()) a.push_back(std::to_string(x));
  j["netflow"] = a;
  return j;
}

inline FlowNetwork network_from_json(const Json& j) {
  try {
    // "n" is the index of the last vertex, so there are n + 1 of them
    int V = j.contains("vertices") ? j["vertices"].get<int>() : j.at("n").get<int>() + 1;
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    NetflowVector a;
    for (const auto& x : j.at("netflow")) a.push_back(read_int(x));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return FlowNetwork(V, std::move(edges), std::move(a), std::move(labels));
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed network: ") + e.what());
  }
}

inline Json to_json(const DualNetwork& d, const BoundedEmbedding& emb) {
  Json j = to_json(d.network);
  Json crossing = Json::array();
  for (auto [lo, hi] : d.crossing) crossing.push_back({emb.element_id(lo), emb.element_id(hi)});
  j["crossing"] = crossing;
  return j;
}

// Flows, partitions, compositions: arrays of integers.

inline Json int_array(const std::vector<std::int64_t>& v) { return Json(v); }

inline std::vector<std::int64_t> int_array_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& x : j) out.push_back(read_int(x));
  return out;
}

// Shifted tableaux: {"n": n, "rows": [[...], ...]}.

inline Json to_json(const ShiftedTableau& t) { return Json{{"n", t.side()}, {"rows", t.rows()}}; }

inline ShiftedTableau tableau_from_json(const Json& j) {
  try {
    return ShiftedTableau(j.at("n").get<int>(), j.at("rows").get<std::vector<std::vector<int>>>());
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed tableau: ") + e.what());
  }
}

// Reduction trees: nodes with parent, reduced vertex, composition and network.

inline Json to_json(const ReductionTree& t, bool with_networks = true) {
  Json nodes = Json::array();
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) {
    const auto& n = t.nodes[i];
    Json j;
    j["id"] = i;
    j["parent"] = n.parent;
    if (n.parent >= 0) {
      j["vertex"] = n.reduced_vertex;
      j["composition"] = int_array(n.tree.composition());
    }
    if (n.is_leaf()) j["leaf_volume"] = exact(leaf_volume(n.net.network));
    if (with_networks) {
      j["network"] = to_json(n.net.network);
      j["sums"] = n.net.sums;
    }
    nodes.push_back(j);
  }
  return Json{{"leaves", t.leaves().size()}, {"leaf_volume_sum", exact(t.leaf_volume_sum())}, {"nodes", nodes}};
}

// DOT.

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string to_dot(const FlowNetwork& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    os << "  n" << v << " [label=" << dot_quote(g.label(v) + " (" + std::to_string(g.netflow()[v]) + ")") << "];\n";
  for (int k = 0; k < g.edge_count(); ++k)
    os << "  n" << g.edge(k).tail << " -> n" << g.edge(k).head << " [label=\"e" << k << "\"];\n";
  os << "}\n";
  return os.str();
}

/// Hasse diagram of P-hat with the dual network drawn over it; each dual
/// edge records the Hasse edge it crosses.
inline std::string to_dot(const BoundedEmbedding& emb, const DualNetwork& d) {
  std::ostringstream os;
  os << "digraph embedding {\n  subgraph cluster_hasse {\n    label=\"hasse\";\n    edge [dir=none];\n";
  for (int v = 0; v < emb.hat().size(); ++v) {
    std::string lab = emb.element_id(v);
    if (emb.is_marked(v)) lab += " = " + format_rational(emb.value(v));
    os << "    p" << v << " [label=" << dot_quote(lab) << (emb.in_A(v) ? ", shape=box" : "") << "];\n";
  }
  for (auto [lo, hi] : emb.hat().cover_list()) os << "    p" << hi << " -> p" << lo << ";\n";
  os << "  }\n";
  for (int v = 0; v < d.network.vertex_count(); ++v)
    os << "  f" << v << " [shape=circle, color=blue, label="
       << dot_quote(d.network.label(v) + " (" + std::to_string(d.network.netflow()[v]) + ")") << "];\n";
  for (int k = 0; k < d.network.edge_count(); ++k) {
    auto [lo, hi] = d.crossing[k];
    os << "  f" << d.network.edge(k).tail << " -> f" << d.network.edge(k).head << " [color=blue, crosses="
       << dot_quote(emb.element_id(lo) + "<" + emb.element_id(hi)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const ReductionTree& t) {
  std::ostringstream os;
  os << "digraph reduction {\n";
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) {
    const auto& n = t.nodes[i];
    os << "  r" << i << " [label=" << dot_quote(std::to_string(n.net.network.vertex_count()) + "v " +
                                                 std::to_string(n.net.network.edge_count()) + "e")
       << (n.is_leaf() ? ", shape=box" : "") << "];\n";
    if (n.parent >= 0) {
      std::string comp;
      for (auto x : n.tree.composition()) comp += (comp.empty() ? "" : ",") + std::to_string(x);
      os << "  r" << n.parent << " -> r" << i << " [label=" << dot_quote(n.reduced_vertex + ": (" + comp + ")")
         << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("cannot write '" + path + "'");
}

}  // namespace io
}  // namespace gtflow
