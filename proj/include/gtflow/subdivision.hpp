#pragma once

// Compounded reductions of flow networks, face subdivisions of marked order
// polytopes, and the bijection between the two.

#include "gtflow/combinatorics.hpp"
#include "gtflow/flow.hpp"
#include "gtflow/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace gtflow {

// ---------------------------------------------------------------------------
// Bipartite noncrossing trees.

/// Tree on left vertices 0..l-1 and right vertices 0..r-1; edges are
/// (left, right) pairs sorted lexicographically.
struct NoncrossingTree {
  int left_count = 0, right_count = 0;
  std::vector<std::pair<int, int>> edges;

  /// Left vertex i gets c_i + 1 edges covering a run of right vertices; each
  /// run starts where the previous one ended.
  static NoncrossingTree from_composition(const WeakComposition& c, int right_count) {
    if (c.empty() || right_count < 1) throw PreconditionError("noncrossing tree needs both sides nonempty");
    std::int64_t total = 0;
    for (auto x : c) {
      if (x < 0) throw PreconditionError("composition has a negative part");
      total += x;
    }
    if (total != right_count - 1) throw PreconditionError("composition must sum to right_count - 1");
    NoncrossingTree t{static_cast<int>(c.size()), right_count, {}};
    int start = 0;
    for (int i = 0; i < t.left_count; ++i) {
      for (int j = start; j <= start + c[i]; ++j) t.edges.emplace_back(i, j);
      start += static_cast<int>(c[i]);
    }
    return t;
  }

  WeakComposition composition() const {
    WeakComposition c(left_count, -1);
    for (auto [i, j] : edges) ++c[i];
    return c;
  }

  std::vector<int> left_degrees() const {
    std::vector<int> d(left_count, 0);
    for (auto [i, j] : edges) ++d[i];
    return d;
  }

  bool is_valid() const {
    if (static_cast<int>(edges.size()) != left_count + right_count - 1) return false;
    std::vector<int> parent(left_count + right_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [i, j] : edges) {
      if (i < 0 || i >= left_count || j < 0 || j >= right_count) return false;
      int a = find(i), b = find(left_count + j);
      if (a == b) return false;
      parent[a] = b;
    }
    for (auto [p, q] : edges)
      for (auto [t, u] : edges)
        if (p < t && q > u) return false;
    return true;
  }

  friend bool operator==(const NoncrossingTree&, const NoncrossingTree&) = default;
};

inline std::vector<NoncrossingTree> enumerate_noncrossing_trees(int l, int r) {
  if (l < 1 || r < 1) throw PreconditionError("enumerate_noncrossing_trees needs l, r >= 1");
  std::vector<NoncrossingTree> out;
  for_each_composition(r - 1, l, WeakComposition(l, 0),
                       [&](const WeakComposition& c) { out.push_back(NoncrossingTree::from_composition(c, r)); });
  return out;
}

// ---------------------------------------------------------------------------
// Compounded reductions.

/// A network whose edges carry formal sums: sorted lists of coordinates of
/// the root network (or of any other label space).
struct LabeledNetwork {
  FlowNetwork network;
  std::vector<std::vector<int>> sums;

  static LabeledNetwork identity(const FlowNetwork& g) {
    LabeledNetwork l{g, {}};
    for (int k = 0; k < g.edge_count(); ++k) l.sums.push_back({k});
    return l;
  }
  static LabeledNetwork of(const DualNetwork& d) { return {d.network, d.edge_labels}; }

  /// Pushes a flow forward to the label space by adding each edge's value to
  /// every coordinate in its formal sum.
  IntegerFlow include(const IntegerFlow& f, int coordinate_count) const {
    IntegerFlow out(coordinate_count, 0);
    for (std::size_t k = 0; k < f.size(); ++k)
      for (int e : sums[k]) out[e] += f[k];
    return out;
  }

  /// (tail label, head label, sum) triples, sorted; equal signatures mean equal
  /// labeled networks.
  std::vector<std::tuple<std::string, std::string, std::vector<int>>> signature() const {
    std::vector<std::tuple<std::string, std::string, std::vector<int>>> s;
    for (int k = 0; k < network.edge_count(); ++k)
      s.emplace_back(network.label(network.edge(k).tail), network.label(network.edge(k).head), sums[k]);
    std::sort(s.begin(), s.end());
    return s;
  }
};

/// G_T^(v): delete v and add edge(e1, e2) for every tree edge, where tree left
/// vertices are v's in-edges and right vertices its out-edges, both in edge
/// order. New edges take the place of v's first incident edge.
inline LabeledNetwork compound_reduce(const LabeledNetwork& g, int v, const NoncrossingTree& t) {
  const auto& net = g.network;
  if (v < 0 || v >= net.vertex_count()) throw PreconditionError("compound_reduce: no such vertex");
  if (net.netflow()[v] != 0) throw PreconditionError("compound_reduce: vertex " + net.label(v) + " has nonzero netflow");
  const auto& in = net.in_edges(v);
  const auto& out = net.out_edges(v);
  if (in.empty() || out.empty())
    throw PreconditionError("compound_reduce: vertex " + net.label(v) + " needs incoming and outgoing edges");
  if (t.left_count != static_cast<int>(in.size()) || t.right_count != static_cast<int>(out.size()))
    throw PreconditionError("compound_reduce: tree sides do not match the vertex degrees");
  if (!t.is_valid()) throw PreconditionError("compound_reduce: not a noncrossing tree");
  auto renum = [v](int u) { return u > v ? u - 1 : u; };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> sums;
  bool placed = false;
  for (int k = 0; k < net.edge_count(); ++k) {
    const Edge& e = net.edge(k);
    if (e.tail != v && e.head != v) {
      edges.push_back({renum(e.tail), renum(e.head)});
      sums.push_back(g.sums[k]);
      continue;
    }
    if (placed) continue;
    placed = true;
    for (auto [i, j] : t.edges) {
      const Edge& a = net.edge(in[i]);
      const Edge& b = net.edge(out[j]);
      edges.push_back({renum(a.tail), renum(b.head)});
      std::vector<int> s = g.sums[in[i]];
      s.insert(s.end(), g.sums[out[j]].begin(), g.sums[out[j]].end());
      std::sort(s.begin(), s.end());
      sums.push_back(std::move(s));
    }
  }
  NetflowVector a;
  std::vector<std::string> labels;
  for (int u = 0; u < net.vertex_count(); ++u)
    if (u != v) {
      a.push_back(net.netflow()[u]);
      labels.push_back(net.label(u));
    }
  const int V = net.vertex_count() - 1;
  return {FlowNetwork(V, std::move(edges), std::move(a), std::move(labels)), std::move(sums)};
}

inline FlowNetwork compound_reduce(const FlowNetwork& g, int v, const NoncrossingTree& t) {
  return compound_reduce(LabeledNetwork::identity(g), v, t).network;
}

/// Positive netflow only at vertices without incoming edges, negative only at
/// vertices without outgoing edges, and zero only at vertices with both.
inline void check_sign_convention(const FlowNetwork& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto a = g.netflow()[v];
    bool ok = a > 0 ? g.indegree(v) == 0 : a < 0 ? g.outdegree(v) == 0 : (g.indegree(v) > 0 && g.outdegree(v) > 0);
    if (!ok) throw PreconditionError("netflow sign convention fails at vertex " + g.label(v));
  }
}

enum class ReductionOrder { HighestFirst, LowestFirst };

struct ReductionNode {
  LabeledNetwork net;
  int parent = -1;
  std::string reduced_vertex;  // label in the parent
  NoncrossingTree tree;
  std::vector<int> children;
  bool is_leaf() const { return children.empty(); }
};

struct ReductionTree {
  std::vector<ReductionNode> nodes;  // nodes[0] is the root

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[i].is_leaf()) out.push_back(i);
    return out;
  }
  Rational leaf_volume_sum() const {
    Rational s = 0;
    for (int i : leaves()) s += leaf_volume(nodes[i].net.network);
    return s;
  }
  /// Compositions chosen on the way from the root to `node`.
  std::vector<std::pair<std::string, WeakComposition>> path(int node) const {
    std::vector<std::pair<std::string, WeakComposition>> p;
    for (; nodes[node].parent >= 0; node = nodes[node].parent)
      p.emplace_back(nodes[node].reduced_vertex, nodes[node].tree.composition());
    std::reverse(p.begin(), p.end());
    return p;
  }
};

namespace detail {

inline int next_zero_vertex(const FlowNetwork& g, ReductionOrder order) {
  const int V = g.vertex_count();
  for (int k = 0; k < V; ++k) {
    int v = order == ReductionOrder::HighestFirst ? V - 1 - k : k;
    if (g.netflow()[v] == 0) return v;
  }
  return -1;
}

}  // namespace detail

/// Reduces zero-netflow vertices until none remain, highest index first by
/// default. Edge sums are coordinates of the root.
inline ReductionTree canonical_reduction_tree(const FlowNetwork& g, ReductionOrder order = ReductionOrder::HighestFirst,
                                              std::size_t max_nodes = 200000) {
  check_sign_convention(g);
  ReductionTree tree;
  tree.nodes.push_back({LabeledNetwork::identity(g), -1, "", {}, {}});
  for (std::size_t cur = 0; cur < tree.nodes.size(); ++cur) {
    int v = detail::next_zero_vertex(tree.nodes[cur].net.network, order);
    if (v < 0) continue;
    const auto& net = tree.nodes[cur].net.network;
    const int l = net.indegree(v), r = net.outdegree(v);
    std::string label = net.label(v);
    for (const auto& t : enumerate_noncrossing_trees(l, r)) {
      if (tree.nodes.size() >= max_nodes) throw Error("reduction tree exceeds the node limit");
      LabeledNetwork child = compound_reduce(tree.nodes[cur].net, v, t);
      tree.nodes[cur].children.push_back(static_cast<int>(tree.nodes.size()));
      tree.nodes.push_back({std::move(child), static_cast<int>(cur), label, t, {}});
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Face subdivisions of marked order polytopes.

namespace detail {

inline bool face_reducible(const BoundedEmbedding& emb, const Face& f) {
  if (f.left_outer || f.right_outer) return false;
  return std::none_of(f.left.begin(), f.left.end(), [&](int v) { return emb.in_A(v); });
}

inline void require_reducible(const BoundedEmbedding& emb, int fi) {
  if (fi < 0 || fi >= emb.face_count()) throw PreconditionError("no such face");
  const Face& f = emb.face(fi);
  if (f.left_outer || f.right_outer) throw PreconditionError("face '" + f.id + "' is an outer face");
  if (!face_reducible(emb, f)) throw PreconditionError("face '" + f.id + "' has a marked left boundary");
}

inline std::vector<int> merge_labels(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace detail

/// Faces whose vertex has netflow zero under the default split rule.
inline std::vector<int> reducible_faces(const BoundedEmbedding& emb) {
  std::vector<int> out;
  for (int fi = 0; fi < emb.face_count(); ++fi)
    if (detail::face_reducible(emb, emb.face(fi))) out.push_back(fi);
  return out;
}

/// Linear extensions of a face as chains listed top to bottom, including the
/// shared top and bottom. Interleavings prefer the left boundary first.
inline std::vector<std::vector<int>> face_extensions(const BoundedEmbedding& emb, int fi) {
  const Face& f = emb.face(fi);
  std::vector<int> L(f.left.begin() + 1, f.left.end() - 1), R(f.right.begin() + 1, f.right.end() - 1);
  std::vector<std::vector<int>> out;
  std::vector<int> cur{f.top()};
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == L.size() && j == R.size()) {
      cur.push_back(f.bottom());
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    if (i < L.size()) {
      cur.push_back(L[i]);
      rec(i + 1, j);
      cur.pop_back();
    }
    if (j < R.size()) {
      cur.push_back(R[j]);
      rec(i, j + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

/// The embedding of P_j: face `fi` collapses onto `chain`, and neighbouring
/// faces take the matching chain segments in place of the old boundary runs.
/// Chain edges are labeled by the union of the labels of the two boundary
/// edges containing them.
inline BoundedEmbedding replace_face(const BoundedEmbedding& emb, int fi, const std::vector<int>& chain) {
  detail::require_reducible(emb, fi);
  const Face& f = emb.face(fi);
  {
    std::vector<int> l, r;
    for (int v : chain) {
      if (std::find(f.left.begin(), f.left.end(), v) != f.left.end()) l.push_back(v);
      if (std::find(f.right.begin(), f.right.end(), v) != f.right.end()) r.push_back(v);
    }
    if (l != f.left || r != f.right || chain.size() != f.left.size() + f.right.size() - 2)
      throw PreconditionError("chain is not a linear extension of face '" + f.id + "'");
  }
  std::map<int, int> pos;
  for (int i = 0; i < static_cast<int>(chain.size()); ++i) pos[chain[i]] = i;
  auto boundary_edges = [](const std::vector<int>& c) {
    std::set<std::pair<int, int>> e;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) e.insert({c[i], c[i + 1]});
    return e;
  };
  auto fl = boundary_edges(f.left), fr = boundary_edges(f.right);
  auto splice = [&](const std::vector<int>& c, const std::set<std::pair<int, int>>& edges) {
    std::vector<int> out{c[0]};
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (edges.count({c[i], c[i + 1]}))
        for (int p = pos.at(c[i]) + 1; p < pos.at(c[i + 1]); ++p) out.push_back(chain[p]);
      out.push_back(c[i + 1]);
    }
    return out;
  };
  std::vector<Face> faces;
  for (int g = 0; g < emb.face_count(); ++g) {
    if (g == fi) continue;
    Face h = emb.face(g);
    if (!h.right_outer) h.right = splice(h.right, fl);
    if (!h.left_outer) h.left = splice(h.left, fr);
    faces.push_back(std::move(h));
  }
  // Hasse diagram of P_j-hat: old covers off the face plus the chain.
  const auto& hat = emb.hat();
  const int n = emb.element_count();
  std::vector<std::pair<int, int>> rel;
  EdgeLabels labels;
  for (const auto& e : hat.cover_list()) {
    std::pair<int, int> down{e.second, e.first};
    if (fl.count(down) || fr.count(down)) continue;
    labels[e] = emb.edge_label(e);
    if (e.first < n && e.second < n) rel.push_back(e);
  }
  auto containing = [&](const std::vector<int>& side, int hi, int lo) {
    for (std::size_t i = 0; i + 1 < side.size(); ++i)
      if (pos.at(side[i]) <= pos.at(hi) && pos.at(lo) <= pos.at(side[i + 1])) return HasseEdge{side[i + 1], side[i]};
    throw Error("chain edge lies in no boundary edge");
  };
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    int hi = chain[i], lo = chain[i + 1];
    labels[{lo, hi}] = detail::merge_labels(emb.edge_label(containing(f.left, hi, lo)),
                                            emb.edge_label(containing(f.right, hi, lo)));
    if (lo < n && hi < n) rel.emplace_back(lo, hi);
  }
  MarkedPoset base(Poset::from_relations(emb.base().poset().ids(), rel), emb.base().marking());
  return BoundedEmbedding(std::move(base), std::move(faces), std::move(labels),
                          {emb.value(emb.bottom()), emb.value(emb.top())});
}

inline std::vector<BoundedEmbedding> subdivide_marked_face(const BoundedEmbedding& emb, int fi) {
  detail::require_reducible(emb, fi);
  std::vector<BoundedEmbedding> out;
  for (const auto& c : face_extensions(emb, fi)) out.push_back(replace_face(emb, fi, c));
  return out;
}

/// Tree for a linear extension of a face. Left vertices are the right-boundary
/// edges (incoming network edges) and right vertices the left-boundary edges
/// (outgoing), both top to bottom. Walking down the chain, passing q_{b+1}
/// moves to the next incoming edge and passing p_{i+1} to the next outgoing
/// edge; the visited pairs are the tree edges.
inline NoncrossingTree gamma_tree(const BoundedEmbedding& emb, int fi, const std::vector<int>& chain) {
  const Face& f = emb.face(fi);
  const int k = static_cast<int>(f.left.size()), l = static_cast<int>(f.right.size());
  NoncrossingTree t{l - 1, k - 1, {{0, 0}}};
  int b = 0, i = 0;
  for (std::size_t c = 1; c + 1 < chain.size(); ++c) {
    if (b + 1 < l - 1 && chain[c] == f.right[b + 1]) ++b;
    else if (i + 1 < k - 1 && chain[c] == f.left[i + 1]) ++i;
    else throw PreconditionError("chain is not a linear extension of face '" + f.id + "'");
    t.edges.emplace_back(b, i);
  }
  if (!t.is_valid()) throw PreconditionError("chain is not a linear extension of face '" + f.id + "'");
  return t;
}

/// Inverse of gamma_tree.
inline std::vector<int> gamma_extension(const BoundedEmbedding& emb, int fi, const NoncrossingTree& t) {
  const Face& f = emb.face(fi);
  const int k = static_cast<int>(f.left.size()), l = static_cast<int>(f.right.size());
  if (t.left_count != l - 1 || t.right_count != k - 1 || !t.is_valid())
    throw PreconditionError("tree does not fit face '" + f.id + "'");
  std::vector<int> chain{f.top()};
  for (std::size_t e = 1; e < t.edges.size(); ++e) {
    auto [b0, i0] = t.edges[e - 1];
    auto [b1, i1] = t.edges[e];
    chain.push_back(b1 > b0 ? f.right[b1] : f.left[i1]);
  }
  chain.push_back(f.bottom());
  return chain;
}

namespace detail {

/// Re-indexes a boundary-ordered tree at face `fi` to the edge order of the
/// face vertex in `net`, matching edges by their label sets.
inline NoncrossingTree tree_in_network_order(const BoundedEmbedding& emb, int fi, const NoncrossingTree& t,
                                             const LabeledNetwork& net, int v) {
  const Face& f = emb.face(fi);
  auto position = [&](const std::vector<int>& edges, const std::vector<int>& label) {
    for (int p = 0; p < static_cast<int>(edges.size()); ++p)
      if (net.sums[edges[p]] == label) return p;
    throw Error("face '" + f.id + "': boundary edge has no network edge");
  };
  std::vector<int> in_pos, out_pos;
  for (std::size_t b = 0; b + 1 < f.right.size(); ++b)
    in_pos.push_back(position(net.network.in_edges(v), emb.edge_label({f.right[b + 1], f.right[b]})));
  for (std::size_t i = 0; i + 1 < f.left.size(); ++i)
    out_pos.push_back(position(net.network.out_edges(v), emb.edge_label({f.left[i + 1], f.left[i]})));
  NoncrossingTree r{t.left_count, t.right_count, {}};
  for (auto [b, i] : t.edges) r.edges.emplace_back(in_pos[b], out_pos[i]);
  std::sort(r.edges.begin(), r.edges.end());
  return r;
}

inline int vertex_with_label(const FlowNetwork& g, const std::string& label) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.label(v) == label) return v;
  return -1;
}

}  // namespace detail

struct GammaCell {
  std::vector<int> extension;  // chain of the face, top to bottom
  NoncrossingTree tree;        // in boundary order
  BoundedEmbedding embedding;  // P_j
  bool network_match = false;  // G_(P_j) equals the reduction by `tree` as labeled networks
};

inline std::vector<GammaCell> gamma_cells(const BoundedEmbedding& emb, int fi) {
  detail::require_reducible(emb, fi);
  auto dual = build_dual_network(emb);
  auto net = LabeledNetwork::of(dual);
  const int v = dual.face_vertex[fi];
  std::vector<GammaCell> out;
  for (const auto& c : face_extensions(emb, fi)) {
    GammaCell cell{c, gamma_tree(emb, fi, c), replace_face(emb, fi, c), false};
    auto reduced = compound_reduce(net, v, detail::tree_in_network_order(emb, fi, cell.tree, net, v));
    cell.network_match = reduced.signature() == LabeledNetwork::of(build_dual_network(cell.embedding)).signature();
    out.push_back(std::move(cell));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Iterated subdivision on both sides.

enum class FaceOrder { Descending, Ascending };

struct SubdivisionReport {
  bool ok = true;
  std::string message;
  std::vector<std::string> face_order;
  int cells = 0;
  Rational root_volume, poset_volume, flow_volume;
  Integer lattice_points = 0;  // root lattice points checked through the cells
  explicit operator bool() const { return ok; }
};

struct SubdivisionCell {
  BoundedEmbedding embedding;
  LabeledNetwork network;
  std::vector<std::string> path;  // face id and chain for each step
};

/// Subdivides every reducible face on both sides in network vertex order
/// (highest index first by default), checking at each step that the poset-side
/// network equals the flow-side reduction, then that volumes agree and that Gamma
/// of every root lattice point (when at most `lattice_limit` of them) lands in
/// the image of its cells.
inline SubdivisionReport full_subdivision_check(const BoundedEmbedding& emb, FaceOrder order = FaceOrder::Descending,
                                                std::int64_t lattice_limit = 5000,
                                                std::vector<SubdivisionCell>* cells_out = nullptr) {
  SubdivisionReport rep;
  auto root_dual = build_dual_network(emb);
  std::vector<std::pair<int, std::string>> faces;
  for (int fi : reducible_faces(emb)) faces.emplace_back(root_dual.face_vertex[fi], emb.face(fi).id);
  std::sort(faces.begin(), faces.end());
  if (order == FaceOrder::Descending) std::reverse(faces.begin(), faces.end());
  for (auto& f : faces) rep.face_order.push_back(f.second);

  std::vector<SubdivisionCell> cells{{emb, LabeledNetwork::of(root_dual), {}}};
  for (const auto& [vroot, id] : faces) {
    std::vector<SubdivisionCell> next;
    for (const auto& cell : cells) {
      const int fi = cell.embedding.face_index(id);
      const int v = detail::vertex_with_label(cell.network.network, id);
      for (const auto& c : face_extensions(cell.embedding, fi)) {
        auto t = gamma_tree(cell.embedding, fi, c);
        auto child_emb = replace_face(cell.embedding, fi, c);
        auto child_net = compound_reduce(cell.network, v,
                                         detail::tree_in_network_order(cell.embedding, fi, t, cell.network, v));
        std::string step = id + ":";
        for (int x : c) step += " " + cell.embedding.element_id(x);
        auto path = cell.path;
        path.push_back(step);
        if (child_net.signature() != LabeledNetwork::of(build_dual_network(child_emb)).signature()) {
          rep.ok = false;
          std::string where;
          for (const auto& p : path) where += "[" + p + "]";
          rep.message = "network mismatch after " + where;
          return rep;
        }
        next.push_back({std::move(child_emb), std::move(child_net), std::move(path)});
      }
    }
    cells = std::move(next);
  }
  rep.cells = static_cast<int>(cells.size());
  rep.root_volume = polytope_volume(emb);
  rep.poset_volume = 0;
  rep.flow_volume = 0;
  for (const auto& cell : cells) {
    rep.poset_volume += polytope_volume(cell.embedding);
    rep.flow_volume += leaf_volume(cell.network.network);
  }
  if (rep.poset_volume != rep.root_volume || rep.flow_volume != rep.root_volume) {
    rep.ok = false;
    rep.message = "volumes differ: root " + format_rational(rep.root_volume) + ", poset cells " +
                  format_rational(rep.poset_volume) + ", flow cells " + format_rational(rep.flow_volume);
    return rep;
  }
  const int coords = static_cast<int>(emb.hat().cover_list().size());
  if (polytope_point_count(emb) <= lattice_limit) {
    auto root_net = LabeledNetwork::of(root_dual);
    for (const auto& x : polytope_points(emb)) {
      auto target = root_net.include(gamma(emb, root_dual, x), coords);
      std::vector<Rational> xr(x.begin(), x.end());
      bool covered = false;
      for (const auto& cell : cells) {
        if (!polytope_contains(cell.embedding, xr)) continue;
        covered = true;
        auto d = build_dual_network(cell.embedding);
        if (LabeledNetwork::of(d).include(gamma(cell.embedding, d, x), coords) != target) {
          rep.ok = false;
          rep.message = "Gamma disagrees on a lattice point in cell";
          for (const auto& p : cell.path) rep.message += " [" + p + "]";
          return rep;
        }
      }
      if (!covered) {
        rep.ok = false;
        rep.message = "a lattice point lies in no cell";
        return rep;
      }
      ++rep.lattice_points;
    }
  }
  if (cells_out) *cells_out = std::move(cells);
  return rep;
}

// ---------------------------------------------------------------------------
// Flows, reduction-tree leaves and linear extensions.

struct FlowExtension {
  IntegerFlow flow;
  std::vector<std::pair<std::string, WeakComposition>> compositions;  // leaf path, face by face
  std::vector<int> extension;                                          // elements of P, top to bottom
};

/// The shifted netflow (a_1 - out_1, ..., a_{k-1} - out_{k-1}, -out_k, ..., 0).
inline NetflowVector shifted_netflow(const DualNetwork& g, const WeakComposition& a) {
  const int V = g.network.vertex_count();
  if (static_cast<int>(a.size()) != g.marked_source_count)
    throw PreconditionError("a must have one entry per source between marked elements");
  NetflowVector b(V, 0);
  for (int v = 0; v + 1 < V; ++v)
    b[v] = (v < g.marked_source_count ? a[v] : 0) - (g.network.outdegree(v) - 1);
  return b;
}

namespace detail {

inline DualNetwork single_sink_network(const BoundedEmbedding& emb) {
  auto g = build_dual_network(emb);
  if (g.sink_count() != 1) throw PreconditionError("the flow network has more than one sink");
  const int k = static_cast<int>(emb.base().marked_elements().size());
  if (g.marked_source_count != std::max(k - 1, 0))
    throw PreconditionError("marked elements do not form one chain of sources");
  return g;
}

}  // namespace detail

/// Follows a flow with the shifted netflow down the canonical reduction tree
/// and maps each step to a face extension.
inline FlowExtension flow_to_extension(const BoundedEmbedding& emb, const DualNetwork& g, const IntegerFlow& f) {
  FlowExtension out{f, {}, {}};
  std::vector<std::pair<int, std::string>> faces;
  for (int fi : reducible_faces(emb)) faces.emplace_back(g.face_vertex[fi], emb.face(fi).id);
  std::sort(faces.rbegin(), faces.rend());
  BoundedEmbedding cur = emb;
  for (const auto& [v, id] : faces) {
    const int fi = cur.face_index(id);
    const Face& face = cur.face(fi);
    WeakComposition c;
    for (std::size_t b = 0; b + 1 < face.right.size(); ++b)
      c.push_back(f.at(g.edge_crossing({face.right[b + 1], face.right[b]})));
    std::int64_t total = 0;
    for (auto x : c) total += x;
    if (total != static_cast<std::int64_t>(face.left.size()) - 2)
      throw Error("flow does not fit the reduction at face '" + id + "'");
    auto tree = NoncrossingTree::from_composition(c, static_cast<int>(face.left.size()) - 1);
    out.compositions.emplace_back(id, c);
    cur = replace_face(cur, fi, gamma_extension(cur, fi, tree));
  }
  const auto& p = cur.base().poset();
  auto order = p.topological_order();
  std::reverse(order.begin(), order.end());
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (!p.less(order[i + 1], order[i])) throw Error("the subdivided poset is not a chain");
  out.extension = order;
  return out;
}

/// All flows with the shifted netflow and their linear extensions. Empty
/// when the shifted netflow does not sum to zero.
inline std::vector<FlowExtension> leaves_to_extensions(const BoundedEmbedding& emb, const WeakComposition& a) {
  auto g = detail::single_sink_network(emb);
  auto b = shifted_netflow(g, a);
  std::int64_t total = 0;
  for (auto x : b) total += x;
  std::vector<FlowExtension> out;
  if (total != 0) return out;
  for (const auto& f : enumerate_integer_flows(g.network, b)) out.push_back(flow_to_extension(emb, g, f));
  return out;
}

}  // namespace gtflow
