#pragma once

// Bounded strongly planar embeddings of P-hat = P plus a bottom and a top
// element, given by an explicit list of bounded faces with their left and
// right boundary chains.

#include "gtflow/poset.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace gtflow {

/// A bounded face. Boundaries are chains of P-hat listed top to bottom and
/// share their first (max) and last (min) elements. An outer boundary is the
/// extra edge between the bottom and the top drawn left or right of P-hat.
struct Face {
  std::string id;
  std::vector<int> left, right;
  bool left_outer = false;
  bool right_outer = false;

  int top() const { return left.front(); }
  int bottom() const { return left.back(); }
  friend bool operator==(const Face&, const Face&) = default;
};

using HasseEdge = std::pair<int, int>;  // (lower, upper) cover of P-hat
using EdgeLabels = std::map<HasseEdge, std::vector<int>>;

class BoundedEmbedding {
public:
  BoundedEmbedding() = default;

  /// `hat_values` gives the bottom/top values used when A is empty; otherwise
  /// the bottom and top carry min and max of the marking.
  BoundedEmbedding(MarkedPoset base, std::vector<Face> faces, EdgeLabels labels = {},
                   std::pair<Rational, Rational> hat_values = {Rational(0), Rational(1)})
      : base_(std::move(base)), faces_(std::move(faces)) {
    const int n = base_.size();
    if (n == 0) throw ValidationError("embedding needs a nonempty poset");
    hat_ = hat_of(base_.poset());
    values_.assign(n + 2, std::nullopt);
    for (int i = 0; i < n; ++i) values_[i] = base_.marking()[i];
    auto marked = base_.marked_elements();
    if (marked.empty()) {
      values_[n] = hat_values.first;
      values_[n + 1] = hat_values.second;
    } else {
      Rational lo = base_.value(marked[0]), hi = lo;
      for (int a : marked) {
        lo = std::min(lo, base_.value(a));
        hi = std::max(hi, base_.value(a));
      }
      values_[n] = lo;
      values_[n + 1] = hi;
    }
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
      if (face_index_.count(faces_[f].id)) throw ValidationError("duplicate face id '" + faces_[f].id + "'");
      face_index_[faces_[f].id] = f;
    }
    check_structure();
    labels_ = std::move(labels);
    const auto& covers = hat_.cover_list();
    for (int k = 0; k < static_cast<int>(covers.size()); ++k)
      if (!labels_.count(covers[k])) labels_[covers[k]] = {k};
  }

  const MarkedPoset& base() const { return base_; }
  const Poset& hat() const { return hat_; }
  const Marking& values() const { return values_; }
  int element_count() const { return base_.size(); }
  int bottom() const { return base_.size(); }
  int top() const { return base_.size() + 1; }
  bool is_hat(int v) const { return v >= base_.size(); }

  /// Membership in A (the hats are not in A).
  bool in_A(int v) const { return v < base_.size() && base_.is_marked(v); }
  /// Marked in the extended sense: in A or a hat.
  bool is_marked(int v) const { return values_[v].has_value(); }
  const Rational& value(int v) const { return *values_[v]; }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int face_index(const std::string& id) const {
    auto it = face_index_.find(id);
    if (it == face_index_.end()) throw ValidationError("unknown face id '" + id + "'");
    return it->second;
  }
  int left_outer_face() const { return left_outer_; }
  int right_outer_face() const { return right_outer_; }

  /// Every marking (and both hat values) multiplied by t.
  BoundedEmbedding dilated(const Rational& t) const {
    const int n = base_.size();
    return BoundedEmbedding(base_.dilated(t), faces_, labels_, {*values_[n] * t, *values_[n + 1] * t});
  }

  const EdgeLabels& edge_labels() const { return labels_; }
  const std::vector<int>& edge_label(const HasseEdge& e) const { return labels_.at(e); }

  std::string element_id(int v) const {
    if (v == bottom()) return kBottomId;
    if (v == top()) return kTopId;
    return base_.poset().id(v);
  }
  int element_index(const std::string& id) const {
    if (id == kBottomId) return bottom();
    if (id == kTopId) return top();
    return base_.poset().index_of(id);
  }

  /// P-hat with the bottom at index n and the top at n+1.
  static Poset hat_of(const Poset& p) {
    const int n = p.size();
    std::vector<std::string> ids = p.ids();
    ids.push_back(kBottomId);
    ids.push_back(kTopId);
    std::vector<std::pair<int, int>> rel = p.cover_list();
    for (int i = 0; i < n; ++i) {
      rel.emplace_back(n, i);
      rel.emplace_back(i, n + 1);
    }
    return Poset::from_relations(std::move(ids), rel);
  }

private:
  void check_chain(const Face& f, const std::vector<int>& chain, bool outer, const char* side) const {
    auto fail = [&](const std::string& what) {
      throw ValidationError("face '" + f.id + "': " + side + " boundary " + what);
    };
    if (chain.size() < 2) fail("has fewer than two elements");
    for (int v : chain)
      if (v < 0 || v >= hat_.size()) fail("refers to an unknown element");
    if (outer) {
      if (chain.size() != 2 || chain[0] != top() || chain[1] != bottom()) fail("must be the outer top-bottom edge");
      return;
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (!hat_.covers(chain[i + 1], chain[i]))
        fail("is not a saturated chain at '" + element_id(chain[i + 1]) + "' < '" + element_id(chain[i]) + "'");
  }

  void check_structure() {
    left_outer_ = right_outer_ = -1;
    std::map<HasseEdge, int> on_left, on_right;
    for (int fi = 0; fi < static_cast<int>(faces_.size()); ++fi) {
      const Face& f = faces_[fi];
      check_chain(f, f.left, f.left_outer, "left");
      check_chain(f, f.right, f.right_outer, "right");
      if (f.left.front() != f.right.front() || f.left.back() != f.right.back())
        throw ValidationError("face '" + f.id + "': boundaries do not share min and max");
      std::set<int> inner(f.left.begin() + 1, f.left.end() - 1);
      for (std::size_t i = 1; i + 1 < f.right.size(); ++i)
        if (inner.count(f.right[i]))
          throw ValidationError("face '" + f.id + "': boundaries meet at '" + element_id(f.right[i]) + "'");
      if (f.left_outer) {
        if (left_outer_ != -1) throw ValidationError("two faces use the left outer edge");
        left_outer_ = fi;
      }
      if (f.right_outer) {
        if (right_outer_ != -1) throw ValidationError("two faces use the right outer edge");
        right_outer_ = fi;
      }
      if (f.left_outer && f.right_outer) throw ValidationError("face '" + f.id + "' uses both outer edges");
      if (!f.left_outer)
        for (std::size_t i = 0; i + 1 < f.left.size(); ++i) ++on_left[{f.left[i + 1], f.left[i]}];
      if (!f.right_outer)
        for (std::size_t i = 0; i + 1 < f.right.size(); ++i) ++on_right[{f.right[i + 1], f.right[i]}];
    }
    if (left_outer_ == -1 || right_outer_ == -1) throw ValidationError("embedding must contain both outer faces");
    for (const auto& e : hat_.cover_list()) {
      if (on_left[e] != 1 || on_right[e] != 1)
        throw ValidationError("Hasse edge '" + element_id(e.first) + "' < '" + element_id(e.second) +
                              "' must bound exactly one face on each side");
    }
    if (on_left.size() != hat_.cover_list().size() || on_right.size() != hat_.cover_list().size())
      throw ValidationError("face boundaries use an edge that is not a cover of P-hat");
    // Euler: V - E + (bounded faces + 1) = 2, with the two outer edges counted.
    const int V = hat_.size(), E = static_cast<int>(hat_.cover_list().size()) + 2;
    if (V - E + face_count() + 1 != 2) throw ValidationError("face list fails the Euler characteristic check");
  }

  MarkedPoset base_;
  Poset hat_;
  Marking values_;
  std::vector<Face> faces_;
  std::map<std::string, int> face_index_;
  int left_outer_ = -1, right_outer_ = -1;
  EdgeLabels labels_;
};

/// A face whose left boundary meets A must have marked min and max; the face
/// that breaks this is named in `message`.
inline ValidationResult validate_embedding(const BoundedEmbedding& emb) {
  if (!emb.base().marked_elements().empty())
    if (auto v = validate_marked_poset(emb.base()); !v) return v;
  for (const auto& f : emb.faces()) {
    if (f.left_outer) continue;
    bool touches = std::any_of(f.left.begin(), f.left.end(), [&](int v) { return emb.in_A(v); });
    if (touches && (!emb.is_marked(f.top()) || !emb.is_marked(f.bottom())))
      return {false, "face '" + f.id + "' has a marked left boundary but an unmarked min or max"};
  }
  return {};
}

// The polytope of an embedding lives on P-hat with both hats marked, which
// also covers the unmarked case. Points are reported on P only.

inline MarkedPoset polytope_poset(const BoundedEmbedding& emb) { return MarkedPoset(emb.hat(), emb.values()); }

inline std::vector<LatticePoint> polytope_points(const BoundedEmbedding& emb) {
  auto pts = lattice_points(polytope_poset(emb));
  for (auto& x : pts) x.resize(emb.element_count());
  return pts;
}

inline Integer polytope_point_count(const BoundedEmbedding& emb) { return count_lattice_points(polytope_poset(emb)); }

inline Rational polytope_volume(const BoundedEmbedding& emb) { return marked_volume(polytope_poset(emb)); }

inline bool polytope_contains(const BoundedEmbedding& emb, std::vector<Rational> x) {
  x.push_back(emb.value(emb.bottom()));
  x.push_back(emb.value(emb.top()));
  return is_in_polytope(polytope_poset(emb), x);
}

/// Planar coordinates (w, h) of the elements of P; h must strictly increase
/// along every cover.
struct Point2 {
  Rational w, h;
};

namespace detail {

inline bool segments_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  auto orient = [](const Point2& p, const Point2& q, const Point2& r) {
    Rational v = (q.w - p.w) * (r.h - p.h) - (q.h - p.h) * (r.w - p.w);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace detail

/// Reads the faces off a y-monotone straight-line drawing of P. The bottom
/// and top are placed far below and above, so their edges are ordered by
/// the w coordinate of the other endpoint.
inline BoundedEmbedding embedding_from_coordinates(const MarkedPoset& base, const std::vector<Point2>& coords,
                                                   std::pair<Rational, Rational> hat_values = {Rational(0),
                                                                                               Rational(1)}) {
  const Poset& p = base.poset();
  const int n = p.size();
  if (static_cast<int>(coords.size()) != n) throw ValidationError("need one coordinate per element");
  for (auto [a, b] : p.cover_list())
    if (coords[a].h >= coords[b].h)
      throw ValidationError("drawing is not y-monotone at '" + p.id(a) + "' < '" + p.id(b) + "'");
  const auto& cl = p.cover_list();
  for (std::size_t i = 0; i < cl.size(); ++i)
    for (std::size_t j = i + 1; j < cl.size(); ++j)
      if (detail::segments_cross(coords[cl[i].first], coords[cl[i].second], coords[cl[j].first],
                                 coords[cl[j].second]))
        throw ValidationError("drawing has crossing edges at '" + p.id(cl[i].first) + "' < '" + p.id(cl[i].second) +
                              "'");
  Poset hat = BoundedEmbedding::hat_of(p);
  const int bot = n, top = n + 1;
  constexpr int kOuterL = -1, kOuterR = -2;
  // Up and down neighbour lists, sorted left to right.
  std::vector<std::vector<int>> up(n + 2), down(n + 2);
  auto key = [&](int from, int to) -> Rational {
    if (from == bot || from == top) return coords[to].w;
    if (to == bot || to == top) return 0;
    return (coords[to].w - coords[from].w) / abs(coords[to].h - coords[from].h);
  };
  for (int v = 0; v < n + 2; ++v) {
    up[v] = hat.upper_covers(v);
    down[v] = hat.lower_covers(v);
    std::sort(up[v].begin(), up[v].end(), [&](int a, int b) { return key(v, a) < key(v, b); });
    std::sort(down[v].begin(), down[v].end(), [&](int a, int b) { return key(v, a) < key(v, b); });
    for (std::size_t i = 0; i + 1 < up[v].size(); ++i)
      if (key(v, up[v][i]) == key(v, up[v][i + 1])) throw ValidationError("overlapping edges above '" + hat.id(v) + "'");
    for (std::size_t i = 0; i + 1 < down[v].size(); ++i)
      if (key(v, down[v][i]) == key(v, down[v][i + 1]))
        throw ValidationError("overlapping edges below '" + hat.id(v) + "'");
  }
  up[bot].insert(up[bot].begin(), kOuterL);
  up[bot].push_back(kOuterR);
  down[top].insert(down[top].begin(), kOuterL);
  down[top].push_back(kOuterR);
  auto walk = [&](int start, int first, bool left_side) {
    std::vector<int> chain{start, first};
    int prev = start, cur = first;
    for (;;) {
      const auto& d = down[cur];
      auto pos = std::find(d.begin(), d.end(), prev) - d.begin();
      bool stop = left_side ? pos + 1 != static_cast<long>(d.size()) : pos != 0;
      if (stop) break;
      int next = left_side ? up[cur].back() : up[cur].front();
      chain.push_back(next);
      prev = cur;
      cur = next;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  };
  std::vector<Face> faces;
  int counter = 0;
  for (int v : hat.topological_order()) {
    for (std::size_t i = 0; i + 1 < up[v].size(); ++i) {
      Face f;
      int a = up[v][i], b = up[v][i + 1];
      if (a == kOuterL) {
        f.id = "FL";
        f.left = {top, bot};
        f.left_outer = true;
      } else {
        f.left = walk(v, a, true);
      }
      if (b == kOuterR) {
        f.id = "FR";
        f.right = {top, bot};
        f.right_outer = true;
      } else {
        f.right = walk(v, b, false);
      }
      if (f.left.front() != f.right.front()) throw ValidationError("drawing is not planar near '" + hat.id(v) + "'");
      if (f.id.empty()) f.id = "F" + std::to_string(++counter);
      faces.push_back(std::move(f));
    }
  }
  return BoundedEmbedding(base, std::move(faces), {}, hat_values);
}

}  // namespace gtflow
