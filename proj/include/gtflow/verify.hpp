#pragma once

// The verification harness: each identity is checked instance by instance
// and recorded with its expected and actual value.

#include "gtflow/corpus.hpp"
#include "gtflow/ehrhart.hpp"
#include "gtflow/gt.hpp"
#include "gtflow/skew.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace gtflow {

struct VerifyBounds {
  int n_max = 4;             // GT side length
  int lambda_max = 4;        // largest part of lambda
  int b_max = 3;             // shSYT diagonal gaps
  int a_max = 3;             // extension gaps a_i
  int skew_max = 2;          // skew entries and rows
  int trials = 100;          // random objectives per marking pair
  std::uint64_t seed = 20240601;
  std::size_t lattice_limit = 5000;
};

struct CheckResult {
  std::string identity, instance, expected, actual;
  bool pass = false;
};

class VerifyReport {
public:
  void add(std::string identity, std::string instance, std::string expected, std::string actual) {
    bool pass = expected == actual;
    checks_.push_back({std::move(identity), std::move(instance), std::move(expected), std::move(actual), pass});
  }
  void holds(const std::string& identity, const std::string& instance, bool ok, const std::string& detail = "") {
    add(identity, instance, std::string("true"), ok ? std::string("true") : (detail.empty() ? "false" : detail));
  }
  void fail(const std::string& identity, const std::string& instance, const std::string& why) {
    checks_.push_back({identity, instance, "no error", why, false});
  }
  void warn(std::string w) { warnings_.push_back(std::move(w)); }

  /// Runs `body` and records an exception as a failed check.
  void guard(const std::string& identity, const std::string& instance, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      fail(identity, instance, e.what());
    }
  }

  const std::vector<CheckResult>& checks() const { return checks_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  int failures() const {
    return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [](const auto& c) { return !c.pass; }));
  }
  bool ok() const { return failures() == 0; }

  void sort() {
    std::stable_sort(checks_.begin(), checks_.end(), [](const CheckResult& a, const CheckResult& b) {
      return std::tie(a.identity, a.instance) < std::tie(b.identity, b.instance);
    });
  }

  Json to_json() const {
    Json j;
    j["ok"] = ok();
    j["checks"] = static_cast<int>(checks_.size());
    j["failures"] = failures();
    j["warnings"] = warnings_;
    Json list = Json::array();
    for (const auto& c : checks_)
      list.push_back({{"identity", c.identity},
                      {"instance", c.instance},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"pass", c.pass}});
    j["results"] = list;
    return j;
  }

private:
  std::vector<CheckResult> checks_;
  std::vector<std::string> warnings_;
};

namespace detail {

inline std::string show(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string str(const Integer& z) { return z.str(); }
inline std::string str(const Rational& q) { return format_rational(q); }

/// Weakly decreasing sequences of length n with entries in [0, top].
inline std::vector<Partition> partitions_in_box(int n, int top) {
  std::vector<Partition> out;
  std::vector<std::int64_t> p(n);
  std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t cap) {
    if (i == n) {
      out.emplace_back(p);
      return;
    }
    for (std::int64_t v = 0; v <= cap; ++v) {
      p[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, top);
  return out;
}

inline Marking scaled(const Marking& m, int t) {
  Marking out = m;
  for (auto& v : out)
    if (v) *v *= t;
  return out;
}

inline NetflowVector scaled(const NetflowVector& a, int t) {
  NetflowVector out = a;
  for (auto& x : out) x *= t;
  return out;
}

/// Lidskii volume of a network or of its simplification, whichever meets
/// the hypotheses; nullopt when neither does.
inline std::optional<Rational> lidskii_volume_if_applicable(const FlowNetwork& g) {
  try {
    return lidskii_volume(g);
  } catch (const PreconditionError&) {
  }
  try {
    return lidskii_volume(simplify_network(g).network);
  } catch (const PreconditionError&) {
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// GT polytopes: volume formulas, point-count formulas and G_lambda.

inline void verify_gt_identities(const VerifyBounds& b, VerifyReport& r) {
  for (int n = 1; n <= b.n_max; ++n)
    for (const auto& lambda : detail::partitions_in_box(n, b.lambda_max)) {
      const std::string inst = "lambda=" + detail::show(lambda.parts());
      r.guard("gt.volume", inst, [&] {
        auto product = gt_volume_product(lambda);
        r.add("gt.volume.product=shsyt", inst, detail::str(product), detail::str(gt_volume_shsyt(lambda)));
        r.add("gt.volume.product=lidskii", inst, detail::str(product), detail::str(gt_volume_lidskii(lambda)));
      });
      r.guard("gt.points", inst, [&] {
        auto weyl = weyl_dimension(lambda);
        auto g = build_G_lambda(lambda);
        r.add("gt.points.weyl=lidskii", inst, detail::str(weyl), detail::str(gt_points_lidskii(lambda)));
        r.add("gt.points.weyl=enumeration", inst, detail::str(weyl),
              std::to_string(enumerate_gt_points(lambda).size()));
        r.add("gt.points.weyl=kostant", inst, detail::str(weyl), detail::str(kostant(g.network, g.network.netflow())));
      });
    }
}

/// Every GT pattern lands on a distinct integer flow of G_lambda, and the
/// flows are exhausted.
inline void verify_gt_bijection(const VerifyBounds& b, VerifyReport& r) {
  for (int n = 2; n <= std::min(b.n_max, 4); ++n)
    for (const auto& lambda : detail::partitions_in_box(n, std::min(b.lambda_max, 3))) {
      const std::string inst = "lambda=" + detail::show(lambda.parts());
      r.guard("gt.bijection", inst, [&] {
        auto t = gt_transform(lambda);
        const auto& g = t.target.network;
        std::set<IntegerFlow> image;
        bool flows = true;
        for (const auto& x : enumerate_gt_points(lambda)) {
          auto f = gt_to_flow(t, x);
          flows = flows && is_flow(g, f, g.netflow());
          image.insert(f);
        }
        r.holds("gt.bijection.valid_flows", inst, flows);
        r.add("gt.bijection.injective_onto", inst, detail::str(kostant(g, g.netflow())), std::to_string(image.size()));
      });
    }
}

/// count_N against the Kostant function, and the shSYT <-> flow maps.
inline void verify_shsyt(const VerifyBounds& b, VerifyReport& r) {
  for (int n = 2; n <= b.n_max; ++n) {
    const Partition zero(std::vector<std::int64_t>(n, 0));
    const auto g = build_G_lambda(zero);
    std::map<WeakComposition, std::vector<ShiftedTableau>> by_gaps;
    for (auto& t : enumerate_shsyt(n)) {
      auto gaps = t.diagonal_gaps();
      by_gaps[gaps].push_back(std::move(t));
    }
    WeakComposition bvec(n - 1, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i < n - 1) {
        for (int v = 0; v <= b.b_max; ++v) {
          bvec[i] = v;
          rec(i + 1);
        }
        return;
      }
      const std::string inst = "n=" + std::to_string(n) + " b=" + detail::show(bvec);
      r.guard("shsyt", inst, [&] {
        auto a = gt_shifted_netflow(n, bvec);
        auto N = count_N(n, bvec);
        r.add("shsyt.count_N=kostant", inst, detail::str(N), detail::str(kostant(g.network, a)));
        const auto& tabs = by_gaps[bvec];
        std::set<IntegerFlow> image;
        bool round_trip = true;
        for (const auto& t : tabs) {
          auto f = shsyt_to_flow(t);
          round_trip = round_trip && is_flow(g.network, f, a) && flow_to_shsyt(n, f) == t;
          image.insert(f);
        }
        for (const auto& f : enumerate_integer_flows(g.network, a))
          round_trip = round_trip && shsyt_to_flow(flow_to_shsyt(n, f)) == f;
        r.holds("shsyt.maps_inverse", inst, round_trip);
        r.add("shsyt.tableaux=flows", inst, detail::str(N), std::to_string(image.size()));
      });
    };
    rec(0);
  }
}

// ---------------------------------------------------------------------------
// Flow networks.

inline void verify_lidskii(const Corpus& c, VerifyReport& r) {
  for (const auto& fx : c.networks) {
    const auto& g = fx.network;
    r.guard("lidskii", fx.name, [&] {
      auto direct = kostant(g, g.netflow());
      if (fx.golden.contains("flows")) r.add("lidskii.direct=golden", fx.name, fx.golden["flows"].get<std::string>(), detail::str(direct));
      r.add("lidskii.binomial=direct", fx.name, detail::str(direct), detail::str(lidskii_points_binomial(g)));
      r.add("lidskii.multiset=direct", fx.name, detail::str(direct), detail::str(lidskii_points_multiset(g)));
      const int dim = flow_polytope_dimension(g);
      auto fit = fit_ehrhart([&](int t) { return kostant(g, detail::scaled(g.netflow(), t)); }, dim);
      if (fx.golden.contains("flows_dilated_2"))
        r.add("lidskii.dilation_2=golden", fx.name, fx.golden["flows_dilated_2"].get<std::string>(), detail::str(fit.counts.at(2)));
      r.holds("lidskii.ehrhart_polynomial", fx.name, fit.polynomial);
      r.add("lidskii.volume=ehrhart_leading", fx.name, detail::str(fit.leading), detail::str(lidskii_volume(g)));
    });
  }
}

inline void verify_reduction_trees(const Corpus& c, VerifyReport& r) {
  std::vector<const NetworkFixture*> all;
  for (const auto& fx : c.networks) all.push_back(&fx);
  for (const auto& fx : c.complete_graphs) all.push_back(&fx);
  for (const auto* fx : all) {
    r.guard("reduction", fx->name, [&] {
      auto tree = canonical_reduction_tree(fx->network);
      r.add("reduction.leaf_volumes=lidskii", fx->name, detail::str(lidskii_volume(fx->network)),
            detail::str(tree.leaf_volume_sum()));
      if (fx->golden.contains("reduction_leaves"))
        r.add("reduction.leaf_count=golden", fx->name, fx->golden["reduction_leaves"].get<std::string>(),
              std::to_string(tree.leaves().size()));
    });
  }
}

// ---------------------------------------------------------------------------
// Marked order polytopes.

/// Lattice points of O(P,A)_lambda against flows of the dual network, with
/// Gamma checked point by point.
inline void verify_transform(const Corpus& c, VerifyReport& r) {
  for (const auto& fx : c.embeddings) {
    const auto& emb = fx.embedding;
    r.guard("transform", fx.name, [&] {
      auto v = validate_embedding(emb);
      r.holds("transform.strongly_planar", fx.name, v.ok, v.message);
      auto g = build_dual_network(emb);
      const auto& net = g.network;
      auto points = polytope_points(emb);
      if (fx.golden.contains("lattice_points"))
        r.add("transform.points=golden", fx.name, fx.golden["lattice_points"].get<std::string>(), std::to_string(points.size()));
      auto K = kostant(net, net.netflow());
      r.add("transform.points=kostant", fx.name, std::to_string(points.size()), detail::str(K));
      std::set<IntegerFlow> image;
      bool valid = true, inverse = true;
      for (const auto& x : points) {
        auto f = gamma(emb, g, x);
        valid = valid && is_flow(net, f, net.netflow());
        inverse = inverse && gamma_inverse(emb, g, f) == x && gamma_inverse(emb, g, f, DescentPath::LastCover) == x;
        image.insert(f);
      }
      r.holds("transform.gamma_flows", fx.name, valid);
      r.holds("transform.gamma_inverse", fx.name, inverse);
      r.add("transform.gamma_injective", fx.name, std::to_string(points.size()), std::to_string(image.size()));
      if (auto lv = detail::lidskii_volume_if_applicable(net))
        r.add("transform.volume=lidskii", fx.name, detail::str(polytope_volume(emb)), detail::str(*lv));
    });
  }
}

inline void verify_ehrhart_volumes(const Corpus& c, VerifyReport& r) {
  for (const auto& fx : c.embeddings) {
    const auto& emb = fx.embedding;
    r.guard("volume", fx.name, [&] {
      auto mp = polytope_poset(emb);
      const int dim = emb.element_count() - static_cast<int>(emb.base().marked_elements().size());
      auto fit = fit_ehrhart([&](int t) { return count_lattice_points(mp.with_marking(detail::scaled(mp.marking(), t))); }, dim);
      r.add("volume.extensions=ehrhart_leading", fx.name, detail::str(fit.leading), detail::str(polytope_volume(emb)));
      r.holds("volume.ehrhart_polynomial", fx.name, fit.polynomial);
      if (fx.marked()) return;
      const auto& p = emb.base().poset();
      auto e = count_linear_extensions(p);
      if (fx.golden.contains("linear_extensions"))
        r.add("volume.extensions=golden", fx.name, fx.golden["linear_extensions"].get<std::string>(), detail::str(e));
      r.add("volume.normalized=e(P)", fx.name, detail::str(e),
            detail::str(polytope_volume(emb) * Rational(factorial(p.size()))));
      for (int m = 0; m <= 3; ++m) {
        auto chk = order_polynomial_check(p, m);
        r.add("volume.order_polynomial", fx.name + " m=" + std::to_string(m), detail::str(chk.map_count),
              detail::str(chk.lattice_count));
        r.add("volume.dilation=order_polynomial", fx.name + " m=" + std::to_string(m), detail::str(chk.map_count),
              detail::str(fit.counts.at(m)));
      }
    });
  }
}

inline void verify_log_concavity(const Corpus& c, VerifyReport& r) {
  for (const auto& fx : c.embeddings) {
    if (fx.embedding.element_count() > 7) continue;
    r.guard("log_concavity", fx.name, [&] {
      auto bad = check_log_concavity(polytope_poset(fx.embedding));
      r.add("log_concavity.violations", fx.name, "0", std::to_string(bad.size()));
    });
  }
}

inline void verify_minkowski(const Corpus& c, const VerifyBounds& b, VerifyReport& r) {
  for (const auto& fx : c.embeddings) {
    r.guard("minkowski", fx.name, [&] {
      auto mp = polytope_poset(fx.embedding);
      auto units = unit_markings(mp);
      for (std::size_t i = 0; i < units.size(); ++i)
        r.holds("minkowski.lambda+omega", fx.name + " omega" + std::to_string(i + 1),
              check_minkowski(mp, mp.marking(), units[i], b.trials, b.seed + i));
      for (std::size_t i = 0; i + 1 < units.size(); ++i)
        r.holds("minkowski.omega+omega", fx.name + " omega" + std::to_string(i + 1) + "+omega" + std::to_string(i + 2),
              check_minkowski(mp, units[i], units[i + 1], b.trials, b.seed + 100 + i));
      r.holds("minkowski.decomposition", fx.name, check_minkowski_decomposition(mp, b.trials, b.seed + 200));
    });
  }
}

// ---------------------------------------------------------------------------
// Subdivisions.

inline void verify_subdivisions(const Corpus& c, const VerifyBounds& b, VerifyReport& r) {
  for (const auto& fx : c.embeddings) {
    std::vector<SubdivisionReport> reps;
    for (auto order : {FaceOrder::Descending, FaceOrder::Ascending}) {
      const std::string inst = fx.name + (order == FaceOrder::Descending ? " descending" : " ascending");
      r.guard("subdivision", inst, [&] {
        reps.push_back(full_subdivision_check(fx.embedding, order, b.lattice_limit));
        r.holds("subdivision.cells_match", inst, reps.back().ok, reps.back().message);
      });
    }
    // the subdivision does not depend on the order faces are taken in
    if (reps.size() == 2) {
      r.add("subdivision.orders.cells", fx.name, std::to_string(reps[0].cells), std::to_string(reps[1].cells));
      r.add("subdivision.orders.volume", fx.name, detail::str(reps[0].flow_volume), detail::str(reps[1].flow_volume));
    }
  }
}

/// N(a) against K of the shifted netflow, and the leaf-to-extension map run
/// on every flow.
inline void verify_flow_extensions(const Corpus& c, const VerifyBounds& b, VerifyReport& r) {
  std::vector<std::pair<std::string, BoundedEmbedding>> cases;
  for (const auto& fx : c.embeddings)
    if (fx.has_tag("single_sink")) cases.emplace_back(fx.name, fx.embedding);
  // one instance beyond the fixture size limit
  cases.emplace_back("gt_3_2_1_0", gt_embedding(Partition({3, 2, 1, 0})));
  for (const auto& kase : cases) {
    const auto& name = kase.first;
    const auto& emb = kase.second;
    const auto& mp = emb.base();
    const auto sorted = mp.sorted_marked();
    const int k = static_cast<int>(sorted.size());
    r.guard("extensions", name, [&] {
      auto g = detail::single_sink_network(emb);
      WeakComposition a(k - 1, 0);
      std::function<void(int)> rec = [&](int i) {
        if (i < k - 1) {
          for (int v = 0; v <= b.a_max; ++v) {
            a[i] = v;
            rec(i + 1);
          }
          return;
        }
        std::int64_t total = k;
        for (auto x : a) total += x;
        if (total != mp.size()) return;  // infeasible: both sides vanish
        const std::string inst = name + " a=" + detail::show(a);
        auto N = count_marked_extensions(mp, a);
        r.add("extensions.N=kostant", inst, detail::str(N), detail::str(kostant(g.network, shifted_netflow(g, a))));
        auto leaves = leaves_to_extensions(emb, a);
        std::set<std::vector<int>> distinct;
        bool placed = true;
        for (const auto& fe : leaves) {
          distinct.insert(fe.extension);
          for (std::size_t i = 0; i < fe.extension.size(); ++i)
            for (std::size_t j = i + 1; j < fe.extension.size(); ++j)
              placed = placed && !mp.poset().less(fe.extension[i], fe.extension[j]);
          std::size_t pos = 0;
          for (int j = 0; j < k; ++j) {
            placed = placed && fe.extension.at(pos) == sorted[j];
            if (j + 1 < k) pos += 1 + a[j];
          }
        }
        r.add("extensions.bijection_count", inst, detail::str(N), std::to_string(distinct.size()));
        r.holds("extensions.marked_positions", inst, placed);
        r.add("extensions.injective", inst, std::to_string(leaves.size()), std::to_string(distinct.size()));
      };
      rec(0);
    });
  }
}

/// Skew GT networks pass the count gate for small shapes.
inline void verify_skew(const VerifyBounds& b, VerifyReport& r) {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= b.skew_max + 1; ++m)
      for (const auto& lambda : detail::partitions_in_box(n, b.skew_max))
        for (const auto& mu : detail::partitions_in_box(n, b.skew_max)) {
          bool contained = true;
          for (int i = 0; i < n; ++i) contained = contained && mu[i] <= lambda[i];
          if (!contained) continue;
          const std::string inst = "lambda=" + detail::show(lambda.parts()) + " mu=" + detail::show(mu.parts()) +
                                   " m=" + std::to_string(m);
          try {
            build_skew_gt(lambda, mu, m);
          } catch (const PreconditionError&) {
            continue;  // lambda/mu is not a horizontal-strip chain of length m
          }
          r.guard("skew", inst, [&] {
            auto sf = build_skew_flow(lambda, mu, m);
            r.add("skew.flows=enumeration", inst, std::to_string(enumerate_skew_patterns(lambda, mu, m).size()),
                  detail::str(sf.flow_count));
          });
        }
}

// ---------------------------------------------------------------------------

enum class VerifyScope { Gt, Poset, Flow, Transform, Subdivision, All };

inline VerifyScope parse_scope(const std::string& s) {
  if (s == "gt") return VerifyScope::Gt;
  if (s == "poset") return VerifyScope::Poset;
  if (s == "flow") return VerifyScope::Flow;
  if (s == "transform") return VerifyScope::Transform;
  if (s == "subdivision") return VerifyScope::Subdivision;
  if (s == "all") return VerifyScope::All;
  throw PreconditionError("unknown scope '" + s + "'");
}

inline VerifyReport run_verify(VerifyScope scope, const VerifyBounds& b, const Corpus& c) {
  VerifyReport r;
  if (c.networks.empty() && c.complete_graphs.empty() && c.embeddings.empty()) r.warn("the corpus is empty");
  auto in = [&](VerifyScope s) { return scope == VerifyScope::All || scope == s; };
  if (in(VerifyScope::Gt)) {
    verify_gt_identities(b, r);
    verify_gt_bijection(b, r);
    verify_shsyt(b, r);
  }
  if (in(VerifyScope::Flow)) verify_lidskii(c, r);
  if (in(VerifyScope::Poset)) {
    verify_ehrhart_volumes(c, r);
    verify_log_concavity(c, r);
    verify_minkowski(c, b, r);
  }
  if (in(VerifyScope::Transform)) {
    verify_transform(c, r);
    verify_skew(b, r);
  }
  if (in(VerifyScope::Subdivision)) {
    verify_reduction_trees(c, r);
    verify_subdivisions(c, b, r);
    verify_flow_extensions(c, b, r);
  }
  if (r.checks().empty()) r.warn("nothing to verify in this scope");
  r.sort();
  return r;
}

}  // namespace gtflow
