#include "gtflow/corpus.hpp"
#include "gtflow/gt.hpp"
#include "gtflow/io.hpp"
#include "gtflow/skew.hpp"
#include "gtflow/transform.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace gtflow;

namespace {

const Corpus& corpus() {
  static const Corpus c = load_corpus();
  return c;
}

Partition part(std::vector<std::int64_t> p) { return Partition(std::move(p)); }

std::size_t count_substr(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

BoundedEmbedding embedding_of(const std::string& text) { return io::embedding_from_json(Json::parse(text)); }

}  // namespace

// ---------------------------------------------------------------------------

TEST(Gt, GLambdaSmall) {
  auto g = build_G_lambda(part({3, 1}));
  EXPECT_EQ(g.network.vertex_count(), 4);
  EXPECT_EQ(g.network.netflow(), (NetflowVector{2, 0, 0, -2}));
  EXPECT_EQ(g.network.labels(), (std::vector<std::string>{"v2,2", "v3,2", "v3,3", "v4,3"}));

  auto one = build_G_lambda(part({5}));
  EXPECT_EQ(one.network.vertex_count(), 1);
  EXPECT_EQ(one.network.edge_count(), 0);
  EXPECT_EQ(kostant(one.network, one.network.netflow()), 1);
}

TEST(Gt, GLambdaCounts) {
  for (int n = 1; n <= 6; ++n) {
    auto g = build_G_lambda(Partition(std::vector<std::int64_t>(n, 0)));
    EXPECT_EQ(g.network.vertex_count(), (n + 2) * (n + 1) / 2 - 2) << n;
    EXPECT_EQ(g.network.edge_count(), (n - 1) * (n + 2)) << n;
    for (const auto& e : g.network.edges()) EXPECT_LT(e.tail, e.head);
  }
}

TEST(Gt, GLambdaDotForFiveRows) {
  auto g = build_G_lambda(part({4, 3, 2, 1, 0}));
  auto dot = io::to_dot(g.network);
  EXPECT_EQ(count_substr(dot, "[label=\"v"), 19u);
  EXPECT_EQ(count_substr(dot, " -> "), 28u);
  EXPECT_EQ(dot, io::to_dot(build_G_lambda(part({4, 3, 2, 1, 0})).network));
}

TEST(Gt, Points) {
  EXPECT_EQ(enumerate_gt_points(part({2, 1, 0})).size(), 8u);
  EXPECT_EQ(enumerate_gt_points(part({0, 0, 0})).size(), 1u);
  EXPECT_EQ(enumerate_gt_points(part({1, 0})).size(), 2u);
  EXPECT_EQ(weyl_dimension(part({2, 1, 0})), 8);
  EXPECT_EQ(weyl_dimension(part({0, 0, 0, 0})), 1);
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(weyl_dimension(part({m, 0})), m + 1);
  EXPECT_EQ(gt_points_lidskii(part({2, 1, 0})), 8);
  EXPECT_EQ(gt_points_lidskii(part({1, 0})), 2);
  EXPECT_EQ(gt_points_lidskii(part({0, 0, 0})), 1);
  EXPECT_EQ(gt_points_lidskii(part({4, 2, 1, 0})), 140);
}

TEST(Gt, Volumes) {
  EXPECT_EQ(gt_volume_product(part({2, 1, 0})), 1);
  EXPECT_EQ(gt_volume_product(part({2, 2, 0})), 0);
  EXPECT_EQ(gt_volume_product(part({7, 0})), 7);
  EXPECT_EQ(gt_volume_shsyt(part({2, 1, 0})), 1);
  EXPECT_EQ(gt_volume_shsyt(part({1, 1, 1, 0})), gt_volume_product(part({1, 1, 1, 0})));
  EXPECT_EQ(gt_volume_shsyt(part({2, 2, 2})), 0);
  EXPECT_EQ(gt_volume_lidskii(part({2, 1, 0})), 1);
  EXPECT_EQ(gt_volume_lidskii(part({3, 1, 0})), 3);
  EXPECT_EQ(gt_volume_lidskii(part({1, 0})), 1);
  EXPECT_EQ(gt_volume_lidskii(part({5, 3, 2, 0})), 15);
}

TEST(Gt, MarkedPosetMatches) {
  auto mp = gt_marked_poset(part({2, 1, 0}));
  EXPECT_EQ(count_lattice_points(mp), 8);
  EXPECT_EQ(marked_volume(mp), 1);
  EXPECT_TRUE(check_log_concavity(mp).empty());
}

TEST(Gt, PatternToFlow) {
  auto lambda = part({2, 1, 0});
  auto t = gt_transform(lambda);
  const auto& g = t.target.network;
  std::set<IntegerFlow> image;
  for (const auto& x : enumerate_gt_points(lambda)) {
    auto f = gt_to_flow(t, x);
    EXPECT_TRUE(is_flow(g, f, g.netflow()));
    image.insert(f);
  }
  EXPECT_EQ(image.size(), 8u);

  auto zero = part({0, 0, 0});
  auto f0 = gt_to_flow(zero, enumerate_gt_points(zero).front());
  EXPECT_TRUE(std::all_of(f0.begin(), f0.end(), [](auto v) { return v == 0; }));
  EXPECT_THROW(gt_to_flow(lambda, GTPattern({{2, 1, 0}, {0, 1}, {1}})), Error);
}

TEST(Gt, ShiftedTableauFlows) {
  auto g = build_G_lambda(part({0, 0}));
  auto flows = enumerate_integer_flows(g.network, gt_shifted_netflow(2, {1}));
  ASSERT_EQ(flows.size(), 1u);
  auto t = flow_to_shsyt(2, flows[0]);
  EXPECT_EQ(t.diagonal(), (std::vector<int>{1, 3}));
  EXPECT_EQ(shsyt_to_flow(t), flows[0]);
  EXPECT_TRUE(enumerate_integer_flows(g.network, gt_shifted_netflow(2, {0})).empty());

  for (const auto& T : enumerate_shsyt(3)) {
    auto f = shsyt_to_flow(T);
    auto g3 = build_G_lambda(part({0, 0, 0}));
    EXPECT_TRUE(is_flow(g3.network, f, gt_shifted_netflow(3, T.diagonal_gaps())));
    EXPECT_EQ(flow_to_shsyt(3, f), T);
  }
}

TEST(Gt, CountNMatchesKostant) {
  for (int n = 2; n <= 4; ++n) {
    auto g = build_G_lambda(Partition(std::vector<std::int64_t>(n, 0)));
    for (const auto& b : enumerate_compositions(n * (n - 1) / 2 + 1, n - 1, WeakComposition(n - 1, 0)))
      EXPECT_EQ(count_N(n, b), kostant(g.network, gt_shifted_netflow(n, b)));
  }
}

// ---------------------------------------------------------------------------

TEST(Transform, ChainNetwork) {
  auto emb = corpus().embedding("chain3").embedding;
  auto d = build_G_P(emb);
  EXPECT_EQ(kostant(d.network, d.network.netflow()), count_lattice_points(order_polytope_marked(emb.base().poset())));
  auto two = embedding_of(R"({"poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
                              "coordinates": {"a": [0, 0], "b": [0, 1]}})");
  auto g2 = build_G_P(two).network;
  // the order polytope of a 2-chain is a triangle with three lattice points and e(P) = 1
  EXPECT_EQ(kostant(g2, g2.netflow()), 3);
  EXPECT_EQ(lidskii_volume(simplify_network(g2).network) * 2, 1);
}

TEST(Transform, AntichainNetwork) {
  auto emb = corpus().embedding("antichain2").embedding;
  auto g = build_G_P(emb).network;
  EXPECT_EQ(kostant(g, g.netflow()), 4);
  EXPECT_EQ(polytope_volume(emb) * 2, count_linear_extensions(emb.base().poset()));
  auto g3 = build_G_P(emb, 3).network;
  EXPECT_EQ(kostant(g3, g3.netflow()), 16);
}

TEST(Transform, GtEmbeddingIsGLambda) {
  for (auto lambda : {part({2, 1, 0}), part({3, 1, 0}), part({3, 3, 1})}) {
    auto t = gt_transform(lambda);
    EXPECT_EQ(t.simplified.network.vertex_count(), t.target_simplified.network.vertex_count());
    EXPECT_EQ(kostant(t.dual.network, t.dual.network.netflow()), weyl_dimension(lambda));
  }
}

TEST(Transform, GammaRoundTrip) {
  for (const auto& fx : corpus().embeddings) {
    const auto& emb = fx.embedding;
    auto d = build_dual_network(emb);
    for (const auto& e : d.network.edges()) EXPECT_LT(e.tail, e.head) << fx.name;
    auto pts = polytope_points(emb);
    if (pts.size() > 600) continue;
    std::set<IntegerFlow> image;
    for (const auto& x : pts) {
      auto f = gamma(emb, d, x);
      ASSERT_TRUE(is_flow(d.network, f, d.network.netflow())) << fx.name;
      EXPECT_EQ(gamma_inverse(emb, d, f, DescentPath::FirstCover), x) << fx.name;
      EXPECT_EQ(gamma_inverse(emb, d, f, DescentPath::LastCover), x) << fx.name;
      image.insert(f);
    }
    EXPECT_EQ(Integer(image.size()), kostant(d.network, d.network.netflow())) << fx.name;
  }
}

TEST(Transform, ConstantMarkingGivesZeroFlow) {
  auto emb = embedding_of(R"({"poset": {"elements": ["a", "m", "c"], "covers": [["a", "m"], ["m", "c"]],
                                        "marked": {"a": "2", "c": "2"}},
                              "coordinates": {"a": [0, 0], "m": [0, 1], "c": [0, 2]}})");
  auto d = build_dual_network(emb);
  auto f = gamma(emb, d, {2, 2, 2});
  EXPECT_TRUE(std::all_of(f.begin(), f.end(), [](auto v) { return v == 0; }));
  EXPECT_EQ(gamma_inverse(emb, d, f), (LatticePoint{2, 2, 2}));
  EXPECT_THROW(gamma(emb, d, {2, 3, 2}), PreconditionError);
}

TEST(Transform, VolumeMatchesLidskii) {
  int compared = 0;
  for (const auto& fx : corpus().embeddings) {
    auto d = build_dual_network(fx.embedding);
    auto s = simplify_network(d.network).network;
    try {
      detail::check_lidskii_hypotheses(s);
    } catch (const PreconditionError&) {
      continue;
    }
    EXPECT_EQ(polytope_volume(fx.embedding), lidskii_volume(s)) << fx.name;
    ++compared;
  }
  EXPECT_GE(compared, 5);
}

TEST(Transform, EmbeddingValidation) {
  EXPECT_THROW(embedding_of(R"({"poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
                                "coordinates": {"a": [0, 1], "b": [0, 0]}})"),
               ValidationError);
  for (const auto& fx : corpus().embeddings) EXPECT_TRUE(validate_embedding(fx.embedding)) << fx.name;
}

TEST(Transform, SidePocketOverlay) {
  const auto& emb = corpus().embedding("side_pocket").embedding;
  auto d = build_dual_network(emb);
  auto dot = io::to_dot(emb, d);
  EXPECT_EQ(count_substr(dot, "crosses="), static_cast<std::size_t>(emb.hat().cover_list().size()));
  EXPECT_EQ(kostant(d.network, d.network.netflow()), 525);
}

// ---------------------------------------------------------------------------

TEST(Skew, MatchesEnumeration) {
  for (auto [l, m_, m] : std::vector<std::tuple<std::vector<std::int64_t>, std::vector<std::int64_t>, int>>{
           {{2, 1, 0}, {1, 0, 0}, 1}, {{2, 2, 1}, {1, 0, 0}, 2}, {{2, 1}, {0, 0}, 2}, {{2, 1}, {1, 1}, 1}}) {
    auto lambda = part(l), mu = part(m_);
    auto sf = build_skew_flow(lambda, mu, m);
    EXPECT_EQ(sf.flow_count, Integer(enumerate_skew_patterns(lambda, mu, m).size()));
    EXPECT_EQ(sf.flow_count, sf.lattice_count);
  }
}

TEST(Skew, ForcedShapeHasOnePoint) {
  auto sf = build_skew_flow(part({2, 1, 0}), part({2, 1, 0}), 2);
  EXPECT_EQ(sf.flow_count, 1);
}

TEST(Skew, FourRowsThreeSteps) {
  auto lambda = part({3, 2, 1, 0}), mu = part({1, 1, 0, 0});
  auto s = build_skew_gt(lambda, mu, 3);
  EXPECT_EQ(s.poset.size(), 16);
  EXPECT_EQ(s.poset.marked_elements().size(), 8u);
  auto sf = build_skew_flow(lambda, mu, 3);
  EXPECT_EQ(sf.flow_count, Integer(enumerate_skew_patterns(lambda, mu, 3).size()));
}

TEST(Skew, RejectsBadShapes) {
  EXPECT_THROW(build_skew_gt(part({1, 0}), part({2, 0}), 1), PreconditionError);
  EXPECT_THROW(build_skew_gt(part({2, 1}), part({0, 0, 0}), 1), PreconditionError);
  EXPECT_THROW(build_skew_gt(part({2, 2}), part({1, 1}), 1), PreconditionError);
}

// ---------------------------------------------------------------------------

TEST(Io, RoundTrips) {
  for (const auto& fx : corpus().networks) {
    auto j = io::to_json(fx.network);
    EXPECT_EQ(io::to_json(io::network_from_json(j)), j) << fx.name;
  }
  for (const auto& fx : corpus().embeddings) {
    auto j = io::to_json(fx.embedding);
    auto back = io::embedding_from_json(j);
    EXPECT_EQ(io::to_json(back), j) << fx.name;
    EXPECT_EQ(polytope_point_count(back), polytope_point_count(fx.embedding)) << fx.name;
    auto mj = io::to_json(fx.embedding.base());
    EXPECT_EQ(io::to_json(io::marked_poset_from_json(mj)), mj) << fx.name;
  }
  for (const auto& t : enumerate_shsyt(3)) EXPECT_EQ(io::tableau_from_json(io::to_json(t)), t);
  IntegerFlow f{0, 3, 1, 2};
  EXPECT_EQ(io::int_array_from_json(io::int_array(f)), f);
}

TEST(Io, NetworkAliasAndErrors) {
  auto g = io::network_from_json(Json::parse(R"({"n": 2, "edges": [[0, 1], [1, 2], [0, 2]], "netflow": [1, 0, -1]})"));
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(kostant(g, g.netflow()), 2);
  EXPECT_THROW(io::network_from_json(Json::parse(R"({"edges": []})")), IoError);
  EXPECT_THROW(io::marked_poset_from_json(Json::parse(R"({"elements": ["a"], "covers": [["a", "z"]]})")), IoError);
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), IoError);
}

TEST(Io, ExactNumbers) {
  EXPECT_EQ(io::exact(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(io::read_rational(Json("5/10")), Rational(1, 2));
  EXPECT_EQ(io::read_rational(Json(7)), 7);
  EXPECT_THROW(io::read_int(Json("1/2")), IoError);
}
