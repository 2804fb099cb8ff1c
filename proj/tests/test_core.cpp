#include "gtflow/combinatorics.hpp"
#include "gtflow/ehrhart.hpp"
#include "gtflow/flow.hpp"
#include "gtflow/poset.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace gtflow;

namespace {

Poset chain(int n) {
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) {
    ids.push_back("c" + std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return Poset::from_covers(ids, covers);
}

Poset antichain(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("a" + std::to_string(i));
  return Poset::from_covers(ids, {});
}

// a < m < c with a and c marked
MarkedPoset marked_chain(Rational low, Rational high) {
  return MarkedPoset(Poset::from_covers({"a", "m", "c"}, {{0, 1}, {1, 2}}), {low, std::nullopt, high});
}

// bottom < {x, y} < top, extremes marked 0 and 1
MarkedPoset marked_diamond() {
  return MarkedPoset(Poset::from_covers({"b", "x", "y", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
                     {Rational(0), std::nullopt, std::nullopt, Rational(1)});
}

FlowNetwork triangle(NetflowVector a = {1, 0, -1}) { return FlowNetwork(3, {{0, 1}, {1, 2}, {0, 2}}, std::move(a)); }

}  // namespace

// ---------------------------------------------------------------------------

TEST(Combinatorics, Dominance) {
  EXPECT_TRUE(dominance_geq({2, 0, 1}, {1, 1, 1}));
  EXPECT_FALSE(dominance_geq({0, 2}, {1, 1}));
  EXPECT_TRUE(dominance_geq({1, 1, 1}, {1, 1, 1}));
  EXPECT_THROW(dominance_geq({1, 1}, {1, 1, 1}), PreconditionError);
}

TEST(Combinatorics, EnumerateCompositions) {
  EXPECT_EQ(enumerate_compositions(2, 2, {0, 0}), (std::vector<WeakComposition>{{2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(enumerate_compositions(1, 2, {1, 0}), (std::vector<WeakComposition>{{1, 0}}));
  EXPECT_EQ(enumerate_compositions(0, 3, {0, 0, 0}), (std::vector<WeakComposition>{{0, 0, 0}}));
}

TEST(Combinatorics, EnumerateCompositionsMatchesFilteredGeneration) {
  for (int total = 0; total <= 5; ++total)
    for (int parts = 1; parts <= 4; ++parts) {
      WeakComposition floor(parts, 0);
      floor[0] = total / 2;
      std::vector<WeakComposition> all;
      for (const auto& c : enumerate_compositions(total, parts, WeakComposition(parts, 0)))
        if (dominance_geq(c, floor)) all.push_back(c);
      auto filtered = enumerate_compositions(total, parts, floor);
      EXPECT_EQ(filtered, all) << "total=" << total << " parts=" << parts;
      EXPECT_EQ(std::set<WeakComposition>(filtered.begin(), filtered.end()).size(), filtered.size());
    }
}

TEST(Combinatorics, MultisetBinomial) {
  EXPECT_EQ(multiset_binomial(2, 2), 3);
  EXPECT_EQ(multiset_binomial(1, 5), 1);
  EXPECT_EQ(multiset_binomial(0, 0), 1);
  EXPECT_EQ(multiset_binomial(0, 3), 0);
}

TEST(Combinatorics, ShiftedTableaux) {
  ASSERT_EQ(enumerate_shsyt(1).size(), 1u);
  auto two = enumerate_shsyt(2);
  ASSERT_EQ(two.size(), 1u);
  for (const auto& t : two) EXPECT_EQ(t.at(1, 1), 1);
  // sum over diagonals reproduces the full list
  Integer total = 0;
  for (std::int64_t b1 = 0; b1 <= 5; ++b1)
    for (std::int64_t b2 = 0; b2 <= 5; ++b2) total += count_N(3, {b1, b2});
  EXPECT_EQ(total, Integer(enumerate_shsyt(3).size()));
  EXPECT_EQ(enumerate_shsyt(3).size(), 2u);
  EXPECT_EQ(enumerate_shsyt(4).size(), 12u);
}

TEST(Combinatorics, CountN) {
  // with T(1,1) = 1 the smallest diagonal gap is 1, so b = (0) is empty
  EXPECT_EQ(count_N(2, {0}), 0);
  EXPECT_EQ(count_N(2, {1}), 1);
  EXPECT_EQ(count_N(2, {5}), 0);
  EXPECT_EQ(count_N(3, {1, 1}), 0);
  EXPECT_EQ(count_N(3, {1, 2}), 1);
  EXPECT_EQ(count_N(3, {2, 1}), 1);
}

TEST(Combinatorics, ShiftedTableauValidation) {
  EXPECT_NO_THROW(ShiftedTableau(2, {{1, 2}, {3}}));
  EXPECT_THROW(ShiftedTableau(2, {{1, 3}, {2}}), ValidationError);
  EXPECT_THROW(ShiftedTableau(2, {{1, 2}, {2}}), ValidationError);
}

TEST(Combinatorics, CountSsyt) {
  EXPECT_EQ(count_ssyt(Partition({1}), 3), 3);
  EXPECT_EQ(count_ssyt(Partition({2, 1}), 3), 8);
  EXPECT_EQ(count_ssyt(Partition(std::vector<std::int64_t>{}), 5), 1);
}

TEST(Arith, RationalText) {
  EXPECT_EQ(format_rational(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}

// ---------------------------------------------------------------------------

TEST(Poset, Validation) {
  EXPECT_TRUE(validate_marked_poset(marked_chain(0, 2)));
  EXPECT_FALSE(validate_marked_poset(marked_chain(3, 1)));
  MarkedPoset half(antichain(2), {Rational(0), std::nullopt});
  EXPECT_FALSE(validate_marked_poset(half));
}

TEST(Poset, RejectsCycles) {
  EXPECT_THROW(Poset::from_covers({"a", "b"}, {{0, 1}, {1, 0}}), ValidationError);
}

TEST(Poset, LatticePoints) {
  auto mp = marked_chain(0, 2);
  auto pts = lattice_points(mp);
  ASSERT_EQ(pts.size(), 3u);
  std::set<std::int64_t> middle;
  for (const auto& x : pts) middle.insert(x[1]);
  EXPECT_EQ(middle, (std::set<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(count_lattice_points(marked_chain(1, 1)), 1);
}

TEST(Poset, MarkedExtensions) {
  auto c3 = MarkedPoset(chain(3), {Rational(0), std::nullopt, Rational(1)});
  EXPECT_EQ(count_marked_extensions(c3, {1}), 1);
  EXPECT_EQ(count_marked_extensions(marked_diamond(), {2}), 2);
  EXPECT_EQ(count_marked_extensions(marked_diamond(), {1}), 0);
  EXPECT_EQ(count_marked_extensions(marked_diamond(), {3}), 0);
}

TEST(Poset, MarkedVolume) {
  for (const auto& p : {chain(3), antichain(3), Poset::from_covers({"a", "b", "c"}, {{0, 2}, {1, 2}})}) {
    auto mp = order_polytope_marked(p);
    EXPECT_EQ(marked_volume(mp), Rational(count_linear_extensions(p), factorial(p.size())));
  }
  EXPECT_EQ(marked_volume(marked_chain(1, 1)), 0);
  EXPECT_EQ(marked_volume(marked_chain(0, 2)), 2);
  EXPECT_EQ(marked_volume(marked_diamond()), Rational(1, 1));
}

TEST(Poset, LinearExtensions) {
  EXPECT_EQ(count_linear_extensions(chain(4)), 1);
  EXPECT_EQ(count_linear_extensions(antichain(4)), 24);
  std::vector<std::vector<int>> seen;
  for_each_linear_extension(Poset::from_covers({"a", "b", "c"}, {{0, 2}, {1, 2}}),
                            [&](const std::vector<int>& e) { seen.push_back(e); });
  ASSERT_EQ(seen.size(), 2u);
  for (const auto& e : seen) EXPECT_EQ(e.front(), 2);  // order-reversing: the maximum comes first
}

TEST(Poset, Vertices) {
  auto mp = marked_chain(0, 2);
  EXPECT_TRUE(is_vertex(mp, {0, 0, 2}));
  EXPECT_FALSE(is_vertex(mp, {0, 1, 2}));
  EXPECT_THROW(is_vertex(mp, {0, 3, 2}), PreconditionError);
  auto v = enumerate_vertices(mp);
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<std::vector<Rational>>{{0, 0, 2}, {0, 2, 2}}));
  EXPECT_EQ(enumerate_vertices(order_polytope_marked(antichain(2))).size(), 4u);
  EXPECT_EQ(enumerate_vertices(MarkedPoset(chain(2), {Rational(1), Rational(3)})).size(), 1u);
}

TEST(Poset, Minkowski) {
  auto mp = marked_diamond();
  Marking zero = mp.marking();
  for (auto& z : zero)
    if (z) z = Rational(0);
  EXPECT_TRUE(check_minkowski(mp, mp.marking(), zero, 50));
  EXPECT_TRUE(check_minkowski(mp, mp.marking(), mp.marking(), 50));
  auto w = unit_markings(mp);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_TRUE(check_minkowski(mp, w[0], w[1], 50));
  EXPECT_TRUE(check_minkowski_decomposition(mp, 50));
}

TEST(Poset, LogConcavity) {
  EXPECT_TRUE(check_log_concavity(MarkedPoset(chain(4), {Rational(0), std::nullopt, Rational(1), Rational(2)})).empty());
  EXPECT_TRUE(check_log_concavity(marked_diamond()).empty());
  EXPECT_TRUE(check_log_concavity(order_polytope_marked(antichain(4))).empty());
}

TEST(Poset, OrderPolynomial) {
  auto one = order_polynomial_check(chain(1), 3);
  EXPECT_TRUE(one.ok());
  EXPECT_EQ(one.map_count, 4);
  auto two = order_polynomial_check(chain(2), 2);
  EXPECT_TRUE(two.ok());
  EXPECT_EQ(two.map_count, 6);
  auto anti = order_polynomial_check(antichain(2), 1);
  EXPECT_TRUE(anti.ok());
  EXPECT_EQ(anti.map_count, 4);
}

TEST(Poset, DilationScalesMarking) {
  auto d = marked_chain(0, 2).dilated(3);
  EXPECT_EQ(d.value(2), 6);
  EXPECT_EQ(count_lattice_points(d), 7);
}

// ---------------------------------------------------------------------------

TEST(Flow, EnumerateIntegerFlows) {
  auto g = triangle();
  auto flows = enumerate_integer_flows(g, g.netflow());
  EXPECT_EQ(flows.size(), 2u);
  for (const auto& f : flows) EXPECT_TRUE(is_flow(g, f, g.netflow()));
  auto zero = enumerate_integer_flows(g, {0, 0, 0});
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], (IntegerFlow{0, 0, 0}));
  FlowNetwork path(3, {{0, 1}, {1, 2}}, {1, 0, -1});
  EXPECT_EQ(enumerate_integer_flows(path, path.netflow()).size(), 1u);
}

TEST(Flow, Kostant) {
  EXPECT_EQ(kostant(triangle(), {1, 0, -1}), 2);
  EXPECT_EQ(kostant(triangle(), {0, 0, 0}), 1);
  EXPECT_EQ(kostant(triangle(), {2, 0, -2}), 3);
  EXPECT_EQ(kostant(triangle(), {1, 0, 0}), 0);
  EXPECT_THROW(kostant(triangle(), {1, -1}), PreconditionError);
}

TEST(Flow, RejectsBadEdges) {
  EXPECT_THROW(FlowNetwork(2, {{1, 0}}, {1, -1}), ValidationError);
  EXPECT_THROW(FlowNetwork(2, {{0, 2}}, {1, -1}), ValidationError);
}

TEST(Flow, Lidskii) {
  auto g = triangle();
  EXPECT_EQ(lidskii_points_binomial(g), 2);
  EXPECT_EQ(lidskii_points_multiset(g), 2);
  EXPECT_EQ(lidskii_volume(g), 1);
  auto z = triangle({0, 0, 0});
  EXPECT_EQ(lidskii_points_binomial(z), 1);
  EXPECT_EQ(lidskii_points_multiset(z), 1);
  EXPECT_EQ(lidskii_volume(z), 0);
  // a negative entry before the sink breaks the hypotheses
  FlowNetwork bad(3, {{0, 1}, {1, 2}, {0, 2}}, {2, -1, -1});
  EXPECT_THROW(lidskii_volume(bad), PreconditionError);
}

TEST(Flow, LidskiiMatchesEhrhart) {
  FlowNetwork g(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 3}}, {2, 1, 0, -3});
  const int dim = flow_polytope_dimension(g);
  EXPECT_EQ(dim, 3);
  auto fit = fit_ehrhart(
      [&](int t) {
        NetflowVector a = g.netflow();
        for (auto& x : a) x *= t;
        return kostant(g, a);
      },
      dim);
  EXPECT_TRUE(fit.polynomial);
  EXPECT_EQ(fit.leading, lidskii_volume(g));
  EXPECT_EQ(fit.counts[1], lidskii_points_binomial(g));
  EXPECT_EQ(fit.counts[1], lidskii_points_multiset(g));
}

TEST(Flow, LeafVolume) {
  FlowNetwork one(2, {{0, 1}, {0, 1}}, {3, -3});
  EXPECT_EQ(leaf_volume(one), 3);
  FlowNetwork two(3, {{0, 2}, {0, 2}, {1, 2}, {1, 2}, {1, 2}}, {2, 1, -3});
  EXPECT_EQ(leaf_volume(two), 1);
  EXPECT_THROW(leaf_volume(triangle()), PreconditionError);
}

TEST(Ehrhart, ForwardDifferences) {
  // L(t) = (t+1)^2
  auto fit = fit_ehrhart([](int t) { return Integer((t + 1) * (t + 1)); }, 2);
  EXPECT_TRUE(fit.polynomial);
  EXPECT_EQ(fit.leading, 1);
  auto cubic = fit_ehrhart([](int t) { return Integer(t * t * t); }, 2);
  EXPECT_FALSE(cubic.polynomial);
}
