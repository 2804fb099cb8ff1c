#include "gtflow/corpus.hpp"
#include "gtflow/gt.hpp"
#include "gtflow/subdivision.hpp"
#include "gtflow/verify.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

using namespace gtflow;

namespace {

const Corpus& corpus() {
  static const Corpus c = load_corpus();
  return c;
}

const NetworkFixture& network(const std::string& name) {
  for (const auto* list : {&corpus().networks, &corpus().complete_graphs})
    for (const auto& fx : *list)
      if (fx.name == name) return fx;
  throw IoError("no network fixture " + name);
}

NetflowVector scaled(NetflowVector a, int t) {
  for (auto& x : a) x *= t;
  return a;
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(GTFLOW_CLI) + " " + args + " 2>/dev/null";
  Run r{-1, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST(NoncrossingTrees, Counts) {
  for (int l = 1; l <= 11; ++l)
    for (int r = 1; l + r <= 12; ++r) {
      auto trees = enumerate_noncrossing_trees(l, r);
      ASSERT_EQ(Integer(trees.size()), binomial(l + r - 2, l - 1)) << l << "," << r;
      std::set<WeakComposition> seen;
      for (const auto& t : trees) {
        EXPECT_TRUE(t.is_valid());
        EXPECT_EQ(NoncrossingTree::from_composition(t.composition(), r), t);
        seen.insert(t.composition());
      }
      EXPECT_EQ(seen.size(), trees.size());
    }
  EXPECT_EQ(enumerate_noncrossing_trees(2, 3).size(), 3u);
  EXPECT_EQ(enumerate_noncrossing_trees(1, 7).size(), 1u);
}

TEST(NoncrossingTrees, CompositionEncoding) {
  auto t = NoncrossingTree::from_composition({0, 2, 1, 1}, 5);
  EXPECT_EQ(t.left_degrees(), (std::vector<int>{1, 3, 2, 2}));
  EXPECT_TRUE(t.is_valid());
  NoncrossingTree crossing{2, 2, {{0, 1}, {1, 0}, {1, 1}}};
  EXPECT_FALSE(crossing.is_valid());
  EXPECT_THROW(NoncrossingTree::from_composition({1, 1}, 2), PreconditionError);
}

TEST(Reduction, ContractionThroughSingleInput) {
  FlowNetwork g(3, {{0, 1}, {1, 2}, {0, 2}}, {1, 0, -1});
  auto trees = enumerate_noncrossing_trees(1, 1);
  ASSERT_EQ(trees.size(), 1u);
  auto h = compound_reduce(g, 1, trees[0]);
  EXPECT_EQ(h.vertex_count(), 2);
  EXPECT_EQ(h.edge_count(), 2);
  EXPECT_EQ(leaf_volume(h), 1);
  EXPECT_THROW(compound_reduce(g, 0, trees[0]), PreconditionError);
}

TEST(Reduction, DimensionPreserved) {
  for (const auto& fx : corpus().networks) {
    const auto& g = fx.network;
    int v = detail::next_zero_vertex(g, ReductionOrder::HighestFirst);
    if (v < 0) continue;
    for (const auto& t : enumerate_noncrossing_trees(g.indegree(v), g.outdegree(v)))
      EXPECT_EQ(flow_polytope_dimension(compound_reduce(g, v, t)), flow_polytope_dimension(g)) << fx.name;
  }
}

TEST(Reduction, VolumeConservation) {
  for (const auto* list : {&corpus().networks, &corpus().complete_graphs})
    for (const auto& fx : *list) {
      auto tree = canonical_reduction_tree(fx.network);
      EXPECT_EQ(tree.leaf_volume_sum(), lidskii_volume(fx.network)) << fx.name;
      for (int i : tree.leaves()) EXPECT_EQ(detail::next_zero_vertex(tree.nodes[i].net.network, ReductionOrder::HighestFirst), -1);
      auto low = canonical_reduction_tree(fx.network, ReductionOrder::LowestFirst);
      EXPECT_EQ(low.leaf_volume_sum(), tree.leaf_volume_sum()) << fx.name;
    }
}

TEST(Reduction, CompleteGraphTrees) {
  // leaves are unimodular simplices here, so their count is the normalized volume
  EXPECT_EQ(canonical_reduction_tree(network("k5").network).leaves().size(), 2u);
  EXPECT_EQ(canonical_reduction_tree(network("k6").network).leaves().size(), 10u);
  for (const auto& fx : corpus().complete_graphs)
    EXPECT_EQ(std::to_string(canonical_reduction_tree(fx.network).leaves().size()),
              fx.golden.at("reduction_leaves").get<std::string>());
}

TEST(Reduction, TrivialAndGtTrees) {
  FlowNetwork reduced(2, {{0, 1}, {0, 1}}, {2, -2});
  EXPECT_EQ(canonical_reduction_tree(reduced).nodes.size(), 1u);
  auto g = build_G_lambda(Partition({2, 1, 0}));
  EXPECT_EQ(canonical_reduction_tree(g.network).leaf_volume_sum(), gt_volume_product(Partition({2, 1, 0})));
  FlowNetwork bad(3, {{0, 1}, {0, 2}, {1, 2}}, {1, 1, -2});
  EXPECT_THROW(canonical_reduction_tree(bad), PreconditionError);
}

TEST(Reduction, CellInteriorsDisjoint) {
  for (const char* name : {"k4", "k5", "kite", "double_path", "two_sources"}) {
    const auto& g = network(name).network;
    auto tree = canonical_reduction_tree(g);
    const int t = flow_polytope_dimension(g) + 1;
    std::set<IntegerFlow> seen;
    std::size_t interior = 0;
    for (int leaf : tree.leaves()) {
      const auto& net = tree.nodes[leaf].net;
      for (const auto& f : enumerate_integer_flows(net.network, scaled(net.network.netflow(), t))) {
        if (std::any_of(f.begin(), f.end(), [](auto x) { return x == 0; })) continue;
        auto root = net.include(f, g.edge_count());
        EXPECT_TRUE(is_flow(g, root, scaled(g.netflow(), t))) << name;
        EXPECT_TRUE(seen.insert(root).second) << name << ": two cells share an interior point";
        ++interior;
      }
    }
    EXPECT_GT(interior, 0u) << name;
  }
}

// ---------------------------------------------------------------------------

TEST(FaceSubdivision, CountsAndVolumes) {
  std::set<std::size_t> sizes;
  for (const auto& fx : corpus().embeddings) {
    const auto& emb = fx.embedding;
    for (int fi : reducible_faces(emb)) {
      const auto& f = emb.face(fi);
      const int k = static_cast<int>(f.left.size()), l = static_cast<int>(f.right.size());
      auto parts = subdivide_marked_face(emb, fi);
      EXPECT_EQ(Integer(parts.size()), binomial(k + l - 4, l - 2)) << fx.name << " " << f.id;
      sizes.insert(parts.size());
      Rational total = 0;
      for (const auto& p : parts) total += polytope_volume(p);
      EXPECT_EQ(total, polytope_volume(emb)) << fx.name << " " << f.id;
      for (const auto& cell : gamma_cells(emb, fi)) EXPECT_TRUE(cell.network_match) << fx.name << " " << f.id;
    }
    for (int fi = 0; fi < emb.face_count(); ++fi)
      if (!detail::face_reducible(emb, emb.face(fi))) EXPECT_THROW(subdivide_marked_face(emb, fi), PreconditionError);
  }
  EXPECT_TRUE(sizes.count(3));
}

TEST(FaceSubdivision, GtCellsPair) {
  const auto& emb = corpus().embedding("gt_2_1_0").embedding;
  auto rep = full_subdivision_check(emb);
  EXPECT_TRUE(rep.ok) << rep.message;
  EXPECT_EQ(rep.poset_volume, 1);
  EXPECT_EQ(rep.flow_volume, 1);
  auto chain = full_subdivision_check(corpus().embedding("chain3").embedding);
  EXPECT_TRUE(chain.ok) << chain.message;
  EXPECT_EQ(chain.cells, 1);
}

TEST(FaceSubdivision, OrdersAgree) {
  for (const auto& fx : corpus().embeddings) {
    auto a = full_subdivision_check(fx.embedding, FaceOrder::Descending);
    auto b = full_subdivision_check(fx.embedding, FaceOrder::Ascending);
    EXPECT_TRUE(a.ok && b.ok) << fx.name << ": " << a.message << b.message;
    EXPECT_EQ(a.cells, b.cells) << fx.name;
    EXPECT_EQ(a.flow_volume, b.flow_volume) << fx.name;
    if (!fx.marked()) EXPECT_EQ(Integer(a.cells), count_linear_extensions(fx.embedding.base().poset())) << fx.name;
  }
}

TEST(FlowExtensions, GtInstance) {
  const auto& emb = corpus().embedding("gt_2_1_0").embedding;
  const auto& mp = emb.base();
  for (const auto& a : enumerate_compositions(mp.size() - 3, 2, {0, 0})) {
    auto leaves = leaves_to_extensions(emb, a);
    EXPECT_EQ(Integer(leaves.size()), count_marked_extensions(mp, a));
    std::set<std::vector<int>> distinct;
    for (const auto& fe : leaves) {
      EXPECT_EQ(fe.extension.size(), static_cast<std::size_t>(mp.size()));
      distinct.insert(fe.extension);
    }
    EXPECT_EQ(distinct.size(), leaves.size());
  }
  EXPECT_TRUE(leaves_to_extensions(emb, {3, 3}).empty());
  EXPECT_EQ(count_marked_extensions(mp, {3, 3}), 0);
}

TEST(FlowExtensions, RejectsSeveralSinks) {
  int rejected = 0;
  for (const auto& fx : corpus().embeddings) {
    if (fx.has_tag("single_sink") || !fx.marked()) continue;
    if (build_dual_network(fx.embedding).sink_count() > 1) {
      EXPECT_THROW(leaves_to_extensions(fx.embedding, WeakComposition(fx.embedding.base().marked_elements().size() - 1, 0)),
                   PreconditionError);
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}

// ---------------------------------------------------------------------------

TEST(Verify, ScopesPass) {
  VerifyBounds b;
  b.n_max = 3;
  b.lambda_max = 3;
  for (auto scope : {VerifyScope::Gt, VerifyScope::Flow}) {
    auto rep = run_verify(scope, b, corpus());
    EXPECT_TRUE(rep.ok()) << rep.to_json().dump(1);
    EXPECT_GT(rep.checks().size(), 0u);
  }
}

TEST(Verify, EmptyCorpusWarns) {
  auto dir = std::filesystem::temp_directory_path() / "gtflow_empty_corpus";
  std::filesystem::create_directories(dir);
  auto empty = load_corpus(dir.string());
  auto rep = run_verify(VerifyScope::Subdivision, VerifyBounds{}, empty);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.warnings().empty());
}

TEST(Verify, MalformedCorpusNamesPath) {
  auto dir = std::filesystem::temp_directory_path() / "gtflow_bad_corpus";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "networks.json") << "{\"networks\": [{\"name\": \"x\"}]}";
  try {
    load_corpus(dir.string());
    FAIL() << "expected an IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(dir.string()), std::string::npos);
  }
}

TEST(Verify, Deterministic) {
  VerifyBounds b;
  b.n_max = 3;
  auto one = run_verify(VerifyScope::Poset, b, corpus()).to_json().dump();
  auto two = run_verify(VerifyScope::Poset, b, corpus()).to_json().dump();
  EXPECT_EQ(one, two);
}

// ---------------------------------------------------------------------------

TEST(Cli, ByteIdenticalOutput) {
  for (const char* args : {"gt vol --lambda 4,2,1,0", "subdivide --network corpus:k5", "export --object gt-network --lambda 3,2,1,0 --format dot",
                           "poset2flow --embedding corpus:side_pocket --check"}) {
    auto a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify --scope flow").status, 0);
  EXPECT_EQ(run_cli("kostant --network /nonexistent.json").status, 2);
  EXPECT_EQ(run_cli("gt vol --lambda 1,2").status, 2);
  EXPECT_EQ(run_cli("no-such-command").status, 2);
}

TEST(Cli, JsonOutput) {
  auto r = run_cli("kostant --network corpus:triangle");
  ASSERT_EQ(r.status, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("kostant").get<std::string>(), network("triangle").golden.at("flows").get<std::string>());
}
