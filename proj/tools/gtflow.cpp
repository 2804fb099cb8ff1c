// gtflow: command-line front end for the library.
//
// Exit codes: 0 when everything requested holds, 1 when a check fails,
// 2 on bad input.

#include "gtflow/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace gtflow;

namespace {

struct Common {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 20240601;
  std::string bounds;
};

struct CheckFailed : Error {
  using Error::Error;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) std::cout << text;
  else io::write_text_file(c.out, text);
}

void emit(const Common& c, const Json& j) { emit(c, j.dump(1) + "\n"); }

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(io::read_int(Json(tok)));
  return out;
}

VerifyBounds parse_bounds(const std::string& s, std::uint64_t seed) {
  VerifyBounds b;
  b.seed = seed;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw PreconditionError("bounds entries look like key=value, got '" + tok + "'");
    auto key = tok.substr(0, eq);
    int v = static_cast<int>(io::read_int(Json(tok.substr(eq + 1))));
    if (key == "n") b.n_max = v;
    else if (key == "lmax") b.lambda_max = v;
    else if (key == "bmax") b.b_max = v;
    else if (key == "amax") b.a_max = v;
    else if (key == "skew") b.skew_max = v;
    else if (key == "trials") b.trials = v;
    else if (key == "lattice") b.lattice_limit = static_cast<std::size_t>(v);
    else throw PreconditionError("unknown bounds key '" + key + "'");
  }
  return b;
}

/// "corpus:name" picks a fixture, anything else is a file path.
FlowNetwork load_network(const std::string& source) {
  if (source.rfind("corpus:", 0) == 0) {
    auto c = load_corpus();
    auto name = source.substr(7);
    for (const auto* list : {&c.networks, &c.complete_graphs})
      for (const auto& fx : *list)
        if (fx.name == name) return fx.network;
    throw IoError("no network fixture named '" + name + "'");
  }
  return io::network_from_json(io::read_json_file(source));
}

BoundedEmbedding load_embedding(const std::string& source) {
  if (source.rfind("corpus:", 0) == 0) return load_corpus().embedding(source.substr(7)).embedding;
  auto j = io::read_json_file(source);
  return io::embedding_from_json(j.contains("embedding") ? j["embedding"] : j);
}

std::vector<SplitSide> parse_sides(const std::string& s) {
  std::vector<SplitSide> out;
  for (char ch : s) {
    switch (ch) {
      case 'A': out.push_back(SplitSide::Auto); break;
      case 'L': out.push_back(SplitSide::Left); break;
      case 'R': out.push_back(SplitSide::Right); break;
      case 'N': out.push_back(SplitSide::None); break;
      case ',': break;
      default: throw PreconditionError(std::string("split sides are A, L, R or N, got '") + ch + "'");
    }
  }
  return out;
}

Json pattern_json(const GTPattern& x) { return Json(x.rows()); }

// --- gt ----------------------------------------------------------------------

void add_gt(CLI::App& app, Common& common) {
  auto* gt = app.add_subcommand("gt", "Gelfand-Tsetlin polytopes GT(lambda)");
  gt->require_subcommand(1);
  static std::string lambda_s, method;
  static bool check = false;

  auto* dim = gt->add_subcommand("dim", "Weyl dimension (number of SSYT of shape lambda)");
  dim->add_option("--lambda", lambda_s, "partition, e.g. 3,1,0")->required();
  dim->callback([&] {
    Partition lambda(parse_ints(lambda_s));
    emit(common, Json{{"lambda", lambda.parts()}, {"dimension", io::exact(weyl_dimension(lambda))}});
  });

  auto* vol = gt->add_subcommand("vol", "volume of GT(lambda), unimodular simplex = 1/d!");
  vol->add_option("--lambda", lambda_s)->required();
  vol->add_option("--method", method, "product|shsyt|lidskii|all")->default_val("all")
      ->check(CLI::IsMember({"product", "shsyt", "lidskii", "all"}));
  vol->callback([&] {
    Partition lambda(parse_ints(lambda_s));
    Json j{{"lambda", lambda.parts()}};
    if (method == "product" || method == "all") j["product"] = io::exact(gt_volume_product(lambda));
    if (method == "shsyt" || method == "all") j["shsyt"] = io::exact(gt_volume_shsyt(lambda));
    if (method == "lidskii" || method == "all") j["lidskii"] = io::exact(gt_volume_lidskii(lambda));
    emit(common, j);
    if (method == "all" && (j["product"] != j["shsyt"] || j["product"] != j["lidskii"]))
      throw CheckFailed("volume formulas disagree");
  });

  auto* pts = gt->add_subcommand("points", "lattice points of GT(lambda)");
  pts->add_option("--lambda", lambda_s)->required();
  pts->add_option("--method", method, "weyl|lidskii|kostant|enumerate|all")->default_val("all")
      ->check(CLI::IsMember({"weyl", "lidskii", "kostant", "enumerate", "all"}));
  pts->callback([&] {
    Partition lambda(parse_ints(lambda_s));
    Json j{{"lambda", lambda.parts()}};
    auto want = [&](const char* m) { return method == m || method == "all"; };
    if (want("weyl")) j["weyl"] = io::exact(weyl_dimension(lambda));
    if (want("lidskii")) j["lidskii"] = io::exact(gt_points_lidskii(lambda));
    if (want("kostant")) {
      auto g = build_G_lambda(lambda);
      j["kostant"] = io::exact(kostant(g.network, g.network.netflow()));
    }
    if (want("enumerate")) j["enumerate"] = std::to_string(enumerate_gt_points(lambda).size());
    emit(common, j);
    if (method == "all" && (j["weyl"] != j["lidskii"] || j["weyl"] != j["kostant"] || j["weyl"] != j["enumerate"]))
      throw CheckFailed("point-count formulas disagree");
  });

  auto* bij = gt->add_subcommand("bijection", "GT patterns and their flows on G_lambda");
  bij->add_option("--lambda", lambda_s)->required();
  bij->add_flag("--check", check, "verify the map is a bijection onto the integer flows");
  bij->callback([&] {
    Partition lambda(parse_ints(lambda_s));
    auto t = gt_transform(lambda);
    const auto& g = t.target.network;
    Json pairs = Json::array();
    std::set<IntegerFlow> image;
    bool valid = true;
    for (const auto& x : enumerate_gt_points(lambda)) {
      auto f = gt_to_flow(t, x);
      valid = valid && is_flow(g, f, g.netflow());
      image.insert(f);
      pairs.push_back({{"pattern", pattern_json(x)}, {"flow", f}});
    }
    Json j{{"lambda", lambda.parts()}, {"network", io::to_json(g)}, {"pairs", pairs}};
    if (check) {
      auto K = kostant(g, g.netflow());
      bool ok = valid && Integer(image.size()) == K && image.size() == pairs.size();
      j["check"] = {{"flows", io::exact(K)}, {"patterns", pairs.size()}, {"ok", ok}};
      emit(common, j);
      if (!ok) throw CheckFailed("GT map is not a bijection");
      return;
    }
    emit(common, j);
  });

  auto* net = gt->add_subcommand("network", "the network G_lambda");
  net->add_option("--lambda", lambda_s)->required();
  net->callback([&] {
    auto g = build_G_lambda(Partition(parse_ints(lambda_s)));
    if (common.format == "dot") emit(common, io::to_dot(g.network, "G_lambda"));
    else emit(common, io::to_json(g.network));
  });
}

// --- flows -------------------------------------------------------------------

void add_flow_commands(CLI::App& app, Common& common) {
  static std::string network, netflow, method;

  auto* k = app.add_subcommand("kostant", "number of integer flows K_G(b)");
  k->add_option("--network", network, "network JSON file or corpus:NAME")->required();
  k->add_option("--netflow", netflow, "netflow b, default: the network's own");
  k->callback([&] {
    auto g = load_network(network);
    NetflowVector b = netflow.empty() ? g.netflow() : parse_ints(netflow);
    emit(common, Json{{"netflow", b}, {"kostant", io::exact(kostant(g, b))}});
  });

  auto* l = app.add_subcommand("lidskii", "Lidskii volume and point-count formulas");
  l->add_option("--network", network)->required();
  l->add_option("--method", method, "volume|binomial|multiset|all")->default_val("all")
      ->check(CLI::IsMember({"volume", "binomial", "multiset", "all"}));
  l->callback([&] {
    auto g = load_network(network);
    Json j;
    auto want = [&](const char* m) { return method == m || method == "all"; };
    if (want("volume")) j["volume"] = io::exact(lidskii_volume(g));
    if (want("binomial")) j["binomial"] = io::exact(lidskii_points_binomial(g));
    if (want("multiset")) j["multiset"] = io::exact(lidskii_points_multiset(g));
    if (method == "all") {
      j["direct"] = io::exact(kostant(g, g.netflow()));
      emit(common, j);
      if (j["binomial"] != j["direct"] || j["multiset"] != j["direct"]) throw CheckFailed("point counts disagree");
      return;
    }
    emit(common, j);
  });
}

// --- marked posets -----------------------------------------------------------

void add_poset2flow(CLI::App& app, Common& common) {
  static std::string embedding, sides;
  static bool check = false;
  auto* p = app.add_subcommand("poset2flow", "flow network of a strongly planar marked poset");
  p->add_option("--embedding", embedding, "embedding JSON file or corpus:NAME")->required();
  p->add_option("--sides", sides, "per-face split sides (A, L, R, N), default automatic");
  p->add_flag("--check", check, "verify Gamma on every lattice point");
  p->callback([&] {
    auto emb = load_embedding(embedding);
    auto d = build_dual_network(emb, parse_sides(sides));
    if (common.format == "dot") {
      emit(common, io::to_dot(emb, d));
      return;
    }
    Json j{{"network", io::to_json(d, emb)}};
    if (check) {
      std::set<IntegerFlow> image;
      auto pts = polytope_points(emb);
      bool ok = true;
      for (const auto& x : pts) {
        auto f = gamma(emb, d, x);
        ok = ok && is_flow(d.network, f, d.network.netflow()) && gamma_inverse(emb, d, f) == x;
        image.insert(f);
      }
      auto K = kostant(d.network, d.network.netflow());
      ok = ok && image.size() == pts.size() && Integer(pts.size()) == K;
      j["check"] = {{"lattice_points", pts.size()}, {"flows", io::exact(K)}, {"ok", ok}};
      emit(common, j);
      if (!ok) throw CheckFailed("Gamma is not a bijection");
      return;
    }
    emit(common, j);
  });
}

void add_skew(CLI::App& app, Common& common) {
  static std::string lambda_s, mu_s, sides;
  static int m = 1;
  auto* s = app.add_subcommand("skew", "skew GT polytope as a flow polytope");
  s->add_option("--lambda", lambda_s)->required();
  s->add_option("--mu", mu_s)->required();
  s->add_option("--m", m, "number of steps")->required();
  s->add_option("--sides", sides, "per-face split sides (A, L, R, N), default FR=L, FL=R, others N");
  s->callback([&] {
    auto sf = build_skew_flow(Partition(parse_ints(lambda_s)), Partition(parse_ints(mu_s)), m, parse_sides(sides));
    if (common.format == "dot") {
      emit(common, io::to_dot(sf.skew.embedding, sf.dual));
      return;
    }
    emit(common, Json{{"embedding", io::to_json(sf.skew.embedding)},
                      {"network", io::to_json(sf.dual, sf.skew.embedding)},
                      {"flows", io::exact(sf.flow_count)},
                      {"lattice_points", io::exact(sf.lattice_count)}});
  });
}

// --- subdivisions ------------------------------------------------------------

void add_subdivide(CLI::App& app, Common& common) {
  static std::string network, embedding, order;
  static bool brief = false;
  auto* s = app.add_subcommand("subdivide", "canonical reduction tree, or the face-by-face subdivision of an embedding");
  auto* on = s->add_option("--network", network, "network JSON file or corpus:NAME");
  auto* oe = s->add_option("--embedding", embedding, "embedding JSON file or corpus:NAME");
  on->excludes(oe);
  s->add_option("--order", order, "highest|lowest (networks), descending|ascending (embeddings)");
  s->add_flag("--brief", brief, "omit the node networks");
  s->callback([&] {
    if (!network.empty()) {
      auto g = load_network(network);
      auto tree = canonical_reduction_tree(g, order == "lowest" ? ReductionOrder::LowestFirst : ReductionOrder::HighestFirst);
      if (common.format == "dot") emit(common, io::to_dot(tree));
      else emit(common, io::to_json(tree, !brief));
      return;
    }
    if (embedding.empty()) throw PreconditionError("subdivide needs --network or --embedding");
    auto emb = load_embedding(embedding);
    std::vector<SubdivisionCell> cells;
    auto rep = full_subdivision_check(emb, order == "ascending" ? FaceOrder::Ascending : FaceOrder::Descending, 5000,
                                      &cells);
    Json cj = Json::array();
    for (const auto& cell : cells) cj.push_back({{"path", cell.path}, {"embedding", io::to_json(cell.embedding)}});
    emit(common, Json{{"ok", rep.ok},
                      {"message", rep.message},
                      {"cells", rep.cells},
                      {"volume", io::exact(rep.root_volume)},
                      {"poset_cells_volume", io::exact(rep.poset_volume)},
                      {"flow_cells_volume", io::exact(rep.flow_volume)},
                      {"lattice_points_checked", io::exact(rep.lattice_points)},
                      {"subdivision", cj}});
    if (!rep.ok) throw CheckFailed(rep.message);
  });
}

void add_bijection(CLI::App& app, Common& common) {
  static std::string embedding, a_s;
  auto* b = app.add_subcommand("bijection", "flows, reduction-tree leaves and linear extensions, as JSON lines");
  b->add_option("--embedding", embedding, "single-sink embedding JSON file or corpus:NAME")->required();
  b->add_option("--a", a_s, "gaps a_1,...,a_{k-1} between marked positions")->required();
  b->callback([&] {
    auto emb = load_embedding(embedding);
    WeakComposition a = parse_ints(a_s);
    std::string lines;
    for (const auto& fe : leaves_to_extensions(emb, a)) {
      Json leaf = Json::array();
      for (const auto& [face, comp] : fe.compositions) leaf.push_back({{"face", face}, {"composition", comp}});
      Json ext = Json::array();
      for (int v : fe.extension) ext.push_back(emb.element_id(v));
      lines += Json{{"flow", fe.flow}, {"leaf", leaf}, {"extension", ext}}.dump() + "\n";
    }
    emit(common, lines);
  });
}

// --- verify and export ---------------------------------------------------------

void add_verify(CLI::App& app, Common& common) {
  static std::string scope = "all";
  auto* v = app.add_subcommand("verify", "run the identity checks and print a JSON report");
  v->add_option("--scope", scope, "gt|poset|flow|transform|subdivision|all")
      ->check(CLI::IsMember({"gt", "poset", "flow", "transform", "subdivision", "all"}));
  v->callback([&] {
    auto bounds = parse_bounds(common.bounds, common.seed);
    Corpus c;
    try {
      c = load_corpus();
    } catch (const IoError& e) {
      throw IoError(std::string(e.what()) + " (corpus directory " + corpus_dir() + ")");
    }
    auto rep = run_verify(parse_scope(scope), bounds, c);
    emit(common, rep.to_json());
    if (!rep.ok()) throw CheckFailed(std::to_string(rep.failures()) + " checks failed");
  });
}

void add_export(CLI::App& app, Common& common) {
  static std::string object, input, lambda_s;
  auto* e = app.add_subcommand("export", "write a network, embedding or reduction tree as JSON or DOT");
  e->add_option("--object", object, "network|embedding|tree|gt-network")->required()
      ->check(CLI::IsMember({"network", "embedding", "tree", "gt-network"}));
  e->add_option("--input", input, "JSON file or corpus:NAME");
  e->add_option("--lambda", lambda_s, "partition for gt-network");
  e->callback([&] {
    const bool dot = common.format == "dot";
    if (object == "gt-network") {
      auto g = build_G_lambda(Partition(parse_ints(lambda_s)));
      emit(common, dot ? io::to_dot(g.network, "G_lambda") : io::to_json(g.network).dump(1) + "\n");
    } else if (object == "network") {
      auto g = load_network(input);
      emit(common, dot ? io::to_dot(g) : io::to_json(g).dump(1) + "\n");
    } else if (object == "embedding") {
      auto emb = load_embedding(input);
      auto d = build_dual_network(emb);
      emit(common, dot ? io::to_dot(emb, d)
                       : Json{{"embedding", io::to_json(emb)}, {"network", io::to_json(d, emb)}}.dump(1) + "\n");
    } else {
      auto tree = canonical_reduction_tree(load_network(input));
      emit(common, dot ? io::to_dot(tree) : io::to_json(tree).dump(1) + "\n");
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtflow: Gelfand-Tsetlin polytopes, marked order polytopes and flow polytopes"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--out", common.out, "write output to this path");
  app.add_option("--seed", common.seed, "seed for randomized checks");
  app.add_option("--bounds", common.bounds, "size limits, e.g. n=4,lmax=4,amax=3");
  app.fallthrough();

  add_gt(app, common);
  add_flow_commands(app, common);
  add_poset2flow(app, common);
  add_skew(app, common);
  add_subdivide(app, common);
  add_bijection(app, common);
  add_verify(app, common);
  add_export(app, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
