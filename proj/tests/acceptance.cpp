// Runs each acceptance criterion on the fixture corpus and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include "gtflow/verify.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>

using namespace gtflow;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<void(VerifyReport&)> run;
  std::size_t min_instances = 1;
  std::function<std::string()> precondition;  // empty string when the corpus qualifies
};

std::string networks_in_range(const Corpus& c) {
  int ok = 0;
  for (const auto& fx : c.networks)
    if (fx.network.vertex_count() <= 6 && fx.network.edge_count() <= 10) ++ok;
  return ok >= 20 ? "" : "only " + std::to_string(ok) + " networks with at most 6 vertices and 10 edges";
}

std::string marked_embeddings_in_range(const Corpus& c) {
  int ok = 0;
  for (const auto& fx : c.embeddings) {
    if (!fx.marked() || fx.embedding.element_count() > 8) continue;
    bool small = true;
    for (int v : fx.embedding.base().marked_elements()) {
      const auto& x = fx.embedding.base().value(v);
      small = small && is_integral(x) && x >= 0 && x <= 4;
    }
    if (small) ++ok;
  }
  return ok >= 10 ? "" : "only " + std::to_string(ok) + " marked embeddings within the size limits";
}

}  // namespace

int main() {
  Corpus corpus;
  try {
    corpus = load_corpus();
  } catch (const std::exception& e) {
    std::cout << "FAIL corpus: " << e.what() << "\n";
    return 9;
  }
  VerifyBounds b;
  b.n_max = 4;
  b.lambda_max = 4;
  b.b_max = 3;
  b.a_max = 3;
  b.trials = 100;

  const std::vector<Criterion> criteria = {
      {1, "GT identity chain, n <= 4 and lambda_1 <= 4", [&](VerifyReport& r) { verify_gt_identities(b, r); }, 60},
      {2, "Lidskii volume and point formulas against direct counts and Ehrhart fits",
       [&](VerifyReport& r) { verify_lidskii(corpus, r); }, 20, [&] { return networks_in_range(corpus); }},
      {3, "count_N = Kostant on G_lambda with shSYT <-> flow bijection, n <= 4, b_i <= 3",
       [&](VerifyReport& r) { verify_shsyt(b, r); }, 40},
      {4, "Gamma bijection from marked order polytope points to flows, with volumes",
       [&](VerifyReport& r) { verify_transform(corpus, r); }, 10,
       [&] { return marked_embeddings_in_range(corpus); }},
      {5, "marked volume by linear extensions = Ehrhart leading coefficient; e(P) and order polynomial",
       [&](VerifyReport& r) { verify_ehrhart_volumes(corpus, r); }, 10},
      {6, "log-concavity of N(a) on fixture posets with at most 7 elements",
       [&](VerifyReport& r) { verify_log_concavity(corpus, r); }, 10},
      {7, "reduction tree leaf volumes = Lidskii volume; complete graph leaf counts",
       [&](VerifyReport& r) { verify_reduction_trees(corpus, r); }, 20},
      {8, "N(a) = Kostant of the shifted netflow, by count and by explicit bijection",
       [&](VerifyReport& r) { verify_flow_extensions(corpus, b, r); }, 5},
      {9, "Minkowski additivity of support functions, 100 seeded objectives",
       [&](VerifyReport& r) { verify_minkowski(corpus, b, r); }, 10},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    VerifyReport r;
    std::string problem = c.precondition ? c.precondition() : "";
    if (problem.empty()) {
      try {
        c.run(r);
      } catch (const std::exception& e) {
        problem = e.what();
      }
    }
    std::set<std::string> instances;
    for (const auto& chk : r.checks()) instances.insert(chk.instance);
    if (problem.empty() && instances.size() < c.min_instances)
      problem = "only " + std::to_string(instances.size()) + " instances";
    if (problem.empty() && !r.ok())
      for (const auto& chk : r.checks())
        if (!chk.pass) {
          problem = std::to_string(r.failures()) + " failing checks, first " + chk.identity + " [" + chk.instance +
                    "] expected " + chk.expected + " got " + chk.actual;
          break;
        }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = problem.empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << r.checks().size()
              << " checks, " << instances.size() << " instances, " << std::fixed << std::setprecision(1) << secs
              << " s)";
    if (!pass) std::cout << ": " << problem;
    std::cout << std::endl;
  }
  return failed;
}
