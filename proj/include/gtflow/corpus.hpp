#pragma once

// Fixture corpus loader. The directory comes from GTFLOW_CORPUS when set,
// otherwise from the compile-time default.

#include "gtflow/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#ifndef GTFLOW_CORPUS_DIR
#define GTFLOW_CORPUS_DIR "corpus"
#endif

namespace gtflow {

struct NetworkFixture {
  std::string name;
  FlowNetwork network;
  std::vector<std::string> tags;
  Json golden;

  bool has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

struct EmbeddingFixture {
  std::string name;
  BoundedEmbedding embedding;
  std::vector<std::string> tags;
  Json golden;

  bool has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
  bool marked() const { return !embedding.base().marked_elements().empty(); }
};

struct Corpus {
  std::string provenance;
  std::vector<NetworkFixture> networks, complete_graphs;
  std::vector<EmbeddingFixture> embeddings;

  const EmbeddingFixture& embedding(const std::string& name) const {
    for (const auto& f : embeddings)
      if (f.name == name) return f;
    throw IoError("no embedding fixture named '" + name + "'");
  }
};

inline std::string corpus_dir() {
  if (const char* env = std::getenv("GTFLOW_CORPUS"); env && *env) return env;
  return GTFLOW_CORPUS_DIR;
}

namespace detail {

inline std::vector<NetworkFixture> load_networks(const Json& file, const Json& goldens) {
  std::vector<NetworkFixture> out;
  for (const auto& j : file.at("networks")) {
    auto name = j.at("name").get<std::string>();
    out.push_back({name, io::network_from_json(j), j.value("tags", std::vector<std::string>{}),
                   goldens.value(name, Json::object())});
  }
  return out;
}

}  // namespace detail

/// Missing files give empty fixture lists; malformed ones raise IoError.
inline Corpus load_corpus(const std::string& dir = corpus_dir()) {
  namespace fs = std::filesystem;
  auto read = [&](const char* file) { return fs::exists(dir + "/" + file) ? io::read_json_file(dir + "/" + file) : Json(); };
  Corpus c;
  const Json goldens = read("goldens.json");
  const Json empty = Json::object();
  const Json& gnet = goldens.contains("networks") ? goldens["networks"] : empty;
  const Json& gemb = goldens.contains("embeddings") ? goldens["embeddings"] : empty;
  if (goldens.contains("provenance")) c.provenance = goldens["provenance"].get<std::string>();
  try {
    if (Json j = read("networks.json"); !j.is_null()) c.networks = detail::load_networks(j, gnet);
    if (Json j = read("complete_graphs.json"); !j.is_null()) c.complete_graphs = detail::load_networks(j, gnet);
    if (Json file = read("embeddings.json"); !file.is_null())
      for (const auto& j : file.at("embeddings")) {
        auto name = j.at("name").get<std::string>();
        c.embeddings.push_back({name, io::embedding_from_json(j.at("embedding")),
                                j.value("tags", std::vector<std::string>{}), gemb.value(name, Json::object())});
      }
  } catch (const Json::exception& e) {
    throw IoError("malformed corpus in " + dir + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError("corpus " + dir + ": " + e.what());
  }
  return c;
}

}  // namespace gtflow
