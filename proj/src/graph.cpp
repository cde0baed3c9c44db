#include "causaltrust/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "causaltrust/error.hpp"

namespace causaltrust {

using nlohmann::json;

CausalAssertion::CausalAssertion(std::string_view cause, std::string_view adverb,
                                 std::string_view effect, std::string source,
                                 std::string sentence)
    : cause_(canonicalize(cause)),
      adverb_(canonicalize(adverb)),
      effect_(canonicalize(effect)),
      source_(std::move(source)),
      sentence_(std::move(sentence)) {
  if (cause_.empty() || effect_.empty()) throw DomainError("cause and effect must be nonempty");
  if (adverb_.empty()) throw DomainError("adverb must be nonempty");
  if (cause_ == effect_) throw DomainError("cause and effect are the same concept '" + cause_ + "'");
}

std::string_view to_string(EvidencePolicy policy) {
  switch (policy) {
    case EvidencePolicy::once_per_source:
      return "once-per-source";
    case EvidencePolicy::every:
      return "every";
  }
  return "?";
}

EvidencePolicy parse_evidence_policy(std::string_view text) {
  if (text == "once-per-source") return EvidencePolicy::once_per_source;
  if (text == "every") return EvidencePolicy::every;
  throw DomainError("unknown evidence policy '" + std::string(text) + "'");
}

DensityGrid fuse(const DensityGrid& posterior, const DensityGrid& evidence, double floor) {
  if (posterior.resolution() != evidence.resolution()) {
    throw DomainError("cannot fuse grids of different resolution");
  }
  std::vector<double> v(posterior.resolution());
  double peak = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = posterior[i] * evidence[i];
    peak = std::max(peak, v[i]);
  }
  // Total conflict underflows to zero everywhere; smoothing alone repairs it.
  if (!(peak > 0.0)) return DensityGrid::uniform(v.size());
  for (double& x : v) x /= peak;
  return smooth(DensityGrid(std::move(v)), floor);
}

namespace {

bool fuses(EvidencePolicy policy, std::span<const Observation> history, const Observation& next) {
  if (policy == EvidencePolicy::every) return true;
  return std::find(history.begin(), history.end(), next) == history.end();
}

const AdverbEntry& require_adverb(const AdverbLexicon& lexicon, std::string_view adverb) {
  const AdverbEntry* entry = lexicon.lookup(adverb);
  if (entry == nullptr) throw UnknownAdverbError(std::string(adverb));
  return *entry;
}

}  // namespace

WeightedCausalGraph::WeightedCausalGraph(std::size_t resolution, EvidencePolicy policy)
    : resolution_(resolution), policy_(policy) {
  if (resolution_ < 2) throw DomainError("grid resolution must be at least 2");
}

void WeightedCausalGraph::add_assertion(const CausalAssertion& assertion,
                                        const AdverbLexicon& lexicon) {
  if (lexicon.resolution() != resolution_) {
    throw DomainError("lexicon resolution " + std::to_string(lexicon.resolution()) +
                      " does not match graph resolution " + std::to_string(resolution_));
  }
  const AdverbEntry& entry = require_adverb(lexicon, assertion.adverb());
  Observation obs{entry.name, assertion.source()};
  EdgeKey key{assertion.cause(), assertion.effect()};

  auto it = edges_.find(key);
  if (it == edges_.end()) {
    concepts_.insert(key.first);
    concepts_.insert(key.second);
    edges_.emplace(key, CausalEdge{key.first, key.second, entry.prior, entry.prior, {std::move(obs)}});
    return;
  }
  CausalEdge& edge = it->second;
  if (fuses(policy_, edge.observations, obs)) {
    edge.posterior = fuse(edge.posterior, entry.prior);
  }
  edge.observations.push_back(std::move(obs));
}

const CausalEdge* WeightedCausalGraph::get_edge(std::string_view cause,
                                                std::string_view effect) const {
  auto it = edges_.find(EdgeKey{canonicalize(cause), canonicalize(effect)});
  return it == edges_.end() ? nullptr : &it->second;
}

DensityGrid WeightedCausalGraph::replay(const CausalEdge& edge,
                                        const AdverbLexicon& lexicon) const {
  if (edge.observations.empty()) throw DomainError("edge has no observations");
  std::span<const Observation> history(edge.observations);
  DensityGrid posterior = require_adverb(lexicon, history.front().adverb).prior;
  for (std::size_t i = 1; i < history.size(); ++i) {
    if (fuses(policy_, history.first(i), history[i])) {
      posterior = fuse(posterior, require_adverb(lexicon, history[i].adverb).prior);
    }
  }
  return posterior;
}

std::size_t WeightedCausalGraph::observation_total() const noexcept {
  std::size_t n = 0;
  for (const auto& [key, edge] : edges_) n += edge.observation_count();
  return n;
}

void WeightedCausalGraph::save(std::ostream& out) const {
  json edges = json::array();
  for (const auto& [key, edge] : edges_) {
    json adverbs = json::array();
    json sources = json::array();
    for (const auto& obs : edge.observations) {
      adverbs.push_back(obs.adverb);
      sources.push_back(obs.source);
    }
    edges.push_back({
        {"cause", edge.cause},
        {"effect", edge.effect},
        {"prior_values", std::vector<double>(edge.prior.values().begin(), edge.prior.values().end())},
        {"posterior_values",
         std::vector<double>(edge.posterior.values().begin(), edge.posterior.values().end())},
        {"observations", adverbs},
        {"observation_sources", sources},
    });
  }
  json doc = {
      {"schema_version", kGraphSchemaVersion},
      {"M", resolution_},
      {"evidence_policy", to_string(policy_)},
      {"concepts", concepts_},
      {"edges", edges},
  };
  out << doc.dump() << '\n';
  if (!out) throw IoError("failed to write graph");
}

void WeightedCausalGraph::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graph file " + path.string());
  save(out);
}

namespace {

DensityGrid read_grid(const json& values, std::size_t resolution, const char* what) {
  if (!values.is_array() || values.size() != resolution) {
    throw ParseError(std::string("graph: ") + what + " must hold M numbers");
  }
  std::vector<double> v;
  v.reserve(resolution);
  for (const auto& x : values) {
    if (!x.is_number()) throw ParseError(std::string("graph: ") + what + " must hold numbers");
    v.push_back(x.get<double>());
  }
  try {
    return DensityGrid(std::move(v));
  } catch (const DomainError& e) {
    throw ParseError(std::string("graph: ") + what + ": " + e.what());
  }
}

}  // namespace

WeightedCausalGraph WeightedCausalGraph::load(std::istream& in, const AdverbLexicon& lexicon) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ParseError("graph: expected a JSON object");
    if (doc.value("schema_version", -1) != kGraphSchemaVersion) {
      throw ParseError("graph: unsupported schema_version");
    }
    const auto resolution = doc.at("M").get<std::size_t>();
    if (resolution != lexicon.resolution()) {
      throw DomainError("graph resolution " + std::to_string(resolution) +
                        " does not match requested resolution " +
                        std::to_string(lexicon.resolution()));
    }
    WeightedCausalGraph graph(resolution,
                              parse_evidence_policy(doc.value("evidence_policy", "once-per-source")));
    for (const auto& c : doc.at("concepts")) graph.concepts_.insert(c.get<std::string>());

    for (const auto& e : doc.at("edges")) {
      auto cause = e.at("cause").get<std::string>();
      auto effect = e.at("effect").get<std::string>();
      if (!graph.concepts_.contains(cause) || !graph.concepts_.contains(effect)) {
        throw ParseError("graph: edge endpoint missing from concepts");
      }
      const auto& adverbs = e.at("observations");
      json sources = e.value("observation_sources", json::array());
      if (sources.empty()) sources = json(std::vector<std::string>(adverbs.size()));
      if (adverbs.empty() || sources.size() != adverbs.size()) {
        throw ParseError("graph: edge " + cause + " -> " + effect + " has a bad observation list");
      }
      std::vector<Observation> observations;
      for (std::size_t i = 0; i < adverbs.size(); ++i) {
        auto adverb = adverbs[i].get<std::string>();
        require_adverb(lexicon, adverb);
        observations.push_back({std::move(adverb), sources[i].get<std::string>()});
      }
      EdgeKey key{cause, effect};
      CausalEdge edge{cause, effect, read_grid(e.at("prior_values"), resolution, "prior_values"),
                      read_grid(e.at("posterior_values"), resolution, "posterior_values"),
                      std::move(observations)};
      if (!graph.edges_.emplace(std::move(key), std::move(edge)).second) {
        throw ParseError("graph: duplicate edge " + cause + " -> " + effect);
      }
    }
    return graph;
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

WeightedCausalGraph WeightedCausalGraph::load(const std::filesystem::path& path,
                                              const AdverbLexicon& lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read graph file " + path.string());
  return load(in, lexicon);
}

}  // namespace causaltrust
