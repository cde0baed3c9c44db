#include "causaltrust/synth.hpp"

#include <limits>
#include <random>
#include <set>

#include "causaltrust/error.hpp"

namespace causaltrust {

namespace {

// Unbiased index in [0, n) with a portable result: std::uniform_int_distribution
// differs between standard libraries.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

struct Draw {
  std::string cause;
  std::string effect;
  std::string adverb;
};

Draw draw_relation(std::mt19937_64& rng, const SynthScenario& s) {
  const std::size_t n = s.concepts.size();
  const std::size_t c = draw_index(rng, n);
  std::size_t e = draw_index(rng, n - 1);
  if (e >= c) ++e;
  return {s.concepts[c], s.concepts[e], s.adverb_subset[draw_index(rng, s.adverb_subset.size())]};
}

}  // namespace

void SynthScenario::validate(const AdverbLexicon& lexicon) const {
  if (n_relations < 1) throw DomainError("scenario needs at least one relation");
  if (adverb_subset.empty()) throw DomainError("scenario adverb subset is empty");
  for (const auto& a : adverb_subset) {
    if (!lexicon.contains(a)) throw UnknownAdverbError(canonicalize(a));
  }
  std::set<std::string> distinct;
  for (const auto& c : concepts) distinct.insert(canonicalize(c));
  if (distinct.size() < 2 || distinct.size() != concepts.size()) {
    throw DomainError("scenario needs at least two distinct concepts");
  }
}

bool SynthScenario::retains(std::string_view cause, std::string_view effect) const {
  const std::string c = canonicalize(cause);
  const std::string e = canonicalize(effect);
  for (std::size_t i = 0; i + 1 < concepts.size(); ++i) {
    if (canonicalize(concepts[i]) == c && canonicalize(concepts[i + 1]) == e) return true;
  }
  return false;
}

Corpus generate(const SynthScenario& scenario, const AdverbLexicon& lexicon) {
  scenario.validate(lexicon);
  std::mt19937_64 rng(scenario.seed);
  Corpus corpus{scenario.source_id, {}};
  for (std::size_t i = 0; i < scenario.n_relations; ++i) {
    Draw d = draw_relation(rng, scenario);
    if (scenario.retains(d.cause, d.effect)) {
      corpus.assertions.emplace_back(d.cause, d.adverb, d.effect, scenario.source_id);
    }
  }
  return corpus;
}

Corpus generate_retained(const SynthScenario& scenario, std::size_t retained,
                         const AdverbLexicon& lexicon) {
  scenario.validate(lexicon);
  std::mt19937_64 rng(scenario.seed);
  Corpus corpus{scenario.source_id, {}};
  while (corpus.assertions.size() < retained) {
    Draw d = draw_relation(rng, scenario);
    if (scenario.retains(d.cause, d.effect)) {
      corpus.assertions.emplace_back(d.cause, d.adverb, d.effect, scenario.source_id);
    }
  }
  return corpus;
}

std::vector<std::string> provenance_comments(const SynthScenario& scenario) {
  std::string adverbs;
  for (const auto& a : scenario.adverb_subset) {
    if (!adverbs.empty()) adverbs += ", ";
    adverbs += a;
  }
  return {"rng: " + std::string(kSynthRngAlgorithm) + " seed=" + std::to_string(scenario.seed),
          "adverbs: " + adverbs};
}

SimulationPreset simulation_preset(int number) {
  switch (number) {
    case 1:
      return {"divergent", {"usually", "normally"}, {"infrequently", "seldom"}};
    case 2:
      return {"similar", {"usually", "normally"}, {"frequently", "regularly"}};
    default:
      throw DomainError("unknown simulation preset " + std::to_string(number));
  }
}

}  // namespace causaltrust
