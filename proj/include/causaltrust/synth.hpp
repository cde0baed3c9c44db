#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "causaltrust/extract.hpp"
#include "causaltrust/lexicon.hpp"

namespace causaltrust {

/// Identifier stored with every generated corpus so it can be reproduced.
inline constexpr std::string_view kSynthRngAlgorithm = "mt19937_64+rejection-index";

struct SynthScenario {
  std::size_t n_relations = 200;
  std::vector<std::string> adverb_subset;
  std::vector<std::string> concepts = {"A", "B", "C"};
  std::uint64_t seed = 0;
  std::string source_id = "synthetic";

  /// Throws DomainError unless n_relations >= 1, the adverbs are a nonempty
  /// subset of the lexicon and at least two distinct concepts are given.
  void validate(const AdverbLexicon& lexicon) const;

  /// Pairs of consecutive concepts survive the filter: A->B and B->C for the
  /// default chain.
  bool retains(std::string_view cause, std::string_view effect) const;
};

/// Draws n_relations ordered pairs of distinct concepts and adverbs, both
/// uniformly, then keeps only the retained pairs.
Corpus generate(const SynthScenario& scenario, const AdverbLexicon& lexicon);

/// Keeps drawing with the same generator until `retained` relations survive
/// the filter. n_relations is ignored.
Corpus generate_retained(const SynthScenario& scenario, std::size_t retained,
                         const AdverbLexicon& lexicon);

/// Comment lines recording the generator and seed.
std::vector<std::string> provenance_comments(const SynthScenario& scenario);

struct SimulationPreset {
  std::string name;
  std::vector<std::string> train_adverbs;
  std::vector<std::string> test_adverbs;
  std::size_t train_draws = 200;
  std::size_t test_retained = 5;
};

/// Preset 1: train usually/normally, test infrequently/seldom.
/// Preset 2: train usually/normally, test frequently/regularly.
SimulationPreset simulation_preset(int number);

}  // namespace causaltrust
