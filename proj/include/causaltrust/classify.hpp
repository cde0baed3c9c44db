#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causaltrust/density.hpp"
#include "causaltrust/extract.hpp"
#include "causaltrust/graph.hpp"
#include "causaltrust/lexicon.hpp"

namespace causaltrust {

enum class UnknownEdgeMode { exclude, score_constant };
enum class LearnMode { source_level, per_causal };

struct UnknownEdgePolicy {
  UnknownEdgeMode mode = UnknownEdgeMode::exclude;
  double constant = 0.5;  // p_f assigned under score_constant

  /// "exclude", "score-constant" or "score-constant:<p>".
  static UnknownEdgePolicy parse(std::string_view text);
  std::string to_string() const;
};

struct Hyperparameters {
  double w = 0.2;       // weight of the normalized entropy term
  double sigma = 3.0;   // exponent applied to the combined score
  double beta = 0.30;   // causal threshold
  double gamma = 0.35;  // source threshold
  std::size_t resolution = kDefaultResolution;
  double eps_smooth = kDefaultSmoothing;
  double tau_h = 1e-9;  // entropy-gate tolerance
  UnknownEdgePolicy unknown_edge;
  LearnMode learn_mode = LearnMode::source_level;
  std::optional<double> min_confidence;

  /// Throws DomainError naming the first out-of-range field.
  void validate() const;
};

std::string_view to_string(LearnMode mode);
LearnMode parse_learn_mode(std::string_view text);

enum class CausalStatus { scored, insufficient_knowledge, unknown_edge };
enum class CausalDecision { fake, not_fake };
enum class SourceDecision { trustworthy, not_trustworthy };

std::string_view to_string(CausalStatus status);
std::string_view to_string(CausalDecision decision);
std::string_view to_string(SourceDecision decision);

struct CausalVerdict {
  CausalAssertion assertion;
  CausalStatus status = CausalStatus::scored;
  /// Present when scored, or for unknown edges under score_constant.
  std::optional<double> p_f;
  std::optional<CausalDecision> decision;
  std::optional<double> omega;
  bool gate_b = false;
};

struct SourceVerdict {
  std::string source_id;
  std::vector<CausalVerdict> causals;
  std::size_t n_scored = 0;
  double alpha = 0.0;
  SourceDecision decision = SourceDecision::trustworthy;
  double epsilon = 0.0;
};

/// True when the posterior is sharper than the prior by more than `tau_h` nats.
bool gate(const DensityGrid& prior, const DensityGrid& posterior, double tau_h = 1e-9);

/// ((1 - w) * squash_kl(kl(s, l)) + w * h_n(s))^sigma, with h_n normalized
/// against the lexicon's entropy range.
double fake_probability(const DensityGrid& learned, const DensityGrid& incoming,
                        const Hyperparameters& hp, const AdverbLexicon& lexicon);

/// |score - threshold| / max(1 - score, score). Used for both the causal
/// confidence and the source confidence.
double decision_confidence(double score, double threshold);

/// Arithmetic mean of the fake probabilities. Throws NoScorableCausalsError on
/// an empty input.
double trust_degree(std::span<const double> fake_probabilities);

CausalDecision decide_causal(double p_f, double beta);
SourceDecision decide_source(double alpha, double gamma);

/// Throws UnknownAdverbError if the assertion's adverb is not in the lexicon.
CausalVerdict causal_verdict(const WeightedCausalGraph& graph, const CausalAssertion& assertion,
                             const Hyperparameters& hp, const AdverbLexicon& lexicon);

/// Folds already computed causal verdicts into a source verdict. Throws
/// NoScorableCausalsError if none carries a probability.
SourceVerdict summarize_source(std::string source_id, std::vector<CausalVerdict> causals,
                               const Hyperparameters& hp);

SourceVerdict source_verdict(const WeightedCausalGraph& graph, const Corpus& corpus,
                             const Hyperparameters& hp, const AdverbLexicon& lexicon);

struct LearningEntry {
  CausalAssertion assertion;
  bool fused = false;
  std::string reason;
};

struct LearningReport {
  std::vector<LearningEntry> entries;
  std::size_t fused_count() const noexcept;
};

/// Source-level mode fuses the whole corpus or nothing; per-causal mode fuses
/// only assertions judged not fake. `verdict` must come from `corpus`.
LearningReport apply_learning_policy(WeightedCausalGraph& graph, const SourceVerdict& verdict,
                                     const Corpus& corpus, const Hyperparameters& hp,
                                     const AdverbLexicon& lexicon);

}  // namespace causaltrust
