#include "causaltrust/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "causaltrust/error.hpp"

namespace causaltrust {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

}  // namespace

UnknownEdgePolicy UnknownEdgePolicy::parse(std::string_view text) {
  if (text == "exclude") return {};
  constexpr std::string_view kConstant = "score-constant";
  if (text.starts_with(kConstant)) {
    UnknownEdgePolicy policy{UnknownEdgeMode::score_constant, 0.5};
    auto rest = text.substr(kConstant.size());
    if (rest.empty()) return policy;
    if (rest.front() != ':') throw DomainError("bad unknown-edge policy '" + std::string(text) + "'");
    try {
      std::size_t used = 0;
      std::string number(rest.substr(1));
      policy.constant = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DomainError("bad unknown-edge constant in '" + std::string(text) + "'");
    }
    require_unit(policy.constant, "unknown-edge constant");
    return policy;
  }
  throw DomainError("unknown unknown-edge policy '" + std::string(text) + "'");
}

std::string UnknownEdgePolicy::to_string() const {
  if (mode == UnknownEdgeMode::exclude) return "exclude";
  return "score-constant:" + std::to_string(constant);
}

void Hyperparameters::validate() const {
  require_unit(w, "w");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  require_unit(beta, "beta");
  require_unit(gamma, "gamma");
  if (resolution < 2) throw DomainError("grid resolution must be at least 2");
  if (!(eps_smooth > 0.0)) throw DomainError("eps_smooth must be positive");
  if (!(tau_h >= 0.0)) throw DomainError("tau_h must be nonnegative");
  if (unknown_edge.mode == UnknownEdgeMode::score_constant) {
    require_unit(unknown_edge.constant, "unknown-edge constant");
  }
  if (min_confidence) require_unit(*min_confidence, "min_confidence");
}

std::string_view to_string(LearnMode mode) {
  return mode == LearnMode::source_level ? "source-level" : "per-causal";
}

LearnMode parse_learn_mode(std::string_view text) {
  if (text == "source-level") return LearnMode::source_level;
  if (text == "per-causal") return LearnMode::per_causal;
  throw DomainError("unknown learn mode '" + std::string(text) + "'");
}

std::string_view to_string(CausalStatus status) {
  switch (status) {
    case CausalStatus::scored:
      return "scored";
    case CausalStatus::insufficient_knowledge:
      return "insufficient-knowledge";
    case CausalStatus::unknown_edge:
      return "unknown-edge";
  }
  return "?";
}

std::string_view to_string(CausalDecision decision) {
  return decision == CausalDecision::fake ? "fake" : "not-fake";
}

std::string_view to_string(SourceDecision decision) {
  return decision == SourceDecision::trustworthy ? "trustworthy" : "not-trustworthy";
}

bool gate(const DensityGrid& prior, const DensityGrid& posterior, double tau_h) {
  return entropy(posterior) < entropy(prior) - tau_h;
}

double fake_probability(const DensityGrid& learned, const DensityGrid& incoming,
                        const Hyperparameters& hp, const AdverbLexicon& lexicon) {
  const double divergence = squash_kl(std::max(0.0, kl(learned, incoming, hp.eps_smooth)));
  const double sharpness = lexicon.normalized_entropy(entropy(learned));
  const double combined = (1.0 - hp.w) * divergence + hp.w * sharpness;
  return std::clamp(std::pow(combined, hp.sigma), 0.0, 1.0);
}

double decision_confidence(double score, double threshold) {
  require_unit(score, "score");
  require_unit(threshold, "threshold");
  return std::abs(score - threshold) / std::max(1.0 - score, score);
}

double trust_degree(std::span<const double> fake_probabilities) {
  if (fake_probabilities.empty()) throw NoScorableCausalsError("no scorable causals");
  return std::accumulate(fake_probabilities.begin(), fake_probabilities.end(), 0.0) /
         static_cast<double>(fake_probabilities.size());
}

CausalDecision decide_causal(double p_f, double beta) {
  return p_f > beta ? CausalDecision::fake : CausalDecision::not_fake;
}

SourceDecision decide_source(double alpha, double gamma) {
  return alpha > gamma ? SourceDecision::not_trustworthy : SourceDecision::trustworthy;
}

CausalVerdict causal_verdict(const WeightedCausalGraph& graph, const CausalAssertion& assertion,
                             const Hyperparameters& hp, const AdverbLexicon& lexicon) {
  const AdverbEntry* incoming = lexicon.lookup(assertion.adverb());
  if (incoming == nullptr) throw UnknownAdverbError(assertion.adverb());

  CausalVerdict verdict{assertion, CausalStatus::scored, std::nullopt, std::nullopt, std::nullopt, false};
  auto score = [&](double p_f) {
    verdict.p_f = p_f;
    verdict.decision = decide_causal(p_f, hp.beta);
    verdict.omega = decision_confidence(p_f, hp.beta);
  };

  const CausalEdge* edge = graph.get_edge(assertion.cause(), assertion.effect());
  if (edge == nullptr) {
    verdict.status = CausalStatus::unknown_edge;
    if (hp.unknown_edge.mode == UnknownEdgeMode::score_constant) score(hp.unknown_edge.constant);
    return verdict;
  }
  verdict.gate_b = gate(edge->prior, edge->posterior, hp.tau_h);
  if (!verdict.gate_b) {
    verdict.status = CausalStatus::insufficient_knowledge;
    return verdict;
  }
  verdict.status = CausalStatus::scored;
  score(fake_probability(edge->posterior, incoming->prior, hp, lexicon));
  return verdict;
}

SourceVerdict summarize_source(std::string source_id, std::vector<CausalVerdict> causals,
                               const Hyperparameters& hp) {
  std::vector<double> scores;
  for (const auto& v : causals) {
    if (v.p_f) scores.push_back(*v.p_f);
  }
  if (scores.empty()) {
    throw NoScorableCausalsError("no scorable causals in source '" + source_id + "'");
  }
  SourceVerdict out;
  out.source_id = std::move(source_id);
  out.causals = std::move(causals);
  out.n_scored = scores.size();
  out.alpha = trust_degree(scores);
  out.decision = decide_source(out.alpha, hp.gamma);
  out.epsilon = decision_confidence(out.alpha, hp.gamma);
  return out;
}

SourceVerdict source_verdict(const WeightedCausalGraph& graph, const Corpus& corpus,
                             const Hyperparameters& hp, const AdverbLexicon& lexicon) {
  std::vector<CausalVerdict> causals;
  causals.reserve(corpus.assertions.size());
  for (const auto& a : corpus.assertions) causals.push_back(causal_verdict(graph, a, hp, lexicon));
  return summarize_source(corpus.source_id, std::move(causals), hp);
}

std::size_t LearningReport::fused_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.fused; }));
}

LearningReport apply_learning_policy(WeightedCausalGraph& graph, const SourceVerdict& verdict,
                                     const Corpus& corpus, const Hyperparameters& hp,
                                     const AdverbLexicon& lexicon) {
  if (verdict.causals.size() != corpus.assertions.size()) {
    throw DomainError("source verdict does not belong to this corpus");
  }
  LearningReport report;
  auto learn = [&](const CausalAssertion& a) {
    graph.add_assertion(a, lexicon);
    report.entries.push_back({a, true, "learned"});
  };
  auto skip = [&](const CausalAssertion& a, std::string reason) {
    report.entries.push_back({a, false, std::move(reason)});
  };

  if (hp.learn_mode == LearnMode::source_level) {
    std::string refusal;
    if (verdict.decision == SourceDecision::not_trustworthy) {
      refusal = "source not trustworthy";
    } else if (hp.min_confidence && verdict.epsilon < *hp.min_confidence) {
      refusal = "source confidence below minimum";
    }
    for (const auto& a : corpus.assertions) {
      if (refusal.empty()) {
        learn(a);
      } else {
        skip(a, refusal);
      }
    }
    return report;
  }

  for (const auto& v : verdict.causals) {
    if (!v.decision) {
      skip(v.assertion, std::string("unscored (") + std::string(to_string(v.status)) + ")");
    } else if (*v.decision == CausalDecision::fake) {
      skip(v.assertion, "judged fake");
    } else if (hp.min_confidence && v.omega && *v.omega < *hp.min_confidence) {
      skip(v.assertion, "confidence below minimum");
    } else {
      learn(v.assertion);
    }
  }
  return report;
}

}  // namespace causaltrust
