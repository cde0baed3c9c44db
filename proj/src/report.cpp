#include "causaltrust/report.hpp"

#include <fmt/format.h>

#include "json.hpp"

namespace causaltrust {

using nlohmann::json;

std::string percent(double fraction) { return fmt::format("{:.6f}%", 100.0 * fraction); }

std::string report_json(const SourceVerdict& verdict, const Hyperparameters& hp) {
  json causals = json::array();
  for (const auto& v : verdict.causals) {
    json item = {
        {"cause", v.assertion.cause()},
        {"adverb", v.assertion.adverb()},
        {"effect", v.assertion.effect()},
        {"status", to_string(v.status)},
        {"p_f", nullptr},
        {"decision", nullptr},
        {"omega", nullptr},
    };
    if (v.p_f) item["p_f"] = *v.p_f;
    if (v.decision) item["decision"] = to_string(*v.decision);
    if (v.omega) item["omega"] = *v.omega;
    causals.push_back(std::move(item));
  }
  json doc = {
      {"source_id", verdict.source_id},
      {"gamma", hp.gamma},
      {"alpha", verdict.alpha},
      {"source_decision", to_string(verdict.decision)},
      {"epsilon", verdict.epsilon},
      {"causals", causals},
  };
  return doc.dump(2) + "\n";
}

std::string transcript(const SourceVerdict& verdict, const Hyperparameters& hp) {
  std::string out = fmt::format("Analyzing source: {}\n", verdict.source_id);
  for (const auto& v : verdict.causals) {
    const auto& a = v.assertion;
    out += fmt::format("Causal relation: {} {} causes {}. ", a.cause(), a.adverb(), a.effect());
    if (v.status == CausalStatus::insufficient_knowledge) {
      out += "Not enough knowledge has been gained about this causal relation to score it.\n";
      continue;
    }
    if (v.status == CausalStatus::unknown_edge && !v.p_f) {
      out += "This causal relation is not present in the learned graph.\n";
      continue;
    }
    out += fmt::format(
        "The probability of the causal relation being fake is : {}. According to the given "
        "threshold of {}, {}. The confidence degree of the decision is {}.\n",
        percent(*v.p_f), percent(hp.beta),
        *v.decision == CausalDecision::fake ? "it is fake information"
                                            : "it is not fake information",
        percent(*v.omega));
  }
  out += fmt::format("The probability of the source being non trust worthy is : {}.\n",
                     percent(verdict.alpha));
  out += verdict.decision == SourceDecision::not_trustworthy
             ? "According to the given threshold, we must not learn causal relations from this "
               "source.\n"
             : "According to the given threshold, it is a trust worthy source.\n";
  out += fmt::format(
      "The confidence degree of the decision based in the threshold and the probability of the "
      "source is {}.\n",
      percent(verdict.epsilon));
  return out;
}

std::string learning_transcript(const LearningReport& report) {
  std::string out;
  for (const auto& e : report.entries) {
    const auto& a = e.assertion;
    out += fmt::format("{}: {} {} causes {} ({})\n", e.fused ? "Learned" : "Not learned",
                       a.cause(), a.adverb(), a.effect(), e.reason);
  }
  out += fmt::format("Learned {} of {} causal relations.\n", report.fused_count(),
                     report.entries.size());
  return out;
}

}  // namespace causaltrust
