#pragma once

#include <string>

#include "causaltrust/classify.hpp"

namespace causaltrust {

/// {source_id, gamma, alpha, source_decision, epsilon, causals: [...]}.
std::string report_json(const SourceVerdict& verdict, const Hyperparameters& hp);

/// Human-readable log with percentages at six decimals. One line per causal,
/// then the three source sentences.
std::string transcript(const SourceVerdict& verdict, const Hyperparameters& hp);

/// One line per assertion with its learning outcome.
std::string learning_transcript(const LearningReport& report);

/// Renders a fraction as "12.345678%".
std::string percent(double fraction);

}  // namespace causaltrust
