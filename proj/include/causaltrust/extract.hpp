#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "causaltrust/graph.hpp"
#include "causaltrust/lexicon.hpp"

namespace causaltrust {

struct Corpus {
  std::string source_id;
  std::vector<CausalAssertion> assertions;
};

struct Diagnostic {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

enum class CorpusFormat {
  structured,  // `cause | adverb | effect` lines
  text,        // free text, sentences matched against causal patterns
};

struct ReadOptions {
  CorpusFormat format = CorpusFormat::structured;
  std::string default_adverb = "always";
  /// Used when the input carries no `# source:` header.
  std::string source_id = "unnamed";
};

struct CorpusReadResult {
  Corpus corpus;
  std::vector<Diagnostic> diagnostics;
};

/// Parses `cause | adverb | effect`. Throws ParseError on arity,
/// UnknownAdverbError on adverbs missing from the lexicon and DomainError on
/// self-loops.
CausalAssertion parse_structured_line(std::string_view line, const AdverbLexicon& lexicon,
                                      std::string source = {});

/// Inverse of parse_structured_line.
std::string format_structured_line(const CausalAssertion& assertion);

/// Matches `<X> <adverb> causes <Y>` and `<X> causes <Y>`, case-insensitively.
/// Multi-word adverbs win over shorter ones. A bare `causes` is qualified
/// with `default_adverb`. Returns an empty list when nothing matches.
std::vector<CausalAssertion> extract_from_sentence(std::string_view sentence,
                                                   const AdverbLexicon& lexicon,
                                                   std::string_view default_adverb,
                                                   std::string source = {});

/// True for "does not cause", "doesn't cause" and similar negated claims.
bool is_negated_causal(std::string_view sentence);

/// Splits free text on '.', '!', '?' and newlines.
std::vector<std::string> split_sentences(std::string_view text);

/// Reads one corpus. A `# source: <id>` comment sets the source id. Bad lines
/// are skipped and reported, never fatal.
CorpusReadResult read_corpus(std::istream& in, const AdverbLexicon& lexicon,
                             const ReadOptions& options = {});
/// Throws IoError if the file cannot be opened. The file stem is the default
/// source id.
CorpusReadResult read_corpus(const std::filesystem::path& path, const AdverbLexicon& lexicon,
                             ReadOptions options = {});

/// Writes a corpus in the structured format, headed by `# source:` and any
/// extra comment lines.
void write_corpus(std::ostream& out, const Corpus& corpus,
                  const std::vector<std::string>& header_comments = {});

}  // namespace causaltrust
