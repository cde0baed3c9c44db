#include "causaltrust/extract.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "causaltrust/error.hpp"

namespace causaltrust {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(canonicalize(w));
  return words;
}

std::string join(const std::vector<std::string>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += words[i];
  }
  return out;
}

// Leading/trailing punctuation around a matched concept ("today, smoking,").
std::string strip_punct(std::string s) {
  auto is_punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_punct(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && is_punct(s[i])) ++i;
  return canonicalize(std::string_view(s).substr(i));
}

constexpr std::string_view kSourcePrefix = "source:";

}  // namespace

CausalAssertion parse_structured_line(std::string_view line, const AdverbLexicon& lexicon,
                                      std::string source) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t bar = line.find('|', start);
    fields.push_back(trim(line.substr(start, bar == std::string_view::npos ? bar : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (fields.size() != 3) {
    throw ParseError("expected 3 fields, got " + std::to_string(fields.size()));
  }
  if (!lexicon.contains(fields[1])) throw UnknownAdverbError(canonicalize(fields[1]));
  return CausalAssertion(fields[0], fields[1], fields[2], std::move(source), std::string(line));
}

std::string format_structured_line(const CausalAssertion& assertion) {
  return assertion.cause() + " | " + assertion.adverb() + " | " + assertion.effect();
}

bool is_negated_causal(std::string_view sentence) {
  const auto words = split_words(sentence);
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    const std::string& w = words[i];
    const std::string& next = words[i + 1];
    const bool verb = next == "cause" || next == "causes";
    if (verb && (w == "not" || w == "doesn't" || w == "don't" || w == "cannot" || w == "can't")) {
      return true;
    }
  }
  return false;
}

std::vector<CausalAssertion> extract_from_sentence(std::string_view sentence,
                                                   const AdverbLexicon& lexicon,
                                                   std::string_view default_adverb,
                                                   std::string source) {
  if (is_negated_causal(sentence)) return {};
  const auto words = split_words(sentence);
  auto verb = std::find(words.begin(), words.end(), "causes");
  if (verb == words.end()) return {};
  const auto pivot = static_cast<std::size_t>(verb - words.begin());

  // Longest adverb first so "hardly ever" is never split into cause "... hardly".
  std::vector<std::pair<std::size_t, const AdverbEntry*>> candidates;
  for (const auto& entry : lexicon.entries()) {
    candidates.emplace_back(split_words(entry.name).size(), &entry);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::string adverb(canonicalize(default_adverb));
  std::size_t cause_end = pivot;
  for (const auto& [length, entry] : candidates) {
    if (length > pivot) continue;
    if (join(words, pivot - length, pivot) == entry->name) {
      adverb = entry->name;
      cause_end = pivot - length;
      break;
    }
  }
  std::string cause = strip_punct(join(words, 0, cause_end));
  std::string effect = strip_punct(join(words, pivot + 1, words.size()));
  if (cause.empty() || effect.empty() || cause == effect || adverb.empty()) return {};
  std::vector<CausalAssertion> out;
  out.emplace_back(cause, adverb, effect, std::move(source), std::string(trim(sentence)));
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto t = trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?' || c == '\n') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

CorpusReadResult read_corpus(std::istream& in, const AdverbLexicon& lexicon,
                             const ReadOptions& options) {
  CorpusReadResult result;
  result.corpus.source_id = options.source_id;
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view t = trim(line);
    if (t.starts_with('#')) {
      auto comment = trim(t.substr(1));
      if (comment.starts_with(kSourcePrefix)) {
        auto id = trim(comment.substr(kSourcePrefix.size()));
        if (!id.empty()) result.corpus.source_id = std::string(id);
      }
      continue;
    }
    if (t.empty()) continue;
    lines.emplace_back(number, std::string(t));
  }
  if (in.bad()) throw IoError("failed while reading corpus");

  const std::string& source = result.corpus.source_id;
  auto& assertions = result.corpus.assertions;
  for (const auto& [number, text] : lines) {
    if (options.format == CorpusFormat::structured) {
      try {
        assertions.push_back(parse_structured_line(text, lexicon, source));
      } catch (const Error& e) {
        result.diagnostics.push_back({number, e.what()});
      }
      continue;
    }
    for (const auto& sentence : split_sentences(text)) {
      if (is_negated_causal(sentence)) {
        result.diagnostics.push_back({number, "negated causal sentence skipped: " + sentence});
        continue;
      }
      try {
        for (auto& a : extract_from_sentence(sentence, lexicon, options.default_adverb, source)) {
          if (!lexicon.contains(a.adverb())) {
            result.diagnostics.push_back({number, "unknown adverb '" + a.adverb() + "'"});
            continue;
          }
          assertions.push_back(std::move(a));
        }
      } catch (const Error& e) {
        result.diagnostics.push_back({number, e.what()});
      }
    }
  }
  return result;
}

CorpusReadResult read_corpus(const std::filesystem::path& path, const AdverbLexicon& lexicon,
                             ReadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus " + path.string());
  if (options.source_id == ReadOptions{}.source_id) options.source_id = path.stem().string();
  return read_corpus(in, lexicon, options);
}

void write_corpus(std::ostream& out, const Corpus& corpus,
                  const std::vector<std::string>& header_comments) {
  out << "# source: " << corpus.source_id << '\n';
  for (const auto& c : header_comments) out << "# " << c << '\n';
  for (const auto& a : corpus.assertions) out << format_structured_line(a) << '\n';
  if (!out) throw IoError("failed to write corpus");
}

}  // namespace causaltrust
