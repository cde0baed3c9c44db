#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causaltrust/density.hpp"
#include "causaltrust/lexicon.hpp"

namespace causaltrust {

/// One "cause <adverb> causes effect" claim. Concepts are canonicalized on
/// construction and self-loops are rejected.
class CausalAssertion {
 public:
  /// Throws DomainError if a field is empty or cause equals effect after
  /// canonicalization.
  CausalAssertion(std::string_view cause, std::string_view adverb, std::string_view effect,
                  std::string source = {}, std::string sentence = {});

  const std::string& cause() const noexcept { return cause_; }
  const std::string& adverb() const noexcept { return adverb_; }
  const std::string& effect() const noexcept { return effect_; }
  const std::string& source() const noexcept { return source_; }
  const std::string& sentence() const noexcept { return sentence_; }

  /// Compares the claim itself; provenance is ignored.
  friend bool operator==(const CausalAssertion& a, const CausalAssertion& b) {
    return a.cause_ == b.cause_ && a.adverb_ == b.adverb_ && a.effect_ == b.effect_;
  }

 private:
  std::string cause_;
  std::string adverb_;
  std::string effect_;
  std::string source_;
  std::string sentence_;
};

struct Observation {
  std::string adverb;
  std::string source;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// How repeated evidence on an edge is counted.
enum class EvidencePolicy {
  /// Fuse each (source, adverb) pair once per edge; repeats are recorded only.
  once_per_source,
  /// Fuse every observation.
  every,
};

std::string_view to_string(EvidencePolicy policy);
EvidencePolicy parse_evidence_policy(std::string_view text);

struct CausalEdge {
  std::string cause;
  std::string effect;
  DensityGrid prior;      // prior of the first observed adverb
  DensityGrid posterior;
  std::vector<Observation> observations;

  std::size_t observation_count() const noexcept { return observations.size(); }
};

/// Floor applied after fusion. It only repairs cells that underflowed, so
/// fusion stays associative even when evidence conflicts.
inline constexpr double kFusionFloor = std::numeric_limits<double>::min();

/// Normalized pointwise product (logarithmic opinion pool), smoothed with
/// `floor` so the result never has empty cells.
DensityGrid fuse(const DensityGrid& posterior, const DensityGrid& evidence,
                 double floor = kFusionFloor);

using EdgeKey = std::pair<std::string, std::string>;

class WeightedCausalGraph {
 public:
  explicit WeightedCausalGraph(std::size_t resolution = kDefaultResolution,
                               EvidencePolicy policy = EvidencePolicy::once_per_source);

  /// Creates the edge with the adverb prior, or fuses the prior into the
  /// existing posterior. Throws UnknownAdverbError if the lexicon lacks the
  /// adverb and DomainError if the lexicon resolution differs.
  void add_assertion(const CausalAssertion& assertion, const AdverbLexicon& lexicon);

  /// Lookup after canonicalizing both concepts.
  const CausalEdge* get_edge(std::string_view cause, std::string_view effect) const;

  /// Rebuilds a posterior from the edge's observation list alone.
  DensityGrid replay(const CausalEdge& edge, const AdverbLexicon& lexicon) const;

  const std::set<std::string>& concepts() const noexcept { return concepts_; }
  const std::map<EdgeKey, CausalEdge>& edges() const noexcept { return edges_; }
  std::size_t resolution() const noexcept { return resolution_; }
  EvidencePolicy evidence_policy() const noexcept { return policy_; }
  std::size_t observation_total() const noexcept;

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

  /// Parses a whole document before building anything, so a failure never
  /// yields a partial graph. Throws ParseError on malformed or mismatched
  /// documents and DomainError if the graph resolution differs from the
  /// lexicon's.
  static WeightedCausalGraph load(std::istream& in, const AdverbLexicon& lexicon);
  static WeightedCausalGraph load(const std::filesystem::path& path, const AdverbLexicon& lexicon);

 private:
  std::size_t resolution_;
  EvidencePolicy policy_;
  std::set<std::string> concepts_;
  std::map<EdgeKey, CausalEdge> edges_;
};

inline constexpr int kGraphSchemaVersion = 1;

}  // namespace causaltrust
