#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causaltrust/density.hpp"

namespace causaltrust {

/// Shape of one adverb prior before the grid is materialized.
struct AdverbSpec {
  std::string name;
  double a = 1.0;
  double b = 1.0;
};

struct AdverbEntry {
  std::string name;  // lowercase, possibly multi-word ("hardly ever")
  std::string family = "beta";
  double shape_a = 1.0;
  double shape_b = 1.0;
  DensityGrid prior;
  double entropy = 0.0;  // nats
};

/// Frequency adverbs mapped to Beta priors over the certainty factor, with the
/// grids and entropies cached at a fixed resolution. Immutable after
/// construction.
class AdverbLexicon {
 public:
  /// Throws DomainError on duplicate names, nonpositive shapes, fewer than two
  /// entries or a zero-width entropy range.
  AdverbLexicon(std::vector<AdverbSpec> specs, std::size_t resolution = kDefaultResolution);

  /// The built-in table of twelve adverbs.
  static AdverbLexicon defaults(std::size_t resolution = kDefaultResolution);

  /// Parses `{"adverbs": [{"name": ..., "a": ..., "b": ...}, ...]}`.
  static AdverbLexicon from_json(std::string_view text, std::size_t resolution = kDefaultResolution);
  static AdverbLexicon from_file(const std::filesystem::path& path,
                                 std::size_t resolution = kDefaultResolution);

  /// Case-insensitive exact match; surrounding and repeated inner whitespace
  /// is ignored.
  const AdverbEntry* lookup(std::string_view adverb) const;
  bool contains(std::string_view adverb) const { return lookup(adverb) != nullptr; }

  const std::vector<AdverbEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t resolution() const noexcept { return resolution_; }
  double h_min() const noexcept { return h_min_; }
  double h_max() const noexcept { return h_max_; }

  /// normalize_entropy against this lexicon's entropy range.
  double normalized_entropy(double h) const;

  std::string to_json() const;

 private:
  std::vector<AdverbEntry> entries_;
  std::size_t resolution_;
  double h_min_ = 0.0;
  double h_max_ = 0.0;
};

/// JSON text of the built-in table, in the same format from_json accepts.
std::string_view default_lexicon_json();

/// Lowercase, trim and collapse internal whitespace runs to one space.
std::string canonicalize(std::string_view text);

}  // namespace causaltrust
