#include "causaltrust/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "causaltrust/error.hpp"

namespace causaltrust {

namespace {

// Means increase strictly from "never" to "always".
constexpr std::string_view kDefaultLexicon = R"({
  "adverbs": [
    {"name": "never",        "a": 1.2,  "b": 40},
    {"name": "hardly ever",  "a": 2,    "b": 23},
    {"name": "seldom",       "a": 3,    "b": 17},
    {"name": "infrequently", "a": 4,    "b": 16},
    {"name": "sometimes",    "a": 8,    "b": 12},
    {"name": "often",        "a": 13,   "b": 7},
    {"name": "frequently",   "a": 14,   "b": 6},
    {"name": "regularly",    "a": 14.5, "b": 6},
    {"name": "normally",     "a": 15,   "b": 5},
    {"name": "usually",      "a": 16,   "b": 4},
    {"name": "constantly",   "a": 18,   "b": 2},
    {"name": "always",       "a": 40,   "b": 1.2}
  ]
}
)";

}  // namespace

std::string canonicalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string_view default_lexicon_json() { return kDefaultLexicon; }

AdverbLexicon::AdverbLexicon(std::vector<AdverbSpec> specs, std::size_t resolution)
    : resolution_(resolution) {
  if (specs.size() < 2) throw DomainError("adverb lexicon needs at least 2 entries");
  std::set<std::string> seen;
  entries_.reserve(specs.size());
  h_min_ = std::numeric_limits<double>::infinity();
  h_max_ = -std::numeric_limits<double>::infinity();
  for (auto& spec : specs) {
    std::string name = canonicalize(spec.name);
    if (name.empty()) throw DomainError("adverb name must be nonempty");
    if (!seen.insert(name).second) throw DomainError("duplicate adverb '" + name + "'");
    if (!(spec.a > 0.0) || !(spec.b > 0.0)) {
      throw DomainError("adverb '" + name + "' has a nonpositive shape parameter");
    }
    DensityGrid prior = beta_pdf_grid(spec.a, spec.b, resolution);
    const double h = entropy(prior);
    h_min_ = std::min(h_min_, h);
    h_max_ = std::max(h_max_, h);
    entries_.push_back(AdverbEntry{std::move(name), "beta", spec.a, spec.b, std::move(prior), h});
  }
  if (!(h_max_ > h_min_)) throw DomainError("degenerate lexicon entropy range");
}

AdverbLexicon AdverbLexicon::defaults(std::size_t resolution) {
  return from_json(kDefaultLexicon, resolution);
}

AdverbLexicon AdverbLexicon::from_json(std::string_view text, std::size_t resolution) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("adverbs") || !doc["adverbs"].is_array()) {
    throw ParseError("lexicon: expected an object with an \"adverbs\" array");
  }
  std::vector<AdverbSpec> specs;
  for (const auto& item : doc["adverbs"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
        !item.contains("a") || !item["a"].is_number() || !item.contains("b") ||
        !item["b"].is_number()) {
      throw ParseError("lexicon: each adverb needs a string \"name\" and numeric \"a\", \"b\"");
    }
    if (item.contains("family") && item["family"] != "beta") {
      throw ParseError("lexicon: unsupported family " + item["family"].dump());
    }
    specs.push_back({item["name"].get<std::string>(), item["a"].get<double>(),
                     item["b"].get<double>()});
  }
  return AdverbLexicon(std::move(specs), resolution);
}

AdverbLexicon AdverbLexicon::from_file(const std::filesystem::path& path,
                                       std::size_t resolution) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read lexicon file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str(), resolution);
}

const AdverbEntry* AdverbLexicon::lookup(std::string_view adverb) const {
  const std::string key = canonicalize(adverb);
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const AdverbEntry& e) { return e.name == key; });
  return it == entries_.end() ? nullptr : &*it;
}

double AdverbLexicon::normalized_entropy(double h) const {
  return normalize_entropy(h, h_min_, h_max_);
}

std::string AdverbLexicon::to_json() const {
  nlohmann::json adverbs = nlohmann::json::array();
  for (const auto& e : entries_) {
    adverbs.push_back({{"name", e.name}, {"a", e.shape_a}, {"b", e.shape_b}});
  }
  return nlohmann::json{{"adverbs", adverbs}}.dump(2) + "\n";
}

}  // namespace causaltrust
