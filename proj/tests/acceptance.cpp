// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures (capped at 1).

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "json.hpp"
#include "oracles.hpp"

#include "causaltrust/classify.hpp"
#include "causaltrust/cli.hpp"
#include "causaltrust/density.hpp"
#include "causaltrust/lexicon.hpp"

namespace fs = std::filesystem;
using namespace causaltrust;

namespace {

// Tolerances.
constexpr double kAlphaTol = 5e-3;
constexpr double kEpsilonTol = 1e-4;
constexpr double kGammaTol = 1e-5;
constexpr double kOmegaTol = 1e-6;
constexpr double kSelfKlTol = 1e-9;
constexpr double kUniformEntropyTol = 1e-6;
constexpr double kBetaOracleTol = 1e-3;
constexpr double kGridDoublingTol = 1e-3;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << fmt::format("{} [{}] {}: {}\n", ok ? "PASS" : "FAIL", id, name, detail);
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / fmt::format("causaltrust-acceptance-{}", ::getpid());
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "causaltrust");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceVerdict verdict_from(const std::vector<double>& probabilities, const Hyperparameters& hp) {
  std::vector<CausalVerdict> causals;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    CausalVerdict v{CausalAssertion(fmt::format("c{}", i), "usually", "effect")};
    v.status = CausalStatus::scored;
    v.p_f = probabilities[i];
    v.decision = decide_causal(probabilities[i], hp.beta);
    v.omega = decision_confidence(probabilities[i], hp.beta);
    v.gate_b = true;
    causals.push_back(std::move(v));
  }
  return summarize_source("acceptance", std::move(causals), hp);
}

void alpha_reproduction(int id, const std::vector<double>& p, double logged, double gamma,
                        SourceDecision expected) {
  Hyperparameters hp;
  hp.gamma = gamma;
  const SourceVerdict v = verdict_from(p, hp);
  const bool ok = std::abs(v.alpha - logged) <= kAlphaTol && v.decision == expected;
  report(id, "trust degree reproduction", ok,
         fmt::format("alpha = {:.6f}, logged {:.8f}, |diff| = {:.2e} (tol {:.0e}), decision {}",
                     v.alpha, logged, std::abs(v.alpha - logged), kAlphaTol,
                     to_string(v.decision)));
}

void epsilon_consistency() {
  struct Case {
    double alpha, epsilon, gamma;
    bool trusted;  // logged decision picks the side of alpha gamma sits on
  };
  const Case cases[] = {{0.785579, 0.554469, 0.35, false}, {0.330110, 0.029692, 0.35, true},
                        {0.622033, 0.356948, 0.40, false}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const double solved = oracle::invert_source_confidence(c.alpha, c.epsilon, c.trusted);
    const double closed =
        c.alpha + (c.trusted ? 1.0 : -1.0) * c.epsilon * std::max(1.0 - c.alpha, c.alpha);
    const double eps = decision_confidence(c.alpha, c.gamma);
    const bool case_ok = std::abs(solved - c.gamma) <= kGammaTol &&
                         std::abs(closed - c.gamma) <= kGammaTol &&
                         std::abs(eps - c.epsilon) <= kEpsilonTol &&
                         (decide_source(c.alpha, c.gamma) == SourceDecision::trustworthy) == c.trusted;
    ok = ok && case_ok;
    detail += fmt::format("{}(alpha {:.6f}: gamma {:.6f}, eps {:.6f} vs {:.6f})", detail.empty() ? "" : "; ",
                          c.alpha, solved, eps, c.epsilon);
  }
  report(3, "source confidence formula", ok, detail + fmt::format(" tol {:.0e}", kEpsilonTol));
}

void omega_example() {
  const double omega = decision_confidence(0.7, 0.6);
  const bool ok = std::abs(omega - 1.0 / 7.0) <= kOmegaTol &&
                  std::abs(omega - 0.142857) <= kOmegaTol &&
                  decide_causal(0.7, 0.6) == CausalDecision::fake &&
                  decide_causal(0.5, 0.6) == CausalDecision::not_fake;
  report(4, "causal confidence example", ok,
         fmt::format("omega = {:.7f} (tol {:.0e}), 0.7 -> {}, 0.5 -> {}", omega, kOmegaTol,
                     to_string(decide_causal(0.7, 0.6)), to_string(decide_causal(0.5, 0.6))));
}

nlohmann::json simulate(int preset, const std::string& tag) {
  const fs::path dir = scratch_dir() / fmt::format("preset{}-{}", preset, tag);
  const int code = run_cli({"simulate", "--preset", std::to_string(preset), "--seed", "42",
                            "-o", dir.string(), "-q"});
  if (code != 0) return nlohmann::json();
  return nlohmann::json::parse(slurp(dir / "report.json"));
}

void scenario(int id, int preset) {
  const nlohmann::json r = simulate(preset, "a");
  if (r.is_null()) {
    report(id, fmt::format("synthetic scenario {}", preset), false, "simulate failed");
    return;
  }
  std::vector<double> p;
  for (const auto& c : r["causals"]) {
    if (!c["p_f"].is_null()) p.push_back(c["p_f"].get<double>());
  }
  std::string listed;
  for (double x : p) listed += fmt::format("{}{:.4f}", listed.empty() ? "" : ", ", x);
  const std::string decision = r["source_decision"].get<std::string>();
  bool ok = p.size() == 5 && r["gamma"].get<double>() == 0.35;
  if (preset == 1) {
    for (double x : p) ok = ok && x >= 0.6;
    ok = ok && decision == to_string(SourceDecision::not_trustworthy);
  } else {
    int below = 0;
    for (double x : p) below += x < 0.30 ? 1 : 0;
    ok = ok && below >= 3 && decision == to_string(SourceDecision::trustworthy);
  }
  report(id, fmt::format("synthetic scenario {}", preset), ok,
         fmt::format("p_f = [{}], alpha = {:.6f}, decision {}", listed,
                     r["alpha"].get<double>(), decision));
}

void numerical_oracles() {
  const auto lex = AdverbLexicon::defaults();
  const double h_uniform = entropy(DensityGrid::uniform(kDefaultResolution));
  double worst_self = 0.0;
  for (const auto& e : lex.entries()) worst_self = std::max(worst_self, std::abs(kl(e.prior, e.prior)));

  const double h_oracle = oracle::beta_entropy(2, 2);
  const auto b1000 = beta_pdf_grid(2, 2, 1000);
  const auto b2000 = beta_pdf_grid(2, 2, 2000);
  const double h1000 = entropy(b1000);
  const double h2000 = entropy(b2000);
  const double kl1000 = kl(b1000, DensityGrid::uniform(1000));
  const double kl2000 = kl(b2000, DensityGrid::uniform(2000));

  const bool ok = std::abs(h_uniform) <= kUniformEntropyTol && worst_self <= kSelfKlTol &&
                  std::abs(h_oracle - (-0.12510)) <= kBetaOracleTol &&
                  std::abs(h1000 - h_oracle) <= kBetaOracleTol &&
                  std::abs(h1000 - (-0.12510)) <= kBetaOracleTol &&
                  std::abs(kl1000 + h_oracle) <= kBetaOracleTol &&
                  std::abs(kl1000 - 0.12510) <= kBetaOracleTol &&
                  std::abs(h1000 - h2000) < kGridDoublingTol &&
                  std::abs(kl1000 - kl2000) < kGridDoublingTol;
  report(7, "numerical oracles", ok,
         fmt::format("H(uniform) = {:.1e}, max kl(p,p) = {:.1e}, H(Beta(2,2)) = {:.6f} "
                     "(oracle {:.6f}), kl(Beta(2,2)||U) = {:.6f}, doubling M: dH = {:.1e}, "
                     "dKL = {:.1e}",
                     h_uniform, worst_self, h1000, h_oracle, kl1000, std::abs(h1000 - h2000),
                     std::abs(kl1000 - kl2000)));
}

void property_suites() {
  const char* suites[] = {"property_density", "property_graph", "property_classify",
                          "property_extract", "property_serialization", "property_synth"};
  bool ok = true;
  std::string detail;
  for (const char* suite : suites) {
    const std::string cmd = fmt::format("\"{}\" --test-suite={} > /dev/null 2>&1",
                                        CAUSALTRUST_PROPERTIES_BIN, suite);
    const bool suite_ok = std::system(cmd.c_str()) == 0;
    ok = ok && suite_ok;
    detail += fmt::format("{}{} {}", detail.empty() ? "" : ", ", suite, suite_ok ? "ok" : "failed");
  }
  report(8, "property suites", ok, detail);
}

void golden_run() {
  bool ok = true;
  std::string detail;
  for (int preset : {1, 2}) {
    const fs::path a = scratch_dir() / fmt::format("preset{}-a", preset);
    const fs::path b = scratch_dir() / fmt::format("preset{}-b", preset);
    if (!fs::exists(a / "report.json")) simulate(preset, "a");
    simulate(preset, "b");
    bool identical = true;
    for (const char* file : {"train.cau", "test.cau", "graph.json", "report.json", "transcript.txt"}) {
      identical = identical && fs::exists(a / file) && slurp(a / file) == slurp(b / file);
    }
    const std::string sentence = preset == 1
                                     ? "According to the given threshold, we must not learn causal "
                                       "relations from this source."
                                     : "According to the given threshold, it is a trust worthy source.";
    const std::string text = slurp(a / "transcript.txt");
    const bool has_sentence = text.find(sentence) != std::string::npos &&
                              text.find("The probability of the source being non trust worthy is : ") !=
                                  std::string::npos;
    ok = ok && identical && has_sentence;
    detail += fmt::format("{}preset {}: {}, {}", detail.empty() ? "" : "; ", preset,
                          identical ? "byte-identical" : "outputs differ",
                          has_sentence ? "template sentence present" : "template sentence missing");
  }
  report(9, "end-to-end golden run", ok, detail);
}

}  // namespace

int main() {
  alpha_reproduction(1, {0.1876, 0.2669, 0.5412, 0.1877, 0.4670}, 0.33010959, 0.35,
                     SourceDecision::trustworthy);
  alpha_reproduction(2, {0.4939, 0.6566, 0.5594, 0.7146, 0.6858}, 0.62203338, 0.40,
                     SourceDecision::not_trustworthy);
  epsilon_consistency();
  omega_example();
  scenario(5, 1);
  scenario(6, 2);
  numerical_oracles();
  property_suites();
  golden_run();
  fs::remove_all(scratch_dir());
  std::cout << fmt::format("{} of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
