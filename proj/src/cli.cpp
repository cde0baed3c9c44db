#include "causaltrust/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "causaltrust/classify.hpp"
#include "causaltrust/error.hpp"
#include "causaltrust/extract.hpp"
#include "causaltrust/graph.hpp"
#include "causaltrust/lexicon.hpp"
#include "causaltrust/report.hpp"
#include "causaltrust/synth.hpp"

namespace causaltrust::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kLexiconEnv = "CAUSALTRUST_LEXICON";

struct CommonOptions {
  std::string lexicon_path;
  std::size_t grid = kDefaultResolution;
  bool quiet = false;
};

struct HyperOptions {
  Hyperparameters hp;
  std::string unknown_edge = "exclude";
  std::string learn_mode = "source-level";
  std::optional<double> min_confidence;

  Hyperparameters resolve(std::size_t grid) const {
    Hyperparameters out = hp;
    out.resolution = grid;
    out.unknown_edge = UnknownEdgePolicy::parse(unknown_edge);
    out.learn_mode = parse_learn_mode(learn_mode);
    out.min_confidence = min_confidence;
    out.validate();
    return out;
  }
};

void add_hyper_flags(CLI::App& cmd, HyperOptions& o) {
  cmd.add_option("--w", o.hp.w, "Weight of the normalized posterior entropy")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--sigma", o.hp.sigma, "Exponent applied to the fake probability")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--beta", o.hp.beta, "Threshold above which a causal relation is fake")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--gamma", o.hp.gamma, "Threshold above which a source is not trustworthy")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--tau-h", o.hp.tau_h, "Entropy decrease required before scoring")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--eps-smooth", o.hp.eps_smooth, "Smoothing floor for densities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--unknown-edge-policy", o.unknown_edge,
                 "exclude | score-constant[:p] for relations missing from the graph")
      ->capture_default_str();
  cmd.add_option("--learn-mode", o.learn_mode, "source-level | per-causal")
      ->check(CLI::IsMember({"source-level", "per-causal"}))
      ->capture_default_str();
  cmd.add_option("--min-confidence", o.min_confidence,
                 "Only learn when the decision confidence reaches this value")
      ->check(CLI::Range(0.0, 1.0));
}

AdverbLexicon load_lexicon(const CommonOptions& common) {
  std::string path = common.lexicon_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kLexiconEnv); env != nullptr && *env != '\0') path = env;
  }
  if (path.empty()) return AdverbLexicon::defaults(common.grid);
  return AdverbLexicon::from_file(path, common.grid);
}

CorpusFormat resolve_format(const std::string& format, const fs::path& path) {
  if (format == "structured") return CorpusFormat::structured;
  if (format == "text") return CorpusFormat::text;
  return path.extension() == ".txt" ? CorpusFormat::text : CorpusFormat::structured;
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("failed writing " + path.string());
}

void print_diagnostics(std::ostream& err, const fs::path& path,
                       const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    err << fmt::format("{}:{}: skipped: {}\n", path.string(), d.line, d.reason);
  }
}

std::string safe_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  return out;
}

// ---------------------------------------------------------------- train

struct TrainOptions {
  std::vector<std::string> corpora;
  std::string graph;
  std::string format = "auto";
  std::string default_adverb = "always";
  std::string evidence_policy = "once-per-source";
  bool fresh = false;
};

int cmd_train(const CommonOptions& common, const TrainOptions& o, std::ostream& out,
              std::ostream& err) {
  const AdverbLexicon lexicon = load_lexicon(common);
  const EvidencePolicy policy = parse_evidence_policy(o.evidence_policy);
  WeightedCausalGraph graph(common.grid, policy);
  if (!o.fresh && fs::exists(o.graph)) graph = WeightedCausalGraph::load(fs::path(o.graph), lexicon);

  std::size_t added = 0;
  std::size_t skipped = 0;
  for (const auto& path : o.corpora) {
    ReadOptions ro;
    ro.format = resolve_format(o.format, path);
    ro.default_adverb = o.default_adverb;
    auto result = read_corpus(fs::path(path), lexicon, ro);
    print_diagnostics(err, path, result.diagnostics);
    skipped += result.diagnostics.size();
    for (const auto& a : result.corpus.assertions) {
      graph.add_assertion(a, lexicon);
      ++added;
    }
  }
  if (added == 0) err << "warning: no causal relations were learned\n";
  graph.save(fs::path(o.graph));
  if (!common.quiet) {
    out << fmt::format("Learned {} causal relations ({} skipped lines).\n", added, skipped);
    out << fmt::format("Graph: {} concepts, {} edges, {} observations -> {}\n",
                       graph.concepts().size(), graph.edges().size(), graph.observation_total(),
                       o.graph);
  }
  return kOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyOptions {
  std::string graph;
  std::string corpus;
  std::string report;
  std::string format = "auto";
  std::string default_adverb = "always";
  std::string output_graph;
  bool learn = false;
  HyperOptions hyper;
};

struct Classification {
  SourceVerdict verdict;
  std::optional<LearningReport> learning;
};

Classification classify_corpus(WeightedCausalGraph& graph, const Corpus& corpus,
                               const Hyperparameters& hp, const AdverbLexicon& lexicon,
                               bool learn) {
  Classification c{source_verdict(graph, corpus, hp, lexicon), std::nullopt};
  if (learn) c.learning = apply_learning_policy(graph, c.verdict, corpus, hp, lexicon);
  return c;
}

std::string render(const Classification& c, const Hyperparameters& hp) {
  std::string text = transcript(c.verdict, hp);
  if (c.learning) text += learning_transcript(*c.learning);
  return text;
}

int cmd_classify(const CommonOptions& common, const ClassifyOptions& o, std::ostream& out,
                 std::ostream& err) {
  const Hyperparameters hp = o.hyper.resolve(common.grid);
  const AdverbLexicon lexicon = load_lexicon(common);
  WeightedCausalGraph graph = WeightedCausalGraph::load(fs::path(o.graph), lexicon);

  ReadOptions ro;
  ro.format = resolve_format(o.format, o.corpus);
  ro.default_adverb = o.default_adverb;
  auto result = read_corpus(fs::path(o.corpus), lexicon, ro);
  print_diagnostics(err, o.corpus, result.diagnostics);

  const Classification c = classify_corpus(graph, result.corpus, hp, lexicon, o.learn);
  if (!o.report.empty()) write_file(o.report, report_json(c.verdict, hp));
  out << render(c, hp);
  if (o.learn) graph.save(fs::path(o.output_graph.empty() ? o.graph : o.output_graph));
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  int preset = 1;
  std::uint64_t seed = 42;
  std::string out_dir = "simulation";
  std::string evidence_policy = "once-per-source";
  bool learn = false;
  HyperOptions hyper;
};

int cmd_simulate(const CommonOptions& common, const SimulateOptions& o, std::ostream& out,
                 std::ostream&) {
  const Hyperparameters hp = o.hyper.resolve(common.grid);
  const AdverbLexicon lexicon = load_lexicon(common);
  const SimulationPreset preset = simulation_preset(o.preset);

  SynthScenario train_scenario;
  train_scenario.n_relations = preset.train_draws;
  train_scenario.adverb_subset = preset.train_adverbs;
  train_scenario.seed = o.seed;
  train_scenario.source_id = fmt::format("synthetic-{}-train", preset.name);

  SynthScenario test_scenario = train_scenario;
  test_scenario.adverb_subset = preset.test_adverbs;
  // Distinct stream for the test draws, derived from the same user seed.
  test_scenario.seed = o.seed ^ 0x9e3779b97f4a7c15ULL;
  test_scenario.source_id = fmt::format("synthetic-{}-test", preset.name);

  const Corpus train = generate(train_scenario, lexicon);
  const Corpus test = generate_retained(test_scenario, preset.test_retained, lexicon);

  WeightedCausalGraph graph(hp.resolution, parse_evidence_policy(o.evidence_policy));
  for (const auto& a : train.assertions) graph.add_assertion(a, lexicon);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  std::ostringstream train_text, test_text, graph_text;
  write_corpus(train_text, train, provenance_comments(train_scenario));
  write_corpus(test_text, test, provenance_comments(test_scenario));
  graph.save(graph_text);
  write_file(dir / "train.cau", train_text.str());
  write_file(dir / "test.cau", test_text.str());
  write_file(dir / "graph.json", graph_text.str());

  const Classification c = classify_corpus(graph, test, hp, lexicon, o.learn);
  const std::string text = render(c, hp);
  write_file(dir / "report.json", report_json(c.verdict, hp));
  write_file(dir / "transcript.txt", text);
  if (o.learn) {
    std::ostringstream learned;
    graph.save(learned);
    write_file(dir / "graph_learned.json", learned.str());
  }
  if (!common.quiet) {
    out << fmt::format("Preset {} ({}), seed {}: trained on {} retained relations.\n", o.preset,
                       preset.name, o.seed, train.assertions.size());
  }
  out << text;
  return kOk;
}

// ---------------------------------------------------------------- inspect

int cmd_inspect(const CommonOptions& common, const std::string& graph_path, double tau_h,
                std::ostream& out) {
  const AdverbLexicon lexicon = load_lexicon(common);
  const auto graph = WeightedCausalGraph::load(fs::path(graph_path), lexicon);
  out << fmt::format("{} concepts, {} edges, {} observations, M = {}, evidence policy {}\n",
                     graph.concepts().size(), graph.edges().size(), graph.observation_total(),
                     graph.resolution(), to_string(graph.evidence_policy()));
  for (const auto& [key, edge] : graph.edges()) {
    const double hp = entropy(edge.prior);
    const double hs = entropy(edge.posterior);
    out << fmt::format(
        "{} -> {}: first adverb {}, {} observations, posterior mean {:.6f}, prior entropy "
        "{:.6f}, posterior entropy {:.6f}, knowledge gained {}\n",
        edge.cause, edge.effect, edge.observations.front().adverb, edge.observation_count(),
        edge.posterior.mean(), hp, hs, gate(edge.prior, edge.posterior, tau_h) ? "yes" : "no");
  }
  return kOk;
}

// ---------------------------------------------------------------- export-plots

int cmd_export_plots(const CommonOptions& common, const std::string& graph_path,
                     const std::string& out_dir, std::ostream& out) {
  const AdverbLexicon lexicon = load_lexicon(common);
  const auto graph = WeightedCausalGraph::load(fs::path(graph_path), lexicon);
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  std::string index = "file,cause,effect,observations\n";
  std::size_t n = 0;
  for (const auto& [key, edge] : graph.edges()) {
    const std::string file =
        fmt::format("edge_{:03}_{}__{}.csv", n++, safe_name(edge.cause), safe_name(edge.effect));
    std::string csv = "x,prior_density,posterior_density\n";
    for (std::size_t i = 0; i < edge.prior.resolution(); ++i) {
      csv += fmt::format("{},{},{}\n", edge.prior.midpoint(i), edge.prior[i], edge.posterior[i]);
    }
    write_file(dir / file, csv);
    index += fmt::format("{},\"{}\",\"{}\",{}\n", file, edge.cause, edge.effect,
                         edge.observation_count());
  }
  write_file(dir / "index.csv", index);
  if (!common.quiet) out << fmt::format("Wrote {} edge files to {}\n", n, dir.string());
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scores causal claims and their sources against a weighted causal graph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "causaltrust 0.1.0");

  CommonOptions common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--lexicon", common.lexicon_path,
                    "Adverb lexicon JSON (default: $CAUSALTRUST_LEXICON or built-in)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--grid", common.grid, "Grid resolution M")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
        ->capture_default_str();
    cmd->add_flag("-q,--quiet", common.quiet, "Only print reports");
  };

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Build or update a graph from corpora");
  add_common(train_cmd);
  train_cmd->add_option("corpus", train.corpora, "Corpus files (.cau or free text)")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("-g,--graph", train.graph, "Graph JSON to create or update")->required();
  train_cmd->add_option("--format", train.format, "auto | structured | text")
      ->check(CLI::IsMember({"auto", "structured", "text"}))
      ->capture_default_str();
  train_cmd->add_option("--default-adverb", train.default_adverb,
                        "Adverb for unqualified 'causes' in free text")
      ->capture_default_str();
  train_cmd->add_option("--evidence-policy", train.evidence_policy, "once-per-source | every")
      ->check(CLI::IsMember({"once-per-source", "every"}))
      ->capture_default_str();
  train_cmd->add_flag("--fresh", train.fresh, "Ignore an existing graph file");

  ClassifyOptions classify;
  auto* classify_cmd = app.add_subcommand("classify", "Score a corpus against a graph");
  add_common(classify_cmd);
  classify_cmd->add_option("-g,--graph", classify.graph, "Trained graph JSON")
      ->required()
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("corpus", classify.corpus, "Corpus to classify")
      ->required()
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("-r,--report", classify.report, "Write the verdict report JSON here");
  classify_cmd->add_option("--format", classify.format, "auto | structured | text")
      ->check(CLI::IsMember({"auto", "structured", "text"}))
      ->capture_default_str();
  classify_cmd->add_option("--default-adverb", classify.default_adverb,
                           "Adverb for unqualified 'causes' in free text")
      ->capture_default_str();
  classify_cmd->add_flag("--learn", classify.learn, "Apply the learning policy and save the graph");
  classify_cmd->add_option("--output-graph", classify.output_graph,
                           "Where --learn saves the graph (default: overwrite --graph)");
  add_hyper_flags(*classify_cmd, classify.hyper);

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a synthetic train/classify experiment");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--preset", simulate.preset,
                           "1: usually/normally vs infrequently/seldom, "
                           "2: usually/normally vs frequently/regularly")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, "RNG seed")->capture_default_str();
  simulate_cmd->add_option("-o,--out", simulate.out_dir, "Output directory")->capture_default_str();
  simulate_cmd->add_option("--evidence-policy", simulate.evidence_policy, "once-per-source | every")
      ->check(CLI::IsMember({"once-per-source", "every"}))
      ->capture_default_str();
  simulate_cmd->add_flag("--learn", simulate.learn, "Apply the learning policy after classifying");
  add_hyper_flags(*simulate_cmd, simulate.hyper);

  std::string inspect_graph;
  double inspect_tau = 1e-9;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a graph");
  add_common(inspect_cmd);
  inspect_cmd->add_option("graph", inspect_graph, "Graph JSON")->required()->check(CLI::ExistingFile);
  inspect_cmd->add_option("--tau-h", inspect_tau, "Entropy-gate tolerance")->capture_default_str();

  std::string plot_graph;
  std::string plot_dir;
  auto* plots_cmd = app.add_subcommand("export-plots", "Write prior/posterior CSVs per edge");
  add_common(plots_cmd);
  plots_cmd->add_option("graph", plot_graph, "Graph JSON")->required()->check(CLI::ExistingFile);
  plots_cmd->add_option("-o,--out", plot_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (*train_cmd) return cmd_train(common, train, out, err);
    if (*classify_cmd) return cmd_classify(common, classify, out, err);
    if (*simulate_cmd) return cmd_simulate(common, simulate, out, err);
    if (*inspect_cmd) return cmd_inspect(common, inspect_graph, inspect_tau, out);
    if (*plots_cmd) return cmd_export_plots(common, plot_graph, plot_dir, out);
  } catch (const NoScorableCausalsError& e) {
    err << "error: " << e.what() << '\n';
    return kNoScorable;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace causaltrust::cli
