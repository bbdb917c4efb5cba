// Command-line driver: one subcommand per pipeline stage.

#include <CLI11.hpp>
#include <iostream>

#include "subconflict/pipeline.hpp"

namespace sc = subconflict;

namespace {

enum Exit { kOk = 0, kConfig = 2, kInput = 3, kInternal = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inter-community conflict analysis over comment archives"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> input, outdir, preset, scenario;
  std::vector<std::string> overrides;
  bool print_config = false;
  bool quiet = false;

  app.add_option("--config", config_path, "JSON config file; flags override it")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--input", input, "newline-delimited comment records, optionally .gz");
  app.add_option("--outdir", outdir, "artifact directory");
  app.add_option("--preset", preset, "synth preset: demo, planted, null or mixed");
  app.add_option("--scenario", scenario, "synth scenario file")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override a config key, e.g. thresholds.min_sub_comments=20");
  app.add_flag("--print-config", print_config, "print the effective config and exit");
  app.add_flag("--quiet", quiet, "suppress warnings");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"synth", "generate a synthetic corpus with ground truth"},
      {"ingest", "parse and aggregate comment records"},
      {"profiles", "classify social and anti-social homes"},
      {"conflict", "build candidate conflict edges"},
      {"filter", "Monte-Carlo significance filter"},
      {"metrics", "node metrics, correlations and rankings"},
      {"coconflict", "co-conflict graph and communities"},
      {"temporal", "monthly graphs and focus changes"},
      {"export", "GraphML and DOT exports"},
      {"all", "every stage in order"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    sc::PipelineConfig config = config_path.empty() ? sc::PipelineConfig{} : sc::PipelineConfig::load(config_path);
    for (const auto& o : overrides) config = sc::with_override(config, o);
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    if (input) config.input = *input;
    if (outdir) config.outdir = *outdir;
    if (preset) config.preset = *preset;
    if (scenario) config.scenario = *scenario;
    config.validate();
    sc::set_warnings_enabled(!quiet);
    if (print_config) {
      std::cout << config.to_json();
      return kOk;
    }
    const auto stage = sc::parse_stage(app.get_subcommands().front()->get_name());
    sc::run_stage(stage, config);
    return kOk;
  } catch (const sc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const sc::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
