#include "subconflict/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "subconflict/coconflict.hpp"
#include "subconflict/conflict.hpp"
#include "subconflict/format.hpp"
#include "subconflict/metrics.hpp"
#include "subconflict/significance.hpp"
#include "subconflict/synth.hpp"

namespace subconflict {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config

namespace {

std::string_view mode_name(MonthlyHomeMode m) {
  return m == MonthlyHomeMode::Reclassify ? "reclassify" : "yearly_homes";
}

MonthlyHomeMode parse_mode(const std::string& s) {
  if (s == "reclassify") return MonthlyHomeMode::Reclassify;
  if (s == "yearly_homes") return MonthlyHomeMode::YearlyHomes;
  throw ConfigError("temporal.mode must be 'reclassify' or 'yearly_homes', got '" + s + "'");
}

ordered_json config_json(const PipelineConfig& c) {
  const auto& t = c.thresholds;
  return {{"window", {{"year", c.window.year}, {"first_month", c.window.first_month}, {"last_month", c.window.last_month}}},
          {"thresholds",
           {{"min_total_comments", t.min_total_comments},
            {"min_sub_comments", t.min_sub_comments},
            {"min_pair_authors", t.min_pair_authors},
            {"min_common_coconflict", t.min_common_coconflict},
            {"z_threshold", t.z_threshold},
            {"mc_trials", t.mc_trials},
            {"monthly_presence", t.monthly_presence}}},
          {"excluded_subreddits", c.excluded_subreddits},
          {"deleted_authors", c.deleted_authors},
          {"seed", c.seed},
          {"threads", c.threads},
          {"input", c.input},
          {"outdir", c.outdir},
          {"significance", {{"sample_std", c.sample_std}}},
          {"temporal", {{"mode", mode_name(c.temporal_mode)}, {"min_targets_for_focus", c.min_targets_for_focus}}},
          {"louvain", {{"epsilon", c.louvain_epsilon}, {"resolution", c.louvain_resolution}}},
          {"reports", {{"top_n", c.top_n}, {"min_con_authors", c.min_con_authors_report}}},
          {"ingest", {{"max_keys_in_memory", c.max_keys_in_memory}, {"spill_dir", c.spill_dir}}},
          {"synth", {{"scenario", c.scenario}, {"preset", c.preset}}}};
}

// Walks `in` against the default layout so misspelt keys are caught.
void check_keys(const json& in, const ordered_json& shape, const std::string& path) {
  if (!in.is_object()) throw ConfigError("config" + (path.empty() ? "" : " key '" + path + "'") + " must be an object");
  for (const auto& [key, value] : in.items()) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!shape.contains(key)) throw ConfigError("unknown config key '" + full + "'");
    if (shape.at(key).is_object()) check_keys(value, shape.at(key), full);
  }
}

template <class T>
void take(const json& j, std::initializer_list<const char*> path, T& out) {
  const json* node = &j;
  std::string name;
  for (const char* p : path) {
    name += (name.empty() ? "" : ".") + std::string(p);
    if (!node->contains(p)) return;
    node = &node->at(p);
  }
  try {
    node->get_to(out);
  } catch (const json::exception&) {
    throw ConfigError("config key '" + name + "' has the wrong type");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  window.validate();
  const auto& t = thresholds;
  const auto positive = [](auto v, const char* name) {
    if (!(v > 0)) throw ConfigError(std::string("threshold ") + name + " must be positive");
  };
  positive(t.min_total_comments, "min_total_comments");
  positive(t.min_sub_comments, "min_sub_comments");
  positive(t.min_pair_authors, "min_pair_authors");
  positive(t.min_common_coconflict, "min_common_coconflict");
  positive(t.z_threshold, "z_threshold");
  positive(t.mc_trials, "mc_trials");
  positive(t.monthly_presence, "monthly_presence");
  if (t.mc_trials < 2) throw ConfigError("mc_trials must be at least 2");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (outdir.empty()) throw ConfigError("outdir must not be empty");
  if (!(louvain_epsilon > 0)) throw ConfigError("louvain.epsilon must be positive");
  if (!(louvain_resolution > 0)) throw ConfigError("louvain.resolution must be positive");
  if (top_n < 1) throw ConfigError("reports.top_n must be positive");
  if (min_con_authors_report < 0) throw ConfigError("reports.min_con_authors must not be negative");
  if (min_targets_for_focus < 1) throw ConfigError("temporal.min_targets_for_focus must be positive");
}

std::string PipelineConfig::to_json() const { return config_json(*this).dump(2) + "\n"; }

PipelineConfig PipelineConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  PipelineConfig c;
  check_keys(j, config_json(c), "");
  auto& t = c.thresholds;
  take(j, {"window", "year"}, c.window.year);
  take(j, {"window", "first_month"}, c.window.first_month);
  take(j, {"window", "last_month"}, c.window.last_month);
  take(j, {"thresholds", "min_total_comments"}, t.min_total_comments);
  take(j, {"thresholds", "min_sub_comments"}, t.min_sub_comments);
  take(j, {"thresholds", "min_pair_authors"}, t.min_pair_authors);
  take(j, {"thresholds", "min_common_coconflict"}, t.min_common_coconflict);
  take(j, {"thresholds", "z_threshold"}, t.z_threshold);
  take(j, {"thresholds", "mc_trials"}, t.mc_trials);
  take(j, {"thresholds", "monthly_presence"}, t.monthly_presence);
  take(j, {"excluded_subreddits"}, c.excluded_subreddits);
  take(j, {"deleted_authors"}, c.deleted_authors);
  take(j, {"seed"}, c.seed);
  take(j, {"threads"}, c.threads);
  take(j, {"input"}, c.input);
  take(j, {"outdir"}, c.outdir);
  take(j, {"significance", "sample_std"}, c.sample_std);
  std::string mode(mode_name(c.temporal_mode));
  take(j, {"temporal", "mode"}, mode);
  c.temporal_mode = parse_mode(mode);
  take(j, {"temporal", "min_targets_for_focus"}, c.min_targets_for_focus);
  take(j, {"louvain", "epsilon"}, c.louvain_epsilon);
  take(j, {"louvain", "resolution"}, c.louvain_resolution);
  take(j, {"reports", "top_n"}, c.top_n);
  take(j, {"reports", "min_con_authors"}, c.min_con_authors_report);
  take(j, {"ingest", "max_keys_in_memory"}, c.max_keys_in_memory);
  take(j, {"ingest", "spill_dir"}, c.spill_dir);
  take(j, {"synth", "scenario"}, c.scenario);
  take(j, {"synth", "preset"}, c.preset);
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

PipelineConfig with_override(const PipelineConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("override must look like key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json j = json::parse(config.to_json());
  json* node = &j;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(part)) throw ConfigError("unknown config key '" + key + "'");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
  return PipelineConfig::from_json(j.dump());
}

Stage parse_stage(std::string_view name) {
  static const std::map<std::string_view, Stage> kStages{
      {"synth", Stage::Synth},       {"ingest", Stage::Ingest},     {"profiles", Stage::Profiles},
      {"conflict", Stage::Conflict}, {"filter", Stage::Filter},     {"metrics", Stage::Metrics},
      {"coconflict", Stage::CoConflict}, {"temporal", Stage::Temporal}, {"export", Stage::Export},
      {"all", Stage::All}};
  const auto it = kStages.find(name);
  if (it == kStages.end()) throw ConfigError("unknown subcommand '" + std::string(name) + "'");
  return it->second;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Synth: return "synth";
    case Stage::Ingest: return "ingest";
    case Stage::Profiles: return "profiles";
    case Stage::Conflict: return "conflict";
    case Stage::Filter: return "filter";
    case Stage::Metrics: return "metrics";
    case Stage::CoConflict: return "coconflict";
    case Stage::Temporal: return "temporal";
    case Stage::Export: return "export";
    case Stage::All: return "all";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exports

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void graphml_open(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& node_keys,
                  const std::vector<std::pair<std::string, std::string>>& edge_keys, bool directed) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  for (const auto& [k, type] : node_keys)
    out << "  <key id=\"" << k << "\" for=\"node\" attr.name=\"" << k << "\" attr.type=\"" << type << "\"/>\n";
  for (const auto& [k, type] : edge_keys)
    out << "  <key id=\"" << k << "\" for=\"edge\" attr.name=\"" << k << "\" attr.type=\"" << type << "\"/>\n";
  out << "  <graph id=\"G\" edgedefault=\"" << (directed ? "directed" : "undirected") << "\">\n";
}

}  // namespace

void write_conflict_dot(std::ostream& out, const ConflictGraph& graph) {
  out << "digraph conflict {\n";
  for (const auto& n : graph.nodes) out << "  " << dot_id(n) << ";\n";
  for (const auto& e : graph.edges)
    out << "  " << dot_id(e.source) << " -> " << dot_id(e.target) << " [weight=" << format_double(e.weight)
        << ", penwidth=" << format_double(e.weight) << "];\n";
  out << "}\n";
}

void write_conflict_graphml(std::ostream& out, const ConflictGraph& graph) {
  graphml_open(out,
               {{"indegree", "long"}, {"outdegree", "long"}, {"weighted_indegree", "double"},
                {"weighted_outdegree", "double"}, {"avg_in_intensity", "double"}, {"avg_out_intensity", "double"}},
               {{"weight", "double"}, {"z", "double"}, {"k", "long"}, {"n_common", "long"}}, true);
  for (const auto& m : degree_metrics(graph)) {
    out << "    <node id=\"" << xml_escape(m.subreddit) << "\">";
    out << "<data key=\"indegree\">" << m.indegree << "</data>";
    out << "<data key=\"outdegree\">" << m.outdegree << "</data>";
    out << "<data key=\"weighted_indegree\">" << format_double(m.weighted_indegree) << "</data>";
    out << "<data key=\"weighted_outdegree\">" << format_double(m.weighted_outdegree) << "</data>";
    out << "<data key=\"avg_in_intensity\">" << format_double(m.avg_in_intensity) << "</data>";
    out << "<data key=\"avg_out_intensity\">" << format_double(m.avg_out_intensity) << "</data>";
    out << "</node>\n";
  }
  for (const auto& e : graph.edges) {
    out << "    <edge source=\"" << xml_escape(e.source) << "\" target=\"" << xml_escape(e.target) << "\">";
    out << "<data key=\"weight\">" << format_double(e.weight) << "</data>";
    out << "<data key=\"z\">" << format_double(e.z) << "</data>";
    out << "<data key=\"k\">" << e.k << "</data>";
    out << "<data key=\"n_common\">" << e.n_common << "</data>";
    out << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

// ---------------------------------------------------------------------------
// Stages

namespace {

class Artifacts {
 public:
  explicit Artifacts(const PipelineConfig& c) : dir_(c.outdir) {}

  fs::path path(const std::string& name) const { return dir_ / name; }

  std::ifstream open(const std::string& name, const std::string& producer) const {
    std::ifstream in(path(name), std::ios::binary);
    if (!in) throw MissingArtifactError(name, producer);
    return in;
  }

  template <class Fn>
  void write(const std::string& name, Fn&& fn) const {
    const fs::path target = path(name);
    fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw InputError("cannot write " + tmp.string());
      fn(out);
      out.flush();
      if (!out) throw InputError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
  }

  void write_json(const std::string& name, const ordered_json& j) const {
    write(name, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  }

 private:
  fs::path dir_;
};

// Shared state derived from the aggregate. Qualification is a pure threshold
// over the aggregate, so later stages recompute it instead of storing it.
struct Base {
  StatsIndex index;
  Activity yearly;
  std::vector<AuthorId> qualified;

  Base(const AggregateTable& table, const PipelineConfig& c)
      : index(table), yearly(index.yearly()), qualified(qualified_authors(yearly, c.thresholds.min_total_comments)) {}
};

AggregateTable load_aggregate(const Artifacts& a) {
  auto in = a.open(artifact::kAggregate, "ingest");
  return read_aggregate_csv(in, artifact::kAggregate);
}

std::vector<HomeAssignment> load_controversial(const Artifacts& a, const Vocabulary& vocab) {
  auto in = a.open(artifact::kHomes, "profiles");
  return controversial_authors(read_homes_csv(in, artifact::kHomes, vocab));
}

ConflictGraph load_graph(const Artifacts& a) {
  auto in = a.open(artifact::kConflictGraph, "filter");
  return read_conflict_graph_csv(in, artifact::kConflictGraph);
}

SignificanceOptions significance_options(const PipelineConfig& c) {
  SignificanceOptions o;
  o.trials = c.thresholds.mc_trials;
  o.z_threshold = c.thresholds.z_threshold;
  o.sample_std = c.sample_std;
  o.seed = c.seed;
  o.threads = c.threads;
  o.validate();
  return o;
}

void stage_synth(const PipelineConfig& c, const Artifacts& a) {
  synth::Scenario scenario;
  if (!c.scenario.empty()) {
    std::ifstream in(c.scenario);
    if (!in) throw ConfigError("cannot read scenario file " + c.scenario);
    std::stringstream ss;
    ss << in.rdbuf();
    scenario = synth::parse_scenario(ss.str());
  } else {
    scenario = synth::preset(c.preset, c.seed);
  }
  const auto corpus = synth::generate(scenario);
  a.write(artifact::kScenario, [&](std::ostream& out) { out << synth::scenario_to_json(scenario); });
  a.write(artifact::kComments, [&](std::ostream& out) { synth::write_comments_jsonl(out, corpus.comments); });
  a.write(artifact::kGroundTruth, [&](std::ostream& out) { out << corpus.truth.to_json(); });
}

void stage_ingest(const PipelineConfig& c, const Artifacts& a) {
  fs::path input = c.input;
  if (input.empty()) {
    input = a.path(artifact::kComments);
    if (!fs::exists(input)) throw MissingArtifactError(artifact::kComments, "synth");
  }
  if (!fs::exists(input)) throw InputError("input file " + input.string() + " does not exist");
  IngestOptions o;
  o.parse.window = c.window;
  o.parse.deleted_authors = c.deleted_authors;
  o.threads = c.threads;
  o.max_keys_in_memory = c.max_keys_in_memory;
  if (!c.spill_dir.empty()) o.spill_dir = c.spill_dir;
  const auto result = ingest_file(input, o);
  a.write(artifact::kAggregate, [&](std::ostream& out) { write_aggregate_csv(out, result.stats); });
  ordered_json skips = ordered_json::object();
  for (auto r : kAllSkipReasons) {
    const auto it = result.report.skips.find(r);
    skips[std::string(to_string(r))] = it == result.report.skips.end() ? 0 : it->second;
  }
  a.write_json(artifact::kIngestReport, {{"lines", result.report.lines},
                                         {"records", result.report.records},
                                         {"skipped", skips},
                                         {"aggregate_rows", result.stats.size()}});
}

void stage_profiles(const PipelineConfig& c, const Artifacts& a) {
  const Base base(load_aggregate(a), c);
  const ExcludedSet excluded(base.index.vocab(), c.excluded_subreddits);
  auto homes = classify_all(base.qualified, base.yearly, c.thresholds.min_sub_comments, excluded);
  std::erase_if(homes, [](const HomeAssignment& h) { return h.social.empty() && h.antisocial.empty(); });
  const auto controversial = controversial_authors(homes);
  a.write(artifact::kHomes, [&](std::ostream& out) { write_homes_csv(out, homes, base.index.vocab()); });
  std::int64_t social = 0, anti = 0;
  for (const auto& h : homes) {
    social += static_cast<std::int64_t>(h.social.size());
    anti += static_cast<std::int64_t>(h.antisocial.size());
  }
  a.write_json(artifact::kProfilesSummary, {{"authors", base.index.vocab().author_count()},
                                            {"subreddits", base.index.vocab().subreddit_count()},
                                            {"qualified_authors", base.qualified.size()},
                                            {"authors_with_homes", homes.size()},
                                            {"social_homes", social},
                                            {"antisocial_homes", anti},
                                            {"controversial_authors", controversial.size()}});
}

void stage_conflict(const PipelineConfig& c, const Artifacts& a) {
  const Base base(load_aggregate(a), c);
  const auto controversial = load_controversial(a, base.index.vocab());
  const PresenceIndex common(base.yearly, base.qualified, c.thresholds.min_sub_comments);
  const auto candidates = candidate_edges(controversial, common, c.thresholds.min_pair_authors);
  a.write(artifact::kCandidates,
          [&](std::ostream& out) { write_candidates_csv(out, candidates, base.index.vocab()); });
  a.write(artifact::kCandidateAuthors,
          [&](std::ostream& out) { write_candidate_authors_csv(out, candidates, base.index.vocab()); });
}

void stage_filter(const PipelineConfig& c, const Artifacts& a) {
  const Base base(load_aggregate(a), c);
  std::vector<ConflictCandidate> candidates;
  {
    auto in = a.open(artifact::kCandidates, "conflict");
    candidates = read_candidates_csv(in, artifact::kCandidates, base.index.vocab());
  }
  const PresenceIndex common(base.yearly, base.qualified, c.thresholds.min_sub_comments);
  for (const auto& cand : candidates)
    if (common.common_count(cand.source, cand.target) != cand.n_common)
      throw InputError(std::string(artifact::kCandidates) + " does not match " + artifact::kAggregate +
                       "; rerun the 'conflict' subcommand");
  const auto outcome = filter_graph(candidates, common, c.thresholds.min_sub_comments, significance_options(c));
  a.write(artifact::kEdgeTests,
          [&](std::ostream& out) { write_edge_tests_csv(out, outcome.tests, base.index.vocab()); });
  a.write(artifact::kConflictGraph, [&](std::ostream& out) { write_conflict_graph_csv(out, outcome.graph); });
}

ordered_json spearman_json(const SpearmanResult& r) {
  ordered_json j{{"computable", r.computable}, {"n", r.n}};
  if (r.computable) {
    j["rho"] = r.rho;
    j["p_value"] = std::isnan(r.p_value) ? ordered_json(nullptr) : ordered_json(r.p_value);
  }
  return j;
}

void stage_metrics(const PipelineConfig& c, const Artifacts& a) {
  const Base base(load_aggregate(a), c);
  const auto controversial = load_controversial(a, base.index.vocab());
  const auto graph = load_graph(a);
  const auto metrics = node_metrics(graph, controversial, base.yearly, c.thresholds.min_sub_comments);
  const auto correlations = correlation_report(graph, metrics);
  a.write(artifact::kNodeMetrics, [&](std::ostream& out) { write_node_metrics_csv(out, metrics); });
  a.write(artifact::kCorrelations, [&](std::ostream& out) { write_correlations_csv(out, correlations); });
  for (const auto& key : kReportedRankings) {
    const std::int64_t floor = key == "con_author_percent" ? c.min_con_authors_report : 0;
    const auto rows = rankings(metrics, key, c.top_n, floor);
    a.write("rank_" + key + ".csv", [&](std::ostream& out) { write_rankings_csv(out, rows, key); });
  }
  double total_weight = 0;
  for (const auto& e : graph.edges) total_weight += e.weight;
  ordered_json corr = ordered_json::object();
  for (const auto& e : correlations) corr[e.name] = spearman_json(e.result);
  a.write_json(artifact::kMetricsSummary, {{"nodes", graph.nodes.size()},
                                           {"edges", graph.edges.size()},
                                           {"total_weight", total_weight},
                                           {"reciprocity", graph.empty() ? 0.0 : reciprocity(graph)},
                                           {"controversial_authors", controversial.size()},
                                           {"correlations", corr}});
}

void stage_coconflict(const PipelineConfig& c, const Artifacts& a) {
  const Base base(load_aggregate(a), c);
  const auto controversial = load_controversial(a, base.index.vocab());
  const auto graph = load_graph(a);
  const auto full = build_coconflict(controversial, base.index.vocab(), graph.nodes, c.thresholds.min_common_coconflict);
  const auto giant = giant_component(full);
  LouvainOptions lo;
  lo.seed = c.seed;
  lo.epsilon = c.louvain_epsilon;
  lo.resolution = c.louvain_resolution;
  const auto partition = louvain(giant, lo);
  const auto communities = summarize_communities(giant, partition);
  a.write(artifact::kCoConflictEdges, [&](std::ostream& out) { write_coconflict_edges_csv(out, full); });
  a.write(artifact::kPartition, [&](std::ostream& out) { write_partition_csv(out, giant, partition); });
  a.write(artifact::kCommunities, [&](std::ostream& out) { write_communities_csv(out, communities); });
  a.write_json(artifact::kCoConflictSummary, {{"nodes", full.nodes.size()},
                                              {"edges", full.edges.size()},
                                              {"giant_nodes", giant.nodes.size()},
                                              {"giant_edges", giant.edges.size()},
                                              {"communities", partition.community_count},
                                              {"modularity", partition.modularity},
                                              {"level_modularity", partition.level_modularity}});
}

void stage_temporal(const PipelineConfig& c, const Artifacts& a) {
  const Base base(load_aggregate(a), c);
  const auto yearly = load_graph(a);
  Cohort cohort{base.qualified, load_controversial(a, base.index.vocab()), yearly.nodes};
  TemporalOptions o;
  o.monthly_presence = c.thresholds.monthly_presence;
  o.min_pair_authors = c.thresholds.min_pair_authors;
  o.mode = c.temporal_mode;
  o.excluded = c.excluded_subreddits;
  o.significance = significance_options(c);
  o.first_month = c.window.first_month;
  o.last_month = c.window.last_month;
  const auto series = monthly_graphs(base.index, cohort, o);
  for (int m = 1; m <= 12; ++m) {
    char name[32];
    std::snprintf(name, sizeof name, "%s/edges_%02d.csv", artifact::kMonthlyDir, m);
    a.write(name, [&](std::ostream& out) { write_conflict_graph_csv(out, series.months[m - 1]); });
  }
  const auto tracks = focus_tracks(yearly, series, c.min_targets_for_focus);
  a.write(artifact::kFocus, [&](std::ostream& out) { write_focus_csv(out, tracks); });
  const auto targeted = rank_trajectories(series, yearly.nodes, "weighted_indegree");
  const auto instigating = rank_trajectories(series, yearly.nodes, "weighted_outdegree");
  a.write(artifact::kTrajectoryTargeted, [&](std::ostream& out) { write_trajectories_csv(out, targeted); });
  a.write(artifact::kTrajectoryInstigating, [&](std::ostream& out) { write_trajectories_csv(out, instigating); });
  for (const std::string key : {"weighted_indegree", "weighted_outdegree"}) {
    const auto tables = monthly_rankings(series, key, c.top_n);
    a.write("monthly_rankings_" + key + ".csv",
            [&](std::ostream& out) { write_monthly_rankings_csv(out, tables, key); });
  }
}

UndirectedGraph load_coconflict(const Artifacts& a, std::map<std::string, std::uint32_t>& community) {
  std::set<std::string> names;
  std::vector<std::tuple<std::string, std::string, double, std::int64_t>> rows;
  {
    auto in = a.open(artifact::kCoConflictEdges, "coconflict");
    csv::Reader r(in, artifact::kCoConflictEdges);
    r.expect_header({"a", "b", "weight", "common_count"});
    std::vector<std::string> row;
    while (r.next(row)) {
      if (row.size() != 4) throw InputError(std::string(artifact::kCoConflictEdges) + ": wrong column count");
      rows.emplace_back(row[0], row[1], parse_double(row[2]), parse_int(row[3]));
      names.insert(row[0]);
      names.insert(row[1]);
    }
  }
  {
    auto in = a.open(artifact::kPartition, "coconflict");
    csv::Reader r(in, artifact::kPartition);
    r.expect_header({"subreddit", "community_id"});
    std::vector<std::string> row;
    while (r.next(row)) {
      if (row.size() != 2) throw InputError(std::string(artifact::kPartition) + ": wrong column count");
      community[row[0]] = static_cast<std::uint32_t>(parse_int(row[1]));
      names.insert(row[0]);
    }
  }
  std::vector<std::string> nodes(names.begin(), names.end());
  std::vector<UndirectedGraph::Edge> edges;
  const auto id = [&](const std::string& n) {
    return static_cast<std::uint32_t>(std::lower_bound(nodes.begin(), nodes.end(), n) - nodes.begin());
  };
  for (const auto& [x, y, w, k] : rows) edges.push_back({id(x), id(y), w, k});
  return UndirectedGraph::make(std::move(nodes), std::move(edges));
}

void stage_export(const PipelineConfig&, const Artifacts& a) {
  const auto graph = load_graph(a);
  a.write(artifact::kConflictDot, [&](std::ostream& out) { write_conflict_dot(out, graph); });
  a.write(artifact::kConflictGraphML, [&](std::ostream& out) { write_conflict_graphml(out, graph); });
  // the co-conflict graph is exported only once it exists
  if (!fs::exists(a.path(artifact::kCoConflictEdges))) return;
  std::map<std::string, std::uint32_t> community;
  const auto co = load_coconflict(a, community);
  a.write(artifact::kCoConflictDot, [&](std::ostream& out) {
    out << "graph coconflict {\n";
    for (const auto& n : co.nodes) {
      out << "  " << dot_id(n);
      if (auto it = community.find(n); it != community.end()) out << " [community=" << it->second << "]";
      out << ";\n";
    }
    for (const auto& e : co.edges)
      out << "  " << dot_id(co.nodes[e.a]) << " -- " << dot_id(co.nodes[e.b]) << " [weight=" << format_double(e.weight)
          << ", penwidth=" << format_double(e.weight) << "];\n";
    out << "}\n";
  });
  a.write(artifact::kCoConflictGraphML, [&](std::ostream& out) {
    graphml_open(out, {{"community", "long"}}, {{"weight", "double"}, {"common_count", "long"}}, false);
    for (const auto& n : co.nodes) {
      out << "    <node id=\"" << xml_escape(n) << "\">";
      if (auto it = community.find(n); it != community.end())
        out << "<data key=\"community\">" << it->second << "</data>";
      out << "</node>\n";
    }
    for (const auto& e : co.edges)
      out << "    <edge source=\"" << xml_escape(co.nodes[e.a]) << "\" target=\"" << xml_escape(co.nodes[e.b])
          << "\"><data key=\"weight\">" << format_double(e.weight) << "</data><data key=\"common_count\">" << e.common
          << "</data></edge>\n";
    out << "  </graph>\n</graphml>\n";
  });
}

}  // namespace

void run_stage(Stage stage, const PipelineConfig& config) {
  config.validate();
  const Artifacts a(config);
  fs::create_directories(config.outdir);
  switch (stage) {
    case Stage::Synth: return stage_synth(config, a);
    case Stage::Ingest: return stage_ingest(config, a);
    case Stage::Profiles: return stage_profiles(config, a);
    case Stage::Conflict: return stage_conflict(config, a);
    case Stage::Filter: return stage_filter(config, a);
    case Stage::Metrics: return stage_metrics(config, a);
    case Stage::CoConflict: return stage_coconflict(config, a);
    case Stage::Temporal: return stage_temporal(config, a);
    case Stage::Export: return stage_export(config, a);
    case Stage::All:
      if (config.input.empty()) run_stage(Stage::Synth, config);
      for (Stage s : {Stage::Ingest, Stage::Profiles, Stage::Conflict, Stage::Filter, Stage::Metrics,
                      Stage::CoConflict, Stage::Temporal, Stage::Export})
        run_stage(s, config);
      return;
  }
}

}  // namespace subconflict
