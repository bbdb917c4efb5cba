#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <sstream>
#include <tuple>

#include "subconflict/coconflict.hpp"
#include "subconflict/corpus.hpp"
#include "subconflict/metrics.hpp"
#include "subconflict/pipeline.hpp"
#include "subconflict/synth.hpp"
#include "subconflict/temporal.hpp"

namespace py = pybind11;
using namespace subconflict;

namespace {

// edges as (a, b, weight) over node names
UndirectedGraph graph_from(const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  std::vector<std::string> nodes;
  for (const auto& [a, b, w] : edges) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const auto id = [&](const std::string& n) {
    return static_cast<std::uint32_t>(std::lower_bound(nodes.begin(), nodes.end(), n) - nodes.begin());
  };
  std::vector<UndirectedGraph::Edge> out;
  for (const auto& [a, b, w] : edges) {
    if (a == b) throw ConfigError("self-loop on '" + a + "'");
    auto x = id(a), y = id(b);
    if (x > y) std::swap(x, y);
    out.push_back({x, y, w, 0});
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); });
  return UndirectedGraph::make(nodes, out);
}

}  // namespace

PYBIND11_MODULE(_subconflict, m) {
  m.doc() = "Inter-community conflict pipeline";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_OSError);
  py::register_exception<MissingArtifactError>(m, "MissingArtifactError", input_error.ptr());

  m.def("classify_polarity", [](std::int64_t score) { return std::string(to_string(classify_polarity(score))); },
        py::arg("score"));

  m.def(
      "spearman",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto r = spearman(x, y);
        py::dict d;
        d["computable"] = r.computable;
        d["n"] = r.n;
        d["rho"] = r.rho;
        d["p_value"] = r.p_value;
        return d;
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "change_count",
      [](const std::vector<std::optional<std::string>>& track) { return change_count(track); }, py::arg("track"));

  m.def(
      "louvain",
      [](const std::vector<std::tuple<std::string, std::string, double>>& edges, std::uint64_t seed) {
        const auto g = graph_from(edges);
        LouvainOptions o;
        o.seed = seed;
        const auto p = louvain(g, o);
        py::dict communities;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) communities[py::str(g.nodes[i])] = p.community[i];
        return py::make_tuple(communities, p.modularity);
      },
      py::arg("edges"), py::arg("seed") = 20160101);

  m.def(
      "generate_jsonl",
      [](const std::string& preset, std::uint64_t seed) {
        const auto g = synth::generate(synth::preset(preset, seed));
        std::ostringstream out;
        synth::write_comments_jsonl(out, g.comments);
        return py::make_tuple(out.str(), g.truth.to_json());
      },
      py::arg("preset") = "demo", py::arg("seed") = 20160101);

  m.def("default_config", [] { return PipelineConfig{}.to_json(); });
  m.def(
      "normalize_config", [](const std::string& text) { return PipelineConfig::from_json(text).to_json(); },
      py::arg("config_json"));

  m.def(
      "run_stage",
      [](const std::string& stage, const std::string& config_json) {
        const auto s = parse_stage(stage);
        const auto c = PipelineConfig::from_json(config_json);
        py::gil_scoped_release release;
        run_stage(s, c);
      },
      py::arg("stage"), py::arg("config_json") = "{}");
}
