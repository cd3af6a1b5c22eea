// Copyright 2026 The Analogy Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Documents, configs and results cross the boundary as JSON
// text; the wrapper package turns them into dicts.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "analogy/engine_config.h"
#include "analogy/entity_clustering.h"
#include "analogy/errors.h"
#include "analogy/interchange.h"
#include "analogy/mapper.h"
#include "analogy/metrics.h"
#include "analogy/miner.h"
#include "analogy/pipeline.h"
#include "analogy/qa_filter.h"

namespace py = pybind11;
using nlohmann::json;

namespace analogy {
namespace {

EngineConfig config_from(const std::string& config_json, const std::string& mode) {
  EngineConfig cfg = config_json.empty() ? EngineConfig{} : parse_config(config_json);
  if (!mode.empty()) cfg.similarity.mode = mode_from_string(mode);
  cfg.validate();
  return cfg;
}

std::vector<AnalogyLabel> labels_from(const std::vector<std::string>& names) {
  std::vector<AnalogyLabel> out;
  for (const auto& n : names) out.push_back(label_from_string(n));
  return out;
}

std::string filter_json(const std::string& doc_json, const std::string& config_json) {
  const EngineConfig cfg = config_from(config_json, "");
  const DocumentExtraction doc = parse_document(doc_json);
  FilterResult r = filter_document(doc, cfg.filter);
  json rejections = json::array();
  for (const Rejection& x : r.rejections)
    rejections.push_back(
        {{"sentence", x.sentence}, {"record", x.record}, {"reason", to_string(x.reason)}});
  return json{{"document", json::parse(write_document(r.document))},
              {"rejections", std::move(rejections)}}
      .dump();
}

std::string clusters_json(const std::string& doc_json, const EmbeddingTable& emb,
                          const std::string& config_json) {
  const EngineConfig cfg = config_from(config_json, "");
  const PreparedDocument p = prepare_document(parse_document(doc_json), emb, cfg);
  json out = json::array();
  for (const EntityCluster& c : p.clustered.clusters) {
    json members = json::array();
    for (const RecordRef& r : c.member_records) members.push_back({r.sentence, r.record});
    out.push_back({{"id", c.cluster_id},
                   {"spans", c.spans},
                   {"representative", c.representative},
                   {"members", std::move(members)}});
  }
  return out.dump();
}

std::string map_json(const std::string& base_json, const std::string& target_json,
                     const EmbeddingTable& emb, const std::string& config_json,
                     const std::string& mode) {
  const EngineConfig cfg = config_from(config_json, mode);
  const DocumentExtraction base = parse_document(base_json);
  const DocumentExtraction target = parse_document(target_json);
  const PreparedDocument pb = prepare_document(base, emb, cfg);
  const PreparedDocument pt = prepare_document(target, emb, cfg);
  const PairAnalysis a = analyze_pair(pb.clustered, pt.clustered, emb, cfg);
  json mappings = json::array();
  for (const Mapping& m : a.mappings)
    mappings.push_back(mapping_to_json(m, pb.clustered, pt.clustered));
  const Mapping empty;
  const Mapping& top = a.mappings.empty() ? empty : a.mappings.front();
  return json{{"metadata",
               {{"engine", kEngineName},
                {"version", kEngineVersion},
                {"command", "map"},
                {"config_hash", config_hash(cfg)},
                {"mode", to_string(cfg.similarity.mode)}}},
              {"base_doc", base.doc_id},
              {"target_doc", target.doc_id},
              {"mappings", std::move(mappings)},
              {"dot", to_dot(render_mapping(top, pb.clustered, pt.clustered))}}
      .dump();
}

std::string mine_json(const std::vector<std::string>& doc_jsons, const EmbeddingTable& emb,
                      const std::string& config_json, const std::string& mode, int jobs) {
  const EngineConfig cfg = config_from(config_json, mode);
  std::vector<DocumentExtraction> corpus;
  for (const auto& d : doc_jsons) corpus.push_back(parse_document(d));
  std::vector<std::string> warnings;
  MineOptions opts;
  opts.jobs = jobs;
  opts.on_error = [&](const std::string& m) { warnings.push_back(m); };
  std::vector<RankedPair> ranking;
  {
    py::gil_scoped_release release;
    ranking = mine(std::move(corpus), emb, cfg, opts);
  }
  json rows = json::array();
  for (const RankedPair& r : ranking)
    rows.push_back({{"base_doc", r.base_doc},
                    {"target_doc", r.target_doc},
                    {"analogy_score", r.analogy_score},
                    {"mapping_size", r.mapping_size},
                    {"median_total", r.median_total}});
  return json{{"ranking", std::move(rows)}, {"warnings", warnings}}.dump();
}

py::tuple prf_tuple(const Prf& p) { return py::make_tuple(p.precision, p.recall, p.f1); }

}  // namespace
}  // namespace analogy

PYBIND11_MODULE(_core, m) {
  using namespace analogy;
  m.doc() = "Analogical entity mapping between procedural texts";
  m.attr("__version__") = std::string(kEngineVersion);

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<MissingKeyError>(m, "MissingKeyError", error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<NormError>(m, "NormError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def(py::init<std::size_t>(), py::arg("dimension"))
      .def_static(
          "load",
          [](const std::string& path) { return load_embeddings(path); }, py::arg("path"))
      .def_static(
          "parse", [](const std::string& text) { return parse_embeddings(text); },
          py::arg("text"))
      .def(
          "insert",
          [](EmbeddingTable& t, const std::string& key, const std::vector<double>& v) {
            t.insert(key, v);
          },
          py::arg("key"), py::arg("vector"))
      .def("vector",
           [](const EmbeddingTable& t, const std::string& key) {
             const auto v = t.at(key);
             return std::vector<double>(v.begin(), v.end());
           })
      .def("keys", &EmbeddingTable::keys)
      .def("dumps", [](const EmbeddingTable& t) { return write_embeddings(t); })
      .def_property_readonly("dimension", &EmbeddingTable::dimension)
      .def("__len__", &EmbeddingTable::size)
      .def("__contains__", &EmbeddingTable::contains);

  m.def("cosine",
        [](const std::vector<double>& a, const std::vector<double>& b) { return cosine(a, b); });
  m.def("canonical_key", &canonical_key);
  m.def("normalize_document", [](const std::string& text) {
    return write_document(parse_document(text));
  });
  m.def("default_config", [] { return config_to_json(EngineConfig{}); });
  m.def("config_hash", [](const std::string& config_json) {
    return config_hash(config_from(config_json, ""));
  });

  m.def("filter_json", &filter_json, py::arg("document"), py::arg("config") = "");
  m.def("clusters_json", &clusters_json, py::arg("document"), py::arg("embeddings"),
        py::arg("config") = "");
  m.def("map_json", &map_json, py::arg("base"), py::arg("target"), py::arg("embeddings"),
        py::arg("config") = "", py::arg("mode") = "");
  m.def("mine_json", &mine_json, py::arg("documents"), py::arg("embeddings"),
        py::arg("config") = "", py::arg("mode") = "", py::arg("jobs") = 1);

  m.def(
      "agglomerate",
      [](const std::vector<std::vector<double>>& d, double threshold, const std::string& linkage) {
        DistanceMatrix dm(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (d[i].size() != d.size()) throw DimensionError("distance matrix must be square");
          for (std::size_t j = i + 1; j < d.size(); ++j) dm.set(i, j, d[i][j]);
        }
        return agglomerate(dm, threshold, linkage_from_string(linkage));
      },
      py::arg("distances"), py::arg("threshold") = 1.0, py::arg("linkage") = "average");

  m.def(
      "beam_search",
      [](const std::vector<std::vector<double>>& scores, int beam_width, int top_k) {
        const std::size_t rows = scores.size();
        const std::size_t cols = rows ? scores[0].size() : 0;
        std::vector<double> flat;
        for (const auto& row : scores) {
          if (row.size() != cols) throw DimensionError("score rows must have equal length");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        py::list out;
        for (const Assignment& a :
             beam_search(ScoreMatrix(rows, cols, std::move(flat)), BeamConfig{beam_width, top_k}))
          out.append(py::make_tuple(a.pairs, a.score));
        return out;
      },
      py::arg("scores"), py::arg("beam_width") = 7, py::arg("top_k") = 3);

  m.def("precision_at_k", [](const std::vector<std::string>& l, int k) {
    return precision_at_k(labels_from(l), k);
  });
  m.def("average_precision_at_k", [](const std::vector<std::string>& l, int k) {
    return average_precision_at_k(labels_from(l), k);
  });
  m.def("ndcg_at_k",
        [](const std::vector<std::string>& l, int k) { return ndcg_at_k(labels_from(l), k); });
  m.def(
      "mapping_prf",
      [](const std::string& pred_json, const std::string& gold_json, int k) {
        return prf_tuple(
            mapping_prf_at_k(parse_predictions_json(pred_json), parse_gold_json(gold_json), k));
      },
      py::arg("prediction"), py::arg("gold"), py::arg("k") = 1);
}
