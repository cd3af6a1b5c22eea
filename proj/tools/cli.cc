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

#include "cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "analogy/engine_config.h"
#include "analogy/errors.h"
#include "analogy/metrics.h"
#include "analogy/miner.h"
#include "analogy/pipeline.h"

namespace analogy::cli {
namespace {

using nlohmann::json;

struct CommonOptions {
  std::string embeddings;
  std::string config;
  std::string mode;
};

std::string read_text(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(std::string("cannot open ") + what + " file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write file: " + path);
  f << text;
}

EngineConfig resolve_config(const CommonOptions& opts) {
  EngineConfig cfg = opts.config.empty() ? EngineConfig{} : load_config(opts.config);
  if (!opts.mode.empty()) cfg.similarity.mode = mode_from_string(opts.mode);
  cfg.validate();
  return cfg;
}

json metadata(const EngineConfig& cfg, const char* command) {
  return {{"engine", kEngineName},
          {"version", kEngineVersion},
          {"command", command},
          {"config_hash", config_hash(cfg)},
          {"mode", to_string(cfg.similarity.mode)}};
}

std::string metadata_comment(const EngineConfig& cfg) {
  return std::string(kEngineName) + " " + std::string(kEngineVersion) +
         " config=" + config_hash(cfg) + " mode=" + std::string(to_string(cfg.similarity.mode));
}

EmbeddingTable load_for(const std::vector<const DocumentExtraction*>& docs,
                        const CommonOptions& opts, const EngineConfig& cfg) {
  std::set<std::string> keys;
  for (const DocumentExtraction* d : docs) {
    auto k = required_keys_after_filter(*d, cfg.filter);
    keys.insert(k.begin(), k.end());
  }
  return load_embeddings(opts.embeddings, keys);
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool need_embeddings, bool with_mode) {
  auto* e = cmd->add_option("-e,--embeddings", opts.embeddings, "Embedding table (JSON lines)");
  if (need_embeddings) e->required();
  cmd->add_option("-c,--config", opts.config, "Engine config JSON");
  if (with_mode)
    cmd->add_option("--mode", opts.mode, "Similarity mode: fmq or fmv")
        ->check(CLI::IsMember({"fmq", "fmv"}, CLI::ignore_case));
}

std::vector<int> parse_ks(const std::vector<int>& ks) {
  for (int k : ks)
    if (k < 1) throw ConfigError("k must be >= 1 (got " + std::to_string(k) + ")");
  return ks;
}

struct MapOptions {
  CommonOptions common;
  std::string base, target, out, graph;
  bool debug_filter = false, debug_clusters = false, debug_sim = false;
};

int cmd_map(const MapOptions& o, std::ostream& out, std::ostream& err) {
  const EngineConfig cfg = resolve_config(o.common);
  const DocumentExtraction base = load_document(o.base);
  const DocumentExtraction target = load_document(o.target);
  const EmbeddingTable emb = load_for({&base, &target}, o.common, cfg);
  const PreparedDocument pb = prepare_document(base, emb, cfg);
  const PreparedDocument pt = prepare_document(target, emb, cfg);
  if (o.debug_filter) {
    err << rejections_to_jsonl(base.doc_id, pb.rejections);
    err << rejections_to_jsonl(target.doc_id, pt.rejections);
  }
  if (o.debug_clusters) {
    err << base.doc_id << ":\n" << clusters_to_text(pb.clustered);
    err << target.doc_id << ":\n" << clusters_to_text(pt.clustered);
  }
  const PairAnalysis a = analyze_pair(pb.clustered, pt.clustered, emb, cfg);
  if (o.debug_sim) err << similarity_to_json(a.cells, pb.clustered, pt.clustered, cfg.similarity);

  json mappings = json::array();
  for (const Mapping& m : a.mappings)
    mappings.push_back(mapping_to_json(m, pb.clustered, pt.clustered));
  json doc{{"metadata", metadata(cfg, "map")},
           {"base_doc", base.doc_id},
           {"target_doc", target.doc_id},
           {"mappings", std::move(mappings)}};
  write_text(o.out, doc.dump(2) + "\n", out);

  if (!o.graph.empty()) {
    const Mapping empty;
    const Mapping& top = a.mappings.empty() ? empty : a.mappings.front();
    write_text(o.graph, to_dot(render_mapping(top, pb.clustered, pt.clustered)), out);
  }
  return kOk;
}

struct MineCliOptions {
  CommonOptions common;
  std::string corpus, out;
  int jobs = 1;
  bool quiet = false;
};

int cmd_mine(const MineCliOptions& o, std::ostream& out, std::ostream& err) {
  const EngineConfig cfg = resolve_config(o.common);
  std::vector<DocumentExtraction> corpus = load_corpus(o.corpus);
  if (corpus.size() < 2)
    throw ValidationError("need >= 2 documents in " + o.corpus + " (found " +
                          std::to_string(corpus.size()) + ")");
  // Coverage gaps are reported per document by mine() instead of aborting.
  const EmbeddingTable emb = load_embeddings(o.common.embeddings);
  MineOptions mo;
  mo.jobs = o.jobs;
  if (!o.quiet) {
    mo.on_pair = [&err](std::size_t done, std::size_t total, const RankedPair& r) {
      err << "[" << done << "/" << total << "] " << r.base_doc << " x " << r.target_doc
          << " score=" << format_double(r.analogy_score) << "\n";
    };
  }
  mo.on_error = [&err](const std::string& msg) { err << "warning: " << msg << " (scored 0)\n"; };
  const auto ranking = mine(std::move(corpus), emb, cfg, mo);
  write_text(o.out, ranking_to_csv(ranking, metadata_comment(cfg)), out);
  return kOk;
}

struct EvalRankOptions {
  std::string ranking, labels, out;
  std::vector<int> ks{1, 5, 10, 25};
};

int cmd_eval_rank(const EvalRankOptions& o, std::ostream& out) {
  const auto ks = parse_ks(o.ks);
  const std::string ranking_text = read_text(o.ranking, "ranking");
  const auto ranking = parse_ranking_csv(ranking_text);
  const LabelSet labels = parse_labels_csv(read_text(o.labels, "labels"));
  json metrics = json::array();
  for (int k : ks) {
    const auto top = top_k_labels(ranking, labels, k);
    metrics.push_back({{"k", k},
                       {"precision", precision_at_k(top, k)},
                       {"average_precision", average_precision_at_k(top, k)},
                       {"ndcg", ndcg_at_k(top, k)}});
  }
  json source = nullptr;
  if (ranking_text.rfind("# ", 0) == 0)
    source = ranking_text.substr(2, ranking_text.find('\n') - 2);
  json doc{{"metadata",
            {{"engine", kEngineName},
             {"version", kEngineVersion},
             {"command", "eval-rank"},
             {"ranking_metadata", source}}},
           {"pairs_ranked", ranking.size()},
           {"metrics", std::move(metrics)}};
  write_text(o.out, doc.dump(2) + "\n", out);
  return kOk;
}

struct EvalMapOptions {
  std::string pred, gold, out;
  std::vector<int> ks{1, 3};
};

int cmd_eval_map(const EvalMapOptions& o, std::ostream& out) {
  const auto ks = parse_ks(o.ks);
  const auto pred = parse_predictions_json(read_text(o.pred, "prediction"));
  const GoldMapping gold = parse_gold_json(read_text(o.gold, "gold mapping"));
  json metrics = json::array();
  for (int k : ks) {
    const Prf prf = mapping_prf_at_k(pred, gold, k);
    metrics.push_back(
        {{"k", k}, {"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1}});
  }
  json pred_meta = nullptr;
  try {
    const json p = json::parse(read_text(o.pred, "prediction"));
    if (p.is_object() && p.contains("metadata")) pred_meta = p["metadata"];
  } catch (const json::exception&) {
  }
  json doc{{"metadata",
            {{"engine", kEngineName},
             {"version", kEngineVersion},
             {"command", "eval-map"},
             {"prediction_metadata", pred_meta}}},
           {"gold_pairs", gold.pairs.size()},
           {"metrics", std::move(metrics)}};
  write_text(o.out, doc.dump(2) + "\n", out);
  return kOk;
}

struct DebugOptions {
  CommonOptions common;
  std::string base, target;
};

int cmd_debug_filter(const DebugOptions& o, std::ostream& out) {
  const EngineConfig cfg = resolve_config(o.common);
  const DocumentExtraction doc = load_document(o.base);
  out << rejections_to_jsonl(doc.doc_id, filter_document(doc, cfg.filter).rejections);
  return kOk;
}

int cmd_debug_clusters(const DebugOptions& o, std::ostream& out) {
  const EngineConfig cfg = resolve_config(o.common);
  const DocumentExtraction doc = load_document(o.base);
  const EmbeddingTable emb = load_for({&doc}, o.common, cfg);
  out << clusters_to_text(prepare_document(doc, emb, cfg).clustered);
  return kOk;
}

int cmd_debug_sim(const DebugOptions& o, std::ostream& out) {
  const EngineConfig cfg = resolve_config(o.common);
  const DocumentExtraction base = load_document(o.base);
  const DocumentExtraction target = load_document(o.target);
  const EmbeddingTable emb = load_for({&base, &target}, o.common, cfg);
  const auto pb = prepare_document(base, emb, cfg).clustered;
  const auto pt = prepare_document(target, emb, cfg).clustered;
  out << similarity_to_json(similarity_matrix(pb, pt, emb, cfg.similarity), pb, pt,
                            cfg.similarity);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analogical mapping between procedural texts, and corpus analogy mining."};
  app.name(args.empty() ? "analogy" : args.front());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kEngineVersion));

  MapOptions map_o;
  auto* map = app.add_subcommand("map", "Find the top-k entity mappings between two documents");
  map->add_option("base", map_o.base, "Base document JSON")->required();
  map->add_option("target", map_o.target, "Target document JSON")->required();
  add_common(map, map_o.common, true, true);
  map->add_option("-o,--out", map_o.out, "Mapping JSON output (default stdout)");
  map->add_option("--graph", map_o.graph, "Write the top mapping as a DOT graph");
  map->add_flag("--debug-filter", map_o.debug_filter, "Dump filter rejections to stderr");
  map->add_flag("--debug-clusters", map_o.debug_clusters, "Dump entity clusters to stderr");
  map->add_flag("--debug-sim", map_o.debug_sim, "Dump the similarity matrix to stderr");

  MineCliOptions mine_o;
  auto* mine_cmd = app.add_subcommand("mine", "Rank every document pair of a corpus");
  mine_cmd->add_option("corpus", mine_o.corpus, "Directory of document JSON files")->required();
  add_common(mine_cmd, mine_o.common, true, true);
  mine_cmd->add_option("-o,--out", mine_o.out, "Ranking CSV output (default stdout)");
  mine_cmd->add_option("-j,--jobs", mine_o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  mine_cmd->add_flag("-q,--quiet", mine_o.quiet, "Do not log per-pair progress");

  EvalRankOptions rank_o;
  auto* rank = app.add_subcommand("eval-rank", "P@k, AP@k and NDCG@k of a ranking");
  rank->add_option("--ranking", rank_o.ranking, "Ranking CSV from mine")->required();
  rank->add_option("--labels", rank_o.labels, "Labels CSV")->required();
  rank->add_option("-k,--k", rank_o.ks, "Cutoffs")->delimiter(',');
  rank->add_option("-o,--out", rank_o.out, "Report JSON output (default stdout)");

  EvalMapOptions emap_o;
  auto* emap = app.add_subcommand("eval-map", "Mapping precision/recall/F1 against gold");
  emap->add_option("--pred", emap_o.pred, "Mapping JSON from map")->required();
  emap->add_option("--gold", emap_o.gold, "Gold mapping JSON")->required();
  emap->add_option("-k,--k", emap_o.ks, "Cutoffs")->delimiter(',');
  emap->add_option("-o,--out", emap_o.out, "Report JSON output (default stdout)");

  auto* debug = app.add_subcommand("debug", "Intermediate dumps");
  debug->require_subcommand(1);
  DebugOptions dfilter_o, dclusters_o, dsim_o;
  auto* dfilter = debug->add_subcommand("filter", "Filter rejection log (JSON lines)");
  dfilter->add_option("doc", dfilter_o.base, "Document JSON")->required();
  dfilter->add_option("-c,--config", dfilter_o.common.config, "Engine config JSON");
  auto* dclusters = debug->add_subcommand("clusters", "Entity clusters");
  dclusters->add_option("doc", dclusters_o.base, "Document JSON")->required();
  add_common(dclusters, dclusters_o.common, true, false);
  auto* dsim = debug->add_subcommand("sim", "Similarity matrix with matches (JSON)");
  dsim->add_option("base", dsim_o.base, "Base document JSON")->required();
  dsim->add_option("target", dsim_o.target, "Target document JSON")->required();
  add_common(dsim, dsim_o.common, true, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (*map) return cmd_map(map_o, out, err);
    if (*mine_cmd) return cmd_mine(mine_o, out, err);
    if (*rank) return cmd_eval_rank(rank_o, out);
    if (*emap) return cmd_eval_map(emap_o, out);
    if (*dfilter) return cmd_debug_filter(dfilter_o, out);
    if (*dclusters) return cmd_debug_clusters(dclusters_o, out);
    if (*dsim) return cmd_debug_sim(dsim_o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace analogy::cli
