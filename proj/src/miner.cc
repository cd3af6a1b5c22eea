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

#include "analogy/miner.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "analogy/errors.h"
#include "analogy/pipeline.h"

namespace analogy {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("ranking line " + std::to_string(line) + ": bad number \"" + s + "\"");
  return v;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = end + 1;
  }
  return out;
}

}  // namespace

double median(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double median_total(const Mapping& m) {
  std::vector<double> totals;
  for (const MappedPair& p : m.pairs) totals.push_back(p.total);
  return median(totals);
}

double analogy_score(const Mapping& m) {
  return static_cast<double>(m.pairs.size()) * median_total(m);
}

std::vector<RankedPair> mine(std::vector<DocumentExtraction> corpus,
                             const EmbeddingTable& embeddings, const EngineConfig& cfg,
                             const MineOptions& options) {
  cfg.validate();
  if (corpus.size() < 2) throw ValidationError("need >= 2 documents to mine");
  std::sort(corpus.begin(), corpus.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  for (std::size_t i = 1; i < corpus.size(); ++i)
    if (corpus[i].doc_id == corpus[i - 1].doc_id)
      throw ValidationError("duplicate doc_id \"" + corpus[i].doc_id + "\"");

  std::mutex mu;
  auto report_error = [&](const std::string& msg) {
    if (!options.on_error) return;
    std::lock_guard lock(mu);
    options.on_error(msg);
  };

  // Filtering and clustering depend on one document only.
  std::vector<std::optional<ClusteredDocument>> prepared(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      prepared[i] = prepare_document(corpus[i], embeddings, cfg).clustered;
    } catch (const Error& e) {
      report_error(corpus[i].doc_id + ": " + e.what());
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> jobs_list;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j) jobs_list.emplace_back(i, j);

  std::vector<RankedPair> ranking(jobs_list.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs_list.size()) return;
      const auto [i, j] = jobs_list[k];
      RankedPair rp{corpus[i].doc_id, corpus[j].doc_id, 0.0, 0, 0.0};
      if (prepared[i] && prepared[j]) {
        try {
          PairAnalysis a = analyze_pair(*prepared[i], *prepared[j], embeddings, cfg);
          if (!a.mappings.empty()) {
            const Mapping& top = a.mappings.front();
            rp.mapping_size = static_cast<int>(top.pairs.size());
            rp.median_total = median_total(top);
            rp.analogy_score = rp.mapping_size * rp.median_total;
          }
        } catch (const Error& e) {
          report_error(rp.base_doc + " x " + rp.target_doc + ": " + e.what());
          rp = {corpus[i].doc_id, corpus[j].doc_id, 0.0, 0, 0.0};
        }
      }
      ranking[k] = rp;
      if (options.on_pair) {
        std::lock_guard lock(mu);
        options.on_pair(++done, jobs_list.size(), ranking[k]);
      }
    }
  };

  const int n_threads = std::max(1, options.jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  }

  std::sort(ranking.begin(), ranking.end(), [](const RankedPair& a, const RankedPair& b) {
    if (a.analogy_score != b.analogy_score) return a.analogy_score > b.analogy_score;
    if (a.base_doc != b.base_doc) return a.base_doc < b.base_doc;
    return a.target_doc < b.target_doc;
  });
  return ranking;
}

std::vector<DocumentExtraction> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw ParseError("corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<DocumentExtraction> docs;
  for (const auto& f : files) docs.push_back(load_document(f));
  std::sort(docs.begin(), docs.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return docs;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string ranking_to_csv(const std::vector<RankedPair>& ranking, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  out += "base_doc,target_doc,analogy_score,mapping_size,median_total\n";
  for (const RankedPair& r : ranking) {
    out += csv_field(r.base_doc) + "," + csv_field(r.target_doc) + "," +
           format_double(r.analogy_score) + "," + std::to_string(r.mapping_size) + "," +
           format_double(r.median_total) + "\n";
  }
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  return fields;
}

std::vector<RankedPair> parse_ranking_csv(std::string_view text) {
  std::vector<RankedPair> out;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view line : lines_of(text)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto f = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      if (f.size() >= 2 && f[0] == "base_doc") continue;
    }
    if (f.size() != 5)
      throw ParseError("ranking line " + std::to_string(line_no) + ": expected 5 fields");
    RankedPair r;
    r.base_doc = f[0];
    r.target_doc = f[1];
    r.analogy_score = parse_double(f[2], line_no);
    r.mapping_size = static_cast<int>(parse_double(f[3], line_no));
    r.median_total = parse_double(f[4], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace analogy
