// Copyright 2026 The mlsum Authors
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

// ROUGE-1 recall, the (alpha, r) parameter sweep and Spearman correlation
// between measures.

#ifndef MLSUM_EVALUATION_HPP_
#define MLSUM_EVALUATION_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "mlsum/centrality.hpp"
#include "mlsum/errors.hpp"
#include "mlsum/pipeline.hpp"
#include "mlsum/summarizer.hpp"
#include "mlsum/utf8.hpp"

namespace mlsum {

/// Lowercased runs of letters/digits. No stemming, no stopword removal.
inline std::vector<std::string> rouge_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::u32string cur;
  for (char32_t c : utf8::to_u32(text)) {
    if (utf8::is_alnum(c)) {
      cur.push_back(utf8::to_lower(c));
    } else if (!cur.empty()) {
      out.push_back(utf8::from_u32(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(utf8::from_u32(cur));
  return out;
}

enum class ReferenceAggregation { kMean, kMax };

/// Clipped unigram recall against each reference, aggregated by mean
/// (default) or max.
inline double rouge1_recall(std::string_view candidate, const std::vector<std::string>& references,
                            ReferenceAggregation agg = ReferenceAggregation::kMean) {
  if (references.empty()) throw InvalidReference("rouge1_recall needs at least one reference");
  std::map<std::string, std::size_t> cand_counts;
  for (auto& t : rouge_tokens(candidate)) ++cand_counts[t];
  double total = 0.0;
  double best = 0.0;
  for (const auto& ref : references) {
    std::map<std::string, std::size_t> ref_counts;
    std::size_t ref_len = 0;
    for (auto& t : rouge_tokens(ref)) {
      ++ref_counts[t];
      ++ref_len;
    }
    if (ref_len == 0) throw InvalidReference("reference summary has no words");
    std::size_t hit = 0;
    for (const auto& [tok, n] : ref_counts) {
      auto it = cand_counts.find(tok);
      if (it != cand_counts.end()) hit += std::min(n, it->second);
    }
    const double recall = static_cast<double>(hit) / static_cast<double>(ref_len);
    total += recall;
    best = std::max(best, recall);
  }
  return agg == ReferenceAggregation::kMean ? total / static_cast<double>(references.size()) : best;
}

// ---------------------------------------------------------------- Spearman

/// Average ranks (1-based) with ties sharing their mean rank.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

/// Tie-corrected Spearman rho (Pearson on average ranks). nullopt when
/// either vector is constant.
inline std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InvalidInput("spearman: size mismatch");
  const std::size_t n = a.size();
  if (n < 2) return std::nullopt;
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / static_cast<double>(n);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sab += (ra[k] - ma) * (rb[k] - mb);
    saa += (ra[k] - ma) * (ra[k] - ma);
    sbb += (rb[k] - mb) * (rb[k] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> rho;  // missing when undefined
};

/// Spearman matrix over measures, averaged over clusters. `per_cluster[c]`
/// holds one result per measure (same order, same labels) for cluster c.
/// Pairs undefined in every cluster stay missing; the diagonal is 1.
inline CorrelationMatrix spearman_matrix(
    const std::vector<std::vector<CentralityResult>>& per_cluster) {
  CorrelationMatrix out;
  if (per_cluster.empty()) return out;
  const std::size_t m = per_cluster.front().size();
  for (const auto& r : per_cluster.front()) out.labels.push_back(r.measure);
  out.rho.assign(m, std::vector<std::optional<double>>(m));
  for (std::size_t a = 0; a < m; ++a) {
    out.rho[a][a] = 1.0;
    for (std::size_t b = a + 1; b < m; ++b) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& results : per_cluster) {
        if (results.size() != m) throw InvalidInput("spearman_matrix: ragged results");
        if (results[a].size() != results[b].size()) {
          throw InvalidInput("spearman_matrix: results over different node sets");
        }
        if (auto rho = spearman(results[a].scores, results[b].scores)) {
          sum += *rho;
          ++count;
        }
      }
      if (count > 0) {
        out.rho[a][b] = sum / static_cast<double>(count);
        out.rho[b][a] = out.rho[a][b];
      }
    }
  }
  return out;
}

inline CorrelationMatrix spearman_matrix(const std::vector<CentralityResult>& results) {
  return spearman_matrix(std::vector<std::vector<CentralityResult>>{results});
}

// ------------------------------------------------------------------- Sweep

struct SweepGrid {
  std::vector<double> alphas;
  std::vector<double> rs;
  std::vector<std::string> measures;
  std::vector<RedundancyMethod> ards;

  /// alpha in {0.5, 0.7, ..., 1.9}, r in {0.1, ..., 0.5}, all measures,
  /// AR1 and AR2.
  static SweepGrid defaults() {
    SweepGrid g;
    g.alphas = alpha_range(0.5, 1.9, 0.2);
    g.rs = {0.1, 0.2, 0.3, 0.4, 0.5};
    g.measures = all_measure_ids();
    g.ards = {RedundancyMethod::kAR1, RedundancyMethod::kAR2};
    return g;
  }

  /// Inclusive range with values rounded to 1e-9 so that step accumulation
  /// does not leak into file names and CSV cells.
  static std::vector<double> alpha_range(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw InvalidParameter("bad alpha range");
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
      const double v = std::round((lo + step * static_cast<double>(k)) * 1e9) / 1e9;
      if (v > hi + 1e-9) break;
      out.push_back(v);
    }
    return out;
  }
};

inline void validate(const SweepGrid& g) {
  if (g.alphas.empty() || g.rs.empty() || g.measures.empty() || g.ards.empty()) {
    throw InvalidParameter("sweep grid lists must be non-empty");
  }
  for (double a : g.alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("alpha values must be > 0");
  }
  for (double r : g.rs) {
    if (!(r >= 0.0 && r < 1.0)) throw InvalidParameter("r values must lie in [0,1)");
  }
  for (const auto& m : g.measures) measure_spec(m);
}

struct ReportRow {
  std::string measure;
  double alpha = 1.0;
  std::optional<double> r;  // nullopt for measures that ignore r
  RedundancyMethod ard = RedundancyMethod::kAR1;
  double mean = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> per_cluster;  // NaN where the cluster failed
  std::vector<std::string> errors;  // "cluster: reason"

  std::size_t n_ok() const {
    return static_cast<std::size_t>(
        std::count_if(per_cluster.begin(), per_cluster.end(), [](double v) { return !std::isnan(v); }));
  }
};

struct EvaluationReport {
  std::vector<std::string> cluster_ids;
  std::vector<ReportRow> rows;
  CorrelationMatrix correlations;
};

struct SweepOptions {
  std::size_t jobs = 1;
  ReferenceAggregation aggregation = ReferenceAggregation::kMean;
  RedundancyConfig ar2;  // n, gamma, L2 for AR2 cells
  bool correlations = true;
};

namespace detail {

// Row layout: for each measure, for each alpha, for each r (or one slot when
// the measure ignores r), for each ard.
struct CellKey {
  std::size_t measure;
  std::size_t alpha;
  std::optional<std::size_t> r;
  std::size_t ard;
};

inline std::vector<CellKey> enumerate_cells(const SweepGrid& g) {
  std::vector<CellKey> cells;
  for (std::size_t m = 0; m < g.measures.size(); ++m) {
    const bool needs_r = measure_spec(g.measures[m]).needs_r;
    for (std::size_t a = 0; a < g.alphas.size(); ++a) {
      if (needs_r) {
        for (std::size_t r = 0; r < g.rs.size(); ++r) {
          for (std::size_t d = 0; d < g.ards.size(); ++d) cells.push_back({m, a, r, d});
        }
      } else {
        for (std::size_t d = 0; d < g.ards.size(); ++d) cells.push_back({m, a, std::nullopt, d});
      }
    }
  }
  return cells;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace detail

/// Runs every (measure, alpha, r, ard) cell over every cluster. Per-cluster
/// failures become NaN cells with a recorded reason; the sweep itself only
/// throws on an invalid grid or a cluster without references.
inline EvaluationReport run_sweep(const std::vector<PreparedCluster>& clusters, const SweepGrid& grid,
                                  const WalkParams& params, const SweepOptions& options = {}) {
  validate(grid);
  validate(params);
  for (const auto& pc : clusters) {
    if (pc.cluster.references.empty()) {
      throw InvalidReference("cluster " + pc.cluster.id + " has no reference summaries");
    }
  }
  const auto cells = detail::enumerate_cells(grid);
  const std::size_t n_clusters = clusters.size();

  EvaluationReport report;
  for (const auto& pc : clusters) report.cluster_ids.push_back(pc.cluster.id);
  report.rows.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& row = report.rows[c];
    row.measure = grid.measures[cells[c].measure];
    row.alpha = grid.alphas[cells[c].alpha];
    if (cells[c].r) row.r = grid.rs[*cells[c].r];
    row.ard = grid.ards[cells[c].ard];
    row.per_cluster.assign(n_clusters, std::numeric_limits<double>::quiet_NaN());
  }
  // errors[cluster][cell]
  std::vector<std::vector<std::string>> errors(n_clusters, std::vector<std::string>(cells.size()));

  detail::parallel_for(n_clusters, options.jobs, [&](std::size_t ci) {
    const PreparedCluster& pc = clusters[ci];
    const auto ctx = pc.selection_context();
    const auto summarize_and_score = [&](std::size_t cell, const CentralityResult& ranking) {
      RedundancyConfig red = options.ar2;
      red.method = grid.ards[cells[cell].ard];
      try {
        const Summary s = select(ctx, ranking, pc.cluster.budget, red, pc.cluster.id);
        report.rows[cell].per_cluster[ci] =
            rouge1_recall(s.text, pc.cluster.references, options.aggregation);
      } catch (const Error& e) {
        errors[ci][cell] = e.what();
      }
    };
    const auto fail_all = [&](auto pred, const std::string& why) {
      for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        if (pred(cells[cell])) errors[ci][cell] = why;
      }
    };

    for (std::size_t a = 0; a < grid.alphas.size(); ++a) {
      std::optional<MultilayerGraph> ag;
      try {
        ag = apply_alpha(pc.base_graph, grid.alphas[a]);
      } catch (const Error& e) {
        fail_all([a](const detail::CellKey& k) { return k.alpha == a; }, e.what());
        continue;
      }
      // Measures that ignore r.
      for (std::size_t m = 0; m < grid.measures.size(); ++m) {
        if (measure_spec(grid.measures[m]).needs_r) continue;
        try {
          const auto ranking = score_measure(grid.measures[m], *ag, nullptr, params);
          for (std::size_t cell = 0; cell < cells.size(); ++cell) {
            if (cells[cell].measure == m && cells[cell].alpha == a) summarize_and_score(cell, ranking);
          }
        } catch (const Error& e) {
          fail_all([a, m](const detail::CellKey& k) { return k.alpha == a && k.measure == m; }, e.what());
        }
      }
      for (std::size_t r = 0; r < grid.rs.size(); ++r) {
        const MultilayerGraph rg = remove_weakest(*ag, grid.rs[r]);
        for (std::size_t m = 0; m < grid.measures.size(); ++m) {
          if (!measure_spec(grid.measures[m]).needs_r) continue;
          try {
            const auto ranking = score_measure(grid.measures[m], *ag, &rg, params);
            for (std::size_t cell = 0; cell < cells.size(); ++cell) {
              const auto& k = cells[cell];
              if (k.measure == m && k.alpha == a && k.r == r) summarize_and_score(cell, ranking);
            }
          } catch (const Error& e) {
            fail_all([a, m, r](const detail::CellKey& k) { return k.alpha == a && k.measure == m && k.r == r; },
                     e.what());
          }
        }
      }
    }
  });

  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    auto& row = report.rows[cell];
    double sum = 0.0;
    std::size_t ok = 0;
    for (std::size_t ci = 0; ci < n_clusters; ++ci) {
      if (!errors[ci][cell].empty()) {
        row.errors.push_back(report.cluster_ids[ci] + ": " + errors[ci][cell]);
      } else if (!std::isnan(row.per_cluster[ci])) {
        sum += row.per_cluster[ci];
        ++ok;
      }
    }
    if (ok > 0) row.mean = sum / static_cast<double>(ok);
  }

  if (options.correlations) {
    // Rank correlation between measures, each at its best (alpha, r).
    std::vector<const ReportRow*> best;
    for (const auto& m : grid.measures) {
      const ReportRow* b = nullptr;
      for (const auto& row : report.rows) {
        if (row.measure != m || std::isnan(row.mean)) continue;
        if (b == nullptr || row.mean > b->mean) b = &row;
      }
      best.push_back(b);
    }
    if (std::all_of(best.begin(), best.end(), [](const ReportRow* b) { return b != nullptr; })) {
      std::vector<std::vector<CentralityResult>> per_cluster;
      for (const auto& pc : clusters) {
        std::vector<CentralityResult> results;
        try {
          for (const ReportRow* b : best) {
            const MultilayerGraph ag = apply_alpha(pc.base_graph, b->alpha);
            if (b->r) {
              const MultilayerGraph rg = remove_weakest(ag, *b->r);
              results.push_back(score_measure(b->measure, ag, &rg, params));
            } else {
              results.push_back(score_measure(b->measure, ag, nullptr, params));
            }
          }
        } catch (const Error&) {
          continue;
        }
        per_cluster.push_back(std::move(results));
      }
      report.correlations = spearman_matrix(per_cluster);
    }
    if (report.correlations.labels.empty()) {
      report.correlations.labels = grid.measures;
      report.correlations.rho.assign(grid.measures.size(),
                                     std::vector<std::optional<double>>(grid.measures.size()));
      for (std::size_t k = 0; k < grid.measures.size(); ++k) report.correlations.rho[k][k] = 1.0;
    }
  }
  return report;
}

// ------------------------------------------------------------- CSV output

namespace detail {

inline std::string fmt(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string format_r(const std::optional<double>& r) { return r ? detail::fmt(*r, 2) : "--"; }

/// Every cell: measure,alpha,r,ard,rouge1,n_ok,<one column per cluster>,errors
inline void write_report_csv(std::ostream& os, const EvaluationReport& rep) {
  os << "measure,alpha,r,ard,rouge1,n_ok";
  for (const auto& id : rep.cluster_ids) os << ',' << detail::csv_escape(id);
  os << ",errors\n";
  for (const auto& row : rep.rows) {
    os << row.measure << ',' << detail::fmt(row.alpha, 2) << ',' << format_r(row.r) << ','
       << to_string(row.ard) << ',' << detail::fmt(row.mean, 6) << ',' << row.n_ok();
    for (double v : row.per_cluster) os << ',' << detail::fmt(v, 6);
    std::string errs;
    for (const auto& e : row.errors) errs += (errs.empty() ? "" : "; ") + e;
    os << ',' << detail::csv_escape(errs) << '\n';
  }
}

/// Best cell per measure, ranked by mean ROUGE-1 (ties keep grid order).
inline std::vector<ReportRow> best_rows(const EvaluationReport& rep) {
  std::vector<std::string> order;
  std::map<std::string, const ReportRow*> best;
  for (const auto& row : rep.rows) {
    if (!best.count(row.measure)) {
      order.push_back(row.measure);
      best[row.measure] = nullptr;
    }
    if (std::isnan(row.mean)) continue;
    const ReportRow*& b = best[row.measure];
    if (b == nullptr || row.mean > b->mean) b = &row;
  }
  std::vector<ReportRow> out;
  for (const auto& m : order) {
    if (best[m]) {
      out.push_back(*best[m]);
    } else {
      ReportRow empty;
      empty.measure = m;
      empty.alpha = std::numeric_limits<double>::quiet_NaN();
      out.push_back(empty);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ReportRow& a, const ReportRow& b) {
    if (std::isnan(a.mean) != std::isnan(b.mean)) return std::isnan(b.mean);
    return a.mean > b.mean;
  });
  return out;
}

/// rank,measure,alpha,r,ard,rg1 -- one row per measure.
inline void write_best_csv(std::ostream& os, const EvaluationReport& rep) {
  os << "rank,measure,alpha,r,ard,rg1\n";
  std::size_t rank = 1;
  for (const auto& row : best_rows(rep)) {
    os << rank++ << ',' << row.measure << ',' << detail::fmt(row.alpha, 2) << ','
       << format_r(row.r) << ',' << (std::isnan(row.mean) ? "NA" : to_string(row.ard)) << ','
       << detail::fmt(row.mean, 4) << '\n';
  }
}

inline void write_correlations_csv(std::ostream& os, const CorrelationMatrix& cm) {
  os << "measure";
  for (const auto& l : cm.labels) os << ',' << l;
  os << '\n';
  for (std::size_t a = 0; a < cm.labels.size(); ++a) {
    os << cm.labels[a];
    for (std::size_t b = 0; b < cm.labels.size(); ++b) {
      os << ',' << (cm.rho[a][b] ? detail::fmt(*cm.rho[a][b], 6) : "NA");
    }
    os << '\n';
  }
}

/// ROUGE-1 as a function of alpha for one measure: alpha,r,rouge1, taking
/// the better anti-redundancy method per (alpha, r).
inline void write_curve_csv(std::ostream& os, const EvaluationReport& rep, const std::string& measure) {
  os << "alpha,r,rouge1\n";
  std::vector<std::pair<double, std::optional<double>>> keys;
  std::map<std::pair<double, double>, double> best;
  for (const auto& row : rep.rows) {
    if (row.measure != measure) continue;
    const std::pair<double, double> key{row.alpha, row.r.value_or(-1.0)};
    auto it = best.find(key);
    if (it == best.end()) {
      keys.emplace_back(row.alpha, row.r);
      best[key] = row.mean;
    } else if (std::isnan(it->second) || row.mean > it->second) {
      it->second = row.mean;
    }
  }
  for (const auto& [alpha, r] : keys) {
    os << detail::fmt(alpha, 2) << ',' << format_r(r) << ','
       << detail::fmt(best[{alpha, r.value_or(-1.0)}], 6) << '\n';
  }
}

}  // namespace mlsum

#endif  // MLSUM_EVALUATION_HPP_
