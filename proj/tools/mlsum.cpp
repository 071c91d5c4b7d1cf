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

// mlsum: summarize | evaluate | dump-graph over a corpus directory.
//
// Exit codes: 0 success, 1 runtime or config error, 2 unusable corpus
// path, 3 references missing for evaluate.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mlsum/corpus_io.hpp"
#include "mlsum/evaluation.hpp"
#include "mlsum/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitError = 1;
constexpr int kExitCorpus = 2;
constexpr int kExitNoReferences = 3;

struct ExitError : std::runtime_error {
  ExitError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct RunConfig {
  std::string corpus;
  std::string lang;  // empty: per-cluster manifest language
  std::string stopwords;
  std::string lemmas;
  std::vector<double> alphas;
  std::vector<double> rs;
  std::vector<std::string> measures;
  std::vector<std::string> ards;
  std::size_t h = 2;
  std::string budget;
  std::string out = "out";
  std::size_t jobs = 0;  // 0: hardware concurrency
  bool dump_sim = false;
  bool dump_graph = false;
  bool dump_scores = false;
  std::string dead_ends = "renormalize";
  std::string absorption = "absorb";
  std::string aggregation = "mean";
  double l2 = 0.1;
};

// Raw flag values; only those actually given on the command line override
// the config file.
struct FlagValues {
  std::string config;
  RunConfig cfg;
  std::map<std::string, CLI::Option*> opts;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto t = mlsum::detail::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(mlsum::detail::parse_double(item, key));
  return out;
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw mlsum::InvalidParameter("config key " + key + ": expected a boolean, got '" + s + "'");
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::string text;
  try {
    text = mlsum::read_text_file(path);
  } catch (const mlsum::Error& e) {
    throw ExitError(kExitError, std::string("cannot read config file: ") + e.what());
  }
  for (const auto& [key, value] : mlsum::parse_key_values(text, path)) {
    if (key == "corpus") cfg.corpus = value;
    else if (key == "lang") cfg.lang = value;
    else if (key == "stopwords") cfg.stopwords = value;
    else if (key == "lemmas") cfg.lemmas = value;
    else if (key == "alpha") cfg.alphas = split_doubles(value, key);
    else if (key == "r") cfg.rs = split_doubles(value, key);
    else if (key == "measure") cfg.measures = split_list(value);
    else if (key == "ard") cfg.ards = split_list(value);
    else if (key == "h") cfg.h = static_cast<std::size_t>(mlsum::detail::parse_double(value, key));
    else if (key == "budget") cfg.budget = value;
    else if (key == "out") cfg.out = value;
    else if (key == "jobs") cfg.jobs = static_cast<std::size_t>(mlsum::detail::parse_double(value, key));
    else if (key == "dump-sim") cfg.dump_sim = parse_bool(value, key);
    else if (key == "dump-graph") cfg.dump_graph = parse_bool(value, key);
    else if (key == "dump-scores") cfg.dump_scores = parse_bool(value, key);
    else if (key == "dead-ends") cfg.dead_ends = value;
    else if (key == "absorption") cfg.absorption = value;
    else if (key == "aggregation") cfg.aggregation = value;
    else if (key == "l2") cfg.l2 = mlsum::detail::parse_double(value, key);
    else throw mlsum::InvalidParameter("unknown config key '" + key + "' in " + path);
  }
}

void add_options(CLI::App& app, FlagValues& f) {
  auto& c = f.cfg;
  auto& o = f.opts;
  app.set_help_flag("--help", "print this help and exit");  // keeps --h free for the walk length
  app.add_option("--config", f.config, "key = value config file (flags win)");
  o["corpus"] = app.add_option("--corpus", c.corpus, "corpus directory (one subdirectory per cluster)");
  o["lang"] = app.add_option("--lang", c.lang, "language: en | pt (default: cluster manifest)");
  o["stopwords"] = app.add_option("--stopwords", c.stopwords, "extra stopword file, one per line");
  o["lemmas"] = app.add_option("--lemmas", c.lemmas, "extra lemma file, surface<TAB>lemma");
  o["alpha"] = app.add_option("--alpha", c.alphas, "inter-layer weight(s)")->delimiter(',');
  o["r"] = app.add_option("--r", c.rs, "edge removal fraction(s)")->delimiter(',');
  o["measure"] = app.add_option("--measure", c.measures, "measure id(s)")->delimiter(',');
  o["ard"] = app.add_option("--ard", c.ards, "anti-redundancy: AR1 | AR2 | none")->delimiter(',');
  o["h"] = app.add_option("--h", c.h, "walk length for access and sym");
  o["budget"] = app.add_option("--budget", c.budget, "override budget: words:N | chars:N | compression:R");
  o["out"] = app.add_option("--out", c.out, "output directory");
  o["jobs"] = app.add_option("--jobs", c.jobs, "parallel clusters (default: cores)");
  o["dump-sim"] = app.add_flag("--dump-sim", c.dump_sim, "write cosine matrices");
  o["dump-graph"] = app.add_flag("--dump-graph", c.dump_graph, "write edge lists");
  o["dump-scores"] = app.add_flag("--dump-scores", c.dump_scores, "write per-node scores");
  o["dead-ends"] = app.add_option("--dead-ends", c.dead_ends, "SAW dead ends: renormalize | credit");
  o["absorption"] = app.add_option("--absorption", c.absorption, "absT reading: absorb | start");
  o["aggregation"] = app.add_option("--aggregation", c.aggregation, "ROUGE over references: mean | max");
  o["l2"] = app.add_option("--l2", c.l2, "AR2 threshold");
}

// Config file first, then every flag that was given.
RunConfig resolve(const FlagValues& f) {
  RunConfig cfg;
  if (!f.config.empty()) apply_config_file(f.config, cfg);
  const auto given = [&f](const char* key) { return f.opts.at(key)->count() > 0; };
  const auto& c = f.cfg;
  if (given("corpus")) cfg.corpus = c.corpus;
  if (given("lang")) cfg.lang = c.lang;
  if (given("stopwords")) cfg.stopwords = c.stopwords;
  if (given("lemmas")) cfg.lemmas = c.lemmas;
  if (given("alpha")) cfg.alphas = c.alphas;
  if (given("r")) cfg.rs = c.rs;
  if (given("measure")) cfg.measures = c.measures;
  if (given("ard")) cfg.ards = c.ards;
  if (given("h")) cfg.h = c.h;
  if (given("budget")) cfg.budget = c.budget;
  if (given("out")) cfg.out = c.out;
  if (given("jobs")) cfg.jobs = c.jobs;
  if (given("dump-sim")) cfg.dump_sim = c.dump_sim;
  if (given("dump-graph")) cfg.dump_graph = c.dump_graph;
  if (given("dump-scores")) cfg.dump_scores = c.dump_scores;
  if (given("dead-ends")) cfg.dead_ends = c.dead_ends;
  if (given("absorption")) cfg.absorption = c.absorption;
  if (given("aggregation")) cfg.aggregation = c.aggregation;
  if (given("l2")) cfg.l2 = c.l2;
  if (cfg.corpus.empty()) throw ExitError(kExitError, "no corpus given (--corpus or config key 'corpus')");
  if (cfg.jobs == 0) cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  return cfg;
}

mlsum::WalkParams walk_params(const RunConfig& cfg) {
  mlsum::WalkParams p;
  p.h = cfg.h;
  if (cfg.dead_ends == "renormalize") p.dead_ends = mlsum::DeadEndPolicy::kRenormalize;
  else if (cfg.dead_ends == "credit") p.dead_ends = mlsum::DeadEndPolicy::kCreditTerminal;
  else throw mlsum::InvalidParameter("dead-ends must be renormalize or credit");
  if (cfg.absorption == "absorb") p.absorption = mlsum::AbsorptionReading::kAbsorbAtNode;
  else if (cfg.absorption == "start") p.absorption = mlsum::AbsorptionReading::kStartAtNode;
  else throw mlsum::InvalidParameter("absorption must be absorb or start");
  mlsum::validate(p);
  return p;
}

mlsum::RedundancyConfig redundancy(const RunConfig& cfg, mlsum::RedundancyMethod m) {
  mlsum::RedundancyConfig red;
  red.method = m;
  red.l2 = cfg.l2;
  mlsum::validate(red);
  return red;
}

std::vector<mlsum::Cluster> load(const RunConfig& cfg) {
  if (!fs::is_directory(cfg.corpus)) {
    throw ExitError(kExitCorpus, "corpus path '" + cfg.corpus + "' is not a readable directory");
  }
  try {
    auto clusters = mlsum::load_corpus(cfg.corpus);
    if (!cfg.budget.empty()) {
      const auto b = mlsum::parse_budget(cfg.budget);
      for (auto& c : clusters) c.budget = b;
    }
    return clusters;
  } catch (const mlsum::IoError& e) {
    throw ExitError(kExitCorpus, "corpus path '" + cfg.corpus + "': " + e.what());
  } catch (const mlsum::EmptyCorpus& e) {
    throw ExitError(kExitCorpus, "corpus path '" + cfg.corpus + "': " + e.what());
  }
}

std::vector<mlsum::PreparedCluster> prepare(const RunConfig& cfg, std::vector<mlsum::Cluster> clusters) {
  std::map<std::string, mlsum::LanguageResources> by_lang;
  std::vector<mlsum::PreparedCluster> out;
  for (auto& c : clusters) {
    const std::string lang = cfg.lang.empty() ? c.language : cfg.lang;
    auto it = by_lang.find(lang);
    if (it == by_lang.end()) {
      auto res = mlsum::LanguageResources::builtin(lang);
      if (!cfg.stopwords.empty()) res.load_stopwords(cfg.stopwords);
      if (!cfg.lemmas.empty()) res.load_lemmas(cfg.lemmas);
      it = by_lang.emplace(lang, std::move(res)).first;
    }
    const std::string id = c.id;
    try {
      out.push_back(mlsum::prepare_cluster(std::move(c), it->second));
    } catch (const mlsum::Error& e) {
      throw ExitError(kExitError, "cluster " + id + ": " + e.what());
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw mlsum::IoError("cannot write " + path.string());
  os << content;
}

template <typename Fn>
void write_with(const fs::path& path, Fn&& fn) {
  std::ostringstream os;
  fn(os);
  write_file(path, os.str());
}

mlsum::SweepGrid grid_from(const RunConfig& cfg, const mlsum::SweepGrid& fallback) {
  mlsum::SweepGrid g = fallback;
  if (!cfg.alphas.empty()) g.alphas = cfg.alphas;
  if (!cfg.rs.empty()) g.rs = cfg.rs;
  if (!cfg.measures.empty()) g.measures = cfg.measures;
  if (!cfg.ards.empty()) {
    g.ards.clear();
    for (const auto& a : cfg.ards) g.ards.push_back(mlsum::parse_redundancy(a));
  }
  mlsum::validate(g);
  return g;
}

void dump_cluster(const RunConfig& cfg, const mlsum::PreparedCluster& pc, const mlsum::SweepGrid& grid,
                  const mlsum::WalkParams& params, bool graphs) {
  const fs::path dir = fs::path(cfg.out) / "dumps" / pc.cluster.id;
  if (cfg.dump_sim) {
    write_with(dir / "similarity.csv", [&](std::ostream& os) { mlsum::write_similarity_csv(os, pc.similarity); });
  }
  if (!graphs && !cfg.dump_scores) return;
  for (double alpha : grid.alphas) {
    const auto ag = mlsum::apply_alpha(pc.base_graph, alpha);
    const std::string a = "a" + fixed2(alpha);
    if (graphs) write_with(dir / ("graph__" + a + ".csv"), [&](std::ostream& os) { mlsum::write_edge_csv(os, ag); });
    for (double r : grid.rs) {
      const auto rg = mlsum::remove_weakest(ag, r);
      const std::string rr = "r" + fixed2(r);
      if (graphs) {
        write_with(dir / ("graph__" + a + "__" + rr + ".csv"),
                   [&](std::ostream& os) { mlsum::write_edge_csv(os, rg); });
      }
      if (!cfg.dump_scores) continue;
      for (const auto& m : grid.measures) {
        const bool needs_r = mlsum::measure_spec(m).needs_r;
        if (!needs_r && r != grid.rs.front()) continue;
        const auto res = mlsum::score_measure(m, ag, &rg, params);
        const std::string name = "scores__" + m + "__" + a + "__" + (needs_r ? rr : std::string("r--")) + ".csv";
        write_with(dir / name, [&](std::ostream& os) { mlsum::write_scores_csv(os, res); });
      }
    }
  }
}

int cmd_summarize(const RunConfig& cfg) {
  mlsum::SweepGrid defaults;
  defaults.alphas = {1.0};
  defaults.rs = {0.2};
  defaults.measures = {"dg"};
  defaults.ards = {mlsum::RedundancyMethod::kAR1};
  const auto grid = grid_from(cfg, defaults);
  const auto params = walk_params(cfg);
  const auto clusters = prepare(cfg, load(cfg));

  const fs::path out = cfg.out;
  std::ostringstream index;
  index << "cluster,measure,alpha,r,ard,file,selected,budget_used\n";
  std::size_t written = 0;
  std::size_t failed = 0;
  for (const auto& pc : clusters) {
    dump_cluster(cfg, pc, grid, params, cfg.dump_graph);
    const auto ctx = pc.selection_context();
    for (const auto& m : grid.measures) {
      const bool needs_r = mlsum::measure_spec(m).needs_r;
      for (double alpha : grid.alphas) {
        const auto ag = mlsum::apply_alpha(pc.base_graph, alpha);
        for (std::size_t ri = 0; ri < grid.rs.size(); ++ri) {
          if (!needs_r && ri > 0) break;
          const double r = grid.rs[ri];
          const std::string r_label = needs_r ? fixed2(r) : "--";
          for (auto ard : grid.ards) {
            const std::string name = pc.cluster.id + "__" + m + "__a" + fixed2(alpha) + "__r" + r_label +
                                     "__" + mlsum::to_string(ard) + ".txt";
            try {
              std::optional<mlsum::MultilayerGraph> rg;
              if (needs_r) rg = mlsum::remove_weakest(ag, r);
              const auto ranking = mlsum::score_measure(m, ag, rg ? &*rg : nullptr, params);
              const auto s = mlsum::select(ctx, ranking, pc.cluster.budget, redundancy(cfg, ard), pc.cluster.id);
              write_file(out / "summaries" / name, s.text + "\n");
              std::string ids;
              for (auto id : s.selected) ids += (ids.empty() ? "" : " ") + std::to_string(id);
              index << pc.cluster.id << ',' << m << ',' << fixed2(alpha) << ',' << r_label << ','
                    << mlsum::to_string(ard) << ",summaries/" << name << ',' << ids << ',' << s.budget_used << '\n';
              ++written;
            } catch (const mlsum::Error& e) {
              std::cerr << "mlsum: " << name << ": " << e.what() << '\n';
              ++failed;
            }
          }
        }
      }
    }
  }
  write_file(out / "index.csv", index.str());
  std::cout << "summarize: " << written << " summaries, " << failed << " failed, " << clusters.size()
            << " clusters -> " << (out / "index.csv").string() << '\n';
  return failed == 0 ? 0 : kExitError;
}

int cmd_evaluate(const RunConfig& cfg) {
  const auto grid = grid_from(cfg, mlsum::SweepGrid::defaults());
  const auto params = walk_params(cfg);
  auto raw = load(cfg);
  for (const auto& c : raw) {
    if (c.references.empty()) {
      throw ExitError(kExitNoReferences, "cluster " + c.id + " has no reference summaries in refs/");
    }
  }
  const auto clusters = prepare(cfg, std::move(raw));
  for (const auto& pc : clusters) dump_cluster(cfg, pc, grid, params, cfg.dump_graph);

  mlsum::SweepOptions opts;
  opts.jobs = cfg.jobs;
  opts.ar2 = redundancy(cfg, mlsum::RedundancyMethod::kAR2);
  if (cfg.aggregation == "mean") opts.aggregation = mlsum::ReferenceAggregation::kMean;
  else if (cfg.aggregation == "max") opts.aggregation = mlsum::ReferenceAggregation::kMax;
  else throw mlsum::InvalidParameter("aggregation must be mean or max");
  const auto report = mlsum::run_sweep(clusters, grid, params, opts);

  const fs::path out = cfg.out;
  write_with(out / "report.csv", [&](std::ostream& os) { mlsum::write_report_csv(os, report); });
  write_with(out / "best.csv", [&](std::ostream& os) { mlsum::write_best_csv(os, report); });
  write_with(out / "correlations.csv",
             [&](std::ostream& os) { mlsum::write_correlations_csv(os, report.correlations); });
  for (const auto& m : grid.measures) {
    write_with(out / "curves" / (m + ".csv"), [&](std::ostream& os) { mlsum::write_curve_csv(os, report, m); });
  }
  std::size_t skipped = 0;
  for (const auto& row : report.rows) skipped += row.errors.size();
  const auto best = mlsum::best_rows(report);
  std::cout << "evaluate: " << report.rows.size() << " cells x " << clusters.size() << " clusters, " << skipped
            << " skipped; best " << best.front().measure << " rg1=" << mlsum::detail::fmt(best.front().mean, 4)
            << " -> " << (out / "report.csv").string() << '\n';
  return 0;
}

int cmd_dump_graph(const RunConfig& cfg) {
  mlsum::SweepGrid defaults;
  defaults.alphas = {1.0};
  defaults.rs = {0.0};
  defaults.measures = mlsum::all_measure_ids();
  defaults.ards = {mlsum::RedundancyMethod::kNone};
  const auto grid = grid_from(cfg, defaults);
  const auto params = walk_params(cfg);
  const auto clusters = prepare(cfg, load(cfg));
  for (const auto& pc : clusters) dump_cluster(cfg, pc, grid, params, true);
  std::cout << "dump-graph: " << clusters.size() << " clusters -> " << (fs::path(cfg.out) / "dumps").string()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilayer-network extractive multi-document summarizer"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  FlagValues summarize_flags;
  FlagValues evaluate_flags;
  FlagValues dump_flags;
  auto* summarize = app.add_subcommand("summarize", "write one summary per (measure, alpha, r, ard)");
  auto* evaluate = app.add_subcommand("evaluate", "ROUGE-1 sweep: report.csv, best.csv, correlations.csv");
  auto* dump = app.add_subcommand("dump-graph", "write edge lists (and optional scores) per cluster");
  add_options(*summarize, summarize_flags);
  add_options(*evaluate, evaluate_flags);
  add_options(*dump, dump_flags);
  CLI11_PARSE(app, argc, argv);

  try {
    if (summarize->parsed()) return cmd_summarize(resolve(summarize_flags));
    if (evaluate->parsed()) return cmd_evaluate(resolve(evaluate_flags));
    return cmd_dump_graph(resolve(dump_flags));
  } catch (const ExitError& e) {
    std::cerr << "mlsum: " << e.what() << '\n';
    return e.code;
  } catch (const mlsum::InvalidReference& e) {
    std::cerr << "mlsum: " << e.what() << '\n';
    return kExitNoReferences;
  } catch (const std::exception& e) {
    std::cerr << "mlsum: " << e.what() << '\n';
    return kExitError;
  }
}
