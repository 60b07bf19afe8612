// Copyright 2026 The eco Authors.
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

#include "eco/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eco/completion.h"
#include "eco/corpus_ir.h"
#include "eco/edit_engine.h"
#include "eco/embedding_index.h"
#include "eco/error.h"
#include "eco/eval_harness.h"
#include "eco/pattern_miner.h"
#include "eco/pipeline_config.h"
#include "eco/profile_prune.h"
#include "eco/similarity_rank.h"
#include "eco/unified_diff.h"
#include "eco/verify_bench.h"
#include "json.hpp"

namespace eco {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A flag combination the parser cannot check; reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& why)
      : std::runtime_error(flag + ": " + why) {}
};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) {
  try {
    return json::parse(read_text(p));
  } catch (const json::parse_error& e) {
    throw Error("ParseError", p.string() + ": " + e.what());
  }
}

std::map<std::string, FunctionRecord> records_by_id(const fs::path& p) {
  std::map<std::string, FunctionRecord> out;
  for (FunctionRecord& r : read_records_jsonl(p)) out.emplace(r.id, std::move(r));
  return out;
}

struct Options {
  std::optional<std::string> config_path;
  bool pretty = false;

  // mine
  std::string repo;
  std::optional<std::string> rules;
  std::optional<std::string> feed;
  std::string out_path;
  // extract
  std::vector<std::string> corpus;
  std::optional<std::string> costs;
  // prune
  std::optional<std::string> profile;
  std::optional<double> cmin;
  std::optional<double> cmax;
  std::optional<int> shared_threshold;
  std::optional<std::string> binaries;
  // index, query, rank
  std::string records;
  std::string index_path;
  std::optional<int> partitions;
  std::optional<int> nprobe;
  std::optional<double> min_cost;
  std::optional<std::uint64_t> index_seed;
  std::string query;
  std::optional<int> k;
  std::optional<bool> exact;
  std::optional<bool> ranked;
  int top = 10;
  std::vector<std::string> candidates;
  // gen-edit
  std::optional<std::string> recipe;
  std::optional<std::string> replay;
  std::optional<std::string> endpoint;
  std::optional<std::string> record_path;
  std::optional<int> samples;
  std::optional<double> temperature;
  std::optional<std::string> shots;
  std::optional<int> shot_count;
  std::string category;
  std::string target;
  std::optional<std::string> function;
  bool review = false;
  // verify, bench
  std::string workspace;
  std::string file;
  std::optional<std::string> edited;
  std::optional<std::string> diff;
  std::optional<std::string> build_cmd;
  std::optional<std::string> test_cmd;
  std::optional<std::string> bench_cmd;
  std::optional<int> timeout_s;
  std::optional<int> runs;
  // eval
  std::vector<int> ks = {5, 10, 20};
  std::optional<std::string> retrieval_config;
  std::optional<std::uint64_t> eval_seed;
  std::string format = "json";
  // outcome
  std::string ledger;
  std::string edit_id;
  std::string status;
  std::string note;
  std::optional<std::string> details;
  std::optional<std::string> timestamp;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {
    if (o.config_path) config_ = load_pipeline_config(*o.config_path);
  }

  void emit(const json& j) { out_ << (o_.pretty ? j.dump(2) : j.dump()) << '\n'; }

  void mine();
  void extract();
  void prune();
  void index_build();
  void index_query();
  void query();
  void rank_cmd();
  void gen_edit();
  void verify();
  void bench();
  void eval_map();
  void outcome_record();
  void outcome_summary();

 private:
  PruneConfig prune_config() const;
  IndexConfig index_config() const;
  // The query as a record plus its embedding: a function id from `records`
  // or a path to a diff file.
  std::pair<FunctionRecord, BowVector> resolve_query(
      const std::map<std::string, FunctionRecord>& records) const;
  std::optional<FileEdit> file_edit(const fs::path& workspace) const;
  std::chrono::milliseconds timeout() const {
    return std::chrono::seconds(o_.timeout_s.value_or(config_.timeout_s));
  }

  const Options& o_;
  std::ostream& out_;
  PipelineConfig config_;
};

void Runner::mine() {
  const std::vector<KeywordRule> rules = o_.rules ? load_rules(*o_.rules) : default_rules();
  std::vector<CommitHit> hits = scan_commits(o_.repo, rules);
  std::vector<std::string> warnings;
  if (o_.feed) {
    std::set<std::string> seen;
    for (const CommitHit& h : hits) seen.insert(h.commit_id);
    for (CommitHit& h : ingest_curated(o_.repo, *o_.feed, &warnings)) {
      if (seen.insert(h.commit_id).second) {
        hits.push_back(std::move(h));
      } else {
        for (CommitHit& existing : hits) {
          if (existing.commit_id == h.commit_id && h.category) existing.category = h.category;
        }
      }
    }
  }
  std::vector<std::string> diagnostics;
  const std::vector<AntiPatternExample> examples = build_examples(hits, &diagnostics);
  write_examples_jsonl(o_.out_path, examples);
  json by_category = json::object();
  for (const AntiPatternExample& e : examples) {
    const std::string name(category_name(e.category));
    by_category[name] = by_category.value(name, 0) + 1;
  }
  emit({{"commits", hits.size()},
        {"examples", examples.size()},
        {"by_category", by_category},
        {"out", o_.out_path},
        {"warnings", warnings},
        {"diagnostics", diagnostics}});
}

void Runner::extract() {
  std::vector<fs::path> roots(o_.corpus.begin(), o_.corpus.end());
  if (roots.empty()) roots = config_.corpus;
  if (roots.empty()) throw UsageError("--corpus", "no corpus given");

  std::map<std::string, CostAnnotation> by_key;
  if (o_.costs) {
    const json j = read_json(*o_.costs);
    if (j.is_array()) {
      for (const json& row : j) {
        CostAnnotation c;
        c.cycles_pct = row.at("attributed_pct").get<double>();
        c.source = fs::path(*o_.costs).filename().string();
        by_key[row.at("fn_name").get<std::string>()] = c;
      }
    } else {
      for (const auto& [key, value] : j.items()) by_key[key] = value.get<CostAnnotation>();
    }
  }

  std::vector<FunctionRecord> records;
  std::vector<std::string> diagnostics;
  size_t files = 0;
  for (const fs::path& root : roots) {
    for (const fs::path& file : list_corpus_files(root)) {
      ++files;
      for (FunctionRecord& r : extract_functions(read_text(file), file.string(), &diagnostics)) {
        r = annotate_types(std::move(r));
        std::map<std::string, CostAnnotation> costs;
        if (auto it = by_key.find(r.id); it != by_key.end()) {
          costs[r.id] = it->second;
        } else if (auto by_name = by_key.find(r.name); by_name != by_key.end()) {
          costs[r.id] = by_name->second;
        }
        records.push_back(attach_cost(std::move(r), costs));
      }
    }
  }
  write_records_jsonl(o_.out_path, records);
  const auto with_cost = std::count_if(records.begin(), records.end(),
                                       [](const FunctionRecord& r) { return r.cost.has_value(); });
  emit({{"files", files},
        {"functions", records.size()},
        {"with_cost", with_cost},
        {"out", o_.out_path},
        {"diagnostics", diagnostics}});
}

PruneConfig Runner::prune_config() const {
  PruneConfig cfg = config_.prune;
  if (o_.cmin) cfg.c_min = *o_.cmin;
  if (o_.cmax) cfg.c_max = *o_.cmax;
  if (o_.shared_threshold) cfg.shared_binary_threshold = *o_.shared_threshold;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(o_.cmin ? "--cmin" : "--cmax", e.what());
  }
  return cfg;
}

void Runner::prune() {
  fs::path profile;
  if (o_.profile) {
    profile = *o_.profile;
  } else if (config_.profiles.size() == 1) {
    profile = config_.profiles.front();
  } else {
    throw UsageError("--profile", "exactly one profile is required");
  }
  const PruneConfig cfg = prune_config();
  CallTreeNode tree = profile.extension() == ".json"
                          ? parse_call_tree_json(read_json(profile))
                          : parse_folded_stacks(read_text(profile));
  std::optional<fs::path> binaries = o_.binaries ? std::optional<fs::path>(*o_.binaries)
                                                 : config_.binaries;
  if (binaries) {
    mark_shared(tree, read_json(*binaries).get<std::map<std::string, int>>(), cfg);
  }
  emit(report_to_json(attribute_and_report(tree, cfg)));
}

IndexConfig Runner::index_config() const {
  IndexConfig cfg = config_.index;
  if (o_.partitions) cfg.num_partitions = *o_.partitions;
  if (o_.nprobe) cfg.nprobe = *o_.nprobe;
  if (o_.min_cost) cfg.min_cost_pct = *o_.min_cost;
  if (o_.index_seed) cfg.seed = *o_.index_seed;
  if (o_.k) cfg.k = *o_.k;
  return cfg;
}

void Runner::index_build() {
  std::vector<IndexEntry> entries;
  for (const FunctionRecord& r : read_records_jsonl(o_.records)) {
    std::optional<double> pct;
    if (r.cost) pct = r.cost->cycles_pct;
    entries.push_back({r.id, embed_function(r), pct});
  }
  const size_t given = entries.size();
  const VectorIndex index = build_index(std::move(entries), index_config());
  save_index(o_.out_path, index);
  emit({{"records", given},
        {"entries", index.entries.size()},
        {"partitions", index.partitions.size()},
        {"out", o_.out_path}});
}

std::pair<FunctionRecord, BowVector> Runner::resolve_query(
    const std::map<std::string, FunctionRecord>& records) const {
  if (auto it = records.find(o_.query); it != records.end()) {
    return {it->second, embed_function(it->second)};
  }
  if (fs::is_regular_file(o_.query)) {
    AntiPatternExample example;
    example.diff = read_text(o_.query);
    return {query_from_diff(example.diff), embed_diff_query(example)};
  }
  throw UsageError("--query", "neither a function id nor a diff file: " + o_.query);
}

json neighbors_json(const std::vector<Neighbor>& ns) {
  json out = json::array();
  for (const Neighbor& n : ns) out.push_back({{"id", n.id}, {"distance", n.distance}});
  return out;
}

void Runner::index_query() {
  const VectorIndex index = load_index(o_.index_path);
  const auto records = records_by_id(o_.records);
  const auto [record, vec] = resolve_query(records);
  const int k = o_.k.value_or(index.config.k);
  const bool exact = o_.exact.value_or(config_.exact_search);
  emit(neighbors_json(query_topk(index, vec, k, exact)));
}

void Runner::query() {
  const VectorIndex index = load_index(o_.index_path);
  const auto records = records_by_id(o_.records);
  const auto [record, vec] = resolve_query(records);
  const int k = o_.k.value_or(index.config.k);
  const bool exact = o_.exact.value_or(config_.exact_search);
  const bool ranked = o_.ranked.value_or(config_.ranked);
  std::vector<Neighbor> hits = query_topk(index, vec, k + 1, exact);
  std::erase_if(hits, [&](const Neighbor& n) { return n.id == record.id; });
  if (hits.size() > static_cast<size_t>(k)) hits.resize(k);
  if (!ranked) {
    if (hits.size() > static_cast<size_t>(o_.top)) hits.resize(o_.top);
    emit(neighbors_json(hits));
    return;
  }
  std::vector<Candidate> candidates;
  for (const Neighbor& n : hits) {
    auto it = records.find(n.id);
    if (it == records.end()) throw Error("UnknownId", "index entry missing from records: " + n.id);
    candidates.push_back({it->second, n.distance});
  }
  std::vector<RankedCandidate> out = rank(record, candidates);
  if (out.size() > static_cast<size_t>(o_.top)) out.resize(o_.top);
  emit(ranked_to_json(out));
}

void Runner::rank_cmd() {
  const auto records = records_by_id(o_.records);
  const auto [record, vec] = resolve_query(records);
  std::vector<Candidate> candidates;
  for (const std::string& id : o_.candidates) {
    auto it = records.find(id);
    if (it == records.end()) throw UsageError("--candidates", "unknown function id " + id);
    candidates.push_back({it->second, cosine_distance(vec, embed_function(it->second))});
  }
  emit(ranked_to_json(rank(record, candidates)));
}

json metrics_json(const MetricsRow& m) {
  return {{"recipe", prompt_kind_name(m.kind)}, {"samples", m.samples},
          {"mod_ln", m.mod_ln},                 {"val_ed", m.val_ed},
          {"inv_ed", m.inv_ed},                 {"rej", m.rej},
          {"codebleu", m.codebleu}};
}

void Runner::gen_edit() {
  PromptRecipe recipe;
  try {
    recipe.kind = o_.recipe ? prompt_kind_from_name(*o_.recipe) : config_.recipe;
  } catch (const std::invalid_argument& e) {
    throw UsageError("--recipe", e.what());
  }
  if (recipe.kind == PromptKind::kFewShot) {
    std::optional<fs::path> shots =
        o_.shots ? std::optional<fs::path>(*o_.shots) : config_.shots;
    if (!shots) throw UsageError("--shots", "few-shot recipe needs an examples file");
    std::vector<AntiPatternExample> pool = read_examples_jsonl(*shots);
    std::stable_partition(pool.begin(), pool.end(), [&](const AntiPatternExample& e) {
      return category_name(e.category) == o_.category;
    });
    const size_t n = std::min<size_t>(pool.size(), o_.shot_count.value_or(config_.shot_count));
    recipe.shots.assign(pool.begin(), pool.begin() + n);
  }
  recipe.validate();

  if (o_.replay && o_.endpoint) throw UsageError("--replay", "conflicts with --endpoint");
  std::optional<std::string> locator = completion_locator(config_);
  if (o_.replay) locator = "replay:" + *o_.replay;
  if (o_.endpoint) locator = *o_.endpoint;
  if (!locator) throw UsageError("--replay", "no completion endpoint or replay fixture");

  GenerateOptions opts = config_.generate;
  if (o_.samples) opts.samples = *o_.samples;
  if (o_.temperature) opts.temperature = *o_.temperature;
  if (opts.samples < 1) throw UsageError("--samples", "must be at least 1");

  const std::string source = read_text(o_.target);
  std::string code = source;
  json function = nullptr;
  if (o_.function) {
    std::optional<FunctionRecord> found;
    for (const FunctionRecord& r : extract_functions(source, o_.target)) {
      if (r.name == *o_.function || r.id == *o_.function) {
        found = r;
        break;
      }
    }
    if (!found) throw UsageError("--function", "not found in " + o_.target + ": " + *o_.function);
    const std::vector<std::string> lines = split_lines(source);
    code.clear();
    for (int l = found->span.start; l <= found->span.end && l <= static_cast<int>(lines.size());
         ++l) {
      code += lines[l - 1];
    }
    function = {{"id", found->id}, {"name", found->name}};
  }
  opts.target_path = fs::path(o_.target).filename().string();

  std::unique_ptr<CompletionClient> inner = make_client(*locator);
  std::optional<RecordingCompletionClient> recorder;
  CompletionClient* client = inner.get();
  if (o_.record_path) client = &recorder.emplace(*inner);

  std::vector<EditProposal> proposals =
      generate_proposals(*client, recipe, code, o_.category, opts);
  json selected = nullptr;
  json review = nullptr;
  try {
    const EditProposal best = select_conservative(proposals);
    EditProposal& chosen = proposals[best.sample_idx];
    chosen.status = ProposalStatus::kSelected;
    if (o_.review) {
      const ReviewResult r =
          self_review(*client, code, chosen.edited_code, chosen.sample_idx, opts);
      apply_review(chosen, r);
      review = {{"passed", r.passed}, {"answers", r.answers}};
    }
    if (chosen.status == ProposalStatus::kSelected) selected = chosen.sample_idx;
  } catch (const NoViableProposal&) {
  }
  if (recorder) recorder->save(*o_.record_path);

  const std::vector<MetricsRow> metrics = edit_metrics({{recipe.kind, proposals}});
  emit({{"recipe", prompt_kind_name(recipe.kind)},
        {"category", o_.category},
        {"target", o_.target},
        {"function", function},
        {"samples", opts.samples},
        {"temperature", opts.temperature},
        {"proposals", proposals},
        {"selected", selected},
        {"review", review},
        {"metrics", metrics_json(metrics.front())}});
}

std::optional<FileEdit> Runner::file_edit(const fs::path& workspace) const {
  if (o_.edited && o_.diff) throw UsageError("--edited", "conflicts with --diff");
  if (o_.edited) return FileEdit{o_.file, read_text(*o_.edited)};
  if (o_.diff) {
    const std::vector<DiffHunk> hunks = parse_diff(read_text(*o_.diff));
    const ApplyResult applied = apply_hunks(read_text(workspace / o_.file), hunks);
    if (applied.failed > 0 || applied.applied == 0) {
      throw Error("PatchFailed", std::to_string(applied.failed) + " of " +
                                     std::to_string(hunks.size()) + " hunks did not apply");
    }
    return FileEdit{o_.file, applied.text};
  }
  return std::nullopt;
}

void Runner::verify() {
  const fs::path ws = o_.workspace;
  std::optional<FileEdit> edit = file_edit(ws);
  if (!edit) throw UsageError("--edited", "an --edited file or a --diff is required");
  CheckConfig cfg;
  cfg.build_cmd = o_.build_cmd ? o_.build_cmd : config_.build_cmd;
  cfg.test_cmd = o_.test_cmd ? o_.test_cmd : config_.test_cmd;
  cfg.timeout = timeout();
  const CheckResult r = check_valid(ws, *edit, cfg);
  json outcome = nullptr;
  json note = nullptr;
  if (r.outcome) {
    outcome = outcome_name(r.outcome->status);
    note = r.outcome->note;
  }
  emit({{"passed", r.passed()}, {"outcome", outcome}, {"note", note}, {"log", r.log}});
}

void Runner::bench() {
  BenchConfig cfg;
  const std::optional<std::string> cmd = o_.bench_cmd ? o_.bench_cmd : config_.bench_cmd;
  if (!cmd) throw UsageError("--bench-cmd", "no benchmark command");
  cfg.bench_cmd = *cmd;
  cfg.build_cmd = o_.build_cmd ? o_.build_cmd : config_.build_cmd;
  cfg.runs = o_.runs.value_or(config_.bench_runs);
  if (cfg.runs < 1) throw UsageError("--runs", "must be at least 1");
  cfg.timeout = timeout();
  const fs::path ws = o_.workspace;
  const BenchResult r = measure_speedup(cfg, ws, file_edit(ws));
  json edited = nullptr;
  if (r.edited_cycles_per_op) edited = *r.edited_cycles_per_op;
  emit({{"baseline_cycles_per_op", r.baseline_cycles_per_op},
        {"edited_cycles_per_op", edited},
        {"speedup", r.speedup},
        {"runs", r.runs},
        {"baseline_samples", r.baseline_samples},
        {"edited_samples", r.edited_samples},
        {"note", r.note}});
}

void Runner::eval_map() {
  SeedSpec spec;
  RetrievalConfig base;
  base.index = config_.index;
  if (o_.retrieval_config) {
    const json j = read_json(*o_.retrieval_config);
    for (const auto& [key, value] : j.items()) {
      if (key == "ann_k") {
        base.ann_k = value.get<int>();
      } else if (key == "exact") {
        base.exact = value.get<bool>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "distractors") {
        spec.distractors = value.get<int>();
      } else if (key == "pairs") {
        spec.counts.clear();
        for (const auto& [cat, n] : value.items()) {
          spec.counts[category_from_name(cat)] = n.get<int>();
        }
      } else if (key == "index") {
        PipelineConfig tmp = config_from_json({{"index", value}}, ".");
        base.index = tmp.index;
      } else {
        throw Error("ConfigError", "unknown retrieval key " + key);
      }
    }
  }
  if (o_.eval_seed) spec.seed = *o_.eval_seed;
  for (int k : o_.ks) {
    if (k < 1) throw UsageError("--k", "values must be positive");
  }
  const std::vector<EvalRow> rows = evaluate(build_seeded_corpus(spec), o_.ks, base);
  if (o_.format == "csv") {
    out_ << eval_table_csv(rows, o_.ks);
  } else if (o_.format == "text" || (o_.pretty && o_.format == "json")) {
    out_ << eval_table_text(rows, o_.ks);
  } else {
    emit({{"seed", spec.seed}, {"rows", eval_rows_to_json(rows)}});
  }
}

void Runner::outcome_record() {
  OutcomeStatus status;
  try {
    status = outcome_from_name(o_.status);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--status", e.what());
  }
  json details = json::object();
  if (o_.details) {
    try {
      details = json::parse(*o_.details);
    } catch (const json::parse_error&) {
      throw UsageError("--details", "not valid JSON");
    }
  }
  const LedgerEntry e =
      record_outcome(o_.ledger, o_.edit_id, {status, o_.note}, details, o_.timestamp);
  emit(e);
}

void Runner::outcome_summary() {
  emit(summary_to_json(summarize_outcomes(read_ledger(o_.ledger))));
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  Options o;
  CLI::App app{"Performance anti-pattern mining, retrieval and editing pipeline", "eco"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--config", o.config_path, "Pipeline config (JSON)")->check(CLI::ExistingFile);
  app.add_flag("--pretty", o.pretty, "Indented JSON; text tables for eval");

  auto* mine = app.add_subcommand("mine", "Mine optimizing commits into examples");
  mine->add_option("--repo", o.repo, "Git repository")->required();
  mine->add_option("--rules", o.rules, "Keyword rules file")->check(CLI::ExistingFile);
  mine->add_option("--feed", o.feed, "Curated commit feed")->check(CLI::ExistingFile);
  mine->add_option("--out", o.out_path, "Examples JSONL")->required();

  auto* extract = app.add_subcommand("extract", "Extract function records");
  extract->add_option("--corpus", o.corpus, "Manifest or directory (repeatable)")
      ->check(CLI::ExistingPath);
  extract->add_option("--costs", o.costs, "Prune report or {id|name: cost} JSON")
      ->check(CLI::ExistingFile);
  extract->add_option("--out", o.out_path, "Records JSONL")->required();

  auto* prune = app.add_subcommand("prune", "Report costly functions of a profile");
  prune->add_option("--profile", o.profile, "Folded stacks or JSON call tree")
      ->check(CLI::ExistingFile);
  prune->add_option("--cmin", o.cmin, "Lower inclusive percent");
  prune->add_option("--cmax", o.cmax, "Upper inclusive percent");
  prune->add_option("--shared-threshold", o.shared_threshold, "Binaries count for shared");
  prune->add_option("--binaries", o.binaries, "{fn: binary count} JSON")
      ->check(CLI::ExistingFile);

  auto* index = app.add_subcommand("index", "Build or query the vector index");
  index->require_subcommand(1, 1);
  auto* index_build = index->add_subcommand("build", "Embed records into an index");
  index_build->add_option("--records", o.records, "Records JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  index_build->add_option("--out", o.out_path, "Index JSON")->required();
  index_build->add_option("--partitions", o.partitions, "Number of partitions");
  index_build->add_option("--nprobe", o.nprobe, "Partitions probed per query");
  index_build->add_option("--min-cost", o.min_cost, "Minimum cycles percent");
  index_build->add_option("--seed", o.index_seed, "Clustering seed");
  index_build->add_option("--k", o.k, "Default top-k");
  auto* index_query = index->add_subcommand("query", "Nearest neighbors of a query");

  auto* query = app.add_subcommand("query", "Retrieve and rank similar functions");
  auto* rank = app.add_subcommand("rank", "Score candidates against a query");
  for (CLI::App* sub : {index_query, query, rank}) {
    sub->add_option("--records", o.records, "Records JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--query", o.query, "Function id or diff file")->required();
  }
  for (CLI::App* sub : {index_query, query}) {
    sub->add_option("--index", o.index_path, "Index JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--k", o.k, "Neighbors to retrieve");
    sub->add_flag("--exact,!--approx", o.exact, "Exhaustive search");
  }
  query->add_flag("--ranked,!--unranked", o.ranked, "Syntactic re-ranking");
  query->add_option("--top", o.top, "Results to print")->check(CLI::PositiveNumber);
  rank->add_option("--candidates", o.candidates, "Candidate function ids")
      ->required()
      ->delimiter(',');

  auto* gen = app.add_subcommand("gen-edit", "Propose edits for a target");
  gen->add_option("--recipe", o.recipe, "zero-shot, few-shot, cot or react");
  gen->add_option("--replay", o.replay, "Replay fixture file or directory")
      ->check(CLI::ExistingPath);
  gen->add_option("--endpoint", o.endpoint, "Completion endpoint URL");
  gen->add_option("--record", o.record_path, "Save completions as a replay fixture");
  gen->add_option("--samples", o.samples, "Samples per prompt");
  gen->add_option("--temperature", o.temperature, "Sampling temperature");
  gen->add_option("--shots", o.shots, "Examples JSONL for few-shot")->check(CLI::ExistingFile);
  gen->add_option("--shot-count", o.shot_count, "Examples per prompt");
  gen->add_option("--category", o.category, "Anti-pattern category")->required();
  gen->add_option("--target", o.target, "Source file")->required()->check(CLI::ExistingFile);
  gen->add_option("--function", o.function, "Function name or id within the target");
  gen->add_flag("--review", o.review, "Self-review the selected edit");

  auto* verify = app.add_subcommand("verify", "Build and test an edit in a scratch copy");
  auto* bench = app.add_subcommand("bench", "Measure speedup of an edit");
  for (CLI::App* sub : {verify, bench}) {
    sub->add_option("--workspace", o.workspace, "Project directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    sub->add_option("--file", o.file, "Edited path, relative to the workspace");
    sub->add_option("--edited", o.edited, "New contents of --file")->check(CLI::ExistingFile);
    sub->add_option("--diff", o.diff, "Unified diff against --file")->check(CLI::ExistingFile);
    sub->add_option("--build-cmd", o.build_cmd, "Build command");
    sub->add_option("--timeout", o.timeout_s, "Seconds per command")->check(CLI::PositiveNumber);
  }
  verify->add_option("--test-cmd", o.test_cmd, "Test command");
  bench->add_option("--bench-cmd", o.bench_cmd, "Prints cycles/op per line");
  bench->add_option("--runs", o.runs, "Benchmark runs");

  auto* eval = app.add_subcommand("eval", "Retrieval evaluation");
  eval->require_subcommand(1, 1);
  auto* eval_map = eval->add_subcommand("map", "MAP@k on a seeded corpus");
  eval_map->add_option("--k", o.ks, "Cutoffs")->delimiter(',');
  eval_map->add_option("--config", o.retrieval_config, "Retrieval config JSON")
      ->check(CLI::ExistingFile);
  eval_map->add_option("--seed", o.eval_seed, "Corpus seed");
  eval_map->add_option("--format", o.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  auto* outcome = app.add_subcommand("outcome", "Edit lifecycle ledger");
  outcome->require_subcommand(1, 1);
  auto* record = outcome->add_subcommand("record", "Append an outcome");
  record->add_option("--ledger", o.ledger, "Ledger JSONL")->required();
  record->add_option("--edit-id", o.edit_id, "Edit identifier")->required();
  record->add_option("--status", o.status, "S_PROD, S_USER, R_REVERT, ...")->required();
  record->add_option("--note", o.note, "Free text");
  record->add_option("--details", o.details, "JSON object");
  record->add_option("--timestamp", o.timestamp, "UTC ISO 8601; now when absent");
  auto* summary = outcome->add_subcommand("summary", "Counts per status");
  summary->add_option("--ledger", o.ledger, "Ledger JSONL")
      ->required()
      ->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    if (args[i].starts_with("-")) continue;
    if (app.get_subcommand_no_throw(args[i]) == nullptr) {
      err << "usage error: unknown subcommand: " << args[i] << '\n';
      return kExitUsage;
    }
    break;
  }
  try {
    app.parse(reversed);
    for (CLI::App* sub : {verify, bench}) {
      if (sub->parsed() && (o.edited || o.diff) && o.file.empty()) {
        throw UsageError("--file", "required with --edited or --diff");
      }
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Runner run(o, out);
    if (mine->parsed()) run.mine();
    else if (extract->parsed()) run.extract();
    else if (prune->parsed()) run.prune();
    else if (index_build->parsed()) run.index_build();
    else if (index_query->parsed()) run.index_query();
    else if (query->parsed()) run.query();
    else if (rank->parsed()) run.rank_cmd();
    else if (gen->parsed()) run.gen_edit();
    else if (verify->parsed()) run.verify();
    else if (bench->parsed()) run.bench();
    else if (eval_map->parsed()) run.eval_map();
    else if (record->parsed()) run.outcome_record();
    else if (summary->parsed()) run.outcome_summary();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace eco
