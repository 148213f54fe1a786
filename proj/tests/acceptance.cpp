// Acceptance runner: one PASS/FAIL/SKIP line per criterion. Exits non-zero
// only when a criterion FAILs.
//
// Dataset-backed criteria read ';'-separated "path[@rows]" lists from
//   IG_NSLKDD_DATA  (schema: IG_NSLKDD_SCHEMA, default schemas/nsl_kdd.json)
//   IG_UNSW_DATA    (schema: IG_UNSW_SCHEMA, default schemas/unsw_nb15.json)
//   IG_UKM_DATA     (schema: IG_UKM_SCHEMA, required)
// and are skipped when unset. IG_ACCEPTANCE_OUT names the directory for the
// diagnostic sweep reports (default: a temporary directory).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace ig;
using nlohmann::json;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::skip, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------
// Published split counts, per ratio 10..90:
// {train anomalous, train normal, test anomalous, test normal}.

using SplitRow = std::array<std::size_t, 4>;

constexpr std::array<SplitRow, 9> kNslSplit{{{743, 744, 6726, 6654},
                                              {1418, 1555, 6051, 5843},
                                              {2127, 2333, 5342, 5065},
                                              {2784, 3163, 4685, 4235},
                                              {3482, 3952, 3987, 3446},
                                              {4174, 4746, 3295, 2652},
                                              {4932, 5475, 2537, 1923},
                                              {5757, 6137, 1712, 1261},
                                              {6611, 6769, 858, 629}}};

constexpr std::array<SplitRow, 9> kUnswSplit{{{417, 1000, 3757, 9000},
                                               {835, 2000, 3339, 8000},
                                               {1252, 3000, 2922, 7000},
                                               {1670, 4000, 2504, 6000},
                                               {2087, 5000, 2087, 5000},
                                               {2504, 6000, 1670, 4000},
                                               {2922, 7000, 1252, 3000},
                                               {3339, 8000, 835, 2000},
                                               {3757, 9000, 417, 1000}}};

// The published 2|8 train-normal cell reads "17 29".
constexpr std::array<SplitRow, 9> kUkmSplit{{{409, 880, 3569, 8029},
                                              {848, 1729, 3130, 7180},
                                              {1237, 2629, 2741, 6280},
                                              {1628, 3527, 2350, 5382},
                                              {2006, 4438, 1972, 4471},
                                              {2398, 5334, 1580, 3575},
                                              {2787, 6234, 1191, 2675},
                                              {3169, 7141, 809, 1768},
                                              {3585, 8013, 393, 896}}};

constexpr std::size_t kNslRows = 15000;
constexpr std::size_t kNslRemoved = 133;

struct Corpus {
  const char* name;
  const char* reference;  // key for reference_metrics
  const char* data_env;
  const char* schema_env;
  const char* default_schema;  // "" when none ships
  const std::array<SplitRow, 9>* split;
};

const std::array<Corpus, 3> kCorpora{{
    {"NSL-KDD", "nsl-kdd", "IG_NSLKDD_DATA", "IG_NSLKDD_SCHEMA", "nsl_kdd.json", &kNslSplit},
    {"UNSW-NB15", "unsw-nb15", "IG_UNSW_DATA", "IG_UNSW_SCHEMA", "unsw_nb15.json", &kUnswSplit},
    {"UKM-IDS20", "ukm-ids20", "IG_UKM_DATA", "IG_UKM_SCHEMA", "", &kUkmSplit},
}};

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

std::optional<cli::RunConfig> corpus_config(const Corpus& c, std::string* why) {
  const auto data = env(c.data_env);
  if (data.empty()) {
    *why = std::string(c.data_env) + " not set";
    return std::nullopt;
  }
  cli::RunConfig cfg;
  std::stringstream list(data);
  for (std::string item; std::getline(list, item, ';');) {
    if (!item.empty()) cfg.datasets.push_back(cli::parse_dataset_arg(item));
  }
  cfg.schema = env(c.schema_env);
  if (cfg.schema.empty() && *c.default_schema) cfg.schema = test::schema_file(c.default_schema).string();
  if (cfg.schema.empty()) {
    *why = std::string(c.schema_env) + " not set";
    return std::nullopt;
  }
  return cfg;
}

// Datasets are loaded at most once per run.
std::map<std::string, EncodedDataset>& loaded() {
  static std::map<std::string, EncodedDataset> cache;
  return cache;
}

const EncodedDataset* corpus(const Corpus& c, std::string* why) {
  if (auto it = loaded().find(c.name); it != loaded().end()) return &it->second;
  const auto cfg = corpus_config(c, why);
  if (!cfg) return nullptr;
  return &loaded().emplace(c.name, cli::load_input(*cfg)).first->second;
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream text;
  const int rc = cli::cmd_repro_example({1, 0.1}, text);

  const auto ds = test::worked_example();
  const auto train = test::slice(ds, 0, 7);
  const auto tests = test::slice(ds, 7, 11);
  const auto bank = mine(train, {});
  const auto verdicts = classify_batch(tests, bank, {1, 0.1});
  const double elapsed = seconds_since(t0);

  std::vector<std::string> problems;
  if (rc != cli::kOk) problems.push_back("repro-example exit " + std::to_string(rc));
  using Counts = std::map<std::string, std::uint64_t>;
  if (test::named(bank.cnp, ds.stats) != Counts{{"abe", 2}, {"abde", 1}, {"abf", 1}}) problems.push_back("CNP");
  if (test::named(bank.cap, ds.stats) != Counts{{"bcd", 1}, {"bdg", 1}}) problems.push_back("CAP");
  const std::array<std::pair<double, double>, 4> scores{{{13, 3}, {0, 3}, {3, 3}, {0, 0}}};
  std::vector<double> ns;
  for (std::size_t i = 0; i < 4; ++i) {
    if (verdicts[i].ns != scores[i].first || verdicts[i].as != scores[i].second) {
      problems.push_back("scores of T" + std::to_string(i + 1));
    }
    ns.push_back(verdicts[i].ns);
  }
  const auto stats = batch_stats(ns);
  if (stats.ns_ave != 4.0) problems.push_back("ns_ave");
  if (std::fabs(stats.ns_std - 6.164) > 0.001) problems.push_back("ns_std");
  const std::array<Label, 4> labels{Label::normal, Label::anomalous, Label::anomalous, Label::anomalous};
  for (std::size_t i = 0; i < 4; ++i) {
    if (verdicts[i].predicted != labels[i]) problems.push_back("label of T" + std::to_string(i + 1));
  }
  if (elapsed >= 1.0) problems.push_back("runtime " + fmt("%.3f s", elapsed));

  if (!problems.empty()) {
    std::string s;
    for (const auto& p : problems) s += (s.empty() ? "" : ", ") + p;
    return fail("mismatch: " + s);
  }
  return pass("CNP/CAP, scores, ns_ave=4, ns_std=" + fmt("%.6f", stats.ns_std) + ", labels; " +
              fmt("%.3f s", elapsed));
}

Outcome anti_contradiction() {
  std::string why;
  const auto* ds = corpus(kCorpora[0], &why);
  if (!ds) return skip(why);
  if (ds->original_count != kNslRows) {
    return fail("subset has " + std::to_string(ds->original_count) + " rows, expected 15000");
  }
  const auto n = ds->removed.size();
  return n == kNslRemoved ? pass("removed 133 of 15000") : fail("removed " + std::to_string(n) + ", expected 133");
}

// Split totals follow from the boundary rule alone; no dataset needed.
Outcome split_totals() {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < 9; ++i) {
    const int r = 10 * static_cast<int>(i + 1);
    const auto check = [&](const char* name, const SplitRow& row, std::size_t k) {
      const auto b = split_boundary(k, r);
      if (row[0] + row[1] != b || row[2] + row[3] != k - b) bad.push_back(std::string(name) + "@" + std::to_string(r));
    };
    check("UNSW-NB15", kUnswSplit[i], 14174);
    check("UKM-IDS20", kUkmSplit[i], 12887);
    // NSL-KDD loses 133 rows on both sides of a 15000-row cut.
    const auto& n = kNslSplit[i];
    const auto b = split_boundary(kNslRows, r);
    if (n[0] + n[1] + n[2] + n[3] != kNslRows - kNslRemoved || n[0] + n[1] > b || n[2] + n[3] > kNslRows - b) {
      bad.push_back("NSL-KDD@" + std::to_string(r));
    }
  }
  if (split_boundary(12887, 50) != 6444) bad.push_back("UKM 5|5 boundary");
  if (!bad.empty()) return fail("totals differ at " + bad.front() + " (+" + std::to_string(bad.size() - 1) + ")");
  return pass("train/test totals at 9 ratios for UNSW-NB15, UKM-IDS20; NSL-KDD consistent with 133 removed");
}

Outcome split_classes() {
  std::vector<std::string> done, skipped, bad;
  for (const auto& c : kCorpora) {
    std::string why;
    const EncodedDataset* ds = nullptr;
    try {
      ds = corpus(c, &why);
    } catch (const Error& e) {
      bad.push_back(std::string(c.name) + ": " + e.what());
      continue;
    }
    if (!ds) {
      skipped.push_back(why);
      continue;
    }
    for (std::size_t i = 0; i < 9; ++i) {
      const int r = 10 * static_cast<int>(i + 1);
      const auto s = sequential_split(*ds, {r, SplitMode::positional});
      const auto tr = class_counts(s.train);
      const auto te = class_counts(s.test);
      const SplitRow got{tr.anomalous, tr.normal, te.anomalous, te.normal};
      if (got != (*c.split)[i]) {
        bad.push_back(std::string(c.name) + "@" + std::to_string(r) + " got " + std::to_string(got[0]) + "/" +
                      std::to_string(got[1]) + "/" + std::to_string(got[2]) + "/" + std::to_string(got[3]));
      }
    }
    done.push_back(c.name);
  }
  if (!bad.empty()) return fail(bad.front() + (bad.size() > 1 ? " (+" + std::to_string(bad.size() - 1) + ")" : ""));
  if (done.empty()) return skip("no datasets: " + skipped.front() + ", ...");
  std::string s;
  for (const auto& d : done) s += (s.empty() ? "" : ", ") + d;
  return pass("class counts exact at 9 ratios for " + s + (skipped.empty() ? "" : " (others unavailable)"));
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(0xACCE55 + seed);
    const std::size_t n = 20 + static_cast<std::size_t>(rng() % 181);
    const std::size_t width = 2 + static_cast<std::size_t>(rng() % 11);
    const Code codes = 2 + static_cast<Code>(rng() % 3);
    const auto all = test::random_instances(rng, n, width, codes, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100);
    const std::size_t cut = n / 2;
    const std::vector<EncodedInstance> train(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cut));
    const std::vector<EncodedInstance> tests(all.begin() + static_cast<std::ptrdiff_t>(cut), all.end());
    const MiningConfig mcfg{static_cast<IncludeInstances>(seed % 3), 1 + seed % 2};
    const int threads = 1 + static_cast<int>(seed % 4);
    const auto fast = mine(train, mcfg, threads);
    const auto slow = reference_mine(train, mcfg);
    auto same = [](const std::vector<Pattern>& a, const std::vector<Pattern>& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].tokens != b[i].tokens || a[i].freq != b[i].freq) return false;
      }
      return true;
    };
    if (!same(fast.cnp, slow.cnp) || !same(fast.cap, slow.cap)) {
      return fail("mine differs from reference_mine at seed " + std::to_string(seed));
    }
    const ScoringConfig scfg{1 + static_cast<int>(seed % 2), 0.1 * static_cast<double>(seed % 6)};
    if (classify_batch(tests, fast, scfg, threads) != oracle::rules(tests, fast, scfg)) {
      return fail("classify_batch differs from the rule chain at seed " + std::to_string(seed));
    }
    ++checked;
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60.0) return fail("runtime " + fmt("%.1f s", elapsed));
  return pass(std::to_string(checked) + " seeded datasets; " + fmt("%.2f s", elapsed));
}

Outcome metric_identities() {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> margin(0, 3);
  std::uniform_int_distribution<int> coarse(-8, 8);
  std::bernoulli_distribution coin(0.45);
  double worst = 0;
  for (int round = 0; round < 100; ++round) {
    std::vector<double> s(200);
    std::vector<Label> y(200);
    for (std::size_t i = 0; i < 200; ++i) {
      // Half the rounds use coarse values so that ties are common.
      s[i] = round % 2 ? margin(rng) : coarse(rng);
      y[i] = coin(rng) ? Label::anomalous : Label::normal;
    }
    const auto a = auc(s, y);
    if (!a) return fail("AUC undefined on a two-class set");
    worst = std::max(worst, std::fabs(*a - oracle::pair_count_auc(s, y)));
  }
  if (worst > 1e-12) return fail("AUC deviates from pair counting by " + fmt("%.3g", worst));

  for (int i = 0; i < 500; ++i) {
    ConfusionMatrix cm{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
    const auto m = metrics(cm);
    const auto d = [](std::size_t x) { return static_cast<double>(x); };
    const bool ok =
        (cm.total() ? m.accuracy && *m.accuracy == d(cm.tp + cm.tn) / d(cm.total()) : !m.accuracy) &&
        (cm.tp + cm.fp ? m.precision && *m.precision == d(cm.tp) / d(cm.tp + cm.fp) : !m.precision) &&
        (cm.tp + cm.fn ? m.recall && *m.recall == d(cm.tp) / d(cm.tp + cm.fn) : !m.recall);
    if (!ok) return fail("metric formula mismatch");
  }
  const auto none = metrics({0, 0, 4, 3});
  const auto j = to_json(none);
  if (none.precision || !j["precision"].is_null() || !j["auc"].is_null()) {
    return fail("undefined precision not reported as null");
  }
  const std::vector<Label> one(5, Label::normal);
  const std::vector<double> any{1, 2, 3, 4, 5};
  if (auc(any, one)) return fail("single-class AUC not null");
  return pass("AUC within " + fmt("%.1e", worst) + " of pair counting on 100x200 points; formulas; nulls");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

// Every output file of a run, with the run directory replaced and timings
// stripped from JSON reports.
std::map<std::string, std::string> outputs(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    auto s = slurp(e.path());
    const auto needle = dir.string();
    for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at)) s.replace(at, needle.size(), "<out>");
    if (e.path().extension() == ".json") s = strip_timings(json::parse(s)).dump(1);
    files[e.path().filename().string()] = std::move(s);
  }
  return files;
}

Outcome determinism() {
  using Cmd = std::function<int(cli::RunConfig&, std::ostream&)>;
  const std::vector<std::pair<std::string, Cmd>> chain{
      {"preprocess", [](cli::RunConfig& c, std::ostream& o) { return cli::cmd_preprocess(c, o, o); }},
      {"mine",
       [](cli::RunConfig& c, std::ostream& o) {
         c.datasets.clear();
         c.encoded = (std::filesystem::path(c.out) / "encoded.igenc").string();
         return cli::cmd_mine(c, o, o);
       }},
      {"classify",
       [](cli::RunConfig& c, std::ostream& o) {
         c.bank = (std::filesystem::path(c.out) / "bank.igbank").string();
         c.roc = true;
         return cli::cmd_classify(c, o, o);
       }},
      {"sweep",
       [](cli::RunConfig& c, std::ostream& o) {
         auto s = c;
         s.bank.clear();
         s.ratios = parse_ratios("10:90:10");
         s.compare = "nsl-kdd";
         return cli::cmd_sweep(s, o, o);
       }},
      {"forensics",
       [](cli::RunConfig& c, std::ostream& o) {
         int rc = 0;
         for (const char* side : {"cap", "cnp"}) {
           for (const char* format : {"text", "json", "dot"}) {
             auto f = c;
             f.side = parse_side(side);
             f.format = format;
             rc = std::max(rc, cli::cmd_forensics(f, o, o));
           }
         }
         return rc;
       }},
  };

  std::vector<std::map<std::string, std::string>> runs;
  std::vector<std::string> repro;
  for (const auto& [name, threads] : {std::pair{"a", 1}, std::pair{"b", 1}, std::pair{"c", 8}}) {
    const auto dir = test::scratch(std::string("acceptance_det_") + name);
    cli::RunConfig cfg;
    cfg.datasets = {{test::fixture("synthetic300.csv").string(), std::nullopt}};
    cfg.schema = test::fixture("synthetic300.schema.json").string();
    cfg.ratios = {40};
    cfg.mining.include_instances = IncludeInstances::dedup;
    cfg.out = dir.string();
    cfg.threads = threads;
    for (const auto& [cmd, fn] : chain) {
      std::ostringstream sink;
      if (fn(cfg, sink) != cli::kOk) return fail(cmd + " did not succeed: " + sink.str());
    }
    runs.push_back(outputs(dir));
    std::ostringstream r;
    cli::cmd_repro_example({1, 0.1}, r);
    repro.push_back(r.str());
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].size() != runs[0].size()) return fail("different file sets across runs");
    for (const auto& [file, body] : runs[0]) {
      if (runs[i].at(file) != body) return fail(file + " differs (" + (i == 1 ? "rerun" : "threads 8") + ")");
    }
    if (repro[i] != repro[0]) return fail("repro-example output differs");
  }
  return pass(std::to_string(runs[0].size()) + " output files identical over rerun and threads {1, 8}");
}

Outcome invariants() {
  const auto ds = test::worked_example();
  if (auto p = prop::bank_exclusive(mine(test::slice(ds, 0, 7), {}), test::slice(ds, 0, 7)); !p.empty()) {
    return fail("worked example: " + p);
  }
  const auto schema = load_schema(test::fixture("synthetic300.schema.json"));
  const auto synth = preprocess(load_dataset(test::fixture("synthetic300.csv"), schema));
  for (int r : {10, 50, 90}) {
    const auto s = sequential_split(synth, {r});
    if (auto p = prop::bank_exclusive(mine(s.train, {}), s.train); !p.empty()) return fail("synthetic: " + p);
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(7000 + seed);
    const auto xs = test::random_instances(rng, 10 + seed % 120, 2 + seed % 11, 2 + static_cast<Code>(seed % 3));
    if (auto p = prop::bank_exclusive(mine(xs, {static_cast<IncludeInstances>(seed % 3), 1}), xs); !p.empty()) {
      return fail("seed " + std::to_string(seed) + ": " + p);
    }
  }
  if (auto p = prop::score_monotonicity(1000, 31); !p.empty()) return fail(p);
  if (auto p = prop::freq_scaling(1000, 32); !p.empty()) return fail(p);
  return pass("exclusivity on fixtures + 200 random trains; monotonicity and scaling on 1000 cases each");
}

Outcome diagnostic() {
  std::vector<std::string> skipped, bad, done;
  const auto out_env = env("IG_ACCEPTANCE_OUT");
  const auto out = out_env.empty() ? test::scratch("acceptance_diagnostic") : std::filesystem::path(out_env);
  std::filesystem::create_directories(out);
  for (const auto& c : kCorpora) {
    std::string why;
    const EncodedDataset* base = nullptr;
    try {
      base = corpus(c, &why);
    } catch (const Error& e) {
      bad.push_back(std::string(c.name) + ": " + e.what());
      continue;
    }
    if (!base) {
      skipped.push_back(why);
      continue;
    }
    auto cfg = *corpus_config(c, &why);
    json grid = json::array();
    std::string line;
    for (const auto binning : {BinningMode::sigma_bins, BinningMode::exact}) {
      cfg.binning = binning;
      const auto ds = binning == BinningMode::sigma_bins ? *base : cli::load_input(cfg);
      for (const int p : {1, 2}) {
        for (const auto include : {IncludeInstances::off, IncludeInstances::dedup}) {
          SweepConfig sweep;
          sweep.mining.include_instances = include;
          sweep.scoring = {p, 0.1};
          sweep.threads = 0;
          const auto report = ratio_sweep(ds, sweep);
          const auto cmp = compare_to_reference(report, c.reference);
          for (const auto& row : report.rows) {
            const auto& m = row.metrics;
            if (row.error || !m.accuracy || !m.recall || !m.precision || !m.auc) {
              bad.push_back(std::string(c.name) + " cell unpopulated at ratio " + std::to_string(row.ratio));
            }
          }
          grid.push_back({{"binning", to_string(binning)},
                          {"p", p},
                          {"include_instances", to_string(include)},
                          {"r", 0.1},
                          {"comparison", cmp}});
          if (report.rows.front().metrics.accuracy) {
            line += std::string(line.empty() ? "" : " ") + fmt("%+.4f", *report.rows.front().metrics.accuracy -
                                                                          reference_metrics(c.reference)->front().accuracy);
          }
        }
      }
    }
    std::ofstream(out / (std::string(c.reference) + "_diagnostic.json")) << grid.dump(2) << '\n';
    done.push_back(std::string(c.name) + " 1|9 acc deltas [" + line + "]");
  }
  if (!bad.empty()) return fail(bad.front());
  if (done.empty()) return skip("no datasets: " + skipped.front() + ", ...");
  std::string s;
  for (const auto& d : done) s += (s.empty() ? "" : "; ") + d;
  return pass(s + "; reports in " + out.string());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 worked example", worked_example},
      {"2 anti-contradiction", anti_contradiction},
      {"3a split totals", split_totals},
      {"3b split class counts", split_classes},
      {"4 oracle equivalence", oracle_equivalence},
      {"5 metric identities", metric_identities},
      {"6 determinism", determinism},
      {"7 invariants", invariants},
      {"8 diagnostic sweeps", diagnostic},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::printf("%s  %-24s %s\n", tag, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.status == Status::fail;
  }
  return failures ? 1 : 0;
}
