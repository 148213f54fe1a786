#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace ig::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using clock = std::chrono::steady_clock;

double ms_since(clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_config, std::string("config key '") + key + "': " + e.what(), key);
  }
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out.empty() ? "." : cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorKind::io, "write failed for " + path.string());
}

json runtime_json(const RunConfig& cfg, double total_ms) {
  return {{"threads", cfg.threads}, {"out", cfg.out}, {"total_ms", total_ms}};
}

int single_ratio(const RunConfig& cfg) {
  if (cfg.ratios.size() != 1) {
    throw Error(ErrorKind::invalid_config, "this command takes exactly one --ratio", "ratio");
  }
  return cfg.ratios.front();
}

void require_fingerprint(const PatternBank& bank, const ColumnStats& stats) {
  if (!bank.dictionary_fingerprint.empty() && bank.dictionary_fingerprint != stats_fingerprint(stats)) {
    throw Error(ErrorKind::format, "bank was mined against a different dictionary", "bank");
  }
}

json regulation_counts(std::span<const Verdict> verdicts) {
  std::map<std::string, std::size_t> counts{{"R1", 0}, {"R2", 0}, {"R3", 0}, {"none", 0}};
  for (const auto& v : verdicts) ++counts[std::string(to_string(v.regulation))];
  return counts;
}

}  // namespace

DatasetInput parse_dataset_arg(const std::string& arg) {
  const auto at = arg.rfind('@');
  if (at == std::string::npos) return {arg, std::nullopt};
  const std::string digits = arg.substr(at + 1);
  std::size_t limit = 0;
  std::size_t used = 0;
  try {
    limit = std::stoull(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (digits.empty() || used != digits.size() || digits.front() == '-') {
    throw Error(ErrorKind::invalid_config, "bad row limit in '" + arg + "'; expected path@N", "data");
  }
  return {arg.substr(0, at), limit};
}

json to_json(const RunConfig& cfg) {
  json datasets = json::array();
  for (const auto& d : cfg.datasets) {
    datasets.push_back({{"path", d.path}, {"limit", d.limit ? json(*d.limit) : json(nullptr)}});
  }
  return {{"datasets", std::move(datasets)},
          {"schema", cfg.schema},
          {"tokenized", cfg.tokenized},
          {"normal_values", cfg.normal_values},
          {"encoded", cfg.encoded},
          {"bank", cfg.bank},
          {"binning", std::string(to_string(cfg.binning))},
          {"include_instances", std::string(to_string(cfg.mining.include_instances))},
          {"min_pattern_len", cfg.mining.min_pattern_len},
          {"p", cfg.scoring.exponent},
          {"r", cfg.scoring.r},
          {"ratios", cfg.ratios},
          {"split", std::string(to_string(cfg.split))},
          {"side", std::string(to_string(cfg.side))},
          {"top_k", cfg.top_k},
          {"format", cfg.format},
          {"roc", cfg.roc},
          {"compare", cfg.compare},
          {"out", cfg.out},
          {"threads", cfg.threads}};
}

RunConfig config_from_json(const json& j, RunConfig cfg) {
  if (!j.is_object()) throw Error(ErrorKind::invalid_config, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "datasets") {
      cfg.datasets.clear();
      for (const auto& d : value) {
        DatasetInput in{get_as<std::string>(d, "path"), std::nullopt};
        if (d.contains("limit") && !d["limit"].is_null()) in.limit = get_as<std::size_t>(d, "limit");
        cfg.datasets.push_back(std::move(in));
      }
    } else if (key == "schema") {
      cfg.schema = get_as<std::string>(j, "schema");
    } else if (key == "tokenized") {
      cfg.tokenized = get_as<std::string>(j, "tokenized");
    } else if (key == "normal_values") {
      cfg.normal_values = get_as<std::vector<std::string>>(j, "normal_values");
    } else if (key == "encoded") {
      cfg.encoded = get_as<std::string>(j, "encoded");
    } else if (key == "bank") {
      cfg.bank = get_as<std::string>(j, "bank");
    } else if (key == "binning") {
      cfg.binning = parse_binning(get_as<std::string>(j, "binning"));
    } else if (key == "include_instances") {
      cfg.mining.include_instances = parse_include_instances(get_as<std::string>(j, "include_instances"));
    } else if (key == "min_pattern_len") {
      cfg.mining.min_pattern_len = get_as<std::size_t>(j, "min_pattern_len");
    } else if (key == "p") {
      cfg.scoring.exponent = get_as<int>(j, "p");
    } else if (key == "r") {
      cfg.scoring.r = get_as<double>(j, "r");
    } else if (key == "ratios") {
      cfg.ratios = get_as<std::vector<int>>(j, "ratios");
    } else if (key == "split") {
      cfg.split = parse_split_mode(get_as<std::string>(j, "split"));
    } else if (key == "side") {
      cfg.side = parse_side(get_as<std::string>(j, "side"));
    } else if (key == "top_k") {
      cfg.top_k = get_as<std::size_t>(j, "top_k");
    } else if (key == "format") {
      cfg.format = get_as<std::string>(j, "format");
    } else if (key == "roc") {
      cfg.roc = get_as<bool>(j, "roc");
    } else if (key == "compare") {
      cfg.compare = get_as<std::string>(j, "compare");
    } else if (key == "out") {
      cfg.out = get_as<std::string>(j, "out");
    } else if (key == "threads") {
      cfg.threads = get_as<int>(j, "threads");
    } else {
      throw Error(ErrorKind::invalid_config, "unknown config key '" + key + "'", key);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open config " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
  return config_from_json(j);
}

json config_echo(const RunConfig& cfg) {
  json j = to_json(cfg);
  j.erase("out");
  j.erase("threads");
  return j;
}

EncodedDataset load_input(const RunConfig& cfg) {
  const int sources = (!cfg.encoded.empty()) + (!cfg.tokenized.empty()) + (!cfg.datasets.empty());
  if (sources != 1) {
    throw Error(ErrorKind::invalid_config,
                "give exactly one input: --encoded, --tokenized, or --data with --schema", "input");
  }
  if (!cfg.encoded.empty()) return read_encoded(cfg.encoded);
  if (!cfg.tokenized.empty()) {
    const std::set<std::string> normals(cfg.normal_values.begin(), cfg.normal_values.end());
    return remove_contradictions(encode_tokenized(load_tokenized(cfg.tokenized, normals)));
  }
  if (cfg.schema.empty()) throw Error(ErrorKind::invalid_config, "--data needs --schema", "schema");
  const Schema schema = load_schema(cfg.schema);
  std::optional<RawDataset> raw;
  for (const auto& d : cfg.datasets) {
    if (is_encoded_file(d.path)) {
      throw Error(ErrorKind::format, d.path + ": expected raw CSV, got an encoded container", "data");
    }
    auto part = load_dataset(d.path, schema, d.limit);
    raw = raw ? concat(std::move(*raw), part) : std::move(part);
  }
  return preprocess(*raw, cfg.binning, cfg.threads);
}

int cmd_preprocess(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto t0 = clock::now();
  const auto ds = load_input(cfg);
  const auto dir = out_dir(cfg);
  const auto path = dir / "encoded.igenc";
  write_encoded(path, ds);
  json report = {{"schema", kReportSchema},
                 {"command", "preprocess"},
                 {"config", config_echo(cfg)},
                 {"dataset",
                  {{"original_count", ds.original_count},
                   {"surviving", ds.instances.size()},
                   {"removed", ds.removed.size()},
                   {"binning", std::string(to_string(ds.stats.mode))},
                   {"width", ds.stats.width()},
                   {"classes", to_json(class_counts(ds.instances))},
                   {"fingerprint", stats_fingerprint(ds.stats)}}},
                 {"timings", runtime_json(cfg, ms_since(t0))}};
  write_text(dir / "preprocess_report.json", report.dump(2) + "\n");
  out << "rows: " << ds.original_count << "\n"
      << "removed: " << ds.removed.size() << "\n"
      << "kept: " << ds.instances.size() << "\n"
      << "wrote: " << path.string() << "\n";
  return kOk;
}

int cmd_mine(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto t0 = clock::now();
  const auto ds = load_input(cfg);
  const auto split = sequential_split(ds, SplitSpec{single_ratio(cfg), cfg.split});
  auto bank = mine(split.train, cfg.mining, cfg.threads);
  bank.dictionary_fingerprint = stats_fingerprint(ds.stats);
  const auto dir = out_dir(cfg);
  write_bank(dir / "bank.igbank", bank);
  json j = bank_to_json(bank);
  j["train"] = to_json(class_counts(split.train));
  j["boundary"] = split.boundary;
  write_text(dir / "bank.json", j.dump(2) + "\n");
  (void)t0;
  const auto& pn = bank.provenance.normal;
  const auto& pa = bank.provenance.anomalous;
  out << "train: " << split.train.size() << " (boundary " << split.boundary << ")\n"
      << "cnp: " << bank.cnp.size() << " of " << pn.patterns_generated << " generated from "
      << pn.instances << " normal instances\n"
      << "cap: " << bank.cap.size() << " of " << pa.patterns_generated << " generated from "
      << pa.instances << " anomalous instances\n"
      << "wrote: " << (dir / "bank.igbank").string() << "\n";
  return kOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto t0 = clock::now();
  const auto ds = load_input(cfg);
  const auto split = sequential_split(ds, SplitSpec{single_ratio(cfg), cfg.split});
  PatternBank bank;
  if (!cfg.bank.empty()) {
    bank = read_bank(cfg.bank);
    require_fingerprint(bank, ds.stats);
  } else {
    bank = mine(split.train, cfg.mining, cfg.threads);
  }
  const auto verdicts = classify_batch(split.test, bank, cfg.scoring, cfg.threads);

  std::vector<double> ns, margins;
  std::vector<Label> truths;
  for (const auto& v : verdicts) {
    ns.push_back(v.ns);
    margins.push_back(v.margin);
    truths.push_back(v.truth);
  }
  const auto cm = confusion(verdicts);
  auto m = metrics(cm);
  m.auc = auc(margins, truths);
  const auto stats = batch_stats(ns);

  const auto dir = out_dir(cfg);
  {
    std::ofstream f(dir / "verdicts.csv", std::ios::binary);
    if (!f) throw Error(ErrorKind::io, "cannot write " + (dir / "verdicts.csv").string());
    write_verdicts_csv(f, verdicts);
  }
  if (cfg.roc) {
    std::ofstream f(dir / "roc.csv", std::ios::binary);
    write_roc_csv(f, roc_points(margins, truths));
  }
  json report = {{"schema", kReportSchema},
                 {"command", "classify"},
                 {"config", config_echo(cfg)},
                 {"split",
                  {{"boundary", split.boundary},
                   {"train", to_json(class_counts(split.train))},
                   {"test", to_json(class_counts(split.test))}}},
                 {"bank", {{"cnp", bank.cnp.size()}, {"cap", bank.cap.size()}}},
                 {"batch", {{"ns_ave", stats.ns_ave}, {"ns_std", stats.ns_std}, {"n", stats.n}}},
                 {"confusion", to_json(cm)},
                 {"metrics", to_json(m)},
                 {"regulations", regulation_counts(verdicts)},
                 {"timings", runtime_json(cfg, ms_since(t0))}};
  write_text(dir / "classify_report.json", report.dump(2) + "\n");
  auto show = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("null"); };
  out << "test: " << verdicts.size() << "\n"
      << "tp " << cm.tp << "  fp " << cm.fp << "  tn " << cm.tn << "  fn " << cm.fn << "\n"
      << "accuracy " << show(m.accuracy) << "  precision " << show(m.precision) << "  recall "
      << show(m.recall) << "  auc " << show(m.auc) << "\n";
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = clock::now();
  if (!cfg.compare.empty() && !reference_metrics(cfg.compare)) {
    throw Error(ErrorKind::invalid_config,
                "no reference results for '" + cfg.compare + "'; expected nsl-kdd, unsw-nb15 or ukm-ids20",
                "compare");
  }
  const auto ds = load_input(cfg);
  SweepConfig sc;
  sc.ratios = cfg.ratios;
  sc.split = cfg.split;
  sc.mining = cfg.mining;
  sc.scoring = cfg.scoring;
  sc.threads = cfg.threads;
  sc.keep_roc = cfg.roc;
  for (int r : sc.ratios) SplitSpec{r, sc.split}.validate();
  const auto report = ratio_sweep(ds, sc);

  const auto dir = out_dir(cfg);
  json j = sweep_to_json(report, config_echo(cfg), runtime_json(cfg, ms_since(t0)));
  if (!cfg.compare.empty()) j["comparison"] = compare_to_reference(report, cfg.compare);
  write_text(dir / "sweep_report.json", j.dump(2) + "\n");
  const std::string text = sweep_to_text(report);
  write_text(dir / "sweep_report.txt", text);
  if (cfg.roc) {
    for (const auto& row : report.rows) {
      if (row.error) continue;
      std::ofstream f(dir / ("roc_" + std::to_string(row.ratio) + ".csv"), std::ios::binary);
      write_roc_csv(f, row.roc);
    }
  }
  out << text;
  bool failed = false;
  for (const auto& row : report.rows) {
    if (row.error) {
      err << "ratio " << row.ratio << ": " << *row.error << "\n";
      failed = true;
    }
  }
  return failed ? kFailed : kOk;
}

int cmd_forensics(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.bank.empty()) throw Error(ErrorKind::invalid_config, "forensics needs --bank", "bank");
  if (cfg.format != "text" && cfg.format != "json" && cfg.format != "dot") {
    throw Error(ErrorKind::invalid_config, "format must be text, json or dot", "format");
  }
  const auto bank = read_bank(cfg.bank);
  std::optional<ColumnStats> stats;
  if (!cfg.encoded.empty()) {
    stats = read_encoded(cfg.encoded).stats;
    require_fingerprint(bank, *stats);
  }
  const ColumnStats* sp = stats ? &*stats : nullptr;
  const BankSide other = cfg.side == BankSide::cap ? BankSide::cnp : BankSide::cap;
  const auto entries = top_patterns(bank, cfg.side, cfg.top_k, sp);
  const auto contrast = top_patterns(bank, other, cfg.top_k, sp);

  std::string text;
  std::string ext;
  if (cfg.format == "json") {
    json j = forensics_to_json(cfg.side, entries, contrast, sp);
    j["schema"] = kReportSchema;
    j["command"] = "forensics";
    j["config"] = config_echo(cfg);
    text = j.dump(2) + "\n";
    ext = "json";
  } else if (cfg.format == "dot") {
    text = forensics_to_dot(cfg.side, entries, sp);
    ext = "dot";
  } else {
    text = forensics_to_text(cfg.side, entries, contrast, sp);
    ext = "txt";
  }
  write_text(out_dir(cfg) / ("forensics_" + std::string(to_string(cfg.side)) + "." + ext), text);
  out << text;
  return kOk;
}

std::string_view worked_example_text() {
  return "a,b,d,e\tnormal\n"
         "a,b,e,f\tnormal\n"
         "a,b,d,f\tnormal\n"
         "a,b,d,e\tnormal\n"
         "a,b,c,d\tanomalous\n"
         "a,b,d,g\tanomalous\n"
         "b,c,d,g\tanomalous\n"
         "a,b,c,d,e,f\tnormal\n"
         "b,c,d,f\tanomalous\n"
         "a,b,d,g,f\tanomalous\n"
         "s,t,u,v\tanomalous\n";
}

namespace {

std::string letters(const Pattern& p, const ColumnStats& stats) {
  std::vector<std::string> names;
  for (const auto& t : p.tokens) names.push_back(decode_token(t, stats));
  std::sort(names.begin(), names.end());
  std::string s = "(";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + ")";
}

std::string bank_side_text(const std::vector<Pattern>& ps, const ColumnStats& stats) {
  std::map<std::string, std::uint64_t> sorted;
  for (const auto& p : ps) sorted[letters(p, stats)] = p.freq;
  std::string s;
  for (const auto& [k, f] : sorted) s += (s.empty() ? "" : " ") + k + ":" + std::to_string(f);
  return s.empty() ? "(empty)" : s;
}

}  // namespace

int cmd_repro_example(const ScoringConfig& scoring, std::ostream& out) {
  scoring.validate();
  std::istringstream in{std::string(worked_example_text())};
  const auto ds = remove_contradictions(encode_tokenized(parse_tokenized(in, {"normal"})));
  const std::span<const EncodedInstance> all(ds.instances);
  const auto train = all.first(kWorkedExampleTrainRows);
  const auto test = all.subspan(kWorkedExampleTrainRows);

  const auto bank = mine(train, MiningConfig{}, 1);
  const auto verdicts = classify_batch(test, bank, scoring, 1);
  std::vector<double> ns;
  for (const auto& v : verdicts) ns.push_back(v.ns);
  const auto stats = batch_stats(ns);

  struct Check {
    std::string field, expected, actual;
    bool ok;
  };
  std::vector<Check> checks;
  auto exact = [&](std::string field, std::string expected, std::string actual) {
    const bool ok = expected == actual;
    checks.push_back({std::move(field), std::move(expected), std::move(actual), ok});
  };
  auto near = [&](std::string field, double expected, double actual, double tol) {
    checks.push_back({std::move(field), format_number(expected), format_number(actual),
                      std::fabs(expected - actual) <= tol});
  };

  exact("CNP", "(a,b,d,e):1 (a,b,e):2 (a,b,f):1", bank_side_text(bank.cnp, ds.stats));
  exact("CAP", "(b,c,d):1 (b,d,g):1", bank_side_text(bank.cap, ds.stats));
  const double expected_ns[] = {13, 0, 3, 0};
  const double expected_as[] = {3, 3, 3, 0};
  const char* expected_label[] = {"normal", "anomalous", "anomalous", "anomalous"};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string t = "T" + std::to_string(i + 1);
    const bool have = i < verdicts.size();
    near(t + ".ns", expected_ns[i], have ? verdicts[i].ns : NAN, 0.0);
    near(t + ".as", expected_as[i], have ? verdicts[i].as : NAN, 0.0);
    exact(t + ".label", expected_label[i], have ? std::string(to_string(verdicts[i].predicted)) : "missing");
  }
  near("ns_ave", 4.0, stats.ns_ave, 1e-12);
  near("ns_std", 6.164, stats.ns_std, 1e-3);

  bool all_ok = true;
  std::size_t w = 0;
  for (const auto& c : checks) w = std::max(w, c.field.size());
  for (const auto& c : checks) {
    all_ok = all_ok && c.ok;
    out << (c.ok ? "ok    " : "DIFF  ") << c.field << std::string(w - c.field.size() + 2, ' ');
    if (c.ok) {
      out << c.actual << "\n";
    } else {
      out << "expected " << c.expected << ", got " << c.actual << "\n";
    }
  }
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    out << "T" << (i + 1) << " regulation " << to_string(verdicts[i].regulation) << "\n";
  }
  out << (all_ok ? "PASS" : "FAIL") << " worked example (p=" << scoring.exponent
      << ", r=" << format_number(scoring.r) << ")\n";
  return all_ok ? kOk : kFailed;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::invalid_config:
    case ErrorKind::degenerate_split:
      return kUsage;
    default:
      return kIo;
  }
}

}  // namespace ig::cli
