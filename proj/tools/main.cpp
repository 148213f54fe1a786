#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using ig::cli::RunConfig;
using Override = std::function<void(RunConfig&)>;

// Flags given on the command line override the --config file, whatever
// their order, so every option records a deferred edit.
struct Options {
  std::string config_path;
  std::vector<Override> edits;

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, const std::string& help,
                   std::function<void(RunConfig&, const T&)> apply) {
    return app->add_option_function<T>(
        name, [this, apply](const T& v) { edits.push_back([apply, v](RunConfig& c) { apply(c, v); }); },
        help);
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : ig::cli::load_config(config_path);
    for (const auto& e : edits) e(cfg);
    return cfg;
  }
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_path, "JSON run config; flags override it");
  o.add<int>(app, "--threads", "worker threads (0 = all cores)", [](RunConfig& c, const int& v) {
    c.threads = v;
  });
  o.add<std::string>(app, "--out", "output directory", [](RunConfig& c, const std::string& v) { c.out = v; });
}

void add_input(CLI::App* app, Options& o) {
  o.add<std::vector<std::string>>(app, "--data", "raw CSV file, optionally path@N for the first N rows; repeatable",
                                  [](RunConfig& c, const std::vector<std::string>& v) {
                                    c.datasets.clear();
                                    for (const auto& a : v) c.datasets.push_back(ig::cli::parse_dataset_arg(a));
                                  });
  o.add<std::string>(app, "--schema", "schema JSON for --data", [](RunConfig& c, const std::string& v) {
    c.schema = v;
  });
  o.add<std::string>(app, "--tokenized", "pre-tokenized file (tokens<TAB>label per line)",
                     [](RunConfig& c, const std::string& v) { c.tokenized = v; });
  o.add<std::vector<std::string>>(app, "--normal-values", "labels meaning normal for --tokenized",
                                  [](RunConfig& c, const std::vector<std::string>& v) { c.normal_values = v; });
  o.add<std::string>(app, "--encoded", "encoded container written by preprocess",
                     [](RunConfig& c, const std::string& v) { c.encoded = v; });
  o.add<std::string>(app, "--binning", "sigma_bins or exact", [](RunConfig& c, const std::string& v) {
    c.binning = ig::parse_binning(v);
  });
}

void add_split(CLI::App* app, Options& o, const std::string& ratio_flag) {
  o.add<std::string>(app, ratio_flag, "training percentage, R or lo:hi:step",
                     [](RunConfig& c, const std::string& v) { c.ratios = ig::parse_ratios(v); });
  o.add<std::string>(app, "--split", "positional or per-class", [](RunConfig& c, const std::string& v) {
    c.split = ig::parse_split_mode(v);
  });
}

void add_mining(CLI::App* app, Options& o) {
  o.add<std::string>(app, "--include-instances", "off, dedup or multiset", [](RunConfig& c, const std::string& v) {
    c.mining.include_instances = ig::parse_include_instances(v);
  });
  o.add<std::size_t>(app, "--min-len", "minimum pattern length", [](RunConfig& c, const std::size_t& v) {
    c.mining.min_pattern_len = v;
  });
}

void add_scoring(CLI::App* app, Options& o) {
  o.add<int>(app, "-p,--exponent", "length exponent (1 or 2)", [](RunConfig& c, const int& v) {
    c.scoring.exponent = v;
  });
  o.add<double>(app, "-r,--r", "R3 multiplier on the normal-score std", [](RunConfig& c, const double& v) {
    c.scoring.r = v;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-intersection intrusion detection"};
  app.require_subcommand(1);
  Options o;

  auto* pre = app.add_subcommand("preprocess", "discretize, encode and drop contradictions");
  add_common(pre, o);
  add_input(pre, o);

  auto* mine = app.add_subcommand("mine", "mine CNP/CAP banks from the training split");
  add_common(mine, o);
  add_input(mine, o);
  add_split(mine, o, "--ratio");
  add_mining(mine, o);

  auto* classify = app.add_subcommand("classify", "score and label the test split");
  add_common(classify, o);
  add_input(classify, o);
  add_split(classify, o, "--ratio");
  add_mining(classify, o);
  add_scoring(classify, o);
  o.add<std::string>(classify, "--bank", "bank written by mine (mined on the fly when absent)",
                     [](RunConfig& c, const std::string& v) { c.bank = v; });
  classify->add_flag_callback("--roc", [&o] { o.edits.push_back([](RunConfig& c) { c.roc = true; }); },
                              "also write roc.csv");

  auto* sweep = app.add_subcommand("sweep", "evaluate a range of training ratios");
  add_common(sweep, o);
  add_input(sweep, o);
  add_split(sweep, o, "--sweep,--ratio");
  add_mining(sweep, o);
  add_scoring(sweep, o);
  o.add<std::string>(sweep, "--compare", "nsl-kdd, unsw-nb15 or ukm-ids20", [](RunConfig& c, const std::string& v) {
    c.compare = v;
  });
  sweep->add_flag_callback("--roc", [&o] { o.edits.push_back([](RunConfig& c) { c.roc = true; }); },
                           "write roc_<ratio>.csv per ratio");

  auto* forensics = app.add_subcommand("forensics", "rank and decode the most frequent paths");
  add_common(forensics, o);
  o.add<std::string>(forensics, "--bank", "bank written by mine", [](RunConfig& c, const std::string& v) {
    c.bank = v;
  });
  o.add<std::string>(forensics, "--encoded", "encoded container for decoding tokens",
                     [](RunConfig& c, const std::string& v) { c.encoded = v; });
  o.add<std::string>(forensics, "--side", "cap or cnp", [](RunConfig& c, const std::string& v) {
    c.side = ig::parse_side(v);
  });
  o.add<std::size_t>(forensics, "--top-k", "number of paths", [](RunConfig& c, const std::size_t& v) {
    c.top_k = v;
  });
  o.add<std::string>(forensics, "--format", "text, json or dot", [](RunConfig& c, const std::string& v) {
    c.format = v;
  });

  auto* repro = app.add_subcommand("repro-example", "check the built-in a..g worked example");
  ig::ScoringConfig repro_scoring{1, 0.1};
  repro->add_option("-p,--exponent", repro_scoring.exponent, "length exponent")->capture_default_str();
  repro->add_option("-r,--r", repro_scoring.r, "R3 multiplier")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : ig::cli::kUsage;
  } catch (const ig::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ig::cli::exit_code_for(e);
  }

  try {
    if (repro->parsed()) return ig::cli::cmd_repro_example(repro_scoring, std::cout);
    const RunConfig cfg = o.resolve();
    if (pre->parsed()) return ig::cli::cmd_preprocess(cfg, std::cout, std::cerr);
    if (mine->parsed()) return ig::cli::cmd_mine(cfg, std::cout, std::cerr);
    if (classify->parsed()) return ig::cli::cmd_classify(cfg, std::cout, std::cerr);
    if (sweep->parsed()) return ig::cli::cmd_sweep(cfg, std::cout, std::cerr);
    if (forensics->parsed()) return ig::cli::cmd_forensics(cfg, std::cout, std::cerr);
  } catch (const ig::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ig::cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ig::cli::kIo;
  }
  return ig::cli::kUsage;
}
