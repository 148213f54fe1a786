#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ig/ig.hpp"

namespace ig::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kIo = 3 };

struct DatasetInput {
  std::string path;
  std::optional<std::size_t> limit;

  bool operator==(const DatasetInput&) const = default;
};

/// "path" or "path@limit".
DatasetInput parse_dataset_arg(const std::string& arg);

/// Every knob of every subcommand. Round-trips through JSON losslessly.
struct RunConfig {
  std::vector<DatasetInput> datasets;
  std::string schema;
  std::string tokenized;
  std::vector<std::string> normal_values{"normal"};
  std::string encoded;
  std::string bank;

  BinningMode binning = BinningMode::sigma_bins;
  MiningConfig mining;
  ScoringConfig scoring;
  std::vector<int> ratios{10};
  SplitMode split = SplitMode::positional;

  BankSide side = BankSide::cap;
  std::size_t top_k = 10;
  std::string format = "text";
  bool roc = false;
  std::string compare;

  std::string out = ".";
  int threads = 1;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::string& path);

/// The config as embedded in reports: everything that determines results.
/// `out` and `threads` are execution details and are reported under
/// "timings.runtime" instead.
nlohmann::json config_echo(const RunConfig& cfg);

/// Raw CSV (via schema), pre-tokenized rows, or an encoded container,
/// preprocessed to an anti-contradiction-filtered dataset.
EncodedDataset load_input(const RunConfig& cfg);

int cmd_preprocess(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mine(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_forensics(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs the embedded a..g token fixture and checks every expected value.
/// `scoring` overrides p and r (the fixture expects p = 1, r = 0.1).
int cmd_repro_example(const ScoringConfig& scoring, std::ostream& out);

/// The embedded fixture in the pre-tokenized format: seven training rows
/// (N1..N4, M1..M3) followed by four test rows (T1..T4).
std::string_view worked_example_text();
inline constexpr std::size_t kWorkedExampleTrainRows = 7;

/// Maps an ig::Error to an exit code.
int exit_code_for(const Error& e);

}  // namespace ig::cli
