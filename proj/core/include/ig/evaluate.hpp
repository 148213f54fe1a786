#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ig/mining.hpp"
#include "ig/scoring.hpp"
#include "ig/split.hpp"

namespace ig {

/// Anomaly is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// nullopt marks an undefined value (zero denominator, or a single-class
/// test set for auc). Undefined values are never reported as 0.
struct Metrics {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> auc;

  bool operator==(const Metrics&) const = default;
};

ConfusionMatrix confusion(std::span<const Verdict> verdicts);

/// Accuracy, precision and recall. `auc` is left unset.
Metrics metrics(const ConfusionMatrix& cm);

/// Mann-Whitney AUC of `scores` (higher = more anomalous); ties count 1/2.
std::optional<double> auc(std::span<const double> scores, std::span<const Label> truths);

struct RocPoint {
  double threshold = 0.0;  // +inf for the (0, 0) corner
  double tpr = 0.0;
  double fpr = 0.0;
};

/// One point per distinct score, predicting anomalous when score >= threshold.
std::vector<RocPoint> roc_points(std::span<const double> scores, std::span<const Label> truths);
void write_roc_csv(std::ostream& out, std::span<const RocPoint> points);

struct SweepConfig {
  std::vector<int> ratios{10, 20, 30, 40, 50, 60, 70, 80, 90};
  SplitMode split = SplitMode::positional;
  MiningConfig mining;
  ScoringConfig scoring;
  int threads = 1;
  bool keep_roc = false;
};

struct RegulationCounts {
  std::size_t r1 = 0, r2 = 0, r3 = 0, none = 0;
  bool operator==(const RegulationCounts&) const = default;
};

struct SweepRow {
  int ratio = 0;
  std::size_t boundary = 0;
  ClassCounts train;
  ClassCounts test;
  ConfusionMatrix cm;
  Metrics metrics;
  RegulationCounts regulations;
  MiningProvenance provenance;
  std::size_t cnp = 0;
  std::size_t cap = 0;
  /// Set when this ratio failed (e.g. a degenerate split); other fields are empty.
  std::optional<std::string> error;
  std::vector<RocPoint> roc;
  double mine_ms = 0.0;
  double classify_ms = 0.0;
};

struct SweepReport {
  SweepConfig config;
  std::size_t original_count = 0;
  std::size_t surviving = 0;
  std::size_t removed = 0;
  BinningMode binning = BinningMode::sigma_bins;
  std::vector<SweepRow> rows;
};

/// Runs split -> mine -> classify -> metrics for each ratio, in ratio order.
/// A failing ratio records its error and the sweep continues.
SweepReport ratio_sweep(const EncodedDataset& ds, const SweepConfig& cfg);

/// Reference results (accuracy, precision, recall, auc per ratio 10..90) for
/// the benchmark datasets "nsl-kdd", "unsw-nb15" and "ukm-ids20".
struct ReferenceRow {
  int ratio;
  double accuracy, recall, precision, auc;
};
const std::vector<ReferenceRow>* reference_metrics(std::string_view dataset);

// Rendering (report.cpp)

inline constexpr char kReportSchema[] = "ig-report/1";

nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const ClassCounts& c);

/// Report JSON. `config_echo` is embedded verbatim under "config"; wall
/// times and execution knobs go under "timings", the only block allowed to
/// differ between reruns.
nlohmann::json sweep_to_json(const SweepReport& report, const nlohmann::json& config_echo,
                             const nlohmann::json& runtime = nlohmann::json::object());

/// Per-ratio deltas against reference results; null cells where either side
/// is undefined.
nlohmann::json compare_to_reference(const SweepReport& report, std::string_view dataset);

/// Aligned plain-text table.
std::string sweep_to_text(const SweepReport& report);

/// Removes the "timings" block so two reports can be compared byte for byte.
nlohmann::json strip_timings(nlohmann::json report);

}  // namespace ig
