#include <cstdio>
#include <sstream>

#include "ig/evaluate.hpp"

namespace ig {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string cell(const std::optional<double>& v) {
  if (!v) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

json to_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
}

json to_json(const Metrics& m) {
  return {{"accuracy", optional_number(m.accuracy)},
          {"precision", optional_number(m.precision)},
          {"recall", optional_number(m.recall)},
          {"auc", optional_number(m.auc)}};
}

json to_json(const ClassCounts& c) {
  return {{"normal", c.normal}, {"anomalous", c.anomalous}, {"total", c.total()}};
}

json sweep_to_json(const SweepReport& report, const json& config_echo, const json& runtime) {
  json rows = json::array();
  json row_timings = json::array();
  for (const auto& r : report.rows) {
    json row = {{"ratio", r.ratio}};
    if (r.error) {
      row["error"] = *r.error;
    } else {
      row["error"] = nullptr;
      row["boundary"] = r.boundary;
      row["train"] = to_json(r.train);
      row["test"] = to_json(r.test);
      row["confusion"] = to_json(r.cm);
      row["metrics"] = to_json(r.metrics);
      row["regulations"] = {{"R1", r.regulations.r1},
                            {"R2", r.regulations.r2},
                            {"R3", r.regulations.r3},
                            {"none", r.regulations.none}};
      row["bank"] = {{"cnp", r.cnp}, {"cap", r.cap}, {"provenance", to_json(r.provenance)}};
    }
    rows.push_back(std::move(row));
    row_timings.push_back({{"ratio", r.ratio}, {"mine_ms", r.mine_ms}, {"classify_ms", r.classify_ms}});
  }
  json timings = runtime.is_object() ? runtime : json::object();
  timings["rows"] = std::move(row_timings);
  return {
      {"schema", kReportSchema},
      {"command", "sweep"},
      {"config", config_echo},
      {"dataset",
       {{"original_count", report.original_count},
        {"surviving", report.surviving},
        {"removed", report.removed},
        {"binning", std::string(to_string(report.binning))}}},
      {"pipeline",
       {{"split", std::string(to_string(report.config.split))},
        {"ratios", report.config.ratios},
        {"mining", to_json(report.config.mining)},
        {"scoring", to_json(report.config.scoring)},
        {"roc_score", "margin = as - ns"}}},
      {"rows", std::move(rows)},
      {"timings", std::move(timings)},
  };
}

json compare_to_reference(const SweepReport& report, std::string_view dataset) {
  const auto* ref = reference_metrics(dataset);
  if (!ref) {
    throw Error(ErrorKind::invalid_config,
                "no reference results for '" + std::string(dataset) +
                    "'; expected nsl-kdd, unsw-nb15 or ukm-ids20",
                "compare");
  }
  auto delta = [](const std::optional<double>& ours, double theirs) -> json {
    return ours ? json(*ours - theirs) : json(nullptr);
  };
  json rows = json::array();
  for (const auto& r : report.rows) {
    const ReferenceRow* match = nullptr;
    for (const auto& rr : *ref) {
      if (rr.ratio == r.ratio) match = &rr;
    }
    if (!match) continue;
    rows.push_back({
        {"ratio", r.ratio},
        {"reference", {{"accuracy", match->accuracy},
                       {"precision", match->precision},
                       {"recall", match->recall},
                       {"auc", match->auc}}},
        {"measured", to_json(r.metrics)},
        {"delta", {{"accuracy", delta(r.metrics.accuracy, match->accuracy)},
                   {"precision", delta(r.metrics.precision, match->precision)},
                   {"recall", delta(r.metrics.recall, match->recall)},
                   {"auc", delta(r.metrics.auc, match->auc)}}},
    });
  }
  return {{"dataset", std::string(dataset)}, {"rows", std::move(rows)}};
}

std::string sweep_to_text(const SweepReport& report) {
  std::ostringstream out;
  out << "dataset: " << report.original_count << " rows, " << report.removed
      << " removed as contradictory, " << report.surviving << " kept; binning "
      << to_string(report.binning) << "\n";
  out << "config: split " << to_string(report.config.split) << ", include_instances "
      << to_string(report.config.mining.include_instances) << ", min_len "
      << report.config.mining.min_pattern_len << ", p " << report.config.scoring.exponent << ", r "
      << format_number(report.config.scoring.r) << "\n\n";
  const char* head[] = {"ratio", "train_anom", "train_norm", "test_anom", "test_norm", "accuracy",
                        "recall",  "precision",  "auc",        "cnp",       "cap"};
  const std::size_t w[] = {7, 11, 11, 10, 10, 9, 9, 10, 9, 10, 10};
  for (std::size_t i = 0; i < std::size(head); ++i) out << pad(head[i], w[i]);
  out << '\n';
  for (const auto& r : report.rows) {
    const std::string ratio = std::to_string(r.ratio / 10) + "|" + std::to_string(10 - r.ratio / 10);
    const std::string label = r.ratio % 10 == 0 ? ratio : std::to_string(r.ratio) + "%";
    out << pad(label, w[0]);
    if (r.error) {
      out << "  error: " << *r.error << '\n';
      continue;
    }
    out << pad(std::to_string(r.train.anomalous), w[1]) << pad(std::to_string(r.train.normal), w[2])
        << pad(std::to_string(r.test.anomalous), w[3]) << pad(std::to_string(r.test.normal), w[4])
        << pad(cell(r.metrics.accuracy), w[5]) << pad(cell(r.metrics.recall), w[6])
        << pad(cell(r.metrics.precision), w[7]) << pad(cell(r.metrics.auc), w[8])
        << pad(std::to_string(r.cnp), w[9]) << pad(std::to_string(r.cap), w[10]) << '\n';
  }
  return out.str();
}

json strip_timings(json report) {
  report.erase("timings");
  return report;
}

}  // namespace ig
