#include "ig/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace ig {

ConfusionMatrix confusion(std::span<const Verdict> verdicts) {
  ConfusionMatrix cm;
  for (const auto& v : verdicts) {
    const bool pred = v.predicted == Label::anomalous;
    const bool truth = v.truth == Label::anomalous;
    if (pred && truth) ++cm.tp;
    else if (pred) ++cm.fp;
    else if (truth) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
  Metrics m;
  auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  return m;
}

namespace {

std::vector<std::size_t> order_by_score(std::span<const double> scores) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return idx;
}

void check_sizes(std::span<const double> scores, std::span<const Label> truths) {
  if (scores.size() != truths.size()) {
    throw Error(ErrorKind::invalid_config, "scores and truths differ in length");
  }
}

}  // namespace

std::optional<double> auc(std::span<const double> scores, std::span<const Label> truths) {
  check_sizes(scores, truths);
  const auto idx = order_by_score(scores);
  // twice the Mann-Whitney U, kept integral
  std::uint64_t u2 = 0, pos = 0, neg = 0, neg_below = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    std::uint64_t p = 0, n = 0;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
      (truths[idx[j]] == Label::anomalous ? p : n) += 1;
      ++j;
    }
    u2 += 2 * p * neg_below + p * n;
    neg_below += n;
    pos += p;
    neg += n;
    i = j;
  }
  if (pos == 0 || neg == 0) return std::nullopt;
  return static_cast<double>(u2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

std::vector<RocPoint> roc_points(std::span<const double> scores, std::span<const Label> truths) {
  check_sizes(scores, truths);
  auto idx = order_by_score(scores);
  std::reverse(idx.begin(), idx.end());
  std::size_t pos = 0, neg = 0;
  for (auto t : truths) (t == Label::anomalous ? pos : neg) += 1;
  std::vector<RocPoint> out;
  out.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < idx.size();) {
    const double thr = scores[idx[i]];
    while (i < idx.size() && scores[idx[i]] == thr) {
      (truths[idx[i]] == Label::anomalous ? tp : fp) += 1;
      ++i;
    }
    out.push_back({thr, pos ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0,
                   neg ? static_cast<double>(fp) / static_cast<double>(neg) : 0.0});
  }
  return out;
}

void write_roc_csv(std::ostream& out, std::span<const RocPoint> points) {
  out << "threshold,tpr,fpr\n";
  for (const auto& p : points) {
    out << (std::isinf(p.threshold) ? std::string("inf") : format_number(p.threshold)) << ','
        << format_number(p.tpr) << ',' << format_number(p.fpr) << '\n';
  }
}

SweepReport ratio_sweep(const EncodedDataset& ds, const SweepConfig& cfg) {
  cfg.mining.validate();
  cfg.scoring.validate();
  SweepReport report;
  report.config = cfg;
  report.original_count = ds.original_count;
  report.surviving = ds.instances.size();
  report.removed = ds.removed.size();
  report.binning = ds.stats.mode;

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  for (int ratio : cfg.ratios) {
    SweepRow row;
    row.ratio = ratio;
    try {
      const auto split = sequential_split(ds, SplitSpec{ratio, cfg.split});
      row.boundary = split.boundary;
      row.train = class_counts(split.train);
      row.test = class_counts(split.test);

      auto t0 = clock::now();
      auto bank = mine(split.train, cfg.mining, cfg.threads);
      bank.dictionary_fingerprint = {};
      row.mine_ms = ms_since(t0);
      row.provenance = bank.provenance;
      row.cnp = bank.cnp.size();
      row.cap = bank.cap.size();

      t0 = clock::now();
      const auto verdicts = classify_batch(split.test, bank, cfg.scoring, cfg.threads);
      row.classify_ms = ms_since(t0);

      row.cm = confusion(verdicts);
      row.metrics = metrics(row.cm);
      std::vector<double> margins;
      std::vector<Label> truths;
      margins.reserve(verdicts.size());
      truths.reserve(verdicts.size());
      for (const auto& v : verdicts) {
        margins.push_back(v.margin);
        truths.push_back(v.truth);
        switch (v.regulation) {
          case Regulation::r1: ++row.regulations.r1; break;
          case Regulation::r2: ++row.regulations.r2; break;
          case Regulation::r3: ++row.regulations.r3; break;
          case Regulation::none: ++row.regulations.none; break;
        }
      }
      row.metrics.auc = auc(margins, truths);
      if (cfg.keep_roc) row.roc = roc_points(margins, truths);
    } catch (const Error& e) {
      row = SweepRow{};
      row.ratio = ratio;
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

const std::vector<ReferenceRow>* reference_metrics(std::string_view dataset) {
  // ratio, accuracy, recall, precision, auc
  static const std::vector<ReferenceRow> nsl = {
      {10, 0.9389, 0.9353, 0.9426, 0.9402}, {20, 0.9351, 0.9341, 0.9381, 0.9276},
      {30, 0.9108, 0.8437, 0.9798, 0.9291}, {40, 0.9325, 0.9276, 0.9429, 0.9111},
      {50, 0.9296, 0.9175, 0.9496, 0.8952}, {60, 0.9171, 0.9062, 0.9420, 0.8709},
      {70, 0.9435, 0.9752, 0.9290, 0.9602}, {80, 0.9381, 0.9889, 0.9112, 0.9871},
      {90, 0.9671, 0.9650, 0.9776, 0.9931}};
  static const std::vector<ReferenceRow> unsw = {
      {10, 0.9894, 0.9997, 0.9656, 0.9988}, {20, 0.9923, 0.9994, 0.9752, 0.9991},
      {30, 0.9941, 0.9997, 0.9805, 0.9995}, {40, 0.9953, 1.0000, 0.9843, 0.9996},
      {50, 0.9949, 1.0000, 0.9830, 0.9996}, {60, 0.9954, 1.0000, 0.9847, 0.9997},
      {70, 0.9951, 1.0000, 0.9835, 0.9998}, {80, 0.9954, 1.0000, 0.9847, 0.9998},
      {90, 0.9944, 1.0000, 0.9812, 0.9998}};
  static const std::vector<ReferenceRow> ukm = {
      {10, 0.9810, 0.9980, 0.9436, 0.9982}, {20, 0.9709, 1.0000, 0.9125, 0.9995},
      {30, 0.9605, 1.0000, 0.8851, 0.9996}, {40, 0.9631, 1.0000, 0.8918, 0.9999},
      {50, 0.9601, 1.0000, 0.8847, 0.9999}, {60, 0.9595, 1.0000, 0.8832, 0.9999},
      {70, 0.9571, 1.0000, 0.8777, 0.9998}, {80, 0.9631, 1.0000, 0.8949, 0.9998},
      {90, 0.9620, 1.0000, 0.8891, 0.9999}};
  if (dataset == "nsl-kdd") return &nsl;
  if (dataset == "unsw-nb15") return &unsw;
  if (dataset == "ukm-ids20") return &ukm;
  return nullptr;
}

}  // namespace ig
