#include "ig/mining.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "ig/hash.hpp"
#include "ig/parallel.hpp"

namespace ig {

using nlohmann::json;

std::string_view to_string(IncludeInstances mode) {
  switch (mode) {
    case IncludeInstances::off: return "off";
    case IncludeInstances::dedup: return "dedup";
    case IncludeInstances::multiset: return "multiset";
  }
  return "off";
}

IncludeInstances parse_include_instances(std::string_view s) {
  if (s == "off") return IncludeInstances::off;
  if (s == "dedup") return IncludeInstances::dedup;
  if (s == "multiset") return IncludeInstances::multiset;
  throw Error(ErrorKind::invalid_config,
              "unknown include_instances '" + std::string(s) + "'; expected off, dedup or multiset",
              "include_instances");
}

void MiningConfig::validate() const {
  if (min_pattern_len < 1) {
    throw Error(ErrorKind::invalid_config, "min_pattern_len must be >= 1", "min_pattern_len");
  }
}

namespace {

// Distinct code arrays in first-appearance order, with multiplicities.
struct UniqueRows {
  std::size_t width = 0;
  std::size_t count = 0;
  std::vector<Code> codes;
  std::vector<std::uint64_t> multiplicity;

  std::span<const Code> row(std::size_t i) const { return {codes.data() + i * width, width}; }
};

std::size_t common_width(std::span<const EncodedInstance> instances) {
  if (instances.empty()) return 0;
  const std::size_t w = instances.front().codes.size();
  for (const auto& inst : instances) {
    if (inst.codes.size() != w) {
      throw Error(ErrorKind::invalid_config, "instances have differing widths");
    }
  }
  return w;
}

UniqueRows unique_rows(std::span<const EncodedInstance> instances) {
  UniqueRows u;
  u.width = common_width(instances);
  std::unordered_map<std::vector<Code>, std::size_t, CodeVectorHash> index;
  index.reserve(instances.size());
  for (const auto& inst : instances) {
    auto [it, inserted] = index.emplace(inst.codes, u.count);
    if (inserted) {
      u.codes.insert(u.codes.end(), inst.codes.begin(), inst.codes.end());
      u.multiplicity.push_back(1);
      ++u.count;
    } else {
      ++u.multiplicity[it->second];
    }
  }
  return u;
}

void full_tokens(std::span<const Code> row, std::vector<Token>& out) {
  out.clear();
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] != kAbsent) out.push_back({static_cast<std::uint32_t>(c), row[c]});
  }
}

void intersect_rows(std::span<const Code> a, std::span<const Code> b, std::vector<Token>& out) {
  out.clear();
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] == b[c] && a[c] != kAbsent) out.push_back({static_cast<std::uint32_t>(c), a[c]});
  }
}

std::vector<Pattern> generate(const UniqueRows& rows, const MiningConfig& cfg, int threads) {
  const std::size_t min_len = std::max<std::size_t>(1, cfg.min_pattern_len);
  const int workers = std::max(1, std::min<int>(resolve_threads(threads),
                                                static_cast<int>(std::max<std::size_t>(rows.count, 1))));
  std::vector<PatternTable> tables(static_cast<std::size_t>(workers));

  // Row u pairs with every later row; rows are dealt round-robin so the
  // triangular workload spreads evenly.
  parallel_chunks(static_cast<std::size_t>(workers), workers, [&](std::size_t, std::size_t, int w) {
    auto& table = tables[static_cast<std::size_t>(w)];
    std::vector<Token> buf;
    buf.reserve(rows.width);
    for (std::size_t u = static_cast<std::size_t>(w); u < rows.count; u += static_cast<std::size_t>(workers)) {
      const auto ru = rows.row(u);
      const auto mu = rows.multiplicity[u];
      if (mu >= 2) {
        full_tokens(ru, buf);
        if (buf.size() >= min_len) table.add(buf, mu * (mu - 1) / 2);
      }
      for (std::size_t v = u + 1; v < rows.count; ++v) {
        intersect_rows(ru, rows.row(v), buf);
        if (buf.size() >= min_len) table.add(buf, mu * rows.multiplicity[v]);
      }
      if (cfg.include_instances != IncludeInstances::off) {
        full_tokens(ru, buf);
        if (buf.size() >= min_len) {
          table.add(buf, cfg.include_instances == IncludeInstances::multiset ? mu : 1);
        }
      }
    }
  });
  for (std::size_t w = 1; w < tables.size(); ++w) tables[0].merge(tables[w]);
  return tables[0].sorted();
}

std::uint64_t pairs_of(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace

SupersetIndex::SupersetIndex(std::span<const EncodedInstance> instances) {
  const auto u = ig::unique_rows(instances);
  width_ = u.width;
  rows_ = u.count;
  words_ = (rows_ + 63) / 64;
  codes_ = u.codes;
  postings_.resize(width_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) {
      const Code code = codes_[r * width_ + c];
      if (code == kAbsent) continue;
      auto& col = postings_[c];
      if (col.size() <= code) col.resize(static_cast<std::size_t>(code) + 1);
      col[code].push_back(static_cast<std::uint32_t>(r));
    }
  }
  bit_offset_.resize(width_);
  for (std::size_t c = 0; c < width_; ++c) {
    bit_offset_[c].assign(postings_[c].size(), std::string::npos);
    for (std::size_t code = 0; code < postings_[c].size(); ++code) {
      const auto& list = postings_[c][code];
      if (list.empty() || list.size() * 64 < rows_) continue;
      bit_offset_[c][code] = bits_.size();
      bits_.resize(bits_.size() + words_, 0);
      for (auto r : list) bits_[bit_offset_[c][code] + r / 64] |= std::uint64_t{1} << (r % 64);
    }
  }
}

SupersetIndex::Posting SupersetIndex::postings(const Token& t) const {
  if (t.column >= width_) return {};
  const auto& col = postings_[t.column];
  if (t.code >= col.size()) return {};
  const auto off = bit_offset_[t.column][t.code];
  return {col[t.code], off == std::string::npos ? nullptr : bits_.data() + off};
}

bool SupersetIndex::any_superset(std::span<const Token> pattern) const {
  if (pattern.empty()) return rows_ > 0;
  thread_local std::vector<std::pair<Posting, Token>> order;
  order.clear();
  for (const auto& t : pattern) {
    const auto p = postings(t);
    if (p.rows.empty()) return false;
    order.emplace_back(p, t);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first.rows.size() < b.first.rows.size(); });

  if (!order.front().first.bits) {
    for (auto r : order.front().first.rows) {
      const Code* row = codes_.data() + static_cast<std::size_t>(r) * width_;
      bool all = true;
      for (std::size_t i = 1; i < order.size() && all; ++i) all = row[order[i].second.column] == order[i].second.code;
      if (all) return true;
    }
    return false;
  }

  thread_local std::vector<std::uint64_t> acc;
  acc.assign(order.front().first.bits, order.front().first.bits + words_);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const std::uint64_t* b = order[i].first.bits;
    std::uint64_t any = 0;
    for (std::size_t w = 0; w < words_; ++w) any |= (acc[w] &= b[w]);
    if (!any) return false;
  }
  return true;
}

std::vector<Pattern> pairwise_patterns(std::span<const EncodedInstance> instances,
                                       const MiningConfig& cfg, int threads) {
  cfg.validate();
  return generate(unique_rows(instances), cfg, threads);
}

std::vector<Pattern> filter_coherent(std::vector<Pattern> patterns,
                                     std::span<const EncodedInstance> opposite, int threads) {
  if (opposite.empty()) return patterns;
  const SupersetIndex index(opposite);
  std::vector<std::uint8_t> keep(patterns.size(), 0);
  parallel_chunks(patterns.size(), resolve_threads(threads), [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) keep[i] = index.any_superset(patterns[i].tokens) ? 0 : 1;
  });
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (keep[i]) out.push_back(std::move(patterns[i]));
  }
  return out;
}

PatternBank mine(std::span<const EncodedInstance> train, const MiningConfig& cfg, int threads) {
  cfg.validate();
  PatternBank bank;
  bank.config = cfg;
  bank.width = common_width(train);
  std::vector<EncodedInstance> normals, anomalies;
  for (const auto& inst : train) {
    (inst.label == Label::normal ? normals : anomalies).push_back(inst);
  }
  auto side = [&](const std::vector<EncodedInstance>& own, const std::vector<EncodedInstance>& other,
                  SideProvenance& prov) {
    const auto rows = unique_rows(own);
    auto generated = generate(rows, cfg, threads);
    prov.instances = own.size();
    prov.unique_instances = rows.count;
    prov.pairs_examined = pairs_of(own.size());
    prov.patterns_generated = generated.size();
    auto coherent = filter_coherent(std::move(generated), other, threads);
    prov.patterns_coherent = coherent.size();
    return coherent;
  };
  bank.cnp = side(normals, anomalies, bank.provenance.normal);
  bank.cap = side(anomalies, normals, bank.provenance.anomalous);
  return bank;
}

PatternBank reference_mine(std::span<const EncodedInstance> train, const MiningConfig& cfg) {
  cfg.validate();
  PatternBank bank;
  bank.config = cfg;
  bank.width = common_width(train);
  const std::size_t min_len = std::max<std::size_t>(1, cfg.min_pattern_len);

  std::vector<std::vector<Token>> normals, anomalies;
  for (const auto& inst : train) {
    (inst.label == Label::normal ? normals : anomalies).push_back(inst.tokens());
  }

  auto side = [&](const std::vector<std::vector<Token>>& own,
                  const std::vector<std::vector<Token>>& other, SideProvenance& prov) {
    std::map<std::vector<Token>, std::uint64_t> counts;
    for (std::size_t i = 0; i < own.size(); ++i) {
      for (std::size_t j = i + 1; j < own.size(); ++j) {
        std::vector<Token> common;
        std::set_intersection(own[i].begin(), own[i].end(), own[j].begin(), own[j].end(),
                              std::back_inserter(common));
        if (!common.empty() && common.size() >= min_len) ++counts[common];
      }
    }
    const std::set<std::vector<Token>> distinct(own.begin(), own.end());
    if (cfg.include_instances == IncludeInstances::multiset) {
      for (const auto& t : own) {
        if (!t.empty() && t.size() >= min_len) ++counts[t];
      }
    } else if (cfg.include_instances == IncludeInstances::dedup) {
      for (const auto& t : distinct) {
        if (!t.empty() && t.size() >= min_len) ++counts[t];
      }
    }
    prov.instances = own.size();
    prov.unique_instances = distinct.size();
    prov.pairs_examined = pairs_of(own.size());
    prov.patterns_generated = counts.size();

    std::vector<Pattern> kept;
    for (const auto& [tokens, freq] : counts) {
      bool contained = false;
      for (const auto& inst : other) {
        if (std::includes(inst.begin(), inst.end(), tokens.begin(), tokens.end())) {
          contained = true;
          break;
        }
      }
      if (!contained) kept.push_back({tokens, freq});
    }
    prov.patterns_coherent = kept.size();
    return kept;
  };
  bank.cnp = side(normals, anomalies, bank.provenance.normal);
  bank.cap = side(anomalies, normals, bank.provenance.anomalous);
  return bank;
}

json to_json(const MiningConfig& cfg) {
  return {{"include_instances", std::string(to_string(cfg.include_instances))},
          {"min_pattern_len", cfg.min_pattern_len}};
}

namespace {

json to_json(const SideProvenance& p) {
  return {{"instances", p.instances},
          {"unique_instances", p.unique_instances},
          {"pairs_examined", p.pairs_examined},
          {"patterns_generated", p.patterns_generated},
          {"patterns_coherent", p.patterns_coherent}};
}

json patterns_json(const std::vector<Pattern>& ps) {
  json arr = json::array();
  for (const auto& p : ps) {
    json toks = json::array();
    for (const auto& t : p.tokens) toks.push_back({t.column, t.code});
    arr.push_back({{"tokens", std::move(toks)}, {"freq", p.freq}});
  }
  return arr;
}

}  // namespace

json to_json(const MiningProvenance& p) {
  return {{"normal", to_json(p.normal)}, {"anomalous", to_json(p.anomalous)}};
}

json bank_to_json(const PatternBank& bank) {
  return {{"format", "ig-bank/1"},
          {"config", to_json(bank.config)},
          {"provenance", to_json(bank.provenance)},
          {"width", bank.width},
          {"dictionary_fingerprint", bank.dictionary_fingerprint},
          {"cnp", patterns_json(bank.cnp)},
          {"cap", patterns_json(bank.cap)}};
}

}  // namespace ig
