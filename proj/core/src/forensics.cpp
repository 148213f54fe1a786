#include "ig/forensics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace ig {

using nlohmann::json;

std::string_view to_string(BankSide side) { return side == BankSide::cnp ? "cnp" : "cap"; }

BankSide parse_side(std::string_view s) {
  if (s == "cnp") return BankSide::cnp;
  if (s == "cap") return BankSide::cap;
  throw Error(ErrorKind::invalid_config, "side must be cnp or cap", "side");
}

bool forensic_order(const Pattern& a, const Pattern& b) {
  if (a.freq != b.freq) return a.freq > b.freq;
  if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
  return a.tokens < b.tokens;
}

std::vector<ForensicsEntry> top_patterns(const PatternBank& bank, BankSide side, std::size_t k,
                                         const ColumnStats* stats) {
  if (k < 1) throw Error(ErrorKind::invalid_config, "top-k must be at least 1", "top_k");
  const auto& ps = side == BankSide::cnp ? bank.cnp : bank.cap;
  std::vector<std::size_t> idx(ps.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t n = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(),
                    [&](std::size_t a, std::size_t b) { return forensic_order(ps[a], ps[b]); });
  std::vector<ForensicsEntry> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ForensicsEntry e;
    e.rank = i + 1;
    e.pattern = ps[idx[i]];
    e.support = e.pattern.freq;
    if (stats) e.decoded = decode_pattern(e.pattern, *stats);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::string signed_edge(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v < 0 ? -v : v);
  return (v < 0 ? std::string("−") : std::string()) + buf;
}

std::string token_label(const Token& t) {
  return std::to_string(t.column) + "|" + std::to_string(t.code);
}

}  // namespace

std::string decode_token(const Token& token, const ColumnStats& stats) {
  if (token.column >= stats.width()) {
    throw Error(ErrorKind::unknown_token, "token " + token_label(token) + " names an unknown column",
                token_label(token));
  }
  const auto& col = stats.columns[token.column];
  if (token.code >= col.cardinality(stats.mode)) {
    throw Error(ErrorKind::unknown_token,
                "token " + token_label(token) + " has no code in column '" + col.name + "'",
                token_label(token));
  }
  if (col.kind == StatsKind::token) return col.values[token.code];
  if (col.binned(stats.mode)) {
    if (token.code == kSigmaMissingCode) return col.name + " = " + std::string(kNotNumber);
    const int bin = static_cast<int>(token.code) - kMaxSigmaBin;
    if (bin == kMaxSigmaBin) return col.name + ": z≥" + signed_edge(bin - 0.5) + "σ";
    if (bin == -kMaxSigmaBin) return col.name + ": z<" + signed_edge(bin + 0.5) + "σ";
    return col.name + ": z∈[" + signed_edge(bin - 0.5) + "," + signed_edge(bin + 0.5) + ")σ";
  }
  return col.name + " = " + col.values[token.code];
}

std::vector<std::string> decode_pattern(const Pattern& p, const ColumnStats& stats) {
  std::vector<std::string> out;
  out.reserve(p.tokens.size());
  for (const auto& t : p.tokens) out.push_back(decode_token(t, stats));
  return out;
}

PatternDiff diff_patterns(const Pattern& a, const Pattern& b) {
  PatternDiff d;
  std::size_t i = 0, j = 0;
  while (i < a.tokens.size() || j < b.tokens.size()) {
    if (j == b.tokens.size() || (i < a.tokens.size() && a.tokens[i].column < b.tokens[j].column)) {
      d.blue.push_back(a.tokens[i++].column);
    } else if (i == a.tokens.size() || b.tokens[j].column < a.tokens[i].column) {
      d.blue.push_back(b.tokens[j++].column);
    } else {
      (a.tokens[i].code == b.tokens[j].code ? d.green : d.red).push_back(a.tokens[i].column);
      ++i;
      ++j;
    }
  }
  return d;
}

std::vector<Contrast> contrast_paths(const std::vector<ForensicsEntry>& paths,
                                     const std::vector<ForensicsEntry>& contrast) {
  std::vector<Contrast> out;
  if (contrast.empty()) return out;
  for (const auto& p : paths) {
    Contrast best{p.rank, 0, {}};
    std::size_t best_green = 0;
    for (const auto& c : contrast) {
      auto d = diff_patterns(p.pattern, c.pattern);
      if (best.contrast_rank == 0 || d.green.size() > best_green) {
        best_green = d.green.size();
        best.contrast_rank = c.rank;
        best.diff = std::move(d);
      }
    }
    out.push_back(std::move(best));
  }
  return out;
}

namespace {

const Token* find_column(const Pattern& p, std::uint32_t column) {
  for (const auto& t : p.tokens) {
    if (t.column == column) return &t;
  }
  return nullptr;
}

std::string describe(const Token& t, const ColumnStats* stats) {
  return stats ? decode_token(t, *stats) : token_label(t);
}

json tokens_json(const Pattern& p) {
  json arr = json::array();
  for (const auto& t : p.tokens) arr.push_back({t.column, t.code});
  return arr;
}

json contrast_json(const Contrast& c, const std::vector<ForensicsEntry>& paths,
                   const std::vector<ForensicsEntry>& contrast, const ColumnStats* stats) {
  const auto& a = paths[c.path_rank - 1].pattern;
  const auto& b = contrast[c.contrast_rank - 1].pattern;
  json green = json::array(), red = json::array(), blue = json::array();
  for (auto col : c.diff.green) green.push_back(describe(*find_column(a, col), stats));
  for (auto col : c.diff.red) {
    red.push_back({{"path", describe(*find_column(a, col), stats)},
                   {"contrast", describe(*find_column(b, col), stats)}});
  }
  for (auto col : c.diff.blue) {
    const Token* ta = find_column(a, col);
    blue.push_back({{"in", ta ? "path" : "contrast"},
                    {"token", describe(ta ? *ta : *find_column(b, col), stats)}});
  }
  return {{"rank", c.path_rank},
          {"contrast_rank", c.contrast_rank},
          {"green", std::move(green)},
          {"red", std::move(red)},
          {"blue", std::move(blue)}};
}

}  // namespace

json forensics_to_json(BankSide side, const std::vector<ForensicsEntry>& entries,
                       const std::vector<ForensicsEntry>& contrast, const ColumnStats* stats) {
  json arr = json::array();
  for (const auto& e : entries) {
    json item = {{"rank", e.rank},
                 {"support", e.support},
                 {"length", e.pattern.size()},
                 {"tokens", tokens_json(e.pattern)}};
    if (stats) item["decoded"] = e.decoded.empty() ? decode_pattern(e.pattern, *stats) : e.decoded;
    arr.push_back(std::move(item));
  }
  json contrasts = json::array();
  for (const auto& c : contrast_paths(entries, contrast)) {
    contrasts.push_back(contrast_json(c, entries, contrast, stats));
  }
  return {{"side", std::string(to_string(side))},
          {"contrast_side", side == BankSide::cap ? "cnp" : "cap"},
          {"entries", std::move(arr)},
          {"contrast", std::move(contrasts)}};
}

std::string forensics_to_text(BankSide side, const std::vector<ForensicsEntry>& entries,
                              const std::vector<ForensicsEntry>& contrast, const ColumnStats* stats) {
  std::ostringstream out;
  out << "Most frequent " << (side == BankSide::cap ? "intrusion paths (CAP)" : "normal paths (CNP)")
      << "\n";
  if (entries.empty()) out << "  (none)\n";
  for (const auto& e : entries) {
    out << "#" << e.rank << "  support " << e.support << "  length " << e.pattern.size() << "\n";
    for (const auto& t : e.pattern.tokens) out << "    " << describe(t, stats) << "\n";
  }
  const auto contrasts = contrast_paths(entries, contrast);
  if (!contrasts.empty()) {
    out << "\nContrast with closest " << (side == BankSide::cap ? "CNP" : "CAP")
        << " (green = identical, red = same feature different value, blue = one side only)\n";
  }
  for (const auto& c : contrasts) {
    const auto& a = entries[c.path_rank - 1].pattern;
    const auto& b = contrast[c.contrast_rank - 1].pattern;
    out << "#" << c.path_rank << " vs #" << c.contrast_rank << "\n";
    for (auto col : c.diff.green) out << "    green  " << describe(*find_column(a, col), stats) << "\n";
    for (auto col : c.diff.red) {
      out << "    red    " << describe(*find_column(a, col), stats) << "  |  "
          << describe(*find_column(b, col), stats) << "\n";
    }
    for (auto col : c.diff.blue) {
      const Token* ta = find_column(a, col);
      out << "    blue   " << (ta ? "" : "(contrast) ") << describe(ta ? *ta : *find_column(b, col), stats)
          << "\n";
    }
  }
  return out.str();
}

std::string forensics_to_dot(BankSide side, const std::vector<ForensicsEntry>& entries,
                             const ColumnStats* stats) {
  auto escape = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o.push_back('\\');
      o.push_back(c);
    }
    return o;
  };
  std::ostringstream out;
  out << "graph " << to_string(side) << "_paths {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& e : entries) {
    std::string label = "#" + std::to_string(e.rank) + " support " + std::to_string(e.support);
    for (const auto& t : e.pattern.tokens) label += "\\n" + escape(describe(t, stats));
    out << "  p" << e.rank << " [label=\"" << label << "\"];\n";
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto d = diff_patterns(entries[i].pattern, entries[j].pattern);
      if (d.green.empty()) continue;
      out << "  p" << entries[i].rank << " -- p" << entries[j].rank << " [label=\"" << d.green.size()
          << "\", color=green];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ig
