#pragma once

// Genus tables for the count command: n_g, t_g, the optional partition
// counts, and three derived columns (n_g / n_{g-1}, n_g phi^-g, t_g / n_g).
// Derived values print to 12 significant digits, or exactly on request.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "golden.hpp"
#include "tree.hpp"

namespace nsg {

enum class TableFormat { Csv, Json };

struct ReportOptions {
  TableFormat format = TableFormat::Csv;
  bool exact = false;
  int digits = 12;
};

struct GenusRow {
  int g = 0;
  std::uint64_t n = 0, t = 0;
  std::optional<std::uint64_t> n1, n2, n3;
  std::optional<QuadraticNumber> ratio_prev;  // absent for g = 0
  QuadraticNumber ng_phi_g;
  QuadraticNumber tg_over_ng;
};

inline std::vector<GenusRow> genus_rows(const GenusCounters& c) {
  std::vector<GenusRow> rows;
  for (std::size_t i = 0; i < c.n.size(); ++i) {
    GenusRow r;
    r.g = static_cast<int>(i);
    r.n = c.n[i];
    r.t = c.t[i];
    if (c.partition) {
      r.n1 = c.n1[i];
      r.n2 = c.n2[i];
      r.n3 = c.n3[i];
    }
    BigInt n(static_cast<unsigned long>(r.n)), t(static_cast<unsigned long>(r.t));
    if (i > 0) r.ratio_prev = QuadraticNumber::rational(n, BigInt(static_cast<unsigned long>(c.n[i - 1])));
    r.ng_phi_g = QuadraticNumber(n, 0, 1) * phi_pow(-static_cast<long>(i));
    r.tg_over_ng = QuadraticNumber::rational(t, n);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Rationals print as "p/q", everything else in the (a + b*sqrt5)/c form.
inline std::string render_exact(const QuadraticNumber& x) {
  if (x.is_rational()) return x.c() == 1 ? x.a().get_str() : x.a().get_str() + "/" + x.c().get_str();
  return x.to_string();
}

inline std::string render(const QuadraticNumber& x, const ReportOptions& opt) {
  return opt.exact ? render_exact(x) : x.to_decimal(opt.digits);
}

inline std::vector<std::string> table_columns(bool partition) {
  std::vector<std::string> cols{"g", "n_g", "t_g"};
  if (partition) cols.insert(cols.end(), {"n_g1", "n_g2", "n_g3"});
  cols.insert(cols.end(), {"ratio_prev", "ng_phi_g", "tg_over_ng"});
  return cols;
}

inline void write_csv(std::ostream& out, const std::vector<GenusRow>& rows, const ReportOptions& opt) {
  bool partition = !rows.empty() && rows.front().n1.has_value();
  auto cols = table_columns(partition);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  // exact values contain no commas, but the surd form has blanks; quote it
  auto cell = [&](const QuadraticNumber& x) {
    std::string s = render(x, opt);
    return s.find(' ') == std::string::npos ? s : "\"" + s + "\"";
  };
  for (const auto& r : rows) {
    out << r.g << ',' << r.n << ',' << r.t;
    if (partition) out << ',' << *r.n1 << ',' << *r.n2 << ',' << *r.n3;
    out << ',' << (r.ratio_prev ? cell(*r.ratio_prev) : "") << ',' << cell(r.ng_phi_g) << ',' << cell(r.tg_over_ng) << '\n';
  }
}

inline nlohmann::ordered_json table_json(const std::vector<GenusRow>& rows, const ReportOptions& opt) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j{{"g", r.g}, {"n_g", r.n}, {"t_g", r.t}};
    if (r.n1) {
      j["n_g1"] = *r.n1;
      j["n_g2"] = *r.n2;
      j["n_g3"] = *r.n3;
    }
    j["ratio_prev"] = r.ratio_prev ? nlohmann::ordered_json(render(*r.ratio_prev, opt)) : nlohmann::ordered_json(nullptr);
    j["ng_phi_g"] = render(r.ng_phi_g, opt);
    j["tg_over_ng"] = render(r.tg_over_ng, opt);
    out.push_back(std::move(j));
  }
  return out;
}

inline void write_table(std::ostream& out, const std::vector<GenusRow>& rows, const ReportOptions& opt) {
  if (opt.format == TableFormat::Csv)
    write_csv(out, rows, opt);
  else
    out << table_json(rows, opt).dump(2) << '\n';
}

}  // namespace nsg
