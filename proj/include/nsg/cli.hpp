#pragma once

// The nsg command line: count, verify and inspect.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage error,
// 3 a resource limit or counter overflow was hit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "report.hpp"
#include "semigroup.hpp"
#include "tree.hpp"
#include "verifier.hpp"

namespace nsg::cli {

enum Exit : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kLimit = 3 };

struct RunConfig {
  std::string subcommand;
  int max_genus = 20;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string format;  // csv | json; empty means the subcommand's default
  std::string out_path;
  bool check_oracle = false;
  bool partition = false;
  bool exact = false;
  std::string suite;
  VerifyGrid grid;
  std::string gaps;
};

namespace detail {

/// --out target or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline std::string join(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n ") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

inline int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto counts = count_ng(cfg.max_genus, {cfg.threads, 14, cfg.partition});
  int status = kOk;
  if (cfg.check_oracle) {
    int top = std::min(cfg.max_genus, 14);
    if (top < cfg.max_genus) err << "oracle check covers g <= 14 only\n";
    auto oracle = oracle_count_ng(top);
    for (int g = 0; g <= top; ++g) {
      auto i = static_cast<std::size_t>(g);
      if (oracle.n[i] != counts.n[i] || oracle.t[i] != counts.t[i]) {
        err << "oracle mismatch at g=" << g << ": tree n=" << counts.n[i] << " t=" << counts.t[i]
            << ", oracle n=" << oracle.n[i] << " t=" << oracle.t[i] << '\n';
        status = kVerificationFailed;
      }
    }
    if (status == kOk) err << "oracle agrees for g <= " << top << '\n';
  }
  ReportOptions opt;
  opt.format = cfg.format == "json" ? TableFormat::Json : TableFormat::Csv;
  opt.exact = cfg.exact;
  detail::Sink sink(cfg.out_path, out);
  write_table(sink.get(), genus_rows(counts), opt);
  return status;
}

inline void write_ledger_csv(std::ostream& out, const std::vector<SuiteReport>& reports) {
  out << "suite,claim,params,lhs,relation,rhs,holds,boundary\n";
  for (const auto& rep : reports)
    for (const auto& r : rep.results)
      out << rep.suite << ',' << detail::csv_field(r.claim) << ',' << detail::csv_field(r.params.dump()) << ','
          << detail::csv_field(r.lhs) << ',' << detail::csv_field(r.relation) << ',' << detail::csv_field(r.rhs) << ','
          << (r.holds ? "true" : "false") << ',' << (r.boundary ? "true" : "false") << '\n';
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto reports = run_suite(cfg.suite, cfg.grid, cfg.threads);
  bool ok = true;
  for (const auto& rep : reports) ok = ok && rep.passed();

  bool ledger = !cfg.format.empty() || !cfg.out_path.empty();
  detail::Sink sink(cfg.out_path, out);
  // the summary moves to stderr when the ledger itself goes to stdout
  std::ostream& summary = ledger && !sink.to_file() ? err : out;
  for (const auto& rep : reports) {
    summary << rep.suite << ": " << rep.results.size() << " results, " << rep.violations() << " violations, "
            << rep.boundary_cases() << " boundary cases -> " << (rep.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& r : rep.results)
      if (!r.holds && !r.params.contains("instances"))
        summary << "  violated " << r.claim << ' ' << r.params.dump() << ": " << r.lhs << ' ' << r.relation << ' '
                << r.rhs << '\n';
  }
  if (ledger) {
    if (cfg.format == "csv")
      write_ledger_csv(sink.get(), reports);
    else
      sink.get() << ledger_json(reports).dump(1) << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

inline int cmd_inspect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<NumericalSemigroup> parsed;
  try {
    parsed = NumericalSemigroup::from_gaps(parse_gap_list(cfg.gaps));
  } catch (const NotASemigroup& e) {
    err << "not a numerical semigroup: " << e.x() << " + " << e.y() << " = " << e.x() + e.y()
        << " is listed as a gap\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "bad gap list: " << e.what() << '\n';
    return kUsage;
  }
  const auto& s = *parsed;
  const auto& gens = s.generators();
  detail::Sink sink(cfg.out_path, out);
  std::ostream& o = sink.get();
  if (cfg.format == "json") {
    auto j = to_json(s);
    j["minimal"] = gens.minimal;
    j["effective"] = gens.effective;
    j["strong"] = is_strongly_descended(s);
    j["orderly"] = is_orderly(s);
    j["children"] = nlohmann::json::array();
    for (const auto& c : children(s))
      j["children"].push_back({{"removed", c.generator}, {"gaps", to_string(c.semigroup)},
                               {"descent", to_string(descent_type(s, c.generator))}});
    o << j.dump(2) << '\n';
    return kOk;
  }
  o << "gaps " << to_string(s) << '\n';
  o << "m=" << s.multiplicity() << " f=" << s.frobenius() << " g=" << s.genus() << " h=" << s.efficacy()
    << " strong=" << (is_strongly_descended(s) ? "true" : "false") << " orderly=" << (is_orderly(s) ? "true" : "false")
    << '\n';
  o << "minimal " << detail::join(gens.minimal) << '\n';
  o << "effective " << detail::join(gens.effective) << '\n';
  for (const auto& c : children(s))
    o << "child -" << c.generator << ' ' << to_string(c.semigroup) << ' ' << to_string(descent_type(s, c.generator))
      << '\n';
  return kOk;
}

/// Parses and runs one command line; all output goes to `out` and `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numerical semigroups by genus: counts, lemma checks, inspection"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "tabulate n_g, t_g and derived ratios");
  count->add_option("--max-genus", cfg.max_genus, "largest genus")->check(CLI::NonNegativeNumber);
  count->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1U, 1024U));
  count->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  count->add_option("--out", cfg.out_path, "write the table here instead of stdout");
  count->add_flag("--check-oracle", cfg.check_oracle, "compare with the gap-subset oracle (g <= 14)");
  count->add_flag("--partition", cfg.partition, "add the n_g1, n_g2, n_g3 columns");
  count->add_flag("--exact", cfg.exact, "exact values instead of 12-digit decimals");

  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", cfg.suite, "suite name")->required()->check(CLI::IsMember(suites));
  verify->add_option("--max-genus", cfg.grid.max_genus, "genus bound for tree-based suites")->check(CLI::NonNegativeNumber);
  verify->add_option("--m-max", cfg.grid.m_max, "largest m on weight grids")->check(CLI::Range(1, 40));
  verify->add_option("--fm-max", cfg.grid.fm_max, "largest f - m on weight grids")->check(CLI::Range(0, 20));
  verify->add_option("--d-max", cfg.grid.d_max, "largest d on weight grids")->check(CLI::Range(1, 40));
  verify->add_option("--i-max", cfg.grid.i_max, "largest i for the convergence sum")->check(CLI::Range(0, 7));
  verify->add_option("--threads", cfg.threads, "worker threads for counting")->check(CLI::Range(1U, 1024U));
  verify->add_option("--format", cfg.format, "ledger format, csv or json")->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", cfg.out_path, "write the ledger here");

  auto* inspect = app.add_subcommand("inspect", "describe one semigroup");
  inspect->add_option("--gaps", cfg.gaps, "comma-separated gaps, e.g. 1,2,4")->required();
  inspect->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  inspect->add_option("--out", cfg.out_path, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (count->parsed()) return cmd_count(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    return cmd_inspect(cfg, out, err);
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const CounterOverflow& e) {
    err << "counter overflow: " << e.what() << '\n';
    return kLimit;
  } catch (const std::invalid_argument& e) {
    err << "invalid arguments: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace nsg::cli
