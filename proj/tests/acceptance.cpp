// One line per acceptance criterion. Exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nsg/verifier.hpp"
#include "oracles.hpp"

namespace {

// tolerances and budgets
constexpr int kOracleGenus = 12;
constexpr int kAncestorGenus = 14;
constexpr int kPartitionGenus = 30;
constexpr int kPerfGenus = 40;
constexpr double kPerfBudgetSeconds = 600.0;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// violations among results whose claim is listed (all claims if the list is empty)
std::size_t violations(const nsg::SuiteReport& rep, const std::vector<std::string>& claims = {}) {
  std::size_t bad = 0;
  for (const auto& r : rep.results) {
    bool wanted = claims.empty();
    for (const auto& c : claims) wanted = wanted || r.claim == c;
    if (wanted && !r.holds) ++bad;
  }
  return bad;
}

std::string first_witness(const nsg::SuiteReport& rep) {
  for (const auto& r : rep.results)
    if (!r.holds && !r.params.contains("instances"))
      return r.claim + " " + r.params.dump() + ": " + r.lhs + " " + r.relation + " " + r.rhs;
  return "";
}

Outcome oracle_equivalence() {
  auto counts = nsg::count_ng(kOracleGenus);
  std::string bad;
  if (counts.n[0] != 1 || counts.n[1] != 1) bad += " n_0/n_1";
  for (int g = 2; g <= kOracleGenus; ++g)
    if (counts.n[static_cast<std::size_t>(g)] != oracle::all_of_genus(g).size()) bad += " g=" + std::to_string(g);
  return {bad.empty(), bad.empty() ? "n_g matches the gap-subset oracle for g <= 12" : "mismatch at" + bad};
}

Outcome ancestor_decomposition(const nsg::SuiteReport& ng) {
  auto anc = violations(ng, {"ancestor-decomposition", "ng1-zero", "partition-sum"});
  auto wide = nsg::count_ng(kPartitionGenus, {0, 14, true});
  std::size_t n1 = 0;
  for (auto v : wide.n1) n1 += v != 0;
  return {anc == 0 && n1 == 0, std::to_string(anc) + " violations for g <= 14; n_g1 nonzero at " + std::to_string(n1) +
                                   " of g <= " + std::to_string(kPartitionGenus)};
}

Outcome suite_clean(const std::vector<nsg::SuiteReport>& reps, const std::vector<std::string>& claims = {}) {
  std::size_t bad = 0, total = 0;
  std::string witness;
  for (const auto& rep : reps) {
    bad += violations(rep, claims);
    total += rep.results.size();
    if (witness.empty()) witness = first_witness(rep);
  }
  std::string detail = std::to_string(bad) + " violations in " + std::to_string(total) + " ledger entries";
  if (bad) detail += "; first: " + witness;
  return {bad == 0, detail};
}

Outcome performance() {
  std::vector<nsg::GenusCounters> runs;
  double four_threads = 0;
  for (unsigned threads : {4U, 2U, 1U}) {
    auto t0 = Clock::now();
    runs.push_back(nsg::count_ng(kPerfGenus, {threads, 14, false}));
    if (threads == 4) four_threads = seconds_since(t0);
  }
  bool same = runs[0].n == runs[1].n && runs[0].n == runs[2].n && runs[0].t == runs[1].t && runs[0].t == runs[2].t;
  bool t_le_n = true;
  for (std::size_t g = 0; g < runs[0].n.size(); ++g) t_le_n = t_le_n && runs[0].t[g] <= runs[0].n[g];

  std::printf("  g   n_g                 n_g*phi^-g      t_g/n_g\n");
  for (std::size_t g = 0; g < runs[0].n.size(); ++g) {
    auto n = nsg::BigInt(static_cast<unsigned long>(runs[0].n[g]));
    auto scaled = nsg::QuadraticNumber(n, 0, 1) * nsg::phi_pow(-static_cast<long>(g));
    auto ratio = nsg::QuadraticNumber::rational(nsg::BigInt(static_cast<unsigned long>(runs[0].t[g])), n);
    std::printf("  %-3zu %-19llu %-15s %s\n", g, static_cast<unsigned long long>(runs[0].n[g]),
                scaled.to_decimal(10).c_str(), ratio.to_decimal(10).c_str());
  }
  bool fast = four_threads <= kPerfBudgetSeconds;
  char buf[160];
  std::snprintf(buf, sizeof buf, "g=40 on 4 threads in %.1f s; 1/2/4 threads %s; t_g <= n_g %s; n_40 = %llu",
                four_threads, same ? "agree" : "DISAGREE", t_le_n ? "holds" : "FAILS",
                static_cast<unsigned long long>(runs[0].n.back()));
  return {fast && same && t_le_n, buf};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    auto t0 = Clock::now();
    Outcome o = fn();
    std::printf("criterion %d %s: %s (%s) [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };

  auto ng = nsg::verify_ng_bound(kAncestorGenus);
  report(1, "oracle equivalence", oracle_equivalence);
  report(2, "ancestor decomposition", [&] { return ancestor_decomposition(ng); });
  report(3, "N_g bounds", [&] { return suite_clean({ng}, {"ng-binomial", "ng-phi-power"}); });
  report(4, "orderly, tau and M(g,h) structure", [] {
    return suite_clean({nsg::verify_orderly(18), nsg::verify_tau(14), nsg::verify_m_bijection(16)});
  });
  report(5, "interval weight", [] { return suite_clean({nsg::verify_interval_weight(20, 14)}); });
  report(6, "main lemma and its proof chain",
         [] { return suite_clean({nsg::verify_main_lemma(16, 12), nsg::verify_section5_chain(16, 12)}); });
  report(7, "transfer-matrix sequences", [] { return suite_clean({nsg::verify_appendix(200)}); });
  report(8, "weight constants", [] { return suite_clean({nsg::verify_weight_constants(10, 12, 4)}); });
  report(9, "performance and determinism", performance);

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
