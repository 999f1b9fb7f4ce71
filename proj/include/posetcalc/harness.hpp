#pragma once

#include <string>
#include <vector>

#include "posetcalc/poset.hpp"

namespace posetcalc {

struct CheckConfig {
  int n_max = 0;              // 0 = per-check default
  long cap = 100000;          // exponent element cap
  int witness_n_max = 5;      // size bound for witness searches
  int jobs = 0;               // worker threads, 0 = hardware concurrency
  int catalog_limit = 8;      // largest size the factor oracle may materialize
  double sample_rate = 0.05;  // share of fast-path rejections re-confirmed in full
  std::string cache_dir;      // optional on-disk catalog cache
};

struct CaseFailure {
  std::string case_id;
  std::string explanation;
};

/// Outcome of one harness check. pass() iff no failures; skipped and
/// inconclusive cases are always listed, never silently dropped.
struct VerificationReport {
  std::string check_name;
  std::string universe;
  long cases_attempted = 0;
  long cases_skipped_cap = 0;
  std::vector<std::string> skipped;
  std::vector<CaseFailure> failures;
  std::vector<std::string> inconclusive;  // bounded witness search came up empty
  std::vector<std::string> discoveries;   // counterexample-hunt hits (exploratory)
  double elapsed_seconds = 0.0;
  bool pass() const { return failures.empty(); }
};

VerificationReport check_prop1(const CheckConfig& cfg = {});
VerificationReport check_lemma9(const CheckConfig& cfg = {});
VerificationReport check_theorem2(const CheckConfig& cfg = {});
VerificationReport check_refinement_t4_t8(const CheckConfig& cfg = {});
VerificationReport check_refinement_t5(const CheckConfig& cfg = {});
VerificationReport check_lemma6_lemma7(const CheckConfig& cfg = {});
VerificationReport check_main_theorem(const CheckConfig& cfg = {});
VerificationReport search_open_problem(const CheckConfig& cfg = {});

/// Names accepted by run_checks, in canonical order.
const std::vector<std::string>& check_names();
std::vector<VerificationReport> run_checks(const std::vector<std::string>& names,
                                           const CheckConfig& cfg);

std::string reports_json(const std::vector<VerificationReport>& reports);
std::string reports_markdown(const std::vector<VerificationReport>& reports);
/// 0 = all pass, 1 = some failure, 2 = no failures but inconclusive cases.
int reports_exit_code(const std::vector<VerificationReport>& reports);

}  // namespace posetcalc
