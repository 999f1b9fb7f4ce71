// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria run at their pinned scales; every tolerance is pinned here.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "posetcalc/canonical.hpp"
#include "posetcalc/catalog.hpp"
#include "posetcalc/exponent.hpp"
#include "posetcalc/factor.hpp"
#include "posetcalc/harness.hpp"
#include "posetcalc/poset.hpp"

using namespace posetcalc;
using Clock = std::chrono::steady_clock;

namespace {

int failures_total = 0;

struct Criterion {
  std::string name;
  Clock::time_point start = Clock::now();
  bool ok = true;
  std::vector<std::string> notes;

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start).count(); }

  void finish() {
    std::printf("%s %s (%.2fs)\n", ok ? "PASS" : "FAIL", name.c_str(), elapsed());
    for (const auto& n : notes) std::printf("     - %s\n", n.c_str());
    if (!ok) ++failures_total;
    std::fflush(stdout);
  }
};

std::vector<int> component_sizes(const Poset& p) {
  ComponentPartition parts = components(p);
  std::vector<int> sizes(parts.count, 0);
  for (int lbl : parts.labels) ++sizes[lbl];
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm[i], perm[pick(rng)]);
  }
  return perm;
}

void report_check(Criterion& c, const VerificationReport& r, bool allow_inconclusive,
                  double budget_seconds) {
  c.expect(r.pass(), r.check_name + ": " + std::to_string(r.failures.size()) + " failure(s)");
  for (const auto& f : r.failures) c.notes.push_back(r.check_name + " " + f.case_id + ": " + f.explanation);
  if (!allow_inconclusive)
    c.expect(r.inconclusive.empty(),
             r.check_name + ": " + std::to_string(r.inconclusive.size()) + " inconclusive case(s)");
  if (budget_seconds > 0)
    c.expect(r.elapsed_seconds < budget_seconds,
             r.check_name + ": took " + std::to_string(r.elapsed_seconds) + "s, budget " +
                 std::to_string(budget_seconds) + "s");
}

// 1. Crown golden test, exact equality, under one second.
void criterion1() {
  Criterion c("criterion-1 crown golden test");
  const Poset crown = Poset::crown4();
  ExpPoset e = exponent(crown, crown);

  c.expect(e.maps.size() == 36, "|P^P| = " + std::to_string(e.maps.size()) + ", expected 36");
  const int h = heights(e.base).total;
  c.expect(h == 4, "h(P^P) = " + std::to_string(h) + ", expected h(P)*|P| = 4");

  // Component structure as pinned: two 16-element components plus four
  // isolated points.
  const std::vector<int> sizes = component_sizes(e.base);
  c.expect(sizes == std::vector<int>{1, 1, 1, 1, 16, 16},
           "component structure: expected two 16-element components plus four isolated points, "
           "got " +
               join_ints(sizes));

  // Supplementary structure checks, frozen from brute-force enumeration of
  // all 256 candidate maps: one 32-element component holding all four
  // constant maps, four isolated bijections, level profile [6,8,8,8,2].
  c.expect(sizes == std::vector<int>{1, 1, 1, 1, 32} ||
               sizes == std::vector<int>{1, 1, 1, 1, 16, 16},
           "component sizes " + join_ints(sizes) + " match neither reading");
  InducedPoset cpart = c_poset(e);
  if (cpart.poset.size() == 32) {
    c.notes.push_back("actual structure (brute-force verified): one 32-element component "
                      "containing all four constants, plus four isolated automorphisms");
    HeightProfile ch = heights(cpart.poset);
    std::vector<int> hist(ch.total + 1, 0);
    for (int v : ch.per_element) ++hist[v];
    c.expect(hist == std::vector<int>{6, 8, 8, 8, 2},
             "C(P^P) level profile " + join_ints(hist) + ", expected [6,8,8,8,2]");
    c.expect(d_set(e).size() == 4, "|D(P^P)| != 4");
  }

  c.expect(c.elapsed() < 1.0, "runtime exceeded 1 second");
  c.finish();
}

// 2. Lemma 9 suite at |A|,|B| <= 4 (item 3 at <= 3), under a minute.
void criterion2() {
  Criterion c("criterion-2 lemma 9 suite");
  CheckConfig cfg;
  report_check(c, check_lemma9(cfg), false, 60.0);
  c.finish();
}

// 3. Proposition 1 suite over triples of size <= 3, under five minutes.
void criterion3() {
  Criterion c("criterion-3 proposition 1 suite");
  CheckConfig cfg;
  report_check(c, check_prop1(cfg), false, 300.0);
  c.finish();
}

// 4. Refinement theorems: theorem 5 complete at |A x B| <= 8 including the
// empty branches; theorems 4/8 never fail (inconclusive allowed); seeded
// instances must recover witnesses (they land in failures otherwise).
void criterion4() {
  Criterion c("criterion-4 refinement theorems");
  CheckConfig cfg;
  VerificationReport t5 = check_refinement_t5(cfg);
  report_check(c, t5, false, 0);
  c.expect(t5.cases_skipped_cap == 0, "t5 skipped cases");
  VerificationReport t48 = check_refinement_t4_t8(cfg);
  report_check(c, t48, true, 0);
  c.finish();
}

// 5. Main theorem sweep at |P|,|Q| <= 5 with cap 100000: no premise pair
// with Q disconnected, all premise pairs isomorphic, nothing skipped.
void criterion5() {
  Criterion c("criterion-5 main theorem sweep");
  CheckConfig cfg;
  VerificationReport r = check_main_theorem(cfg);
  report_check(c, r, false, 600.0);
  c.expect(r.cases_skipped_cap == 0,
           "skipped-by-cap list not empty: " + std::to_string(r.cases_skipped_cap));
  c.expect(r.cases_attempted == 59 * 87, "unexpected sweep size");
  c.finish();
}

// 6. Factorization: round trip and relabeling invariance over connected
// posets up to n = 6; cancellation exhaustively for |A x B| <= 12.
void criterion6() {
  Criterion c("criterion-6 factorization");
  Catalog cat(8);
  cat.ensure(8);
  std::mt19937_64 rng(6021023);
  for (int n = 1; n <= 6; ++n)
    for (int i : cat.connected_indices(n)) {
      const Poset& p = cat.posets(n)[i];
      FactorMultiset f = factorize(p, cat);
      if (!is_isomorphic(product_of_factors(f), p)) {
        c.expect(false, "round trip failed for " + cat.keys(n)[i].hex());
        continue;
      }
      for (const Poset& rep : f.representatives)
        if (!is_directly_irreducible(rep, cat))
          c.expect(false, "reducible factor reported for " + cat.keys(n)[i].hex());
      Poset shuffled = p.relabeled(random_perm(n, rng));
      if (!(factorize(shuffled, cat) == f))
        c.expect(false, "relabeling changed the factor multiset of " + cat.keys(n)[i].hex());
    }

  // cancellation: for fixed connected A, the key of A x B determines B.
  // |A| = 1 is the unit law A x B = B, so its scan stops at the catalog
  // limit; every |A| >= 2 slice of |A x B| <= 12 is exhaustive.
  for (int na = 1; na <= 6; ++na)
    for (int ia : cat.connected_indices(na))
      for (int nb = 1; na * nb <= 12 && nb <= cat.materialized(); ++nb) {
        std::set<std::string> seen;
        for (int ib : cat.connected_indices(nb)) {
          std::string key =
              canonical_key(product(cat.posets(na)[ia], cat.posets(nb)[ib])).bytes;
          if (!seen.insert(key).second)
            c.expect(false, "cancellation violated at |A|=" + std::to_string(na) +
                                " |B|=" + std::to_string(nb));
        }
      }
  c.finish();
}

// 7. Enumeration counts, validated by the matrix-filter oracle at n <= 4
// and by dual-strategy generation agreement at n = 5, 6.
void criterion7() {
  Criterion c("criterion-7 enumeration counts");
  Catalog cat(6);
  cat.ensure(6);
  const int expected_all[] = {1, 1, 2, 5, 16, 63, 318};
  const int expected_conn[] = {0, 1, 1, 3, 10, 44, 238};
  for (int n = 0; n <= 6; ++n) {
    c.expect(static_cast<int>(cat.posets(n).size()) == expected_all[n],
             "count(" + std::to_string(n) + ") = " + std::to_string(cat.posets(n).size()));
    if (n >= 1)
      c.expect(static_cast<int>(cat.connected_indices(n).size()) == expected_conn[n],
               "connected(" + std::to_string(n) + ") = " +
                   std::to_string(cat.connected_indices(n).size()));
  }
  for (int n = 0; n <= 4; ++n) {
    auto filtered = enumerate_by_matrix_filter(n);
    std::set<std::string> a, b;
    for (const Poset& p : cat.posets(n)) a.insert(canonical_key(p).bytes);
    for (const Poset& p : filtered) b.insert(canonical_key(p).bytes);
    c.expect(a == b, "matrix-filter oracle disagrees at n = " + std::to_string(n));
  }
  for (int n = 5; n <= 6; ++n) {
    auto by_min = extend_by_minimal(cat.posets(n - 1));
    std::set<std::string> a, b;
    for (const Poset& p : cat.posets(n)) a.insert(canonical_key(p).bytes);
    for (const Poset& p : by_min) b.insert(canonical_key(p).bytes);
    c.expect(a == b, "extension strategies disagree at n = " + std::to_string(n));
  }
  c.finish();
}

// 8. Canonicalization: 1000 random relabelings per catalog poset (n <= 6)
// keep the key; all catalog keys pairwise distinct; under a minute.
void criterion8() {
  Criterion c("criterion-8 canonicalization");
  Catalog cat(6);
  cat.ensure(6);
  std::mt19937_64 rng(8082023);
  std::set<std::string> all_keys;
  for (int n = 1; n <= 6; ++n) {
    const auto& posets = cat.posets(n);
    const auto& keys = cat.keys(n);
    for (std::size_t i = 0; i < posets.size(); ++i) {
      if (!all_keys.insert(keys[i].bytes).second)
        c.expect(false, "duplicate catalog key at n = " + std::to_string(n));
      long bad = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        Poset shuffled = posets[i].relabeled(random_perm(n, rng));
        if (canonical_key(shuffled) != keys[i]) ++bad;
      }
      if (bad > 0)
        c.expect(false, "key changed under relabeling for " + keys[i].hex() + " (" +
                            std::to_string(bad) + "/1000)");
    }
  }
  c.expect(c.elapsed() < 60.0, "runtime exceeded one minute");
  c.finish();
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d criterion(s) failed\n", failures_total);
  return failures_total == 0 ? 0 : 1;
}
