#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "posetcalc/canonical.hpp"
#include "posetcalc/catalog.hpp"
#include "posetcalc/factor.hpp"
#include "posetcalc/poset.hpp"

using namespace posetcalc;

namespace {

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm[i], perm[pick(rng)]);
  }
  return perm;
}

}  // namespace

TEST_SUITE_BEGIN("factor");

TEST_CASE("direct irreducibility of the standard examples") {
  Catalog cat(6);
  cat.ensure(6);
  CHECK(is_directly_irreducible(Poset::crown4(), cat));
  CHECK_FALSE(is_directly_irreducible(product(Poset::chain(2), Poset::chain(2)), cat));
  CHECK_FALSE(is_directly_irreducible(Poset::chain(1), cat));
  CHECK_FALSE(is_directly_irreducible(Poset(), cat));
  CHECK(is_directly_irreducible(Poset::antichain(2), cat));
  CHECK(is_directly_irreducible(Poset::chain(2), cat));
}

TEST_CASE("divide recovers cofactors") {
  Catalog cat(6);
  cat.ensure(6);
  const Poset grid = product(Poset::chain(2), Poset::chain(2));
  auto half = divide(grid, Poset::chain(2), cat);
  REQUIRE(half.has_value());
  CHECK(is_isomorphic(*half, Poset::chain(2)));

  CHECK_FALSE(divide(Poset::crown4(), Poset::chain(2), cat).has_value());
  CHECK_FALSE(divide(Poset::crown4(), Poset::antichain(2), cat).has_value());

  auto unit = divide(Poset::crown4(), Poset::chain(1), cat);
  REQUIRE(unit.has_value());
  CHECK(*unit == Poset::crown4());

  CHECK_THROWS_AS(divide(grid, Poset(), cat), poset_error);
}

TEST_CASE("factorize matches the worked examples") {
  Catalog cat(8);
  cat.ensure(8);
  const Poset grid = product(Poset::chain(2), Poset::chain(2));

  FactorMultiset fg = factorize(grid, cat);
  REQUIRE(fg.factors.size() == 1);
  CHECK(fg.factors[0].first == canonical_key(Poset::chain(2)));
  CHECK(fg.factors[0].second == 2);

  FactorMultiset fc = factorize(Poset::crown4(), cat);
  REQUIRE(fc.factors.size() == 1);
  CHECK(fc.factors[0].first == canonical_key(Poset::crown4()));
  CHECK(fc.factors[0].second == 1);

  FactorMultiset fm = factorize(product(Poset::chain(2), Poset::crown4()), cat);
  REQUIRE(fm.factors.size() == 2);
  CHECK(fm.factors[0].first == canonical_key(Poset::chain(2)));
  CHECK(fm.factors[0].second == 1);
  CHECK(fm.factors[1].first == canonical_key(Poset::crown4()));
  CHECK(fm.factors[1].second == 1);

  CHECK(factorize(Poset::chain(1), cat).factors.empty());
  CHECK_THROWS_AS(factorize(Poset(), cat), empty_poset_error);
}

TEST_CASE("factorization round trips and is relabeling-invariant up to n=5") {
  Catalog cat(8);
  cat.ensure(8);
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 5; ++n)
    for (const Poset& p : connected_posets(n)) {
      FactorMultiset f = factorize(p, cat);
      CHECK(is_isomorphic(product_of_factors(f), p));
      for (const Poset& rep : f.representatives) CHECK(is_directly_irreducible(rep, cat));
      for (const auto& [key, mult] : f.factors) CHECK(mult >= 1);

      Poset shuffled = p.relabeled(random_perm(n, rng));
      CHECK(factorize(shuffled, cat) == f);
    }
}

TEST_CASE("greedy factorization also runs on disconnected inputs") {
  Catalog cat(8);
  cat.ensure(8);
  const Poset p = sum(Poset::chain(2), Poset::chain(2));
  FactorMultiset f = factorize(p, cat);
  CHECK(is_isomorphic(product_of_factors(f), p));
}

TEST_CASE("cancellation holds for small products") {
  Catalog cat(8);
  cat.ensure(8);
  // A x B ~ A x C forces B ~ C: keys of A x B over distinct B never collide
  for (int na = 1; na <= 4; ++na)
    for (int ia : cat.connected_indices(na))
      for (int nb = 1; na * nb <= 8; ++nb) {
        const auto idx = cat.connected_indices(nb);
        std::set<std::string> seen;
        for (int ib : idx) {
          std::string key = canonical_key(product(cat.posets(na)[ia], cat.posets(nb)[ib])).bytes;
          CHECK(seen.insert(key).second);
        }
      }
}

TEST_CASE("common_factor_split matches the worked examples") {
  Catalog cat(8);
  cat.ensure(8);
  const Poset grid = product(Poset::chain(2), Poset::chain(2));

  CommonFactorSplit same = common_factor_split(grid, grid, cat);
  CHECK(is_isomorphic(same.z, grid));
  CHECK(same.x.size() == 1);
  CHECK(same.y.size() == 1);

  CommonFactorSplit disjoint = common_factor_split(Poset::chain(2), Poset::crown4(), cat);
  CHECK(disjoint.z.size() == 1);
  CHECK(is_isomorphic(disjoint.x, Poset::crown4()));
  CHECK(is_isomorphic(disjoint.y, Poset::chain(2)));

  CommonFactorSplit shared = common_factor_split(grid, Poset::chain(2), cat);
  CHECK(is_isomorphic(shared.z, Poset::chain(2)));
  CHECK(is_isomorphic(shared.y, Poset::chain(2)));
  CHECK(shared.x.size() == 1);

  CHECK_THROWS_AS(common_factor_split(sum(Poset::chain(1), Poset::chain(1)), grid, cat),
                  poset_error);
}

TEST_SUITE_END();
