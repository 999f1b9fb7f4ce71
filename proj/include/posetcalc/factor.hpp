#pragma once

#include <optional>
#include <vector>

#include "posetcalc/canonical.hpp"
#include "posetcalc/catalog.hpp"
#include "posetcalc/poset.hpp"

namespace posetcalc {

/// Multiset of directly irreducible factors, by canonical key. The
/// representative posets are carried alongside so products can be rebuilt
/// even when a factor is larger than the catalog covers.
struct FactorMultiset {
  std::vector<std::pair<CanonicalKey, int>> factors;  // ascending (size, key)
  std::vector<Poset> representatives;                 // aligned with factors
  CanonicalKey product_key;

  friend bool operator==(const FactorMultiset& a, const FactorMultiset& b) {
    return a.factors == b.factors && a.product_key == b.product_key;
  }
};

/// True iff |P| != 1 and every factorization P = A x B has a trivial
/// factor. Decided by scanning catalog divisors; throws
/// catalog_bound_error when a complement size is out of catalog reach and
/// no factorization was found among reachable divisors.
bool is_directly_irreducible(const Poset& p, const Catalog& cat);

/// Some B with A x B isomorphic to P, scanning the catalog at size
/// |P|/|A|; nullopt when none exists.
std::optional<Poset> divide(const Poset& p, const Poset& a, const Catalog& cat);

/// Greedy extraction of the smallest-(size, key) irreducible divisor.
/// Unique up to order for connected inputs.
FactorMultiset factorize(const Poset& p, const Catalog& cat);

/// Product over the multiset (the one-element poset when it is empty).
Poset product_of_factors(const FactorMultiset& f);

struct CommonFactorSplit {
  Poset x, y, z;  // C = Y x Z, D = X x Z, X and Y share no nontrivial factor
};

/// Splits two connected nonempty posets over their shared irreducible
/// factors; verified by product + isomorphism before returning.
CommonFactorSplit common_factor_split(const Poset& c, const Poset& d, const Catalog& cat);

}  // namespace posetcalc
