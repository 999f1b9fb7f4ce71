#pragma once

#include <vector>

#include "posetcalc/poset.hpp"

namespace posetcalc {

/// Enumeration of P^Q would exceed the configured element cap.
class cap_exceeded_error : public poset_error {
 public:
  cap_exceeded_error(long count, long cap)
      : poset_error("exponent poset exceeds cap " + std::to_string(cap)), count(count), cap(cap) {}
  long count;
  long cap;
};

class empty_exponent_operand_error : public poset_error {
 public:
  using poset_error::poset_error;
};

/// An order-preserving map Q -> P as an index array over Q's elements.
struct MonotoneMap {
  std::vector<int> entries;
  bool operator==(const MonotoneMap&) const = default;
  bool operator<(const MonotoneMap& o) const { return entries < o.entries; }
};

/// P^Q: the poset of all order-preserving maps Q -> P under pointwise
/// order. maps is duplicate-free, complete, and sorted lexicographically;
/// base.leq(i, j) iff maps[i] <= maps[j] pointwise.
struct ExpPoset {
  Poset base;
  std::vector<MonotoneMap> maps;
  Poset p_ref;
  Poset q_ref;
};

/// Enumerates all monotone maps depth-first along a linear extension of Q,
/// pruning candidates by the images of already-assigned lower covers.
/// Throws cap_exceeded_error once more than cap maps exist.
ExpPoset exponent(const Poset& p, const Poset& q, long cap = 100000);

/// Number of monotone maps Q -> P, same cap contract as exponent().
long count_monotone_maps(const Poset& p, const Poset& q, long cap = 100000);

MonotoneMap constant_map(const Poset& p, const Poset& q, int value);

/// Indices of maps constant on every connected component of Q.
std::vector<int> d_set(const ExpPoset& e);

struct InducedPoset {
  Poset poset;
  std::vector<int> source;  // index back into the ambient poset
};

/// C(P^Q): the union of the connected components of P^Q that contain a
/// D-map, as an induced subposet. Defined only for Q nonempty.
InducedPoset c_poset(const ExpPoset& e);

/// Convenience: C(P^Q) as a bare poset.
Poset c_of(const Poset& p, const Poset& q, long cap = 100000);

}  // namespace posetcalc
