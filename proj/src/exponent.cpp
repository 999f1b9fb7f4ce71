#include "posetcalc/exponent.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>

namespace posetcalc {
namespace {

// Shared DFS over assignments along a linear extension of Q. At each
// element the candidate set is the intersection of the up-sets of the
// images of its lower covers, so pruning fires as early as possible.
template <typename Sink>
void enumerate_maps(const Poset& p, const Poset& q, long cap, Sink&& sink) {
  const int nq = q.size();
  const int np = p.size();
  if (nq == 0) {
    sink(std::vector<int>{});  // the empty map
    return;
  }
  if (np == 0) return;

  const std::vector<int> ext = linear_extension(q);
  // lower covers of each Q element, as positions earlier in the extension
  std::vector<std::vector<int>> lower(nq);
  {
    auto covers = q.cover_pairs();
    std::vector<int> pos_of(nq);
    for (int t = 0; t < nq; ++t) pos_of[ext[t]] = t;
    for (auto [a, b] : covers) lower[pos_of[b]].push_back(a);
  }

  const int words = p.matrix().words_per_row();
  std::vector<std::uint64_t> cand(static_cast<std::size_t>(nq) * words);
  std::vector<int> assign(nq, -1);  // by Q element index
  long produced = 0;

  std::vector<std::uint64_t> all(words, 0);
  for (int i = 0; i < np; ++i) all[i >> 6] |= std::uint64_t{1} << (i & 63);

  std::function<void(int)> walk = [&](int t) {
    if (t == nq) {
      if (++produced > cap) throw cap_exceeded_error(produced, cap);
      sink(assign);
      return;
    }
    std::uint64_t* c = cand.data() + static_cast<std::size_t>(t) * words;
    std::copy(all.begin(), all.end(), c);
    for (int qc : lower[t]) {
      const std::uint64_t* up = p.matrix().row(assign[qc]);
      for (int w = 0; w < words; ++w) c[w] &= up[w];
    }
    const int qe = ext[t];
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = c[w];
      while (bits) {
        int v = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        assign[qe] = v;
        walk(t + 1);
      }
    }
    assign[qe] = -1;
  };
  walk(0);
}

bool pointwise_leq(const Poset& p, const MonotoneMap& f, const MonotoneMap& g) {
  for (std::size_t i = 0; i < f.entries.size(); ++i)
    if (!p.leq(f.entries[i], g.entries[i])) return false;
  return true;
}

}  // namespace

ExpPoset exponent(const Poset& p, const Poset& q, long cap) {
  if (cap <= 0) throw poset_error("exponent cap must be positive");
  ExpPoset e;
  e.p_ref = p;
  e.q_ref = q;
  enumerate_maps(p, q, cap, [&](const std::vector<int>& entries) {
    e.maps.push_back(MonotoneMap{entries});
  });
  std::sort(e.maps.begin(), e.maps.end());

#ifndef NDEBUG
  for (const auto& m : e.maps)
    for (int a = 0; a < q.size(); ++a)
      for (int b = 0; b < q.size(); ++b)
        if (q.leq(a, b)) assert(p.leq(m.entries[a], m.entries[b]));
#endif

  const int n = static_cast<int>(e.maps.size());
  BitMatrix order(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i == j || pointwise_leq(p, e.maps[i], e.maps[j])) order.set(i, j);
  e.base = Poset::unchecked(std::move(order));
  return e;
}

long count_monotone_maps(const Poset& p, const Poset& q, long cap) {
  if (cap <= 0) throw poset_error("exponent cap must be positive");
  long n = 0;
  enumerate_maps(p, q, cap, [&](const std::vector<int>&) { ++n; });
  return n;
}

MonotoneMap constant_map(const Poset& p, const Poset& q, int value) {
  if (value < 0 || value >= p.size()) throw index_error("constant map value out of range");
  return MonotoneMap{std::vector<int>(static_cast<std::size_t>(q.size()), value)};
}

std::vector<int> d_set(const ExpPoset& e) {
  ComponentPartition comp = components(e.q_ref);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(e.maps.size()); ++i) {
    const auto& f = e.maps[i].entries;
    std::vector<int> value(comp.count, -1);
    bool ok = true;
    for (int qe = 0; qe < e.q_ref.size() && ok; ++qe) {
      int& v = value[comp.labels[qe]];
      if (v < 0)
        v = f[qe];
      else if (v != f[qe])
        ok = false;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

InducedPoset c_poset(const ExpPoset& e) {
  if (e.q_ref.empty())
    throw empty_exponent_operand_error("C(P^Q) is only defined for Q nonempty");
  ComponentPartition comp = components(e.base);
  std::vector<char> keep(comp.count, 0);
  for (int i : d_set(e)) keep[comp.labels[i]] = 1;
  InducedPoset out;
  for (int i = 0; i < e.base.size(); ++i)
    if (keep[comp.labels[i]]) out.source.push_back(i);
  out.poset = induced(e.base, out.source);
  return out;
}

Poset c_of(const Poset& p, const Poset& q, long cap) {
  return c_poset(exponent(p, q, cap)).poset;
}

}  // namespace posetcalc
