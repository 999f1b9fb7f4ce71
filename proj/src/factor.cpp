#include "posetcalc/factor.hpp"

#include <algorithm>
#include <map>

namespace posetcalc {
namespace {

int component_count(const Poset& p) {
  return components(p).count;
}

// Necessary conditions for B with A x B = P, checked before the full
// isomorphism test: height adds, component counts multiply.
bool divide_prefilter(const Poset& p, const Poset& a, const Poset& b) {
  if (heights(b).total + heights(a).total != heights(p).total) return false;
  if (component_count(a) * component_count(b) != component_count(p)) return false;
  return true;
}

}  // namespace

std::optional<Poset> divide(const Poset& p, const Poset& a, const Catalog& cat) {
  if (a.empty()) throw poset_error("divide: divisor must be nonempty");
  if (a.size() == 1) return p;
  if (p.empty()) return Poset();  // A x {} = {}
  if (p.size() % a.size() != 0) return std::nullopt;
  const int bsize = p.size() / a.size();
  if (bsize > cat.materialized()) throw catalog_bound_error(bsize, cat.materialized());
  for (const Poset& b : cat.posets(bsize)) {
    if (!divide_prefilter(p, a, b)) continue;
    if (is_isomorphic(product(a, b), p)) return b;
  }
  return std::nullopt;
}

bool is_directly_irreducible(const Poset& p, const Catalog& cat) {
  const int n = p.size();
  if (n <= 1) return false;  // excluded by definition; {} factors as {} x Q
  // memo by the labeled encoding: exact-match only, but avoids
  // canonicalizing large symmetric inputs
  CanonicalKey key{labeled_encoding(p)};
  if (auto cached = cat.irreducible_cached(key)) return *cached;

  // A nontrivial factorization has a factor of size <= sqrt(n), so probing
  // small divisors decides the question. The complement scan inside
  // divide() is the expensive side.
  bool bound_hit = false;
  int bound_needed = 0;
  bool reducible = false;
  for (int d = 2; d * d <= n && !reducible; ++d) {
    if (n % d != 0) continue;
    if (d > cat.materialized()) {
      bound_hit = true;
      bound_needed = std::max(bound_needed, d);
      continue;
    }
    for (const Poset& a : cat.posets(d)) {
      try {
        if (divide(p, a, cat).has_value()) {
          reducible = true;
          break;
        }
      } catch (const catalog_bound_error& e) {
        bound_hit = true;
        bound_needed = std::max(bound_needed, e.needed);
      }
    }
  }
  if (!reducible && bound_hit) throw catalog_bound_error(bound_needed, cat.materialized());
  cat.irreducible_store(key, !reducible);
  return !reducible;
}

FactorMultiset factorize(const Poset& p, const Catalog& cat) {
  if (p.empty()) throw empty_poset_error("factorize requires a nonempty poset");
  FactorMultiset out;
  out.product_key = canonical_key(p);

  struct Part {
    Poset rep;
    int mult = 0;
  };
  std::map<CanonicalKey, Part> mult;
  auto add = [&](const CanonicalKey& key, const Poset& rep) {
    auto [it, fresh] = mult.try_emplace(key);
    if (fresh) it->second.rep = rep;
    ++it->second.mult;
  };

  Poset current = p;
  while (current.size() > 1) {
    if (is_directly_irreducible(current, cat)) {
      add(canonical_key(current), current);
      break;
    }
    bool advanced = false;
    for (int d = 2; d <= current.size() / 2 && !advanced; ++d) {
      if (current.size() % d != 0) continue;
      if (d > cat.materialized()) throw catalog_bound_error(d, cat.materialized());
      const auto& posets = cat.posets(d);
      const auto& keys = cat.keys(d);
      for (std::size_t i = 0; i < posets.size(); ++i) {
        if (!is_directly_irreducible(posets[i], cat)) continue;
        if (auto rest = divide(current, posets[i], cat)) {
          add(keys[i], posets[i]);
          current = std::move(*rest);
          advanced = true;
          break;
        }
      }
    }
    if (!advanced)
      throw poset_error("factorize: reducible poset with no extractable divisor");
  }

  std::vector<std::pair<CanonicalKey, const Part*>> ordered;
  ordered.reserve(mult.size());
  for (const auto& [key, part] : mult) ordered.emplace_back(key, &part);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second->rep.size() != b.second->rep.size())
      return a.second->rep.size() < b.second->rep.size();
    return a.first < b.first;
  });
  for (const auto& [key, part] : ordered) {
    out.factors.emplace_back(key, part->mult);
    out.representatives.push_back(part->rep);
  }
  return out;
}

Poset product_of_factors(const FactorMultiset& f) {
  Poset acc = Poset::chain(1);
  for (std::size_t i = 0; i < f.factors.size(); ++i)
    for (int k = 0; k < f.factors[i].second; ++k) acc = product(acc, f.representatives[i]);
  return acc;
}

CommonFactorSplit common_factor_split(const Poset& c, const Poset& d, const Catalog& cat) {
  if (c.empty() || d.empty() || !is_connected(c) || !is_connected(d))
    throw poset_error("common_factor_split requires connected nonempty operands");
  FactorMultiset fc = factorize(c, cat);
  FactorMultiset fd = factorize(d, cat);

  auto find_in = [](const FactorMultiset& f, const CanonicalKey& key) -> int {
    for (std::size_t i = 0; i < f.factors.size(); ++i)
      if (f.factors[i].first == key) return static_cast<int>(i);
    return -1;
  };

  FactorMultiset shared, c_rest, d_rest;
  for (std::size_t i = 0; i < fc.factors.size(); ++i) {
    const auto& [key, mc] = fc.factors[i];
    const int j = find_in(fd, key);
    const int md = j < 0 ? 0 : fd.factors[j].second;
    const int both = std::min(mc, md);
    if (both > 0) {
      shared.factors.emplace_back(key, both);
      shared.representatives.push_back(fc.representatives[i]);
    }
    if (mc > both) {
      c_rest.factors.emplace_back(key, mc - both);
      c_rest.representatives.push_back(fc.representatives[i]);
    }
  }
  for (std::size_t j = 0; j < fd.factors.size(); ++j) {
    const auto& [key, md] = fd.factors[j];
    const int i = find_in(fc, key);
    const int both = i < 0 ? 0 : std::min(fc.factors[i].second, md);
    if (md > both) {
      d_rest.factors.emplace_back(key, md - both);
      d_rest.representatives.push_back(fd.representatives[j]);
    }
  }

  CommonFactorSplit out;
  out.z = product_of_factors(shared);
  out.y = product_of_factors(c_rest);
  out.x = product_of_factors(d_rest);
  if (!is_isomorphic(product(out.y, out.z), c) || !is_isomorphic(product(out.x, out.z), d))
    throw poset_error("common_factor_split: verification failed");
  return out;
}

}  // namespace posetcalc
