#include "posetcalc/catalog.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace posetcalc {
namespace {

std::vector<Poset> dedupe_sorted(std::map<CanonicalKey, Poset>&& seen) {
  std::vector<Poset> out;
  out.reserve(seen.size());
  for (auto& [key, poset] : seen) out.push_back(std::move(poset));
  return out;
}

// Antichain subsets of a poset, as element lists.
std::vector<std::vector<int>> antichain_subsets(const Poset& p) {
  const int n = p.size();
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Depth-first over element indices; a new element must be incomparable
  // with everything chosen so far.
  std::vector<int> stack{0};
  std::function<void(int)> walk = [&](int from) {
    out.push_back(cur);
    for (int e = from; e < n; ++e) {
      bool ok = true;
      for (int c : cur)
        if (p.leq(c, e) || p.leq(e, c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(e);
      walk(e + 1);
      cur.pop_back();
    }
  };
  walk(0);
  return out;
}

Poset with_new_maximal(const Poset& p, const std::vector<int>& below) {
  const int n = p.size();
  BitMatrix m(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(i, j)) m.set(i, j);
  m.set(n, n);
  for (int s : below)
    for (int i = 0; i < n; ++i)
      if (p.leq(i, s)) m.set(i, n);
  return Poset::unchecked(std::move(m));
}

Poset with_new_minimal(const Poset& p, const std::vector<int>& above) {
  const int n = p.size();
  BitMatrix m(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(i, j)) m.set(i, j);
  m.set(n, n);
  for (int s : above)
    for (int j = 0; j < n; ++j)
      if (p.leq(s, j)) m.set(n, j);
  return Poset::unchecked(std::move(m));
}

std::string hex_decode_guard(const std::string& hex) {
  if (hex.size() % 2 != 0) throw parse_error("odd hex key length");
  std::string out(hex.size() / 2, '\0');
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw parse_error("bad hex digit in catalog file");
  };
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<char>(nib(hex[2 * i]) * 16 + nib(hex[2 * i + 1]));
  return out;
}

}  // namespace

std::vector<Poset> extend_by_maximal(const std::vector<Poset>& smaller) {
  std::map<CanonicalKey, Poset> seen;
  for (const Poset& p : smaller)
    for (const auto& sub : antichain_subsets(p)) {
      Poset bigger = with_new_maximal(p, sub);
      seen.try_emplace(canonical_key(bigger), bigger);
    }
  return dedupe_sorted(std::move(seen));
}

std::vector<Poset> extend_by_minimal(const std::vector<Poset>& smaller) {
  std::map<CanonicalKey, Poset> seen;
  for (const Poset& p : smaller)
    for (const auto& sub : antichain_subsets(p)) {
      Poset bigger = with_new_minimal(p, sub);
      seen.try_emplace(canonical_key(bigger), bigger);
    }
  return dedupe_sorted(std::move(seen));
}

std::vector<Poset> enumerate_by_matrix_filter(int n) {
  if (n < 0) throw index_error("negative size");
  if (n == 0) return {Poset()};
  if (n > 5) throw catalog_bound_error(n, 5);
  // Enumerate every strict relation over the off-diagonal cells, keep the
  // transitive antisymmetric ones.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  std::map<CanonicalKey, Poset> seen;
  const std::uint64_t total = std::uint64_t{1} << cells.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool leq[5][5] = {};
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if ((mask >> c) & 1) leq[cells[c].first][cells[c].second] = true;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && leq[i][j] && leq[j][i]) ok = false;
        if (!leq[i][j]) continue;
        for (int k = 0; k < n; ++k)
          if (leq[j][k] && !leq[i][k]) {
            ok = false;
            break;
          }
      }
    if (!ok) continue;
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][j]) m.set(i, j);
    Poset p = Poset::unchecked(std::move(m));
    seen.try_emplace(canonical_key(p), p);
  }
  return dedupe_sorted(std::move(seen));
}

Catalog::Catalog(int limit, std::string cache_dir)
    : limit_(limit), cache_dir_(std::move(cache_dir)) {}

void Catalog::ensure(int n) {
  if (n > limit_) throw catalog_bound_error(n, limit_);
  while (materialized_ < n) materialize(materialized_ + 1);
}

void Catalog::materialize(int n) {
  std::vector<Poset> posets;
  std::string cache_path;
  if (!cache_dir_.empty())
    cache_path = (std::filesystem::path(cache_dir_) / ("p" + std::to_string(n) + ".posetcat")).string();

  bool loaded = false;
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    if (auto cached = load_catalog_file(cache_path, n)) {
      posets = std::move(*cached);
      loaded = true;
    }
  }
  if (!loaded) {
    if (n == 0)
      posets = {Poset()};
    else
      posets = extend_by_maximal(by_size_[n - 1]);
    if (!cache_path.empty()) {
      std::filesystem::create_directories(cache_dir_);
      save_catalog_file(cache_path, n, posets);
    }
  }

  std::vector<CanonicalKey> keys;
  keys.reserve(posets.size());
  for (std::size_t i = 0; i < posets.size(); ++i) {
    keys.push_back(canonical_key(posets[i]));
    index_.emplace(keys.back().bytes, std::make_pair(n, static_cast<int>(i)));
  }
  by_size_.push_back(std::move(posets));
  keys_.push_back(std::move(keys));
  materialized_ = n;
}

const std::vector<Poset>& Catalog::posets(int n) const {
  if (n < 0 || n > materialized_) throw catalog_bound_error(n, materialized_);
  return by_size_[n];
}

const std::vector<CanonicalKey>& Catalog::keys(int n) const {
  if (n < 0 || n > materialized_) throw catalog_bound_error(n, materialized_);
  return keys_[n];
}

std::vector<int> Catalog::connected_indices(int n) const {
  const auto& ps = posets(n);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(ps.size()); ++i)
    if (is_connected(ps[i])) out.push_back(i);
  return out;
}

const Poset* Catalog::find(const CanonicalKey& key) const {
  auto it = index_.find(key.bytes);
  if (it == index_.end()) return nullptr;
  return &by_size_[it->second.first][it->second.second];
}

std::optional<bool> Catalog::irreducible_cached(const CanonicalKey& key) const {
  std::lock_guard<std::mutex> lock(irr_mutex_);
  auto it = irr_cache_.find(key.bytes);
  if (it == irr_cache_.end()) return std::nullopt;
  return it->second;
}

void Catalog::irreducible_store(const CanonicalKey& key, bool value) const {
  std::lock_guard<std::mutex> lock(irr_mutex_);
  irr_cache_.emplace(key.bytes, value);
}

std::vector<Poset> enumerate_posets(int n) {
  Catalog cat(n);
  cat.ensure(n);
  return cat.posets(n);
}

std::vector<Poset> connected_posets(int n) {
  if (n < 1) throw index_error("connected_posets requires n >= 1");
  std::vector<Poset> out;
  for (Poset& p : enumerate_posets(n))
    if (is_connected(p)) out.push_back(std::move(p));
  return out;
}

void save_catalog_file(const std::string& path, int n, const std::vector<Poset>& posets) {
  std::ofstream f(path);
  if (!f) throw poset_error("cannot write catalog file '" + path + "'");
  f << "posetcat v1 n=" << n << " count=" << posets.size() << "\n";
  for (const Poset& p : posets) {
    f << canonical_key(p).hex();
    for (auto [a, b] : p.cover_pairs()) f << " " << a << "<" << b;
    f << "\n";
  }
}

std::optional<std::vector<Poset>> load_catalog_file(const std::string& path, int expect_n) {
  std::ifstream f(path);
  if (!f) return std::nullopt;
  std::string header;
  if (!std::getline(f, header)) return std::nullopt;
  std::ostringstream want;
  want << "posetcat v1 n=" << expect_n << " count=";
  if (header.rfind(want.str(), 0) != 0) return std::nullopt;
  std::size_t count = 0;
  try {
    count = std::stoul(header.substr(want.str().size()));
  } catch (const std::exception&) {
    return std::nullopt;
  }

  std::vector<Poset> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string hexkey;
    ls >> hexkey;
    std::vector<std::pair<int, int>> covers;
    std::string tok;
    while (ls >> tok) {
      auto lt = tok.find('<');
      if (lt == std::string::npos) return std::nullopt;
      covers.emplace_back(std::stoi(tok.substr(0, lt)), std::stoi(tok.substr(lt + 1)));
    }
    Poset p = Poset::from_covers(expect_n, covers);
    if (canonical_key(p).hex() != hexkey) return std::nullopt;  // stale or corrupt
    (void)hex_decode_guard(hexkey);
    out.push_back(std::move(p));
  }
  if (out.size() != count) return std::nullopt;
  return out;
}

}  // namespace posetcalc
