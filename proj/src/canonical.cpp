#include "posetcalc/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <numeric>
#include <tuple>

namespace posetcalc {
namespace {

// Posets at or below this size are compared through canonical keys; larger
// ones take the refinement + cover-walk embedding path, which copes with
// the huge automorphism groups of exponent posets.
constexpr int kKeyThreshold = 12;
constexpr int kBigRefineRounds = 3;

std::string encode_matrix(const Poset& p, const std::vector<int>& order) {
  const int n = p.size();
  std::string bytes(4 + (static_cast<std::size_t>(n) * n + 7) / 8, '\0');
  bytes[0] = static_cast<char>(n & 0xff);
  bytes[1] = static_cast<char>((n >> 8) & 0xff);
  bytes[2] = static_cast<char>((n >> 16) & 0xff);
  bytes[3] = static_cast<char>((n >> 24) & 0xff);
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b, ++idx)
      if (p.leq(order[a], order[b]))
        bytes[4 + (idx >> 3)] =
            static_cast<char>(static_cast<unsigned char>(bytes[4 + (idx >> 3)]) | (1u << (idx & 7)));
  return bytes;
}

// Stable partition refinement over one or two posets at once. Classes are
// ordered by an isomorphism-invariant signature, so the returned color ids
// are comparable across the inputs. max_rounds == 0 runs to stability.
std::vector<std::vector<int>> refine_colors(const std::vector<const Poset*>& ps, int max_rounds) {
  struct Ref {
    int poset;
    int idx;
  };
  std::vector<Ref> elems;
  for (int pi = 0; pi < static_cast<int>(ps.size()); ++pi)
    for (int i = 0; i < ps[pi]->size(); ++i) elems.push_back({pi, i});
  const int total = static_cast<int>(elems.size());

  std::vector<std::vector<int>> colors(ps.size());
  for (std::size_t pi = 0; pi < ps.size(); ++pi) colors[pi].assign(ps[pi]->size(), 0);
  if (total == 0) return colors;

  // Initial signature: (element height, strict up-degree, strict down-degree).
  std::vector<std::array<int, 3>> init(total);
  {
    int at = 0;
    for (const Poset* p : ps) {
      if (p->empty()) continue;
      HeightProfile h = heights(*p);
      BitMatrix down = p->matrix().transposed();
      for (int i = 0; i < p->size(); ++i, ++at) {
        int up = 0, dn = 0;
        const std::uint64_t* ru = p->matrix().row(i);
        const std::uint64_t* rd = down.row(i);
        for (int w = 0; w < p->matrix().words_per_row(); ++w) {
          up += std::popcount(ru[w]);
          dn += std::popcount(rd[w]);
        }
        init[at] = {h.per_element[i], up - 1, dn - 1};
      }
    }
  }
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return init[a] < init[b]; });
  std::vector<int> color(total, 0);
  int ncolors = 0;
  for (int k = 0; k < total; ++k) {
    if (k > 0 && init[order[k]] != init[order[k - 1]]) ++ncolors;
    color[order[k]] = ncolors;
  }
  ++ncolors;

  // element id offsets per poset + transposes for down-neighbor scans
  std::vector<int> offset(ps.size(), 0);
  for (std::size_t pi = 1; pi < ps.size(); ++pi) offset[pi] = offset[pi - 1] + ps[pi - 1]->size();
  std::vector<BitMatrix> downs;
  for (const Poset* p : ps) downs.push_back(p->matrix().transposed());

  using Sig = std::tuple<int, std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>;
  std::vector<Sig> sig(total);
  std::vector<int> count(total, 0);

  const int round_limit = max_rounds > 0 ? max_rounds : total;
  for (int round = 0; round < round_limit; ++round) {
    for (int id = 0; id < total; ++id) {
      auto [pi, i] = elems[id];
      const Poset& p = *ps[pi];
      auto gather = [&](const std::uint64_t* row, std::vector<std::pair<int, int>>& out) {
        out.clear();
        std::vector<int> touched;
        for (int w = 0; w < p.matrix().words_per_row(); ++w) {
          std::uint64_t bits = row[w];
          while (bits) {
            int j = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            if (j == i) continue;
            int c = color[offset[pi] + j];
            if (count[c]++ == 0) touched.push_back(c);
          }
        }
        std::sort(touched.begin(), touched.end());
        for (int c : touched) {
          out.emplace_back(c, count[c]);
          count[c] = 0;
        }
      };
      auto& [sc, sup, sdn] = sig[id];
      sc = color[id];
      gather(p.matrix().row(i), sup);
      gather(downs[pi].row(i), sdn);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    int nc = 0;
    std::vector<int> next(total, 0);
    for (int k = 0; k < total; ++k) {
      if (k > 0 && sig[order[k]] != sig[order[k - 1]]) ++nc;
      next[order[k]] = nc;
    }
    ++nc;
    bool stable = (nc == ncolors);
    color.swap(next);
    ncolors = nc;
    if (stable) break;
  }

  for (int id = 0; id < total; ++id) colors[elems[id].poset][elems[id].idx] = color[id];
  return colors;
}

// Lexicographically minimal matrix encoding over all orderings consistent
// with the refined cells. Candidates within a cell are pruned by twin
// classes (swapping two incomparable elements with identical strict up and
// down sets is an automorphism) and by prefix comparison with the best
// encoding seen so far.
struct CanonSearch {
  const Poset& p;
  int n;
  std::vector<std::vector<int>> cells;  // per color, elements ascending
  std::vector<int> cell_at_pos;
  std::vector<int> twin_of;
  std::vector<char> used;
  std::vector<int> perm;
  std::vector<std::uint8_t> cur, best;
  std::vector<int> best_perm;
  bool have_best = false;

  CanonSearch(const Poset& poset, const std::vector<int>& color) : p(poset), n(poset.size()) {
    int ncolors = 0;
    for (int c : color) ncolors = std::max(ncolors, c + 1);
    cells.resize(ncolors);
    for (int i = 0; i < n; ++i) cells[color[i]].push_back(i);
    cell_at_pos.reserve(n);
    for (int c = 0; c < ncolors; ++c)
      for (std::size_t k = 0; k < cells[c].size(); ++k) cell_at_pos.push_back(c);

    twin_of.assign(n, 0);
    std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>, int> classes;
    BitMatrix down = p.matrix().transposed();
    const int words = p.matrix().words_per_row();
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint64_t> up(p.matrix().row(i), p.matrix().row(i) + words);
      std::vector<std::uint64_t> dn(down.row(i), down.row(i) + words);
      up[i >> 6] &= ~(std::uint64_t{1} << (i & 63));  // strict rows
      dn[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
      auto [it, fresh] = classes.try_emplace({std::move(up), std::move(dn)}, static_cast<int>(classes.size()));
      twin_of[i] = it->second;
    }

    used.assign(n, 0);
    perm.assign(n, -1);
    cur.assign(static_cast<std::size_t>(n) * n, 0);
  }

  // Returns true when best was replaced somewhere in the subtree. The new
  // best then shares this node's prefix, so the remaining candidates here
  // must compare against it instead of descending freely.
  bool dfs(int pos, bool less_flag) {
    if (pos == n) {
      if (!have_best || less_flag) {
        best = cur;
        best_perm = perm;
        have_best = true;
        return true;
      }
      return false;
    }
    bool improved = false;
    const auto& cell = cells[cell_at_pos[pos]];
    const std::size_t base = static_cast<std::size_t>(pos) * pos;
    int tried[64];
    int ntried = 0;
    for (int e : cell) {
      if (used[e]) continue;
      bool seen = false;
      for (int t = 0; t < ntried; ++t)
        if (tried[t] == twin_of[e]) {
          seen = true;
          break;
        }
      if (seen) continue;
      if (ntried < 64) tried[ntried++] = twin_of[e];

      bool cmp = have_best && !less_flag;
      bool lt = less_flag;
      std::size_t idx = base;
      bool rejected = false;
      auto put = [&](bool v) {
        cur[idx] = v;
        if (cmp) {
          if (v && !best[idx]) {
            rejected = true;
            return;
          }
          if (!v && best[idx]) {
            lt = true;
            cmp = false;
          }
        }
        ++idx;
      };
      for (int j = 0; j < pos && !rejected; ++j) put(p.leq(e, perm[j]));
      if (!rejected) put(true);
      for (int j = 0; j < pos && !rejected; ++j) put(p.leq(perm[j], e));
      if (rejected) continue;

      used[e] = 1;
      perm[pos] = e;
      if (dfs(pos + 1, lt)) {
        improved = true;
        less_flag = false;
      }
      used[e] = 0;
    }
    return improved;
  }

  std::vector<int> run() {
    dfs(0, false);
    assert(have_best);
    return best_perm;
  }
};

struct CompData {
  std::vector<int> elems;
  Poset poset;
};

std::vector<CompData> split_components(const Poset& p) {
  ComponentPartition parts = components(p);
  std::vector<CompData> out(parts.count);
  for (int i = 0; i < p.size(); ++i) out[parts.labels[i]].elems.push_back(i);
  for (auto& c : out) c.poset = induced(p, c.elems);
  return out;
}

std::vector<int> canonical_order_connected(const Poset& comp) {
  auto colors = refine_colors({&comp}, 0);
  CanonSearch search(comp, colors[0]);
  return search.run();
}

// Cheap isomorphism invariants: size, height, level sizes, strict degree
// multisets, component size multiset.
struct Invariants {
  int n = 0;
  int height = -1;
  std::vector<int> level_hist, updeg, downdeg, comp_sizes;
  bool operator==(const Invariants&) const = default;
};

Invariants invariants(const Poset& p) {
  Invariants inv;
  inv.n = p.size();
  if (p.empty()) return inv;
  HeightProfile h = heights(p);
  inv.height = h.total;
  inv.level_hist.assign(h.total + 1, 0);
  for (int v : h.per_element) ++inv.level_hist[v];
  BitMatrix down = p.matrix().transposed();
  const int words = p.matrix().words_per_row();
  inv.updeg.resize(p.size());
  inv.downdeg.resize(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int up = 0, dn = 0;
    for (int w = 0; w < words; ++w) {
      up += std::popcount(p.matrix().row(i)[w]);
      dn += std::popcount(down.row(i)[w]);
    }
    inv.updeg[i] = up - 1;
    inv.downdeg[i] = dn - 1;
  }
  std::sort(inv.updeg.begin(), inv.updeg.end());
  std::sort(inv.downdeg.begin(), inv.downdeg.end());
  ComponentPartition parts = components(p);
  inv.comp_sizes.assign(parts.count, 0);
  for (int lbl : parts.labels) ++inv.comp_sizes[lbl];
  std::sort(inv.comp_sizes.begin(), inv.comp_sizes.end());
  return inv;
}

struct CoverLists {
  std::vector<std::vector<int>> up, down;  // sorted
};

CoverLists cover_lists(const Poset& p) {
  CoverLists cl;
  cl.up.resize(p.size());
  cl.down.resize(p.size());
  for (auto [a, b] : p.cover_pairs()) {
    cl.up[a].push_back(b);
    cl.down[b].push_back(a);
  }
  return cl;  // cover_pairs is sorted, so the lists are too
}

// Complete backtracking search for an order isomorphism between connected
// posets of equal size. Maps along the cover graph; a bijection that
// preserves and reflects covers is an isomorphism of the closures.
class Embedder {
 public:
  Embedder(const Poset& a, const Poset& b) : a_(a), b_(b), n_(a.size()) {}

  std::optional<std::vector<int>> run() {
    auto colors = refine_colors({&a_, &b_}, n_ > 2048 ? kBigRefineRounds : 0);
    ca_ = std::move(colors[0]);
    cb_ = std::move(colors[1]);
    {
      std::vector<int> ha, hb;
      ha = ca_;
      hb = cb_;
      std::sort(ha.begin(), ha.end());
      std::sort(hb.begin(), hb.end());
      if (ha != hb) return std::nullopt;
    }
    la_ = cover_lists(a_);
    lb_ = cover_lists(b_);

    // BFS over the cover graph; every later vertex has a mapped cover
    // neighbor, which keeps candidate sets small.
    std::vector<int> cell_size(n_ + 1, 0);
    for (int c : ca_) ++cell_size[c];
    int root = 0;
    for (int i = 1; i < n_; ++i)
      if (cell_size[ca_[i]] < cell_size[ca_[root]]) root = i;
    order_.reserve(n_);
    parent_.assign(n_, -1);
    parent_up_.assign(n_, false);
    std::vector<char> seen(n_, 0);
    order_.push_back(root);
    seen[root] = 1;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      int v = order_[head];
      for (int w : la_.up[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent_[w] = v;
          parent_up_[w] = true;
          order_.push_back(w);
        }
      for (int w : la_.down[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent_[w] = v;
          parent_up_[w] = false;
          order_.push_back(w);
        }
    }
    if (static_cast<int>(order_.size()) != n_) return std::nullopt;  // disconnected input

    map_.assign(n_, -1);
    used_.assign(n_, 0);
    bup_.assign(n_, 0);
    bdown_.assign(n_, 0);
    aup_.assign(n_, 0);
    adown_.assign(n_, 0);
    if (place(0)) return map_;
    return std::nullopt;
  }

 private:
  bool consistent(int v, int w) const {
    if (ca_[v] != cb_[w]) return false;
    if (aup_[v] != bup_[w] || adown_[v] != bdown_[w]) return false;
    for (int x : la_.up[v]) {
      if (map_[x] < 0) continue;
      if (!std::binary_search(lb_.up[w].begin(), lb_.up[w].end(), map_[x])) return false;
    }
    for (int x : la_.down[v]) {
      if (map_[x] < 0) continue;
      if (!std::binary_search(lb_.down[w].begin(), lb_.down[w].end(), map_[x])) return false;
    }
    return true;
  }

  void apply(int v, int w) {
    map_[v] = w;
    used_[w] = 1;
    for (int x : la_.up[v]) ++adown_[x];
    for (int x : la_.down[v]) ++aup_[x];
    for (int y : lb_.up[w]) ++bdown_[y];
    for (int y : lb_.down[w]) ++bup_[y];
  }

  void undo(int v, int w) {
    map_[v] = -1;
    used_[w] = 0;
    for (int x : la_.up[v]) --adown_[x];
    for (int x : la_.down[v]) --aup_[x];
    for (int y : lb_.up[w]) --bdown_[y];
    for (int y : lb_.down[w]) --bup_[y];
  }

  bool place(int pos) {
    if (pos == n_) return true;
    const int v = order_[pos];
    if (parent_[v] < 0) {
      for (int w = 0; w < n_; ++w) {
        if (used_[w] || !consistent(v, w)) continue;
        apply(v, w);
        if (place(pos + 1)) return true;
        undo(v, w);
      }
      return false;
    }
    const int pw = map_[parent_[v]];
    const auto& cand = parent_up_[v] ? lb_.up[pw] : lb_.down[pw];
    for (int w : cand) {
      if (used_[w] || !consistent(v, w)) continue;
      apply(v, w);
      if (place(pos + 1)) return true;
      undo(v, w);
    }
    return false;
  }

  const Poset& a_;
  const Poset& b_;
  int n_;
  std::vector<int> ca_, cb_;
  CoverLists la_, lb_;
  std::vector<int> order_, parent_, map_;
  std::vector<bool> parent_up_;
  std::vector<char> used_;
  // mapped cover-neighbor counters on both sides
  std::vector<int> aup_, adown_, bup_, bdown_;
};

// f[k] = elems_q[order_q^{-1}(order_p...)]: compose two canonical orders.
void compose_orders(const std::vector<int>& elems_p, const std::vector<int>& order_p,
                    const std::vector<int>& elems_q, const std::vector<int>& order_q,
                    std::vector<int>& out) {
  for (std::size_t pos = 0; pos < order_p.size(); ++pos)
    out[elems_p[order_p[pos]]] = elems_q[order_q[pos]];
}

// Component-wise isomorphism for posets past the key threshold. Fills
// out_map (p element -> q element) when requested.
bool big_iso(const Poset& p, const Poset& q, std::vector<int>* out_map) {
  auto pcomps = split_components(p);
  auto qcomps = split_components(q);
  if (pcomps.size() != qcomps.size()) return false;

  struct Entry {
    CompData* comp;
    std::string profile;
    int cls = -1;
    std::optional<std::vector<int>> order;  // canonical order for small comps
  };
  auto profile_of = [](const Poset& cp) {
    Invariants inv = invariants(cp);
    std::string s = std::to_string(inv.n) + "|" + std::to_string(inv.height) + "|";
    for (int v : inv.level_hist) s += std::to_string(v) + ",";
    s += "|";
    for (int v : inv.updeg) s += std::to_string(v) + ",";
    s += "|";
    for (int v : inv.downdeg) s += std::to_string(v) + ",";
    return s;
  };

  std::vector<Entry> pe, qe;
  for (auto& c : pcomps) pe.push_back({&c, profile_of(c.poset)});
  for (auto& c : qcomps) qe.push_back({&c, profile_of(c.poset)});

  // Iso classes shared across both sides.
  struct Rep {
    const CompData* comp;
    std::string profile;
    std::optional<std::string> key;  // canonical bytes for small comps
  };
  std::vector<Rep> reps;
  auto classify = [&](Entry& e) {
    const int sz = e.comp->poset.size();
    std::optional<std::string> key;
    if (sz <= kKeyThreshold) {
      auto order = canonical_order_connected(e.comp->poset);
      key = encode_matrix(e.comp->poset, order);
      e.order = std::move(order);
    }
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (reps[r].profile != e.profile) continue;
      if (key.has_value()) {
        if (reps[r].key == key) {
          e.cls = static_cast<int>(r);
          return;
        }
      } else if (Embedder(e.comp->poset, reps[r].comp->poset).run().has_value()) {
        e.cls = static_cast<int>(r);
        return;
      }
    }
    reps.push_back({e.comp, e.profile, key});
    e.cls = static_cast<int>(reps.size()) - 1;
  };
  for (auto& e : pe) classify(e);
  for (auto& e : qe) classify(e);

  std::vector<int> pcount(reps.size(), 0), qcount(reps.size(), 0);
  for (auto& e : pe) ++pcount[e.cls];
  for (auto& e : qe) ++qcount[e.cls];
  if (pcount != qcount) return false;
  if (!out_map) return true;

  out_map->assign(p.size(), -1);
  std::vector<std::vector<Entry*>> qbucket(reps.size());
  for (auto& e : qe) qbucket[e.cls].push_back(&e);
  for (auto& e : pe) {
    Entry* partner = qbucket[e.cls].back();
    qbucket[e.cls].pop_back();
    if (e.order.has_value()) {
      compose_orders(e.comp->elems, *e.order, partner->comp->elems, *partner->order, *out_map);
    } else {
      auto emb = Embedder(e.comp->poset, partner->comp->poset).run();
      assert(emb.has_value());
      for (int i = 0; i < e.comp->poset.size(); ++i)
        (*out_map)[e.comp->elems[i]] = partner->comp->elems[(*emb)[i]];
    }
  }
  return true;
}

}  // namespace

std::string CanonicalKey::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

CanonicalForm canonical_form(const Poset& p) {
  auto comps = split_components(p);
  struct Result {
    const CompData* comp;
    std::vector<int> order;
    std::string bytes;
  };
  std::vector<Result> results;
  results.reserve(comps.size());
  for (auto& c : comps) {
    auto order = canonical_order_connected(c.poset);
    auto bytes = encode_matrix(c.poset, order);
    results.push_back({&c, std::move(order), std::move(bytes)});
  }
  std::sort(results.begin(), results.end(), [](const Result& x, const Result& y) {
    if (x.comp->poset.size() != y.comp->poset.size())
      return x.comp->poset.size() < y.comp->poset.size();
    return x.bytes < y.bytes;
  });
  CanonicalForm form;
  form.order.reserve(p.size());
  for (const auto& r : results)
    for (int pos : r.order) form.order.push_back(r.comp->elems[pos]);
  form.key.bytes = encode_matrix(p, form.order);
  return form;
}

CanonicalKey canonical_key(const Poset& p) {
  return canonical_form(p).key;
}

std::string labeled_encoding(const Poset& p) {
  std::vector<int> identity(p.size());
  std::iota(identity.begin(), identity.end(), 0);
  return encode_matrix(p, identity);
}

bool is_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return false;
  if (p.empty()) return true;
  if (invariants(p) != invariants(q)) return false;
  if (p.size() <= kKeyThreshold) return canonical_key(p) == canonical_key(q);
  return big_iso(p, q, nullptr);
}

std::optional<std::vector<int>> find_isomorphism(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  std::vector<int> f(p.size(), -1);
  if (p.empty()) return f;
  if (invariants(p) != invariants(q)) return std::nullopt;
  if (p.size() <= kKeyThreshold) {
    CanonicalForm fp = canonical_form(p);
    CanonicalForm fq = canonical_form(q);
    if (fp.key != fq.key) return std::nullopt;
    for (int pos = 0; pos < p.size(); ++pos) f[fp.order[pos]] = fq.order[pos];
  } else if (!big_iso(p, q, &f)) {
    return std::nullopt;
  }
  // Postcondition check: the bijection preserves and reflects <=.
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(i, j) != q.leq(f[i], f[j]))
        throw poset_error("internal error: isomorphism candidate failed verification");
  return f;
}

}  // namespace posetcalc
