#include "k3lines/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace k3l::fano {

Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = (int)i;
  return r;
}

namespace {

bool is_identity(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != (int)i) return false;
  return true;
}

using Cells = std::vector<std::vector<int>>;

struct Searcher {
  const ConfigGraph& g;
  int n;

  bool have_best = false;
  std::vector<long long> best_trace;
  std::vector<uint8_t> best_bytes;
  Perm best_label;
  std::vector<Perm> autos;  // verified automorphisms (kept across best resets)

  std::vector<long long> cur_trace;
  std::vector<int> prefix;

  explicit Searcher(const ConfigGraph& graph) : g(graph), n(graph.n) {}

  Cells refine(Cells cells) const {
    for (;;) {
      bool changed = false;
      Cells next;
      for (size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() == 1) { next.push_back(cells[c]); continue; }
        // invariant profile of v: per cell, packed multiplicity counts
        std::map<std::vector<long long>, std::vector<int>> split;
        for (int v : cells[c]) {
          std::vector<long long> sig;
          sig.reserve(cells.size());
          for (size_t d = 0; d < cells.size(); ++d) {
            long long cnt1 = 0, cnt2 = 0, cnt3 = 0, big = 0;
            for (int w : cells[d]) {
              if (w == v) continue;
              switch (g.mult(v, w)) {
                case 0: break;
                case 1: ++cnt1; break;
                case 2: ++cnt2; break;
                case 3: ++cnt3; break;
                default: big += g.mult(v, w);
              }
            }
            sig.push_back((cnt1 << 40) | (cnt2 << 24) | (cnt3 << 8) | (big & 0xff));
          }
          split[sig].push_back(v);
        }
        if (split.size() > 1) changed = true;
        for (auto& [sig, verts] : split) next.push_back(verts);
      }
      cells = std::move(next);
      if (!changed) return cells;
    }
  }

  // appended at each node: cell sizes and quotient rows (well defined on an
  // equitable partition)
  void trace_node(const Cells& cells) {
    cur_trace.push_back(-(long long)cells.size());
    for (const auto& cell : cells) {
      cur_trace.push_back((long long)cell.size());
      int v = cell[0];
      for (const auto& other : cells) {
        long long acc = 0;
        for (int w : other)
          if (w != v) acc += 7LL * g.mult(v, w) + (g.mult(v, w) > 0);
        cur_trace.push_back(acc);
      }
    }
  }

  // -1: cur subtree strictly better than best; +1: strictly worse; 0: tied
  int cmp_prefix() const {
    size_t k = std::min(cur_trace.size(), best_trace.size());
    for (size_t i = 0; i < k; ++i) {
      if (cur_trace[i] < best_trace[i]) return -1;
      if (cur_trace[i] > best_trace[i]) return 1;
    }
    return 0;
  }

  std::vector<uint8_t> leaf_bytes(const Perm& label) const {
    std::vector<uint8_t> b;
    const char* magic = "K3LCF1";
    for (const char* p = magic; *p; ++p) b.push_back((uint8_t)*p);
    b.push_back((uint8_t)n);
    Perm pos_to_vert = inverse_perm(label);
    for (int p = 0; p < n; ++p) b.push_back(g.colors[pos_to_vert[p]]);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        b.push_back((uint8_t)g.mult(pos_to_vert[p], pos_to_vert[q]));
    return b;
  }

  void record_automorphism(const Perm& a) {
    if (is_identity(a)) return;
    for (const Perm& old : autos)
      if (old == a) return;
    autos.push_back(a);
  }

  void at_leaf(const Cells& cells) {
    Perm label(n);
    for (size_t c = 0; c < cells.size(); ++c) label[cells[c][0]] = (int)c;
    std::vector<uint8_t> bytes = leaf_bytes(label);
    if (!have_best) {
      have_best = true;
      best_trace = cur_trace;
      best_bytes = bytes;
      best_label = label;
      return;
    }
    if (cur_trace == best_trace && bytes == best_bytes) {
      record_automorphism(compose(inverse_perm(best_label), label));
      return;
    }
    if (cur_trace < best_trace || (cur_trace == best_trace && bytes < best_bytes)) {
      best_trace = cur_trace;
      best_bytes = bytes;
      best_label = label;
    }
  }

  void recurse(Cells cells) {
    cells = refine(cells);
    size_t mark = cur_trace.size();
    trace_node(cells);
    if (have_best && cmp_prefix() > 0) { cur_trace.resize(mark); return; }
    int target = -1;
    for (size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() > 1 && (target < 0 || cells[c].size() < cells[target].size()))
        target = (int)c;
    if (target < 0) {
      at_leaf(cells);
      cur_trace.resize(mark);
      return;
    }
    const std::vector<int> cell = cells[target];
    std::set<int> branched;
    for (int v : cell) {
      // orbit pruning under automorphisms fixing the individualized prefix
      bool skip = false;
      {
        std::vector<int> uf(n);
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int x) {
          while (uf[x] != x) { uf[x] = uf[uf[x]]; x = uf[x]; }
          return x;
        };
        for (const Perm& a : autos) {
          bool fixes = true;
          for (int p : prefix)
            if (a[p] != p) { fixes = false; break; }
          if (!fixes) continue;
          for (int w : cell) {
            int x = find(w), y = find(a[w]);
            if (x != y) uf[std::max(x, y)] = std::min(x, y);
          }
        }
        for (int w : branched)
          if (find(w) == find(v)) { skip = true; break; }
      }
      if (skip) continue;
      branched.insert(v);
      Cells child;
      for (size_t c = 0; c < cells.size(); ++c) {
        if ((int)c == target) {
          child.push_back({v});
          std::vector<int> rest;
          for (int w : cells[c])
            if (w != v) rest.push_back(w);
          child.push_back(rest);
        } else {
          child.push_back(cells[c]);
        }
      }
      prefix.push_back(v);
      recurse(std::move(child));
      prefix.pop_back();
    }
    cur_trace.resize(mark);
  }
};

}  // namespace

CanonicalResult canonical_form(const ConfigGraph& g, const Constraints& c) {
  int n = g.n;
  if (n == 0) {
    CanonicalResult r;
    r.bytes = {'K', '3', 'L', 'C', 'F', '1', 0};
    return r;
  }
  std::vector<std::tuple<int, long long, int>> key(n);
  for (int v = 0; v < n; ++v) key[v] = {-1, 0, g.colors[v]};
  for (size_t i = 0; i < c.pointwise.size(); ++i) {
    int v = c.pointwise[i];
    if (v < 0 || v >= n) throw Error("canonicalForm: pointwise vertex out of range");
    std::get<0>(key[v]) = (int)i;
  }
  for (size_t s = 0; s < c.setwise.size(); ++s)
    for (int v : c.setwise[s]) {
      if (v < 0 || v >= n) throw Error("canonicalForm: setwise vertex out of range");
      std::get<1>(key[v]) |= (1LL << (s % 62));
    }
  std::map<std::tuple<int, long long, int>, std::vector<int>> cells0;
  for (int v = 0; v < n; ++v) cells0[key[v]].push_back(v);

  Searcher s(g);
  Cells init;
  for (auto& [k, verts] : cells0) init.push_back(verts);
  s.recurse(init);

  CanonicalResult r;
  r.bytes = s.best_bytes;
  r.labeling = s.best_label;
  for (const Perm& a : s.autos) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (g.colors[i] != g.colors[a[i]]) ok = false;
      for (int j = 0; j < n && ok; ++j)
        if (g.mult(i, j) != g.mult(a[i], a[j])) ok = false;
    }
    if (!ok) throw Error("canonicalForm: internal error (bad automorphism)");
    r.generators.push_back(a);
  }
  r.aut_order = group_order(n, r.generators);
  return r;
}

std::string CanonicalResult::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// permutation groups: incremental Schreier-Sims, deterministic

namespace {

struct Bsgs {
  int n;
  std::vector<int> base;
  std::vector<std::vector<Perm>> S;          // generators fixing base[0..l-1]
  std::vector<std::map<int, Perm>> tr;       // orbit transversals

  explicit Bsgs(int n_) : n(n_) {}

  void rebuild(size_t l) {
    tr[l].clear();
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    tr[l][base[l]] = id;
    std::vector<int> queue = {base[l]};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int pt = queue[qi];
      for (const Perm& g : S[l]) {
        int img = g[pt];
        if (!tr[l].count(img)) {
          tr[l][img] = compose(g, tr[l][pt]);
          queue.push_back(img);
        }
      }
    }
  }

  std::pair<Perm, size_t> strip(Perm p, size_t from) const {
    for (size_t l = from; l < base.size(); ++l) {
      int img = p[base[l]];
      auto it = tr[l].find(img);
      if (it == tr[l].end()) return {p, l};
      p = compose(inverse_perm(it->second), p);
    }
    return {p, base.size()};
  }

  void extend_base(const Perm& moved) {
    for (int i = 0; i < n; ++i)
      if (moved[i] != i) {
        base.push_back(i);
        S.push_back({});
        tr.push_back({});
        return;
      }
    throw Error("group_order: identity passed to extend_base");
  }

  void distribute(const Perm& h, size_t upto) {
    for (size_t l = 0; l <= upto && l < base.size(); ++l) {
      bool fixes = true;
      for (size_t m = 0; m < l; ++m)
        if (h[base[m]] != base[m]) fixes = false;
      if (!fixes) break;
      bool dup = false;
      for (const Perm& e : S[l])
        if (e == h) dup = true;
      if (!dup) S[l].push_back(h);
    }
  }

  void add(const Perm& g) {
    auto [h, l] = strip(g, 0);
    if (is_identity(h)) return;
    if (l == base.size()) extend_base(h);
    distribute(h, l);
    stabilize();
  }

  void stabilize() {
    for (size_t l = 0; l < base.size(); ++l) rebuild(l);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t l = base.size(); l-- > 0 && !dirty;) {
        std::vector<std::pair<int, Perm>> pts(tr[l].begin(), tr[l].end());
        for (const auto& [pt, rep] : pts) {
          for (const Perm& s : S[l]) {
            const Perm& into = tr[l].at(s[pt]);
            Perm schreier = compose(inverse_perm(into), compose(s, rep));
            auto [h, j] = strip(schreier, l + 1);
            if (is_identity(h)) continue;
            if (j == base.size()) extend_base(h);
            distribute(h, j);
            for (size_t m = 0; m < base.size(); ++m) rebuild(m);
            dirty = true;
            break;
          }
          if (dirty) break;
        }
      }
    }
  }
};

}  // namespace

Int group_order(int n, const std::vector<Perm>& gens) {
  Bsgs b(n);
  for (const Perm& g : gens) {
    if ((int)g.size() != n) throw Error("group_order: permutation length mismatch");
    b.add(g);
  }
  Int order = 1;
  for (const auto& t : b.tr) order *= (long)t.size();
  return order;
}

std::vector<int> vertex_orbits(int n, const std::vector<Perm>& gens) {
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) { uf[x] = uf[uf[x]]; x = uf[x]; }
    return x;
  };
  for (const Perm& g : gens)
    for (int i = 0; i < n; ++i) {
      int a = find(i), b = find(g[i]);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = find(i);
  return out;
}

std::vector<int> orbit_reps_on_sets(const std::vector<std::vector<int>>& sets,
                                    const std::vector<Perm>& gens) {
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < sets.size(); ++i) index[sets[i]] = (int)i;
  std::vector<int> rep(sets.size(), -1);
  for (size_t i = 0; i < sets.size(); ++i) {
    if (rep[i] >= 0) continue;
    std::vector<int> orbit = {(int)i};
    rep[i] = (int)i;
    for (size_t qi = 0; qi < orbit.size(); ++qi) {
      const auto& cur = sets[orbit[qi]];
      for (const Perm& g : gens) {
        std::vector<int> img;
        img.reserve(cur.size());
        for (int v : cur) img.push_back(g[v]);
        std::sort(img.begin(), img.end());
        auto it = index.find(img);
        if (it == index.end())
          throw Error("orbit_reps_on_sets: set list not closed under the group");
        if (rep[it->second] < 0) {
          rep[it->second] = (int)i;
          orbit.push_back(it->second);
        }
      }
    }
  }
  return rep;
}

}  // namespace k3l::fano
