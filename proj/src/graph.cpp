#include "k3lines/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace k3l::fano {

using intlat::GramLattice;
using intlat::Signature;

bool ConfigGraph::is_simple() const {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mult(i, j) > 1) return false;
  return true;
}

int ConfigGraph::valency(int i) const {
  int v = 0;
  for (int j = 0; j < n; ++j)
    if (j != i && mult(i, j) > 0) ++v;
  return v;
}

int ConfigGraph::line_count() const {
  int c = 0;
  for (int i = 0; i < n; ++i) c += (colors[i] == 1);
  return c;
}

int ConfigGraph::exceptional_count() const {
  int c = 0;
  for (int i = 0; i < n; ++i) c += (colors[i] == 0);
  return c;
}

ConfigGraph ConfigGraph::with_vertex(const std::vector<int>& support, int color) const {
  ConfigGraph g(n + 1);
  for (int i = 0; i < n; ++i) {
    g.colors[i] = colors[i];
    for (int j = 0; j < n; ++j) g.adj[size_t(i) * g.n + j] = adj[size_t(i) * n + j];
  }
  g.colors[n] = (uint8_t)color;
  for (int s : support) g.set_mult(n, s, 1);
  return g;
}

ConfigGraph ConfigGraph::induced(const std::vector<int>& verts) const {
  ConfigGraph g((int)verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    g.colors[i] = colors[verts[i]];
    for (size_t j = 0; j < verts.size(); ++j)
      g.adj[i * verts.size() + j] = (uint8_t)mult(verts[i], verts[j]);
  }
  return g;
}

std::vector<std::vector<int>> ConfigGraph::components() const {
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = (int)out.size();
    out.push_back({});
    std::deque<int> q = {s};
    comp[s] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      out[id].push_back(v);
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && mult(v, w) > 0) { comp[w] = id; q.push_back(w); }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

std::string ConfigGraph::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  nlohmann::json edges = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (mult(i, k) > 0) edges.push_back({i, k, mult(i, k)});
  j["edges"] = edges;
  bool all_lines = true;
  for (int i = 0; i < n; ++i)
    if (colors[i] != 1) all_lines = false;
  if (!all_lines) j["colors"] = colors;
  return j.dump();
}

ConfigGraph ConfigGraph::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ConfigGraph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    int m = e.size() > 2 ? e.at(2).get<int>() : 1;
    if (a < 0 || b < 0 || a >= g.n || b >= g.n || a == b)
      throw Error("graph json: bad edge");
    g.set_mult(a, b, m);
  }
  if (j.contains("colors")) {
    auto c = j.at("colors").get<std::vector<int>>();
    if ((int)c.size() != g.n) throw Error("graph json: colors length mismatch");
    for (int i = 0; i < g.n; ++i) {
      if (c[i] != 0 && c[i] != 1) throw Error("graph json: colors must be 0/1");
      g.colors[i] = (uint8_t)c[i];
    }
  }
  return g;
}

std::string Pattern::str() const {
  std::ostringstream os;
  os << "(" << ta2 << "," << a3 << "," << a2 << "," << a1 << ")";
  return os.str();
}

std::string DynkinLabel::str() const {
  std::string s;
  if (affine) s += "~";
  s += family;
  s += std::to_string(index);
  return s;
}

int affine_cmp(const DynkinLabel& a, const DynkinLabel& b) {
  if (a.index != b.index) return a.index < b.index ? -1 : 1;
  if (a.family != b.family) return a.family < b.family ? -1 : 1;
  return 0;
}

DynkinLabel dynkin_from_string(const std::string& s) {
  DynkinLabel d;
  size_t pos = 0;
  if (pos < s.size() && s[pos] == '~') { d.affine = true; ++pos; }
  if (pos >= s.size()) throw Error("dynkin label: empty");
  d.family = s[pos++];
  if (d.family != 'A' && d.family != 'D' && d.family != 'E')
    throw Error("dynkin label: family must be A, D or E");
  d.index = std::stoi(s.substr(pos));
  return d;
}

FanoLattice fano_lattice(const ConfigGraph& g, bool require_hyperbolic) {
  int n = g.n, m = n + 1;
  IMat big(m, m);
  for (int i = 0; i < n; ++i) {
    big.at(i, i) = -2;
    for (int j = 0; j < n; ++j)
      if (j != i) big.at(i, j) = g.mult(i, j);
    big.at(i, n) = g.color(i);
    big.at(n, i) = g.color(i);
  }
  big.at(n, n) = 4;

  FanoLattice f;
  f.pre_sig = intlat::signature(GramLattice(big));
  {
    IMat zg(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) zg.at(i, j) = big.at(i, j);
    f.zgamma_sig = intlat::signature(GramLattice(zg));
  }
  if (require_hyperbolic && f.pre_sig.plus != 1)
    throw Error("fanoLattice: quotient not hyperbolic (sigma+ = " +
                std::to_string(f.pre_sig.plus) + ")");

  IMat ker = intlat::right_kernel(big);
  int r = ker.rows;
  f.rank = m - r;
  if (r == 0) {
    f.lattice = GramLattice(big);
    for (int i = 0; i < m; ++i) {
      IVec e(m, 0);
      e[i] = 1;
      if (i < n) f.vertex_images.push_back(e);
      else f.h = e;
    }
    return f;
  }
  // unimodular completion: rows of v from the SNF of the kernel basis; the
  // first r rows span ker, the rest descend to a basis of the quotient
  intlat::SnfResult s = intlat::smith_normal_form(ker);
  for (int i = 0; i < r; ++i)
    if (s.d.at(i, i) != 1) throw Error("fanoLattice: kernel basis not primitive");
  const IMat& v = s.v;
  QMat vinvq = intlat::inverse(v);
  IMat comp(m - r, m);
  for (int i = 0; i < m - r; ++i)
    for (int j = 0; j < m; ++j) comp.at(i, j) = v.at(r + i, j);
  IMat quot = comp.mul(big).mul(comp.transpose());
  f.lattice = GramLattice(quot);
  for (int i = 0; i < m; ++i) {
    IVec img(m - r);
    for (int j = 0; j < m - r; ++j) {
      Rat e = vinvq.at(i, r + j);
      if (e.get_den() != 1) throw Error("fanoLattice: non-integral projection");
      img[j] = e.get_num();
    }
    if (i < n) f.vertex_images.push_back(img);
    else f.h = img;
  }
  if (f.lattice.inner(f.h, f.h) != 4) throw Error("fanoLattice: h^2 != 4 after quotient");
  return f;
}

intlat::PolarizedLattice FanoLattice::polarized() const {
  return intlat::PolarizedLattice(lattice, h);
}

GraphClass classify_graph(const ConfigGraph& g) {
  FanoLattice f = fano_lattice(g);
  const Signature& s = f.zgamma_sig;
  if (s.plus >= 2)
    throw Error("classifyGraph: sigma+ >= 2 (not realizable in a hyperbolic ambient)");
  if (s.plus == 1) return GraphClass::Hyperbolic;
  return s.zero > 0 ? GraphClass::Parabolic : GraphClass::Elliptic;
}

namespace {

// arm lengths (edge counts) from a branch vertex of a tree
std::vector<int> arms_from(const ConfigGraph& g, int center) {
  std::vector<int> arms;
  for (int w = 0; w < g.n; ++w) {
    if (g.mult(center, w) == 0) continue;
    int len = 1, prev = center, cur = w;
    for (;;) {
      int next = -1;
      for (int x = 0; x < g.n; ++x)
        if (x != prev && g.mult(cur, x) > 0) { next = x; break; }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  return arms;
}

}  // namespace

DynkinLabel dynkin_type(const ConfigGraph& g) {
  if (!g.is_simple()) throw Error("dynkinType: multiple edges");
  if (g.components().size() != 1) throw Error("dynkinType: graph not connected");
  GraphClass cls = classify_graph(g);
  if (cls == GraphClass::Hyperbolic) throw Error("dynkinType: graph is hyperbolic");
  bool affine = (cls == GraphClass::Parabolic);
  int n = g.n;
  int edges = 0, maxdeg = 0, deg3 = 0, deg4 = 0;
  std::vector<int> branch;
  for (int i = 0; i < n; ++i) {
    int d = g.valency(i);
    maxdeg = std::max(maxdeg, d);
    if (d >= 3) branch.push_back(i);
    if (d == 3) ++deg3;
    if (d == 4) ++deg4;
    for (int j = i + 1; j < n; ++j) edges += (g.mult(i, j) > 0);
  }
  DynkinLabel lab;
  lab.affine = affine;
  if (!affine) {
    lab.index = n;
    if (maxdeg <= 2) { lab.family = 'A'; return lab; }
    if (branch.size() != 1 || maxdeg != 3) throw Error("dynkinType: unrecognized elliptic graph");
    auto arms = arms_from(g, branch[0]);
    if (arms[0] == 1 && arms[1] == 1) { lab.family = 'D'; return lab; }
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
      lab.family = 'E';
      return lab;
    }
    throw Error("dynkinType: unrecognized elliptic graph");
  }
  lab.index = n - 1;
  if (maxdeg == 2 && edges == n) { lab.family = 'A'; return lab; }
  if (deg4 == 1 && n == 5 && edges == 4) { lab.family = 'D'; return lab; }  // ~D4 star
  if (deg3 == 2 && maxdeg == 3) { lab.family = 'D'; return lab; }           // ~Dn forks
  if (deg3 == 1 && maxdeg == 3) {
    auto arms = arms_from(g, branch[0]);
    if ((arms == std::vector<int>{2, 2, 2}) || (arms == std::vector<int>{1, 3, 3}) ||
        (arms == std::vector<int>{1, 2, 5})) {
      lab.family = 'E';
      return lab;
    }
  }
  throw Error("dynkinType: unrecognized parabolic graph");
}

IVec kappa(const ConfigGraph& fiber) {
  if (fiber.components().size() != 1) throw Error("kappa: fiber not connected");
  if (classify_graph(fiber) != GraphClass::Parabolic) throw Error("kappa: fiber not parabolic");
  int n = fiber.n;
  IMat zg(n, n);
  for (int i = 0; i < n; ++i) {
    zg.at(i, i) = -2;
    for (int j = 0; j < n; ++j)
      if (j != i) zg.at(i, j) = fiber.mult(i, j);
  }
  IMat ker = intlat::right_kernel(zg);
  if (ker.rows != 1) throw Error("kappa: kernel rank != 1");
  IVec k = ker.row(0);
  bool neg = false;
  for (const auto& c : k)
    if (c < 0) neg = true;
  if (neg)
    for (auto& c : k) c = -c;
  for (const auto& c : k)
    if (c <= 0) throw Error("kappa: kernel vector not positive");
  return k;
}

int girth(const ConfigGraph& g) {
  if (!g.is_simple()) throw Error("girth: multiple edges");
  int best = kGirthInfinity;
  std::vector<int> dist(g.n), par(g.n);
  for (int s = 0; s < g.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(par.begin(), par.end(), -1);
    std::deque<int> q = {s};
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w = 0; w < g.n; ++w) {
        if (g.mult(v, w) == 0 || w == par[v]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          par[w] = v;
          q.push_back(w);
        } else {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

PencilDecomposition decompose_pencil(const ConfigGraph& g, const std::vector<int>& fiber) {
  ConfigGraph fg = g.induced(fiber);
  if (fg.components().size() != 1 || classify_graph(fg) != GraphClass::Parabolic)
    throw Error("decomposePencil: fiber not connected parabolic");
  IVec kap = kappa(fg);
  PencilDecomposition d;
  d.fiber = fiber;
  std::vector<char> in_fiber(g.n, 0);
  for (int c : fiber) in_fiber[c] = 1;
  d.sec.assign(fiber.size(), {});
  d.sec_star_i.assign(fiber.size(), {});
  d.multiplicity.assign(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    if (in_fiber[v]) { d.pencil.push_back(v); continue; }
    bool meets = false;
    Int m = 0;
    for (size_t i = 0; i < fiber.size(); ++i) {
      int e = g.mult(v, fiber[i]);
      if (e > 0) meets = true;
      m += Int(e) * kap[i];
    }
    if (!meets) { d.pencil.push_back(v); continue; }
    d.sec_star.push_back(v);
    d.multiplicity[v] = (int)m.get_si();
    int hits = 0, hit_idx = -1;
    for (size_t i = 0; i < fiber.size(); ++i) {
      if (g.mult(v, fiber[i]) == 1) {
        d.sec_star_i[i].push_back(v);
        ++hits;
        hit_idx = (int)i;
      }
    }
    if (hits == 1) {
      bool pure = true;
      for (size_t i = 0; i < fiber.size(); ++i)
        if ((int)i != hit_idx && g.mult(v, fiber[i]) != 0) pure = false;
      if (pure) d.sec[hit_idx].push_back(v);
    }
  }
  for (size_t i = 0; i < fiber.size(); ++i) {
    ConfigGraph sub = g.induced(d.sec_star_i[i]);
    d.sec_star_class.push_back(sub.n == 0 ? GraphClass::Elliptic : classify_graph(sub));
  }
  return d;
}

Pattern pattern_of_delta_set(const ConfigGraph& g) {
  Pattern p;
  for (const auto& comp : g.components()) {
    ConfigGraph c = g.induced(comp);
    int edges = 0;
    for (int i = 0; i < c.n; ++i)
      for (int j = i + 1; j < c.n; ++j) {
        if (c.mult(i, j) > 1) throw Error("patternOfDeltaSet: multiple edge in component");
        edges += (c.mult(i, j) > 0);
      }
    if (c.n == 1) { p.a1++; continue; }
    if (c.n == 2 && edges == 1) { p.a2++; continue; }
    if (c.n == 3 && edges == 2) { p.a3++; continue; }
    if (c.n == 3 && edges == 3) { p.ta2++; continue; }
    std::ostringstream os;
    os << "patternOfDeltaSet: component with " << c.n << " vertices, " << edges
       << " edges is not one of ~A2, A3, A2, A1";
    throw Error(os.str());
  }
  return p;
}

GirthClass girth_class(const ConfigGraph& g) {
  int gi = girth(g);
  if (gi == 3) return GirthClass::Triangular;
  if (gi == 4) return GirthClass::Quadrangular;
  if (gi == 5) return GirthClass::Pentagonal;
  int maxval = 0;
  for (int i = 0; i < g.n; ++i) maxval = std::max(maxval, g.valency(i));
  return maxval >= 4 ? GirthClass::Astral : GirthClass::LocallyElliptic;
}

std::string girth_class_name(GirthClass c) {
  switch (c) {
    case GirthClass::Triangular: return "triangular";
    case GirthClass::Quadrangular: return "quadrangular";
    case GirthClass::Pentagonal: return "pentagonal";
    case GirthClass::Astral: return "astral";
    default: return "locally elliptic";
  }
}

ConfigGraph realize_pattern(const Pattern& p) {
  ConfigGraph g(p.size());
  int at = 0;
  for (int t = 0; t < p.ta2; ++t) {
    g.set_mult(at, at + 1, 1);
    g.set_mult(at + 1, at + 2, 1);
    g.set_mult(at, at + 2, 1);
    at += 3;
  }
  for (int t = 0; t < p.a3; ++t) {
    g.set_mult(at, at + 1, 1);
    g.set_mult(at + 1, at + 2, 1);
    at += 3;
  }
  for (int t = 0; t < p.a2; ++t) {
    g.set_mult(at, at + 1, 1);
    at += 2;
  }
  at += p.a1;
  return g;
}

ConfigGraph fiber_join(const Pattern& p, int attach_i) {
  ConfigGraph s = realize_pattern(p);
  ConfigGraph g(3 + s.n);
  g.set_mult(0, 1, 1);
  g.set_mult(1, 2, 1);
  g.set_mult(0, 2, 1);
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j)
      if (s.mult(i, j) > 0) g.set_mult(3 + i, 3 + j, s.mult(i, j));
  for (int i = 0; i < s.n; ++i) g.set_mult(attach_i, 3 + i, 1);
  return g;
}

}  // namespace k3l::fano
