#include "k3lines/discform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace k3l::discform {

using intlat::smith_normal_form;
using intlat::SnfResult;

namespace {

Rat mod_n(const Rat& x, long n) {
  // representative in [0, n)
  Rat q = x / n;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return x - Rat(fl) * n;
}

long legendre(const Int& a, long p) {
  Int pp(p);
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

Int pow_int(long p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// smallest quadratic non-residue mod odd p
long non_residue(long p) {
  for (long t = 2; t < p; ++t)
    if (legendre(Int(t), p) < 0) return t;
  throw Error("non_residue: none found");
}

// Split one p-part (generator orders p^kk[i], rational pairing matrix w
// with q lifts on the diagonal) into normal-form blocks.
std::vector<FormBlock> split_p_part(long p, std::vector<int> kk, QMat w) {
  std::vector<FormBlock> out;
  int m = (int)kk.size();
  std::vector<int> alive(m, 1);

  auto reduce_entry = [&](int i, int j) {
    Rat r = mod_n(w.at(i, j), i == j ? 2 : 1);
    w.at(i, j) = r;
    w.at(j, i) = r;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) reduce_entry(i, j);

  // numerator of x as a fraction with denominator exactly dividing p^k
  auto num_at = [&](const Rat& x, int k) -> std::optional<Int> {
    Rat scaled = x * Rat(pow_int(p, k));
    if (scaled.get_den() != 1) return std::nullopt;
    return scaled.get_num();
  };

  // g_j <- g_j - lambda * g_i
  auto eliminate = [&](int j, int i, const Int& lambda) {
    if (lambda == 0) return;
    Rat lam(lambda);
    // update the diagonal first (it uses the old w[j][i])
    w.at(j, j) += -2 * lam * w.at(j, i) + lam * lam * w.at(i, i);
    for (int l = 0; l < m; ++l) {
      if (!alive[l] || l == j) continue;
      w.at(j, l) -= lam * w.at(i, l);
      w.at(l, j) = w.at(j, l);
    }
    for (int l = 0; l < m; ++l)
      if (alive[l]) reduce_entry(std::min(j, l), std::max(j, l));
  };

  // lambda = x / pivot as an integer mod p^{ki}
  auto ratio_mod = [&](const Rat& x, const Rat& pivot, int ki) -> Int {
    if (x == 0) return Int(0);
    Rat r = x / pivot;
    Int pk = pow_int(p, ki);
    Int den = r.get_den() % pk;
    if (den < 0) den += pk;
    if (den % p == 0) throw Error("split_p_part: ratio not p-integral");
    Int di;
    if (mpz_invert(di.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
      throw Error("split_p_part: ratio denominator not invertible");
    Int lam = ((r.get_num() % pk) * di) % pk;
    if (lam < 0) lam += pk;
    return lam;
  };

  int remaining = m;
  while (remaining > 0) {
    int kmax = 0;
    for (int i = 0; i < m; ++i)
      if (alive[i]) kmax = std::max(kmax, kk[i]);
    Int pk = pow_int(p, kmax);

    // a diagonal pivot of maximal order whose q has full denominator
    int piv = -1;
    for (int i = 0; i < m && piv < 0; ++i) {
      if (!alive[i] || kk[i] != kmax) continue;
      auto nu = num_at(w.at(i, i), kmax);
      if (nu && *nu % p != 0) piv = i;
    }
    if (piv >= 0) {
      for (int j = 0; j < m; ++j) {
        if (!alive[j] || j == piv) continue;
        Int lam = ratio_mod(w.at(j, piv), w.at(piv, piv), kk[piv]);
        eliminate(j, piv, lam);
        if (w.at(j, piv) != 0) throw Error("split_p_part: elimination failed");
      }
      FormBlock b;
      b.p = p;
      b.k = kmax;
      b.kind = FormBlock::Cyclic;
      Int a = *num_at(w.at(piv, piv), kmax) % (2 * pk);
      if (a < 0) a += 2 * pk;
      if (p == 2) {
        Int mod = (kmax == 1) ? 4 : 8;
        b.a = (long)Int(a % mod).get_si();
      } else {
        b.chi = legendre(a % pk, p);  // character of b(g,g) numerator
      }
      out.push_back(b);
      alive[piv] = 0;
      --remaining;
      continue;
    }
    if (p != 2) {
      // odd p: fold a unit off-diagonal pairing onto the diagonal
      // (q(g_i + g_j) picks up 2 b_ij, and 2 is a unit)
      int fi = -1, fj = -1;
      for (int i = 0; i < m && fi < 0; ++i) {
        if (!alive[i] || kk[i] != kmax) continue;
        for (int j = 0; j < m; ++j) {
          if (!alive[j] || j == i || kk[j] != kmax) continue;
          auto nu = num_at(w.at(i, j), kmax);
          if (nu && *nu % p != 0) { fi = i; fj = j; break; }
        }
      }
      if (fi < 0) throw Error("split_p_part: degenerate odd part");
      eliminate(fi, fj, Int(-1));  // g_fi <- g_fi + g_fj
      continue;
    }
    // p = 2, even top level: find an odd pairing between two maximal-order
    // generators and split the 2x2 block
    int pi = -1, pj = -1;
    for (int i = 0; i < m && pi < 0; ++i) {
      if (!alive[i] || kk[i] != kmax) continue;
      for (int j = i + 1; j < m; ++j) {
        if (!alive[j] || kk[j] != kmax) continue;
        auto nu = num_at(w.at(i, j), kmax);
        if (nu && *nu % 2 != 0) { pi = i; pj = j; break; }
      }
    }
    if (pi < 0) throw Error("split_p_part: degenerate 2-part");
    Rat det = w.at(pi, pi) * w.at(pj, pj) - w.at(pi, pj) * w.at(pi, pj);
    for (int l = 0; l < m; ++l) {
      if (!alive[l] || l == pi || l == pj) continue;
      Rat rl1 = w.at(l, pi), rl2 = w.at(l, pj);
      if (rl1 == 0 && rl2 == 0) continue;
      Rat lam_r = (rl1 * w.at(pj, pj) - rl2 * w.at(pi, pj)) / det;
      Rat mu_r = (rl2 * w.at(pi, pi) - rl1 * w.at(pi, pj)) / det;
      Int lam = ratio_mod(lam_r, Rat(1), kk[pi]);
      Int mu = ratio_mod(mu_r, Rat(1), kk[pj]);
      eliminate(l, pi, lam);
      eliminate(l, pj, mu);
      if (w.at(l, pi) != 0 || w.at(l, pj) != 0)
        throw Error("split_p_part: 2x2 elimination failed");
    }
    auto qa = num_at(w.at(pi, pi), kmax), qb = num_at(w.at(pj, pj), kmax);
    auto wb = num_at(w.at(pi, pj), kmax);
    if (!qa || !qb || !wb) throw Error("split_p_part: malformed 2x2 block");
    Int d = (*qa * *qb - *wb * *wb) % 8;
    if (d < 0) d += 8;
    if (d != 7 && d != 3) throw Error("split_p_part: even 2x2 block with non-unit determinant");
    FormBlock b;
    b.p = 2;
    b.k = kmax;
    b.kind = (d == 7) ? FormBlock::BlockU : FormBlock::BlockV;
    out.push_back(b);
    alive[pi] = alive[pj] = 0;
    remaining -= 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// signature mod 8 of one block: odd p from the classical Gauss sums,
// p = 2 from the recursions G(a,2^k) = 2 G(a,2^{k-2}) down to k <= 2.
int block_sign(const FormBlock& b) {
  if (b.kind == FormBlock::BlockU) return 0;
  if (b.kind == FormBlock::BlockV) return (b.k % 2) ? 4 : 0;
  if (b.p == 2) {
    if (b.k % 2 == 0) return (int)(((b.a % 8) + 8) % 8);
    return (b.a % 4 == 1) ? 1 : 7;
  }
  if (b.k % 2 == 0) return 0;
  long chi_s = b.chi * legendre(Int(2), b.p);
  if (b.p % 4 == 1) return chi_s > 0 ? 0 : 4;
  return chi_s > 0 ? 2 : 6;
}

void finalize(FiniteQuadraticForm& f) {
  f.group_order = 1;
  for (const auto& d : f.orders) f.group_order *= d;
  std::map<long, std::pair<std::vector<int>, std::vector<int>>> parts;  // p -> (idx, k)
  int m = (int)f.orders.size();
  for (int i = 0; i < m; ++i) {
    Int rest = f.orders[i];
    Int pr = 2;
    while (rest > 1) {
      while (rest % pr != 0) ++pr;
      long p = (long)pr.get_si();
      int k = 0;
      while (rest % pr == 0) { rest /= pr; ++k; }
      parts[p].first.push_back(i);
      parts[p].second.push_back(k);
    }
  }
  f.blocks.clear();
  int sign = 0;
  for (auto& [p, part] : parts) {
    auto& [idx, kk] = part;
    int s = (int)idx.size();
    QMat wp(s, s);
    for (int a = 0; a < s; ++a)
      for (int c = 0; c < s; ++c) {
        Int ca = f.orders[idx[a]] / pow_int(p, kk[a]);
        Int cc = f.orders[idx[c]] / pow_int(p, kk[c]);
        wp.at(a, c) = Rat(ca) * Rat(cc) * f.w.at(idx[a], idx[c]);
      }
    for (auto& b : split_p_part(p, kk, wp)) {
      sign = (sign + block_sign(b)) % 8;
      f.blocks.push_back(b);
    }
  }
  std::sort(f.blocks.begin(), f.blocks.end());
  f.sign8 = sign;
}

}  // namespace

Rat FiniteQuadraticForm::q_of(const std::vector<Int>& c) const {
  int m = (int)orders.size();
  Rat s = 0;
  for (int i = 0; i < m; ++i) {
    if (c[i] == 0) continue;
    s += Rat(c[i]) * Rat(c[i]) * w.at(i, i);
    for (int j = i + 1; j < m; ++j)
      if (c[j] != 0) s += 2 * Rat(c[i]) * Rat(c[j]) * w.at(i, j);
  }
  return mod_n(s, 2);
}

Rat FiniteQuadraticForm::b_of(const std::vector<Int>& x, const std::vector<Int>& y) const {
  int m = (int)orders.size();
  Rat s = 0;
  for (int i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < m; ++j)
      if (y[j] != 0) s += Rat(x[i]) * Rat(y[j]) * w.at(i, j);
  }
  return mod_n(s, 1);
}

int FiniteQuadraticForm::length(long p) const {
  int n = 0;
  for (const auto& b : blocks)
    if (b.p == p) n += (b.kind == FormBlock::Cyclic) ? 1 : 2;
  return n;
}

std::vector<long> FiniteQuadraticForm::primes() const {
  std::vector<long> ps;
  for (const auto& b : blocks) ps.push_back(b.p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

std::string FiniteQuadraticForm::block_key() const {
  std::ostringstream os;
  for (const auto& b : blocks)
    os << b.p << "^" << b.k << ":" << (int)b.kind << ":" << b.chi << ":" << b.a << ";";
  return os.str();
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
  FiniteQuadraticForm f;
  f.orders = orders;
  f.w = w;
  for (auto& e : f.w.a) e = -e;
  finalize(f);
  return f;
}

FiniteQuadraticForm discriminant_form(const GramLattice& L) {
  int n = L.rank();
  Signature s = intlat::signature(L);
  if (s.zero != 0) throw Error("discriminantForm: degenerate lattice");
  SnfResult snf = smith_normal_form(L.gram);
  QMat ginv = intlat::inverse(L.gram);
  QMat uinv = intlat::inverse(snf.u);
  FiniteQuadraticForm f;
  std::vector<QVec> gens;
  for (int i = 0; i < n; ++i) {
    if (snf.d.at(i, i) == 1) continue;
    f.orders.push_back(snf.d.at(i, i));
    // generator in basis coordinates: G^{-1} * (column i of u^{-1})
    QVec g(n, Rat(0));
    for (int r = 0; r < n; ++r) {
      Rat acc = 0;
      for (int c = 0; c < n; ++c) acc += ginv.at(r, c) * uinv.at(c, i);
      g[r] = acc;
    }
    gens.push_back(g);
  }
  int m = (int)gens.size();
  f.gens = gens;
  f.w = QMat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) f.w.at(i, j) = L.inner(gens[i], gens[j]);
  finalize(f);
  if (f.group_order != abs(intlat::determinant(L)))
    throw Error("discriminantForm: group order mismatch");
  return f;
}

FiniteQuadraticForm form_from_blocks(const std::vector<FormBlock>& blocks) {
  FiniteQuadraticForm f;
  std::vector<Rat> diag;
  std::vector<std::tuple<int, int, Rat>> off;
  for (const auto& b : blocks) {
    Int pk = pow_int(b.p, b.k);
    if (b.kind == FormBlock::Cyclic) {
      f.orders.push_back(pk);
      if (b.p == 2) {
        diag.push_back(Rat(Int(b.a)) / Rat(pk));
      } else {
        long beta = (b.chi > 0) ? 1 : non_residue(b.p);
        // even-numerator lift of q with pairing numerator beta
        Int num = (2 * ((Int(beta) * ((pk + 1) / 2)) % pk)) % (2 * pk);
        diag.push_back(Rat(num) / Rat(pk));
      }
    } else {
      int base = (int)f.orders.size();
      f.orders.push_back(pk);
      f.orders.push_back(pk);
      Rat dv = (b.kind == FormBlock::BlockU) ? Rat(0) : Rat(2) / Rat(pk);
      diag.push_back(dv);
      diag.push_back(dv);
      off.emplace_back(base, base + 1, Rat(1) / Rat(pk));
    }
  }
  int m = (int)f.orders.size();
  f.w = QMat(m, m);
  for (int i = 0; i < m; ++i) f.w.at(i, i) = diag[i];
  for (auto& [i, j, v] : off) { f.w.at(i, j) = v; f.w.at(j, i) = v; }
  finalize(f);
  return f;
}

// ---------------------------------------------------------------------------
// isotropic subgroups

namespace {

struct ElementTable {
  std::vector<std::vector<Int>> elems;
  std::map<std::vector<Int>, int> index;

  int add_mod(const FiniteQuadraticForm& f, int a, int b) const {
    const auto& x = elems[a];
    const auto& y = elems[b];
    std::vector<Int> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % f.orders[i];
    return index.at(z);
  }
};

ElementTable enumerate_elements(const FiniteQuadraticForm& f, const Int& cap) {
  if (f.group_order > cap) throw Error("discriminant group too large for subgroup enumeration");
  ElementTable t;
  int m = (int)f.orders.size();
  std::vector<Int> c(m, 0);
  for (;;) {
    t.index[c] = (int)t.elems.size();
    t.elems.push_back(c);
    int i = m - 1;
    while (i >= 0) {
      c[i] += 1;
      if (c[i] < f.orders[i]) break;
      c[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return t;
}

Int element_order(const FiniteQuadraticForm& f, const std::vector<Int>& c) {
  Int o = 1;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Int g = gcd(c[i], f.orders[i]);
    o = lcm(o, f.orders[i] / g);
  }
  return o;
}

}  // namespace

std::vector<IsotropicSubgroup> isotropic_subgroups(const FiniteQuadraticForm& q, const Int& cap) {
  ElementTable t = enumerate_elements(q, cap);
  int n = (int)t.elems.size();
  std::vector<char> isot(n, 0);
  for (int i = 0; i < n; ++i) isot[i] = (q.q_of(t.elems[i]) == 0);

  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> work;  // (elements, gens)
  std::vector<int> triv = {0};
  seen.insert(triv);
  work.push_back({triv, {}});

  auto closure = [&](const std::vector<int>& base, int x) {
    std::set<int> in(base.begin(), base.end());
    std::vector<int> frontier = {x};
    in.insert(x);
    while (!frontier.empty()) {
      std::vector<int> next;
      std::vector<int> cur(in.begin(), in.end());
      for (int e : frontier)
        for (int b : cur) {
          int s = t.add_mod(q, e, b);
          if (in.insert(s).second) next.push_back(s);
        }
      frontier = next;
    }
    return std::vector<int>(in.begin(), in.end());
  };

  std::vector<IsotropicSubgroup> out;
  for (size_t w = 0; w < work.size(); ++w) {
    auto elems = work[w].first;
    auto gens = work[w].second;
    IsotropicSubgroup sg;
    for (int g : gens) sg.gen_coeffs.push_back(t.elems[g]);
    sg.size = (long)elems.size();
    out.push_back(sg);
    for (int x = 1; x < n; ++x) {
      if (!isot[x]) continue;
      if (std::binary_search(elems.begin(), elems.end(), x)) continue;
      bool ok = true;
      for (int e : elems)
        if (q.b_of(t.elems[x], t.elems[e]) != 0) { ok = false; break; }
      if (!ok) continue;
      auto bigger = closure(elems, x);
      if (seen.insert(bigger).second) {
        auto g2 = gens;
        g2.push_back(x);
        work.push_back({bigger, g2});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const IsotropicSubgroup& a, const IsotropicSubgroup& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.gen_coeffs < b.gen_coeffs;
  });
  return out;
}

std::vector<QVec> IsotropicSubgroup::lifts(const FiniteQuadraticForm& parent) const {
  if (parent.gens.empty() && !gen_coeffs.empty())
    throw Error("IsotropicSubgroup::lifts: parent form has no source coordinates");
  std::vector<QVec> out;
  for (const auto& c : gen_coeffs) {
    int n = (int)parent.gens[0].size();
    QVec v(n, Rat(0));
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (int r = 0; r < n; ++r) v[r] += Rat(c[i]) * parent.gens[i][r];
    }
    out.push_back(v);
  }
  return out;
}

Extension overlattice(const GramLattice& L, const FiniteQuadraticForm& q,
                      const IsotropicSubgroup& K) {
  intlat::Overlattice o = intlat::overlattice(L, K.lifts(q));
  Extension e;
  e.lattice = o.lattice;
  e.old_coords_in_new = o.old_coords_in_new;
  e.index = K.size;
  Int dl = intlat::determinant(L), dn = intlat::determinant(e.lattice);
  if (dn * K.size * K.size != dl) throw Error("overlattice: determinant/index mismatch");
  return e;
}

// ---------------------------------------------------------------------------
// existence

namespace {

struct TwoAdicDet {
  long base_unit = 1;            // product of 2-adic block units mod 8
  bool has_order2_cyclic = false;
};

TwoAdicDet two_adic_det(const FiniteQuadraticForm& q) {
  TwoAdicDet d;
  long u = 1;
  for (const auto& b : q.blocks) {
    if (b.p != 2) continue;
    if (b.kind == FormBlock::BlockU) u = (u * 7) % 8;
    else if (b.kind == FormBlock::BlockV) u = (u * 3) % 8;
    else {
      long a8;
      if (b.k == 1) {
        d.has_order2_cyclic = true;
        a8 = (b.a % 4 == 1) ? 1 : 3;
      } else {
        a8 = ((b.a % 8) + 8) % 8;
      }
      u = (u * a8) % 8;
    }
  }
  d.base_unit = u;
  return d;
}

bool exists_by_criteria(int sp, int sm, const FiniteQuadraticForm& q) {
  if (sp < 0 || sm < 0) return false;
  int n = sp + sm;
  if (n == 0) return q.group_order == 1;
  int want = ((sp - sm) % 8 + 8) % 8;
  if (want != q.sign8) return false;
  for (long p : q.primes())
    if (n < q.length(p)) return false;

  // odd boundary: the determinant's unit class is forced by the blocks
  for (long p : q.primes()) {
    if (p == 2 || n != q.length(p)) continue;
    long forced = 1;
    for (const auto& b : q.blocks)
      if (b.p == p) forced *= b.chi;
    Int unit = q.group_order;
    while (unit % p == 0) unit /= p;
    if (sm % 2 == 1) unit = -unit;
    if (legendre(unit, p) != forced) return false;
  }

  // 2-adic boundary; waived when an order-2 cyclic summand is present
  if (q.length(2) > 0 && n == q.length(2)) {
    TwoAdicDet d = two_adic_det(q);
    if (!d.has_order2_cyclic) {
      Int odd = q.group_order;
      while (odd % 2 == 0) odd /= 2;
      long m8 = (long)Int(odd % 8).get_si();
      if (m8 != d.base_unit && m8 != (8 - d.base_unit) % 8) return false;
    }
  }
  return true;
}

std::mutex g_exists_mu;
std::map<std::string, bool> g_exists_cache;

}  // namespace

bool binary_form_oracle(int sigma_plus, int sigma_minus, const FiniteQuadraticForm& q) {
  if (sigma_plus < 0 || sigma_minus < 0 || sigma_plus + sigma_minus != 2)
    throw Error("binaryFormOracle: rank must be 2");

  auto try_gram = [&](long a, long b, long c) -> bool {
    IMat g(2, 2);
    g.at(0, 0) = a;
    g.at(0, 1) = b;
    g.at(1, 0) = b;
    g.at(1, 1) = c;
    GramLattice L{g};
    Signature s = intlat::signature(L);
    if (s.zero != 0 || s.plus != sigma_plus || s.minus != sigma_minus) return false;
    return forms_isomorphic(discriminant_form(L), q);
  };

  if (!q.group_order.fits_slong_p()) throw Error("binaryFormOracle: determinant too large");
  long D = q.group_order.get_si();
  if (D == 0) return false;

  if (sigma_plus != 1) {
    // definite: Gauss-reduced 0 <= 2b <= a <= c with ac - b^2 = D
    long sgn = (sigma_plus == 2) ? 1 : -1;
    for (long a = 2; 3 * a * a <= 4 * D + 4; a += 2)
      for (long b = 0; 2 * b <= a; ++b) {
        if ((b * b + D) % a != 0) continue;
        long c = (b * b + D) / a;
        if (c < a || c % 2 != 0) continue;
        if (try_gram(sgn * a, sgn * b, sgn * c)) return true;
      }
    return false;
  }

  // indefinite, det = -D: every class represents a nonzero even a with
  // a^2 <= 4D/5, or is isotropic (D a perfect square)
  long isq = 0;
  while ((isq + 1) * (isq + 1) <= D) ++isq;
  if (isq * isq == D) {
    long b = isq;
    for (long c = 0; c < 2 * b; c += 2)
      if (try_gram(0, b, c)) return true;
  }
  for (long a = 2; a <= isq + 1; a += 2)
    for (long sg : {1L, -1L}) {
      long aa = sg * a;
      for (long b = 0; b < a; ++b) {
        long num = b * b - D;
        if (num % aa != 0) continue;
        long c = num / aa;
        if (c % 2 != 0) continue;
        if (try_gram(aa, b, c)) return true;
      }
    }
  return false;
}

bool even_lattice_exists(int sigma_plus, int sigma_minus, const FiniteQuadraticForm& q) {
  std::ostringstream key;
  key << sigma_plus << "," << sigma_minus << "|" << q.block_key();
  {
    std::lock_guard<std::mutex> lk(g_exists_mu);
    auto it = g_exists_cache.find(key.str());
    if (it != g_exists_cache.end()) return it->second;
  }
  bool verdict = exists_by_criteria(sigma_plus, sigma_minus, q);
  if (sigma_plus >= 0 && sigma_minus >= 0 && sigma_plus + sigma_minus == 2 &&
      q.group_order.fits_slong_p() && q.group_order.get_si() <= 4096) {
    bool oracle = binary_form_oracle(sigma_plus, sigma_minus, q);
    if (oracle != verdict)
      throw Undecided("evenLatticeExists: criteria vs binary oracle mismatch at (" +
                      std::to_string(sigma_plus) + "," + std::to_string(sigma_minus) +
                      ") blocks " + q.block_key());
  }
  {
    std::lock_guard<std::mutex> lk(g_exists_mu);
    g_exists_cache[key.str()] = verdict;
  }
  return verdict;
}

bool is_geometric_lattice(const PolarizedLattice& S) {
  int r = S.rank();
  if (r > 20) return false;
  FiniteQuadraticForm q = discriminant_form(S.lattice);
  return even_lattice_exists(2, 20 - r, q.negated());
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

// explicit generator matching on the 2-parts (odd parts are classified
// completely by their normal forms)
bool two_parts_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  auto two_blocks = [](const FiniteQuadraticForm& f) {
    std::vector<FormBlock> r;
    for (const auto& bl : f.blocks)
      if (bl.p == 2) r.push_back(bl);
    return r;
  };
  auto ba = two_blocks(a), bb = two_blocks(b);
  if (ba == bb) return true;
  auto shape = [](const std::vector<FormBlock>& v) {
    std::map<int, int> m;
    for (const auto& bl : v) m[bl.k] += (bl.kind == FormBlock::Cyclic) ? 1 : 2;
    return m;
  };
  if (shape(ba) != shape(bb)) return false;
  FiniteQuadraticForm fa = form_from_blocks(ba), fb = form_from_blocks(bb);
  if (fa.group_order > 4096) throw Undecided("forms_isomorphic: 2-part too large for matching");
  ElementTable tb = enumerate_elements(fb, Int(1) << 13);

  int m = (int)fa.orders.size();
  std::vector<std::vector<Int>> imgs(m);
  std::function<bool(int)> assign = [&](int i) -> bool {
    if (i == m) {
      std::set<std::vector<Int>> gen;
      std::vector<std::vector<Int>> frontier = {std::vector<Int>(fb.orders.size(), 0)};
      gen.insert(frontier[0]);
      while (!frontier.empty()) {
        std::vector<std::vector<Int>> next;
        for (const auto& e : frontier)
          for (const auto& g : imgs) {
            std::vector<Int> s(e.size());
            for (size_t t2 = 0; t2 < e.size(); ++t2) s[t2] = (e[t2] + g[t2]) % fb.orders[t2];
            if (gen.insert(s).second) next.push_back(s);
          }
        frontier = next;
      }
      return Int((long)gen.size()) == fb.group_order;
    }
    std::vector<Int> gi(m, 0);
    gi[i] = 1;
    Rat qi = fa.q_of(gi);
    for (const auto& cand : tb.elems) {
      if (element_order(fb, cand) != fa.orders[i]) continue;
      if (fb.q_of(cand) != qi) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        std::vector<Int> gj(m, 0);
        gj[j] = 1;
        if (fb.b_of(cand, imgs[j]) != fa.b_of(gi, gj)) ok = false;
      }
      if (!ok) continue;
      imgs[i] = cand;
      if (assign(i + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

}  // namespace

bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  if (a.group_order != b.group_order) return false;
  if (a.sign8 != b.sign8) return false;
  auto odd = [](const FiniteQuadraticForm& f) {
    std::vector<FormBlock> r;
    for (const auto& bl : f.blocks)
      if (bl.p != 2) r.push_back(bl);
    return r;
  };
  if (!(odd(a) == odd(b))) return false;
  return two_parts_isomorphic(a, b);
}

// ---------------------------------------------------------------------------
// JSON

std::string form_to_json(const FiniteQuadraticForm& q) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : q.blocks) {
    nlohmann::json jb;
    jb["p"] = b.p;
    jb["exponent"] = b.k;
    if (b.kind == FormBlock::BlockU) jb["type"] = "u";
    else if (b.kind == FormBlock::BlockV) jb["type"] = "v";
    else {
      jb["type"] = "cyclic";
      if (b.p == 2)
        jb["q"] = std::to_string(b.a) + "/" + pow_int(2, b.k).get_str();
      else
        jb["chi"] = b.chi;
    }
    arr.push_back(jb);
  }
  return arr.dump();
}

FiniteQuadraticForm form_from_json(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<FormBlock> blocks;
  for (const auto& jb : arr) {
    FormBlock b;
    b.p = jb.at("p").get<long>();
    b.k = jb.at("exponent").get<int>();
    std::string ty = jb.at("type").get<std::string>();
    if (ty == "u") b.kind = FormBlock::BlockU;
    else if (ty == "v") b.kind = FormBlock::BlockV;
    else {
      b.kind = FormBlock::Cyclic;
      if (b.p == 2)
        b.a = std::stol(jb.at("q").get<std::string>());
      else
        b.chi = jb.at("chi").get<long>();
    }
    blocks.push_back(b);
  }
  return form_from_blocks(blocks);
}

}  // namespace k3l::discform
