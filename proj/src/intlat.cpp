#include "k3lines/intlat.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace k3l {

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::transpose() const {
  IMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IMat IMat::mul(const IMat& o) const {
  if (cols != o.rows) throw Error("IMat::mul: shape mismatch");
  IMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

IVec IMat::row(int i) const {
  IVec r(cols);
  for (int j = 0; j < cols; ++j) r[j] = at(i, j);
  return r;
}

QMat::QMat(const IMat& m) : rows(m.rows), cols(m.cols), a(m.a.size()) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = Rat(m.a[i]);
}

namespace intlat {

GramLattice::GramLattice(IMat g) : gram(std::move(g)) {
  if (gram.rows != gram.cols) throw Error("GramLattice: matrix not square");
  for (int i = 0; i < gram.rows; ++i) {
    if (gram.at(i, i) % 2 != 0) throw Error("GramLattice: odd diagonal entry");
    for (int j = i + 1; j < gram.cols; ++j)
      if (gram.at(i, j) != gram.at(j, i)) throw Error("GramLattice: matrix not symmetric");
  }
}

Rat GramLattice::inner(const QVec& x, const QVec& y) const {
  int n = rank();
  Rat s = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rat t = 0;
    for (int j = 0; j < n; ++j)
      if (y[j] != 0) t += Rat(gram.at(i, j)) * y[j];
    s += x[i] * t;
  }
  return s;
}

Int GramLattice::inner(const IVec& x, const IVec& y) const {
  int n = rank();
  Int s = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Int t = 0;
    for (int j = 0; j < n; ++j)
      if (y[j] != 0) t += gram.at(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

PolarizedLattice::PolarizedLattice(GramLattice lat, IVec h_coords)
    : lattice(std::move(lat)), h(std::move(h_coords)) {
  if ((int)h.size() != lattice.rank()) throw Error("PolarizedLattice: h has wrong length");
  if (lattice.inner(h, h) != 4) throw Error("PolarizedLattice: h^2 != 4");
  Signature s = signature(lattice);
  if (s.zero != 0) throw Error("PolarizedLattice: degenerate lattice");
  if (s.plus != 1) throw Error("PolarizedLattice: not hyperbolic");
}

IMat Sublattice::induced_gram() const {
  IMat bg = basis.mul(ambient.gram);
  return bg.mul(basis.transpose());
}

Signature signature(const GramLattice& L) {
  int n = L.rank();
  QMat a(L.gram);
  Signature s;
  int i = 0;
  while (i < n) {
    if (a.at(i, i) == 0) {
      int piv = -1;
      for (int j = i + 1; j < n; ++j)
        if (a.at(j, j) != 0) { piv = j; break; }
      if (piv >= 0) {
        for (int k = 0; k < n; ++k) std::swap(a.at(i, k), a.at(piv, k));
        for (int k = 0; k < n; ++k) std::swap(a.at(k, i), a.at(k, piv));
      } else {
        // all remaining diagonal entries vanish; a nonzero off-diagonal
        // pair can be folded onto the diagonal
        int pj = -1, pk = -1;
        for (int j = i; j < n && pj < 0; ++j)
          for (int k = j + 1; k < n; ++k)
            if (a.at(j, k) != 0) { pj = j; pk = k; break; }
        if (pj < 0) { s.zero += n - i; return s; }
        for (int k = 0; k < n; ++k) a.at(pj, k) += a.at(pk, k);
        for (int k = 0; k < n; ++k) a.at(k, pj) += a.at(k, pk);
        if (pj != i) {
          for (int k = 0; k < n; ++k) std::swap(a.at(i, k), a.at(pj, k));
          for (int k = 0; k < n; ++k) std::swap(a.at(k, i), a.at(k, pj));
        }
      }
    }
    const Rat piv = a.at(i, i);
    if (piv > 0) s.plus++; else s.minus++;
    for (int j = i + 1; j < n; ++j) {
      if (a.at(j, i) == 0) continue;
      Rat f = a.at(j, i) / piv;
      for (int k = i; k < n; ++k) a.at(j, k) -= f * a.at(i, k);
      for (int k = i; k < n; ++k) a.at(k, j) -= f * a.at(k, i);
    }
    ++i;
  }
  return s;
}

Int determinant(const IMat& m) {
  if (m.rows != m.cols) throw Error("determinant: matrix not square");
  int n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int i = 0; i < n - 1; ++i) {
    if (a.at(i, i) == 0) {
      int piv = -1;
      for (int j = i + 1; j < n; ++j)
        if (a.at(j, i) != 0) { piv = j; break; }
      if (piv < 0) return 0;
      for (int k = 0; k < n; ++k) std::swap(a.at(i, k), a.at(piv, k));
      sign = -sign;
    }
    for (int j = i + 1; j < n; ++j)
      for (int k = i + 1; k < n; ++k) {
        Int num = a.at(j, k) * a.at(i, i) - a.at(j, i) * a.at(i, k);
        a.at(j, k) = num / prev;  // exact by Bareiss
      }
    prev = a.at(i, i);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

Int determinant(const GramLattice& L) { return determinant(L.gram); }

SnfResult smith_normal_form(const IMat& m) {
  SnfResult r;
  r.d = m;
  r.u = IMat::identity(m.rows);
  r.v = IMat::identity(m.cols);
  IMat& d = r.d;
  IMat& u = r.u;
  IMat& v = r.v;
  int n = std::min(m.rows, m.cols);

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < d.cols; ++k) std::swap(d.at(i, k), d.at(j, k));
    for (int k = 0; k < u.cols; ++k) std::swap(u.at(i, k), u.at(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < d.rows; ++k) std::swap(d.at(k, i), d.at(k, j));
    for (int k = 0; k < v.rows; ++k) std::swap(v.at(k, i), v.at(k, j));
  };
  auto addmul_row = [&](int dst, int src, const Int& f) {
    if (f == 0) return;
    for (int k = 0; k < d.cols; ++k) d.at(dst, k) += f * d.at(src, k);
    for (int k = 0; k < u.cols; ++k) u.at(dst, k) += f * u.at(src, k);
  };
  auto addmul_col = [&](int dst, int src, const Int& f) {
    if (f == 0) return;
    for (int k = 0; k < d.rows; ++k) d.at(k, dst) += f * d.at(k, src);
    for (int k = 0; k < v.rows; ++k) v.at(k, dst) += f * v.at(k, src);
  };
  auto negate_row = [&](int i) {
    for (int k = 0; k < d.cols; ++k) d.at(i, k) = -d.at(i, k);
    for (int k = 0; k < u.cols; ++k) u.at(i, k) = -u.at(i, k);
  };

  auto diagonalize = [&]() {
    for (int t = 0; t < n; ++t) {
      for (;;) {
        int pi = -1, pj = -1;
        for (int i = t; i < d.rows; ++i)
          for (int j = t; j < d.cols; ++j) {
            if (d.at(i, j) == 0) continue;
            if (pi < 0 || cmp(abs(d.at(i, j)), abs(d.at(pi, pj))) < 0) { pi = i; pj = j; }
          }
        if (pi < 0) return;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (int i = t + 1; i < d.rows; ++i)
          addmul_row(i, t, -Int(d.at(i, t) / d.at(t, t)));
        for (int j = t + 1; j < d.cols; ++j)
          addmul_col(j, t, -Int(d.at(t, j) / d.at(t, t)));
        bool clear = true;
        for (int i = t + 1; i < d.rows && clear; ++i)
          if (d.at(i, t) != 0) clear = false;
        for (int j = t + 1; j < d.cols && clear; ++j)
          if (d.at(t, j) != 0) clear = false;
        if (clear) break;
        // remainders became the new smallest entries; loop re-pivots
      }
      if (d.at(t, t) < 0) negate_row(t);
    }
  };

  diagonalize();
  // divisibility chain: fold offending columns together and re-run
  for (;;) {
    int bad = -1;
    for (int t = 0; t + 1 < n; ++t) {
      if (d.at(t, t) == 0 && d.at(t + 1, t + 1) != 0) { bad = t; break; }
      if (d.at(t, t) != 0 && d.at(t + 1, t + 1) % d.at(t, t) != 0) { bad = t; break; }
    }
    if (bad < 0) break;
    addmul_col(bad, bad + 1, 1);
    diagonalize();
  }
  return r;
}

std::vector<Int> snf_diagonal(const IMat& m) {
  SnfResult r = smith_normal_form(m);
  std::vector<Int> out;
  int n = std::min(m.rows, m.cols);
  for (int i = 0; i < n; ++i) out.push_back(r.d.at(i, i));
  return out;
}

IMat right_kernel(const IMat& m) {
  SnfResult r = smith_normal_form(m);
  int n = std::min(m.rows, m.cols);
  std::vector<int> zero_cols;
  for (int j = 0; j < m.cols; ++j)
    if (j >= n || r.d.at(j, j) == 0) zero_cols.push_back(j);
  IMat k((int)zero_cols.size(), m.cols);
  // m * v has zero columns exactly at zero_cols; those columns of v span the kernel
  for (size_t i = 0; i < zero_cols.size(); ++i)
    for (int row = 0; row < m.cols; ++row) k.at((int)i, row) = r.v.at(row, zero_cols[i]);
  return k;
}

QMat inverse(const IMat& m) {
  if (m.rows != m.cols) throw Error("inverse: matrix not square");
  int n = m.rows;
  QMat a(m);
  QMat inv(n, n);
  for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
  for (int i = 0; i < n; ++i) {
    int piv = -1;
    for (int j = i; j < n; ++j)
      if (a.at(j, i) != 0) { piv = j; break; }
    if (piv < 0) throw Error("inverse: singular matrix");
    if (piv != i)
      for (int k = 0; k < n; ++k) {
        std::swap(a.at(i, k), a.at(piv, k));
        std::swap(inv.at(i, k), inv.at(piv, k));
      }
    Rat d = a.at(i, i);
    for (int k = 0; k < n; ++k) { a.at(i, k) /= d; inv.at(i, k) /= d; }
    for (int j = 0; j < n; ++j) {
      if (j == i || a.at(j, i) == 0) continue;
      Rat f = a.at(j, i);
      for (int k = 0; k < n; ++k) {
        a.at(j, k) -= f * a.at(i, k);
        inv.at(j, k) -= f * inv.at(i, k);
      }
    }
  }
  return inv;
}

namespace {

// Q(x) = sum_i d[i] * (x_pi + c_i(x))^2 with c_i depending on later
// variables only; levels enumerated from the back.
struct Ldl {
  int n = 0;
  std::vector<int> perm;             // position -> original index
  std::vector<Rat> d;                // positive pivots
  std::vector<std::vector<Rat>> u;   // unit upper-triangular rows
};

Ldl ldl_of_neg_gram(const GramLattice& L) {
  int n = L.rank();
  Ldl res;
  res.n = n;
  res.perm.resize(n);
  // decreasing diagonal of -gram
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return -L.gram.at(a, a) > -L.gram.at(b, b);
  });
  res.perm = idx;
  QMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = Rat(-L.gram.at(idx[i], idx[j]));
  res.d.resize(n);
  res.u.assign(n, {});
  for (int i = 0; i < n; ++i) {
    if (a.at(i, i) <= 0) throw Error("enumerateVectorsInCoset: lattice not negative definite");
    res.d[i] = a.at(i, i);
    res.u[i].assign(n, Rat(0));
    for (int j = i + 1; j < n; ++j) res.u[i][j] = a.at(i, j) / a.at(i, i);
    for (int j = i + 1; j < n; ++j)
      for (int k = i + 1; k < n; ++k) {
        Rat upd = a.at(i, j) * a.at(i, k) / a.at(i, i);
        a.at(j, k) -= upd;
      }
  }
  return res;
}

// floor(sqrt(p/q)) upper bound, safe side
Int sqrt_upper(const Rat& x) {
  if (x < 0) return -1;
  Int p = x.get_num(), q = x.get_den();
  Int s;
  mpz_sqrt(s.get_mpz_t(), Int(p * q).get_mpz_t());
  return (s + 1) / q + 1;
}

void enumerate_level(const Ldl& ldl, const QVec& shift_p, int level, IVec& x,
                     const Rat& budget, std::vector<IVec>& out) {
  // c = shift + sum_{j>level} u[level][j] * (x_j + shift_j)
  Rat c = shift_p[level];
  for (int j = level + 1; j < ldl.n; ++j)
    if (ldl.u[level][j] != 0) c += ldl.u[level][j] * (Rat(x[j]) + shift_p[j]);
  Rat cap = budget / ldl.d[level];
  Int r = sqrt_upper(cap);
  Rat lo_q = -c - Rat(r), hi_q = -c + Rat(r);
  Int lo, hi;
  mpz_cdiv_q(lo.get_mpz_t(), lo_q.get_num().get_mpz_t(), lo_q.get_den().get_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), hi_q.get_num().get_mpz_t(), hi_q.get_den().get_mpz_t());
  for (Int k = lo; k <= hi; ++k) {
    Rat y = Rat(k) + c;
    Rat term = ldl.d[level] * y * y;
    if (term > budget) continue;
    x[level] = k;
    if (level == 0) {
      if (term == budget) {
        IVec v(ldl.n);
        for (int i = 0; i < ldl.n; ++i) v[ldl.perm[i]] = x[i];
        out.push_back(std::move(v));
      }
    } else {
      enumerate_level(ldl, shift_p, level - 1, x, budget - term, out);
    }
  }
  x[level] = 0;
}

}  // namespace

std::vector<IVec> enumerate_vectors_in_coset(const GramLattice& L0, const QVec& shift,
                                             const Rat& target) {
  int n = L0.rank();
  if (n == 0) return target == 0 ? std::vector<IVec>{IVec{}} : std::vector<IVec>{};
  if ((int)shift.size() != n) throw Error("enumerateVectorsInCoset: shift length mismatch");
  Ldl ldl = ldl_of_neg_gram(L0);
  if (target > 0) return {};
  Rat budget = -target;
  QVec shift_p(n);
  for (int i = 0; i < n; ++i) shift_p[i] = shift[ldl.perm[i]];
  std::vector<IVec> out;
  IVec x(n);
  enumerate_level(ldl, shift_p, n - 1, x, budget, out);
  std::sort(out.begin(), out.end());
  return out;
}

Sublattice orthogonal_complement(const GramLattice& L, const std::vector<IVec>& vs) {
  int n = L.rank();
  IMat m((int)vs.size(), n);
  for (size_t i = 0; i < vs.size(); ++i) {
    if ((int)vs[i].size() != n) throw Error("orthogonalComplement: vector length mismatch");
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (int k = 0; k < n; ++k) s += vs[i][k] * L.gram.at(k, j);
      m.at((int)i, j) = s;
    }
  }
  IMat basis = vs.empty() ? IMat::identity(n) : right_kernel(m);
  return Sublattice{L, basis};
}

Overlattice overlattice(const GramLattice& L, const std::vector<QVec>& gens) {
  int n = L.rank();
  QMat ginv = inverse(L.gram);

  // isotropy of the generated subgroup of L*/L: q in 2Z, pairings in Z
  auto pair_val = [&](const QVec& x, const QVec& y) { return L.inner(x, y); };
  for (const auto& g : gens) {
    Rat q = pair_val(g, g);
    if (q.get_den() != 1 || q.get_num() % 2 != 0)
      throw Error("overlattice: kernel not isotropic (q value)");
  }
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j) {
      Rat b = pair_val(gens[i], gens[j]);
      if (b.get_den() != 1) throw Error("overlattice: kernel not isotropic (pairing)");
    }

  // basis of L + <gens> via HNF on cleared denominators
  Int den = 1;
  for (const auto& g : gens)
    for (const auto& c : g) den = lcm(den, c.get_den());
  IMat stack((int)gens.size() + n, n);
  for (int i = 0; i < n; ++i) stack.at(i, i) = den;
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < n; ++j) {
      Rat scaled = gens[i][j] * Rat(den);
      stack.at(n + (int)i, j) = scaled.get_num();
    }
  // row-style HNF: reduce to n independent rows spanning the same lattice
  SnfResult s = smith_normal_form(stack);
  // rows of (inverse(v))^T? Simpler: lattice spanned by rows of stack equals
  // rows of d * v^{-1} ... use u*stack*v = d => stack = u^{-1} d v^{-1};
  // row space of stack = row space of d v^{-1}.
  QMat vinv = inverse(s.v);
  IMat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat e = Rat(s.d.at(i, i)) * vinv.at(i, j);
      if (e.get_den() != 1) throw Error("overlattice: internal HNF error");
      b.at(i, j) = e.get_num();
    }
  Overlattice res;
  res.basis_in_old = QMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat e(b.at(i, j), den);
      e.canonicalize();
      res.basis_in_old.at(i, j) = e;
    }
  // gram of the extension
  IMat ng(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QVec ri(n), rj(n);
      for (int k = 0; k < n; ++k) { ri[k] = res.basis_in_old.at(i, k); rj[k] = res.basis_in_old.at(j, k); }
      Rat e = L.inner(ri, rj);
      if (e.get_den() != 1) throw Error("overlattice: non-integral extension");
      ng.at(i, j) = e.get_num();
    }
  for (int i = 0; i < n; ++i)
    if (ng.at(i, i) % 2 != 0) throw Error("overlattice: odd extension");
  res.lattice = GramLattice(ng);
  // coordinates of old basis in the new one: solve X * B = I (rationally),
  // entries must be integral
  IMat bmat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bmat.at(i, j) = b.at(i, j);
  QMat binv = inverse(bmat);
  res.old_coords_in_new = QMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat e = binv.at(i, j) * Rat(den);
      if (e.get_den() != 1) throw Error("overlattice: old basis not contained in extension");
      res.old_coords_in_new.at(i, j) = e;
    }
  return res;
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  int n = a.rank(), m = b.rank();
  IMat g(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = a.gram.at(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.at(n + i, n + j) = b.gram.at(i, j);
  return GramLattice(g);
}

namespace {

GramLattice neg_root_lattice_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  IMat g(n, n);
  for (int i = 0; i < n; ++i) g.at(i, i) = -2;
  for (auto [i, j] : edges) { g.at(i, j) = 1; g.at(j, i) = 1; }
  return GramLattice(g);
}

GramLattice atom_lattice(const std::string& name) {
  if (name == "U") {
    IMat g(2, 2);
    g.at(0, 1) = 1;
    g.at(1, 0) = 1;
    return GramLattice(g);
  }
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E')) {
    int n = std::stoi(name.substr(1));
    std::vector<std::pair<int, int>> e;
    if (name[0] == 'A') {
      for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    } else if (name[0] == 'D') {
      if (n < 4) throw Error("lattice name: D_n needs n >= 4");
      for (int i = 0; i + 1 < n - 1; ++i) e.push_back({i, i + 1});
      e.push_back({n - 3, n - 1});
    } else {
      if (n < 6 || n > 8) throw Error("lattice name: E_n needs 6 <= n <= 8");
      // chain 0-1-2-3-4(-5)(-6) with the extra node attached at position 2
      for (int i = 0; i + 1 < n - 1; ++i) e.push_back({i, i + 1});
      e.push_back({2, n - 1});
    }
    return neg_root_lattice_from_edges(n, e);
  }
  if (!name.empty() && name.front() == '[' && name.back() == ']') {
    std::vector<long> vals;
    std::string body = name.substr(1, name.size() - 2);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      vals.push_back(std::stol(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (vals.size() == 1) {
      IMat g(1, 1);
      g.at(0, 0) = vals[0];
      return GramLattice(g);
    }
    if (vals.size() == 3) {
      IMat g(2, 2);
      g.at(0, 0) = vals[0];
      g.at(0, 1) = vals[1];
      g.at(1, 0) = vals[1];
      g.at(1, 1) = vals[2];
      return GramLattice(g);
    }
    throw Error("lattice name: bracket form needs [a] or [a,b,c]");
  }
  throw Error("lattice name: cannot parse atom '" + name + "'");
}

}  // namespace

GramLattice lattice_from_name(const std::string& expr) {
  GramLattice acc;
  size_t pos = 0;
  bool first = true;
  while (pos < expr.size()) {
    while (pos < expr.size() && (expr[pos] == ' ' || expr[pos] == '+')) ++pos;
    if (pos >= expr.size()) break;
    long mult = 1;
    if (std::isdigit((unsigned char)expr[pos]) && expr[pos] != '[') {
      size_t q = pos;
      while (q < expr.size() && std::isdigit((unsigned char)expr[q])) ++q;
      // a digit run is a multiplier only if an atom follows
      if (q < expr.size() && (std::isalpha((unsigned char)expr[q]) || expr[q] == '[')) {
        mult = std::stol(expr.substr(pos, q - pos));
        pos = q;
      }
    }
    std::string atom;
    if (expr[pos] == '[') {
      size_t close = expr.find(']', pos);
      if (close == std::string::npos) throw Error("lattice name: unbalanced bracket");
      atom = expr.substr(pos, close - pos + 1);
      pos = close + 1;
    } else {
      size_t q = pos;
      while (q < expr.size() && (std::isalnum((unsigned char)expr[q]))) ++q;
      atom = expr.substr(pos, q - pos);
      pos = q;
    }
    long scale = 1;
    if (pos < expr.size() && expr[pos] == '(') {
      size_t close = expr.find(')', pos);
      if (close == std::string::npos) throw Error("lattice name: unbalanced paren");
      scale = std::stol(expr.substr(pos + 1, close - pos - 1));
      pos = close + 1;
    }
    GramLattice L = atom_lattice(atom);
    if (scale != 1) {
      for (auto& e : L.gram.a) e *= scale;
      L = GramLattice(L.gram);
    }
    for (long k = 0; k < mult; ++k) {
      if (first) { acc = L; first = false; }
      else acc = direct_sum(acc, L);
    }
  }
  if (first) throw Error("lattice name: empty expression");
  return acc;
}

std::vector<std::vector<long>> gram_to_rows(const GramLattice& L) {
  int n = L.rank();
  std::vector<std::vector<long>> rows(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!L.gram.at(i, j).fits_slong_p()) throw Error("gram entry too large for serialization");
      rows[i][j] = L.gram.at(i, j).get_si();
    }
  return rows;
}

GramLattice gram_from_rows(const std::vector<std::vector<long>>& rows) {
  int n = (int)rows.size();
  IMat g(n, n);
  for (int i = 0; i < n; ++i) {
    if ((int)rows[i].size() != n) throw Error("gram rows: not square");
    for (int j = 0; j < n; ++j) g.at(i, j) = rows[i][j];
  }
  return GramLattice(g);
}

}  // namespace intlat
}  // namespace k3l
