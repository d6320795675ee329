#pragma once
// Exact arithmetic on integral lattices: signatures, Smith normal form,
// bounded vector enumeration, orthogonal complements, finite-index
// extensions.  All verdict-bearing arithmetic is mpz/mpq; no floating point.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3l {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dense integer matrix, row-major.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IMat identity(int n);
  IMat transpose() const;
  IMat mul(const IMat& o) const;
  IVec row(int i) const;
  bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Dense rational matrix, row-major.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  explicit QMat(const IMat& m);
  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

namespace intlat {

struct Signature {
  int plus = 0, minus = 0, zero = 0;
  bool operator==(const Signature&) const = default;
};

// Even symmetric bilinear form on Z^rank given by its Gram matrix.
// Degenerate forms are allowed (parabolic graph lattices need them).
struct GramLattice {
  IMat gram;

  GramLattice() = default;
  explicit GramLattice(IMat g);

  int rank() const { return gram.rows; }
  Rat inner(const QVec& x, const QVec& y) const;
  Int inner(const IVec& x, const IVec& y) const;
};

// Hyperbolic even lattice with a distinguished square-4 vector h.
struct PolarizedLattice {
  GramLattice lattice;
  IVec h;

  PolarizedLattice() = default;
  PolarizedLattice(GramLattice lat, IVec h_coords);
  int rank() const { return lattice.rank(); }
};

struct Sublattice {
  GramLattice ambient;
  IMat basis;  // rows are vectors in ambient coordinates

  int rank() const { return basis.rows; }
  IMat induced_gram() const;
};

Signature signature(const GramLattice& L);
Int determinant(const GramLattice& L);
Int determinant(const IMat& m);

struct SnfResult {
  IMat d;  // diagonal, d1 | d2 | ...
  IMat u;  // unimodular, u * m * v = d
  IMat v;  // unimodular
};
SnfResult smith_normal_form(const IMat& m);
std::vector<Int> snf_diagonal(const IMat& m);

// Saturated basis (as rows) of {x : m x = 0}.
IMat right_kernel(const IMat& m);

// Inverse of a nonsingular integer matrix, exact.
QMat inverse(const IMat& m);

// All integral x such that (shift + x) has the given square in L0.
// L0 must be negative definite and target <= 0; enumeration is exact
// Fincke-Pohst on a rational LDL^T of -gram, pivots taken by decreasing
// diagonal.
std::vector<IVec> enumerate_vectors_in_coset(const GramLattice& L0, const QVec& shift,
                                             const Rat& target);

// Primitive sublattice of all x with x.v = 0 for every v in vs.
Sublattice orthogonal_complement(const GramLattice& L, const std::vector<IVec>& vs);

struct Overlattice {
  GramLattice lattice;
  QMat basis_in_old;       // rows: new basis in old rational coordinates
  QMat old_coords_in_new;  // rows: old basis vectors in new coordinates
};

// Finite-index extension of L by the subgroup of L*/L generated by the
// given rational vectors (old-basis coordinates).  Errors out unless the
// generators are isotropic for the discriminant form and the result is an
// even integral lattice.
Overlattice overlattice(const GramLattice& L, const std::vector<QVec>& gens);

// Named constructors: "U", "A7", "D4", "E8", "[4]", "[0,1,0]", sums such
// as "2E8+3U" and scalings "U(2)".  Root lattices come out negative
// definite so that 2E8+3U has signature (3,19).
GramLattice lattice_from_name(const std::string& expr);
GramLattice direct_sum(const GramLattice& a, const GramLattice& b);

std::vector<std::vector<long>> gram_to_rows(const GramLattice& L);
GramLattice gram_from_rows(const std::vector<std::vector<long>>& rows);

}  // namespace intlat
}  // namespace k3l
