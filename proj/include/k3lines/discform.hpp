#pragma once
// Finite quadratic forms on discriminant groups, isotropic-subgroup
// enumeration, and existence tests for even lattices with prescribed
// signature and discriminant form (the primitive-embedding criterion for
// 2E8+3U reduces to the latter).

#include "k3lines/intlat.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace k3l::discform {

using intlat::GramLattice;
using intlat::PolarizedLattice;
using intlat::Signature;

// Raised when the local criteria cannot certify a verdict.  The acceptance
// corpus must never hit this; soundness beats completeness here.
struct Undecided : Error {
  explicit Undecided(const std::string& w) : Error(w) {}
};

// One block of the p-primary normal form.
struct FormBlock {
  long p = 0;
  int k = 0;  // generators have order p^k
  enum Kind { Cyclic = 0, BlockU = 1, BlockV = 2 } kind = Cyclic;
  // Cyclic, p odd: chi = Legendre character of the numerator of b(g,g).
  // Cyclic, p = 2: a = numerator of q(g) = a/2^k, canonical mod 4 (k = 1)
  // or mod 8 (k >= 2).
  long chi = 0;
  long a = 0;

  auto key() const { return std::tuple(p, k, (int)kind, chi, a); }
  bool operator==(const FormBlock& o) const { return key() == o.key(); }
  bool operator<(const FormBlock& o) const { return key() < o.key(); }
};

struct FiniteQuadraticForm {
  // concrete presentation: generator orders (> 1), optional coordinates in
  // the source lattice basis, and the rational pairing matrix of the
  // generators (diagonal = q lifts, off-diagonal = b lifts)
  std::vector<Int> orders;
  std::vector<QVec> gens;
  QMat w;

  std::vector<FormBlock> blocks;  // normal form, sorted
  Int group_order = 1;
  int sign8 = 0;  // signature mod 8 (Milgram)

  Rat q_of(const std::vector<Int>& coeffs) const;        // value in [0,2)
  Rat b_of(const std::vector<Int>& x, const std::vector<Int>& y) const;  // in [0,1)
  int length(long p) const;
  std::vector<long> primes() const;
  std::string block_key() const;

  FiniteQuadraticForm negated() const;
  bool same_blocks(const FiniteQuadraticForm& o) const { return blocks == o.blocks; }
};

// q on L*/L of a nondegenerate even lattice.
FiniteQuadraticForm discriminant_form(const GramLattice& L);

// Semantic isomorphism of finite quadratic forms.  Complete: odd parts by
// normal-form comparison, 2-parts by explicit generator matching.
bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

struct IsotropicSubgroup {
  std::vector<std::vector<Int>> gen_coeffs;  // generators, as coefficients on parent gens
  Int size = 1;

  // lifts of the generators to L tensor Q, in source-basis coordinates;
  // only available when the parent form carries generator coordinates
  std::vector<QVec> lifts(const FiniteQuadraticForm& parent) const;
};

// All totally isotropic subgroups (the trivial one included), as subgroups.
// Throws if the group order exceeds the cap.
std::vector<IsotropicSubgroup> isotropic_subgroups(const FiniteQuadraticForm& q,
                                                   const Int& cap = Int(1) << 16);

// Finite-index extension of L by an isotropic kernel, with the index
// bookkeeping checked.
struct Extension {
  GramLattice lattice;
  QMat old_coords_in_new;  // rows: images of the old basis vectors
  Int index = 1;
};
Extension overlattice(const GramLattice& L, const FiniteQuadraticForm& q,
                      const IsotropicSubgroup& K);

// Existence of an even lattice with the given signature and discriminant
// form (Nikulin's local criteria; rank-2 verdicts are cross-checked against
// the binary-form oracle).
bool even_lattice_exists(int sigma_plus, int sigma_minus, const FiniteQuadraticForm& q);

// Exhaustive reduced-form search in rank 2.
bool binary_form_oracle(int sigma_plus, int sigma_minus, const FiniteQuadraticForm& q);

// Primitive embedding into 2E8+3U: rank <= 20 and a complement of
// signature (2, 20-rank) with the negated form exists.
bool is_geometric_lattice(const PolarizedLattice& S);

// JSON block list (see README for the schema).
std::string form_to_json(const FiniteQuadraticForm& q);
FiniteQuadraticForm form_from_json(const std::string& text);
FiniteQuadraticForm form_from_blocks(const std::vector<FormBlock>& blocks);

}  // namespace k3l::discform
