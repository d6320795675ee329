#pragma once
// Configuration graphs of lines: Fano lattice construction, the
// elliptic/parabolic/hyperbolic trichotomy, Dynkin recognition, girth,
// pencils and section sets.

#include "k3lines/intlat.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace k3l::fano {

inline constexpr int kGirthInfinity = 1 << 30;

// Multigraph of lines: symmetric multiplicity matrix, zero diagonal.
// colors: 1 = line (default), 0 = exceptional divisor.
struct ConfigGraph {
  int n = 0;
  std::vector<uint8_t> adj;
  std::vector<uint8_t> colors;

  ConfigGraph() = default;
  explicit ConfigGraph(int n_) : n(n_), adj(size_t(n_) * n_, 0), colors(n_, 1) {}

  int mult(int i, int j) const { return adj[size_t(i) * n + j]; }
  void set_mult(int i, int j, int m) {
    adj[size_t(i) * n + j] = (uint8_t)m;
    adj[size_t(j) * n + i] = (uint8_t)m;
  }
  int color(int i) const { return colors[i]; }
  bool is_simple() const;
  int valency(int i) const;  // number of adjacent vertices
  int line_count() const;
  int exceptional_count() const;

  // new vertex adjacent (multiplicity 1) to the given support
  ConfigGraph with_vertex(const std::vector<int>& support, int color = 1) const;
  ConfigGraph induced(const std::vector<int>& verts) const;
  std::vector<std::vector<int>> components() const;

  bool operator==(const ConfigGraph& o) const = default;

  std::string to_json() const;
  static ConfigGraph from_json(const std::string& text);
};

// Coefficient quadruple of a triangular set.
struct Pattern {
  int ta2 = 0, a3 = 0, a2 = 0, a1 = 0;

  int size() const { return 3 * ta2 + 3 * a3 + 2 * a2 + a1; }
  int components() const { return ta2 + a3 + a2 + a1; }
  bool elliptic() const { return ta2 == 0; }
  auto key() const { return std::tuple(ta2, a3, a2, a1); }
  bool operator==(const Pattern& o) const { return key() == o.key(); }
  bool operator<(const Pattern& o) const { return key() < o.key(); }  // direct lex
  std::string str() const;
};

enum class GraphClass { Elliptic, Parabolic, Hyperbolic };

struct DynkinLabel {
  char family = 'A';
  int index = 0;  // subscript
  bool affine = false;

  std::string str() const;
  bool operator==(const DynkinLabel& o) const = default;
};
// paper order for affine types: Milnor number, then A < D < E
int affine_cmp(const DynkinLabel& a, const DynkinLabel& b);
DynkinLabel dynkin_from_string(const std::string& s);

// Fano(Gamma) = (Z Gamma + Z h)/ker with h^2 = 4, v^2 = -2, h.v = color(v).
struct FanoLattice {
  intlat::GramLattice lattice;       // nondegenerate quotient
  IVec h;                            // in quotient coordinates
  std::vector<IVec> vertex_images;   // per graph vertex
  intlat::Signature pre_sig;         // of Z Gamma + Z h
  intlat::Signature zgamma_sig;      // of Z Gamma alone
  int rank = 0;

  bool hyperbolic() const { return pre_sig.plus == 1; }
  intlat::PolarizedLattice polarized() const;  // throws unless hyperbolic
};
FanoLattice fano_lattice(const ConfigGraph& g, bool require_hyperbolic = false);

GraphClass classify_graph(const ConfigGraph& g);  // from Z Gamma inertia
DynkinLabel dynkin_type(const ConfigGraph& g);    // connected, simple, ell/par
IVec kappa(const ConfigGraph& fiber);             // minimal positive kernel vector

int girth(const ConfigGraph& g);  // kGirthInfinity for forests

struct PencilDecomposition {
  std::vector<int> fiber;                 // ordered
  std::vector<int> pencil;                // fiber + orthogonal vertices
  std::vector<int> sec_star;              // all (multi-)sections
  std::vector<std::vector<int>> sec;      // per fiber edge, l.c_j = delta_ij
  std::vector<std::vector<int>> sec_star_i;
  std::vector<int> multiplicity;          // per vertex (0 on pencil)
  std::vector<GraphClass> sec_star_class; // of each induced sec*_i
};
PencilDecomposition decompose_pencil(const ConfigGraph& g, const std::vector<int>& fiber);

// Throws (naming the first bad component) unless every component is one of
// tA2, A3, A2, A1.
Pattern pattern_of_delta_set(const ConfigGraph& g);

enum class GirthClass { Triangular, Quadrangular, Pentagonal, Astral, LocallyElliptic };
GirthClass girth_class(const ConfigGraph& g);
std::string girth_class_name(GirthClass c);

// canonical realization of a pattern: disjoint union tA2^ta2 A3^a3 A2^a2 A1^a1
ConfigGraph realize_pattern(const Pattern& p);
// fiber tA2 joined to a realization of p by connecting c_i to every vertex
ConfigGraph fiber_join(const Pattern& p, int attach_i = 0);  // attach_i in {0,1,2}

}  // namespace k3l::fano
