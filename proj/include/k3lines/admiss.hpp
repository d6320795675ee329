#pragma once
// Root sets, separating roots, the compatible Weyl chamber, saturation and
// extended saturation, geometric kernels, and the admissibility /
// subgeometricity / geometricity / acceptability battery.

#include "k3lines/canonical.hpp"
#include "k3lines/discform.hpp"
#include "k3lines/graph.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace k3l::admiss {

using discform::FiniteQuadraticForm;
using discform::IsotropicSubgroup;
using fano::ConfigGraph;
using intlat::PolarizedLattice;

struct RootSystemSlice {
  std::vector<IVec> roots0;  // r^2 = -2, r.h = 0 (both signs)
  std::vector<IVec> roots1;  // r^2 = -2, r.h = 1
};
RootSystemSlice compute_roots(const PolarizedLattice& S);

bool is_admissible(const PolarizedLattice& S);      // no iso with iso.h = 2
bool is_smooth_lattice(const PolarizedLattice& S);  // roots0 empty and admissible

// all roots0 elements separating some pair of the given lines
std::vector<IVec> separating_roots(const PolarizedLattice& S, const std::vector<IVec>& lines);

struct ChamberOrientation {
  std::vector<IVec> positive_roots;
  std::vector<IVec> simple_roots;  // walls
};
// deterministic compatible orientation; throws if separating roots exist
ChamberOrientation choose_chamber(const PolarizedLattice& S, const std::vector<IVec>& lines);

struct LatticeSaturation {
  std::vector<IVec> lines;   // chamber-positive roots1, sorted
  std::vector<IVec> walls;   // simple roots
  ConfigGraph plain;
  ConfigGraph extended;      // lines + color-0 walls
};
LatticeSaturation saturate_lattice(const PolarizedLattice& S, const std::vector<IVec>& lines_in);

// Fano(g, K) as a polarized lattice plus the vertex images.
struct PairLattice {
  PolarizedLattice S;
  std::vector<IVec> vertex_images;
};
PairLattice pair_lattice(const ConfigGraph& g, const FiniteQuadraticForm& q,
                         const IsotropicSubgroup& K);

// saturation of the pair (g, K); throws if the pair is not extensible
LatticeSaturation saturate(const ConfigGraph& g, const IsotropicSubgroup& K);
LatticeSaturation saturate(const ConfigGraph& g);  // trivial kernel

// kernels K with Fano(g,K) admissible (smooth in smooth mode), extensible
// over g, and primitively embeddable into 2E8+3U
struct KernelVerdict {
  IsotropicSubgroup K;
  bool extensible = false;
  bool admissible = false;
  bool smooth = false;
  bool embeds = false;
  bool geometric_kernel(bool smooth_mode) const {
    return extensible && embeds && (smooth_mode ? smooth : admissible);
  }
};
std::vector<KernelVerdict> kernel_verdicts(const ConfigGraph& g,
                                           const Int& cap = Int(1) << 16);
std::vector<IsotropicSubgroup> geometric_kernels(const ConfigGraph& g, bool smooth_mode = false,
                                                 const Int& cap = Int(1) << 16);

struct BatteryOptions {
  bool smooth = false;
  bool need_geometric = false;  // the saturation comparison is expensive
  Int subgroup_cap = Int(1) << 16;
};

struct Battery {
  int rank = 0;
  bool hyperbolic = false;
  bool admissible = false;   // s-admissible in smooth mode
  bool extensible = false;
  bool subgeometric = false;
  bool geometric = false;
  bool geometric_known = false;
  bool acceptable = false;   // subgeometric and rank <= 19
};
// memoized per (plain) canonical form and mode; thread-safe
Battery test_battery(const ConfigGraph& g, const BatteryOptions& opt = {});
void clear_battery_cache();

// one saturation record, relabeled canonically so it is label-independent
struct SatRecord {
  std::string plain_key;     // canonical hex of the plain saturation
  std::string extended_key;
  std::string plain_json;
  std::string extended_json;
  int line_count = 0;
  int exceptional_count = 0;
  Int kernel_size = 1;
};
using InterestPredicate = std::function<bool(int lines, int exceptional)>;

// saturations sat(g,K) over all geometric kernels, deduplicated; requires
// rank(g) = 20
std::vector<SatRecord> saturation_list(const ConfigGraph& g, const InterestPredicate& interesting,
                                       bool smooth_mode = false);
// same computation without the rank-20 precondition (aggressive mode checks
// rank-19 intermediates too)
std::vector<SatRecord> geometric_saturations(const ConfigGraph& g, bool smooth_mode = false);

// Lemma-level structural checks on triangular graphs (violations abort the
// searches): every tA2 fiber has at most one multiple section, the multiple
// section is disjoint from each sec_i, each sec_i is a triangular set with
// |sec_i| <= 18 (<= 15 when elliptic).
struct TriangularViolation {
  std::string what;
  std::string graph_json;
};
std::optional<TriangularViolation> check_triangular_invariants(const ConfigGraph& g);

}  // namespace k3l::admiss
