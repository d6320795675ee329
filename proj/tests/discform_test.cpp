#include "k3lines/discform.hpp"

#include "test_util.hpp"

using namespace k3l;
using namespace k3l::intlat;
using namespace k3l::discform;

static GramLattice random_even_lattice(testu::Rng& rng, int max_rank, int max_entry) {
  for (;;) {
    int n = rng.uniform(1, max_rank);
    IMat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int e = rng.uniform(-max_entry, max_entry);
        g.at(i, j) = e;
        g.at(j, i) = e;
      }
    for (int i = 0; i < n; ++i) g.at(i, i) = 2 * rng.uniform(-max_entry / 2, max_entry / 2);
    GramLattice L{g};
    if (determinant(L) == 0) continue;
    return L;
  }
}

static void test_disc_form_basics() {
  FiniteQuadraticForm fU = discriminant_form(lattice_from_name("U"));
  CHECK_EQ(fU.group_order, Int(1));
  CHECK_EQ(fU.blocks.size(), (size_t)0);
  CHECK_EQ(fU.sign8, 0);

  FiniteQuadraticForm fA2 = discriminant_form(lattice_from_name("A2"));
  CHECK_EQ(fA2.group_order, Int(3));
  CHECK_EQ(fA2.blocks.size(), (size_t)1);
  CHECK_EQ(fA2.blocks[0].p, 3L);
  CHECK_EQ(fA2.blocks[0].k, 1);
  // q(g) = -2/3 mod 2Z = 4/3: pairing numerator 1, chi = +1
  CHECK_EQ(fA2.blocks[0].chi, 1L);
  CHECK_EQ(fA2.sign8, 6);  // -2 mod 8
  std::vector<Int> g = {1};
  CHECK_EQ(fA2.q_of(g), Rat(4, 3));

  FiniteQuadraticForm fMix = discriminant_form(gram_from_rows({{4, 1}, {1, -2}}));
  CHECK_EQ(fMix.group_order, Int(9));
  CHECK_EQ(fMix.blocks.size(), (size_t)1);
  CHECK_EQ(fMix.blocks[0].k, 2);

  // 2-adic pieces
  FiniteQuadraticForm fU2 = discriminant_form(lattice_from_name("U(2)"));
  CHECK_EQ(fU2.blocks.size(), (size_t)1);
  CHECK(fU2.blocks[0].kind == FormBlock::BlockU);
  CHECK_EQ(fU2.sign8, 0);

  FiniteQuadraticForm fD4 = discriminant_form(lattice_from_name("D4"));
  CHECK_EQ(fD4.group_order, Int(4));
  CHECK_EQ(fD4.blocks.size(), (size_t)1);
  CHECK(fD4.blocks[0].kind == FormBlock::BlockV);
  CHECK_EQ(fD4.sign8, 4);  // sigma = -4

  FiniteQuadraticForm fE8 = discriminant_form(lattice_from_name("E8"));
  CHECK_EQ(fE8.group_order, Int(1));
  CHECK_EQ(fE8.sign8, 0);
}

static void test_milgram_corpus() {
  testu::Rng rng(42);
  int done = 0;
  while (done < 120) {
    GramLattice L = random_even_lattice(rng, 5, 6);
    Int det = determinant(L);
    if (abs(det) > 3000) continue;
    Signature s = signature(L);
    FiniteQuadraticForm f = discriminant_form(L);
    int want = ((s.plus - s.minus) % 8 + 8) % 8;
    CHECK_EQ(f.sign8, want);
    CHECK_EQ(f.group_order, abs(det));
    ++done;
  }
}

static void test_isotropic_subgroups() {
  // trivial form
  auto subsU = isotropic_subgroups(discriminant_form(lattice_from_name("U")));
  CHECK_EQ(subsU.size(), (size_t)1);

  // Z/3 with q = -2/3: only the trivial subgroup
  auto subsA2 = isotropic_subgroups(discriminant_form(lattice_from_name("A2")));
  CHECK_EQ(subsA2.size(), (size_t)1);

  // u(2): trivial + two order-2 isotropic subgroups
  auto subsU2 = isotropic_subgroups(discriminant_form(lattice_from_name("U(2)")));
  CHECK_EQ(subsU2.size(), (size_t)3);

  // overlattice determinant bookkeeping on those kernels
  GramLattice U2 = lattice_from_name("U(2)");
  FiniteQuadraticForm f = discriminant_form(U2);
  for (const auto& K : subsU2) {
    if (K.size == 1) continue;
    Extension e = overlattice(U2, f, K);
    CHECK_EQ(determinant(e.lattice) * K.size * K.size, determinant(U2));
  }
}

static void test_overlattice_random() {
  testu::Rng rng(99);
  int done = 0;
  while (done < 40) {
    GramLattice L = random_even_lattice(rng, 4, 4);
    Int det = determinant(L);
    if (abs(det) > 600) continue;
    FiniteQuadraticForm f = discriminant_form(L);
    std::vector<IsotropicSubgroup> subs;
    try {
      subs = isotropic_subgroups(f, Int(2000));
    } catch (const Error&) {
      continue;
    }
    for (const auto& K : subs) {
      Extension e = overlattice(L, f, K);
      CHECK_EQ(determinant(e.lattice) * K.size * K.size, det);
      FiniteQuadraticForm fe = discriminant_form(e.lattice);
      CHECK_EQ(fe.group_order * K.size * K.size, f.group_order);
    }
    ++done;
  }
}

static void test_even_exists() {
  FiniteQuadraticForm trivial = form_from_blocks({});
  CHECK(even_lattice_exists(1, 1, trivial));    // U
  CHECK(!even_lattice_exists(0, 1, trivial));   // no even unimodular [x]
  CHECK(!even_lattice_exists(0, 2, trivial));   // signature obstruction
  CHECK(even_lattice_exists(0, 8, trivial));    // E8(-1)
  CHECK(!even_lattice_exists(1, 2, trivial));

  FiniteQuadraticForm fA2 = discriminant_form(lattice_from_name("A2"));
  CHECK(even_lattice_exists(0, 2, fA2));
  CHECK(!even_lattice_exists(2, 0, fA2));
  CHECK(even_lattice_exists(2, 0, fA2.negated()));  // [2,1,2]

  // witness monotonicity: every named lattice exists with its own data
  for (const char* name : {"U", "A1", "A2", "A3", "D4", "E8", "U(2)", "[4]", "[6]", "[4,1,-2]",
                           "A2(2)", "D5", "E6", "E7", "[2]+[-2]", "[0,3,0]"}) {
    GramLattice L = lattice_from_name(name);
    Signature s = signature(L);
    if (s.zero != 0) continue;
    FiniteQuadraticForm f = discriminant_form(L);
    CHECK(even_lattice_exists(s.plus, s.minus, f));
  }
}

static void test_binary_oracle() {
  FiniteQuadraticForm fA2 = discriminant_form(lattice_from_name("A2"));
  CHECK(binary_form_oracle(0, 2, fA2));
  CHECK(binary_form_oracle(2, 0, fA2.negated()));
  CHECK(!binary_form_oracle(0, 2, form_from_blocks({})));
  CHECK(binary_form_oracle(1, 1, form_from_blocks({})));  // U

  // exhaustive sweep: criteria agree with the oracle for |det| <= 50
  // (even_lattice_exists already cross-checks internally and would throw;
  // here we also drive it across signatures)
  int cases = 0;
  for (long a = -10; a <= 10; a += 2)
    for (long b = 0; b <= 10; ++b)
      for (long c = -10; c <= 10; c += 2) {
        long det = a * c - b * b;
        if (det == 0 || std::abs(det) > 50) continue;
        GramLattice L = gram_from_rows({{a, b}, {b, c}});
        Signature s = signature(L);
        FiniteQuadraticForm f = discriminant_form(L);
        CHECK(even_lattice_exists(s.plus, s.minus, f));  // witness: L itself
        // flipped signatures must agree between the two deciders
        for (auto [sp, sm] : {std::pair{2, 0}, {1, 1}, {0, 2}}) {
          bool crit;
          try {
            crit = even_lattice_exists(sp, sm, f);
          } catch (const Undecided&) {
            CHECK(false);
            continue;
          }
          (void)crit;  // the internal cross-check is the assertion
        }
        ++cases;
      }
  CHECK(cases > 100);
}

static void test_form_json_roundtrip() {
  for (const char* name : {"A2", "D4", "U(2)", "[4,1,-2]", "[6]", "A2(2)"}) {
    FiniteQuadraticForm f = discriminant_form(lattice_from_name(name));
    FiniteQuadraticForm g = form_from_json(form_to_json(f));
    CHECK(f.same_blocks(g));
    CHECK_EQ(f.sign8, g.sign8);
    CHECK(forms_isomorphic(f, g));
  }
}

static void test_geometric() {
  // h alone: the Picard-rank-1 quartic lattice
  GramLattice h4 = lattice_from_name("[4]");
  PolarizedLattice S1(h4, {Int(1)});
  CHECK(is_geometric_lattice(S1));

  // h plus one line
  GramLattice L2 = gram_from_rows({{4, 1}, {1, -2}});
  PolarizedLattice S2(L2, {Int(1), Int(0)});
  CHECK(is_geometric_lattice(S2));
}

int main() {
  test_disc_form_basics();
  test_milgram_corpus();
  test_isotropic_subgroups();
  test_overlattice_random();
  test_even_exists();
  test_binary_oracle();
  test_form_json_roundtrip();
  test_geometric();
  return testu::finish("discform_test");
}
