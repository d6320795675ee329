#include "k3lines/canonical.hpp"
#include "k3lines/graph.hpp"

#include <numeric>

#include "test_util.hpp"

using namespace k3l;
using namespace k3l::fano;

static ConfigGraph triangle() {
  ConfigGraph g(3);
  g.set_mult(0, 1, 1);
  g.set_mult(1, 2, 1);
  g.set_mult(0, 2, 1);
  return g;
}

static ConfigGraph cycle(int n) {
  ConfigGraph g(n);
  for (int i = 0; i < n; ++i) g.set_mult(i, (i + 1) % n, 1);
  return g;
}

static ConfigGraph path(int n) {
  ConfigGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_mult(i, i + 1, 1);
  return g;
}

static void test_fano_lattice() {
  ConfigGraph one(1);
  FanoLattice f = fano_lattice(one);
  CHECK_EQ(f.rank, 2);
  auto rows = intlat::gram_to_rows(f.lattice);
  // basis {v, h} in some order; check det and h
  CHECK_EQ(intlat::determinant(f.lattice), Int(-9));
  CHECK_EQ(f.lattice.inner(f.h, f.h), Int(4));
  CHECK_EQ(f.lattice.inner(f.vertex_images[0], f.vertex_images[0]), Int(-2));
  CHECK_EQ(f.lattice.inner(f.vertex_images[0], f.h), Int(1));
  CHECK(f.hyperbolic());

  FanoLattice ft = fano_lattice(triangle());
  CHECK_EQ(ft.rank, 4);
  intlat::GramLattice direct = intlat::gram_from_rows(
      {{4, 1, 1, 1}, {1, -2, 1, 1}, {1, 1, -2, 1}, {1, 1, 1, -2}});
  CHECK_EQ(intlat::determinant(ft.lattice), intlat::determinant(direct));

  // kappa of the triangle fiber is isotropic in the Fano lattice
  IVec kap_img(ft.lattice.rank(), 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < ft.lattice.rank(); ++j) kap_img[j] += ft.vertex_images[i][j];
  CHECK_EQ(ft.lattice.inner(kap_img, kap_img), Int(0));

  // rank(Gamma) <= |Gamma| + 1 on a few graphs
  for (int n = 1; n <= 4; ++n) {
    CHECK(fano_lattice(path(n)).rank <= n + 1);
    CHECK(fano_lattice(cycle(std::max(3, n)).induced({0, 1, 2})).rank <= 4);
  }

  // colored variant: exceptional vertex has h-degree 0
  ConfigGraph bi(2);
  bi.set_mult(0, 1, 1);
  bi.colors[1] = 0;
  FanoLattice fb = fano_lattice(bi);
  CHECK_EQ(fb.lattice.inner(fb.vertex_images[1], fb.h), Int(0));
  CHECK_EQ(fb.lattice.inner(fb.vertex_images[0], fb.h), Int(1));
}

static void test_classify_dynkin() {
  CHECK(classify_graph(path(3)) == GraphClass::Elliptic);
  CHECK(classify_graph(triangle()) == GraphClass::Parabolic);
  CHECK(classify_graph(cycle(4)) == GraphClass::Parabolic);

  CHECK_EQ(dynkin_type(path(3)).str(), std::string("A3"));
  CHECK_EQ(dynkin_type(cycle(4)).str(), std::string("~A3"));
  CHECK_EQ(dynkin_type(triangle()).str(), std::string("~A2"));

  // star with 4 leaves: ~D4
  ConfigGraph star(5);
  for (int i = 1; i <= 4; ++i) star.set_mult(0, i, 1);
  CHECK_EQ(dynkin_type(star).str(), std::string("~D4"));

  // D4 (three leaves)
  ConfigGraph d4(4);
  for (int i = 1; i <= 3; ++i) d4.set_mult(0, i, 1);
  CHECK_EQ(dynkin_type(d4).str(), std::string("D4"));

  // E6..E8, ~E6..~E8 via the lattice constructors cross-check:
  // build from arms
  auto tree_with_arms = [](std::vector<int> arms) {
    int n = 1;
    for (int a : arms) n += a;
    ConfigGraph g(n);
    int at = 1;
    for (int a : arms) {
      int prev = 0;
      for (int k = 0; k < a; ++k) {
        g.set_mult(prev, at, 1);
        prev = at;
        ++at;
      }
    }
    return g;
  };
  CHECK_EQ(dynkin_type(tree_with_arms({1, 2, 2})).str(), std::string("E6"));
  CHECK_EQ(dynkin_type(tree_with_arms({1, 2, 3})).str(), std::string("E7"));
  CHECK_EQ(dynkin_type(tree_with_arms({1, 2, 4})).str(), std::string("E8"));
  CHECK_EQ(dynkin_type(tree_with_arms({2, 2, 2})).str(), std::string("~E6"));
  CHECK_EQ(dynkin_type(tree_with_arms({1, 3, 3})).str(), std::string("~E7"));
  CHECK_EQ(dynkin_type(tree_with_arms({1, 2, 5})).str(), std::string("~E8"));
  CHECK_EQ(dynkin_type(tree_with_arms({1, 1, 3})).str(), std::string("D6"));

  // ~Dn with two forks
  ConfigGraph dt(7);  // ~D6: path 2-3-4 with forks {0,1} and {5,6}
  dt.set_mult(0, 2, 1);
  dt.set_mult(1, 2, 1);
  dt.set_mult(2, 3, 1);
  dt.set_mult(3, 4, 1);
  dt.set_mult(4, 5, 1);
  dt.set_mult(4, 6, 1);
  CHECK_EQ(dynkin_type(dt).str(), std::string("~D6"));

  // ordering: Milnor number then A < D < E
  CHECK(affine_cmp(dynkin_from_string("~A4"), dynkin_from_string("~D4")) < 0);
  CHECK(affine_cmp(dynkin_from_string("~A2"), dynkin_from_string("~A3")) < 0);

  // dynkin/classify agreement, exhaustively over small connected graphs
  for (int n = 1; n <= 5; ++n) {
    int pairs = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      ConfigGraph g(n);
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask & (1 << bit)) g.set_mult(i, j, 1);
      if (g.components().size() != 1) continue;
      GraphClass cls;
      try {
        cls = classify_graph(g);
      } catch (const Error&) {
        continue;  // sigma+ >= 2
      }
      if (cls == GraphClass::Hyperbolic) continue;
      DynkinLabel lab = dynkin_type(g);
      CHECK_EQ(lab.affine, cls == GraphClass::Parabolic);
    }
  }
}

static void test_kappa_girth() {
  IVec k = kappa(triangle());
  CHECK_EQ(k.size(), (size_t)3);
  CHECK(k == IVec({1, 1, 1}));

  ConfigGraph star(5);
  for (int i = 1; i <= 4; ++i) star.set_mult(0, i, 1);
  CHECK(kappa(star) == IVec({2, 1, 1, 1, 1}));

  CHECK(kappa(cycle(4)) == IVec({1, 1, 1, 1}));

  CHECK_EQ(girth(triangle()), 3);
  CHECK_EQ(girth(cycle(4)), 4);
  CHECK_EQ(girth(path(5)), kGirthInfinity);
  CHECK_THROWS(kappa(path(3)));

  CHECK(girth_class(triangle()) == GirthClass::Triangular);
  CHECK(girth_class(cycle(5)) == GirthClass::Pentagonal);
  ConfigGraph star5(5);
  for (int i = 1; i <= 4; ++i) star5.set_mult(0, i, 1);
  CHECK(girth_class(star5) == GirthClass::Astral);
  CHECK(girth_class(path(4)) == GirthClass::LocallyElliptic);
}

static void test_pencil() {
  // ~A2 alone: pencil = fiber, no sections
  ConfigGraph t = triangle();
  PencilDecomposition d = decompose_pencil(t, {0, 1, 2});
  CHECK_EQ(d.pencil.size(), (size_t)3);
  CHECK_EQ(d.sec_star.size(), (size_t)0);

  // plus one vertex meeting c1 only
  ConfigGraph t1 = t.with_vertex({0});
  d = decompose_pencil(t1, {0, 1, 2});
  CHECK_EQ(d.sec[0].size(), (size_t)1);
  CHECK_EQ(d.multiplicity[3], 1);

  // vertex meeting c1 and c2: 2-section, not in sec_1
  ConfigGraph t2 = t.with_vertex({0, 1});
  d = decompose_pencil(t2, {0, 1, 2});
  CHECK_EQ(d.multiplicity[3], 2);
  CHECK_EQ(d.sec[0].size(), (size_t)0);
  CHECK_EQ(d.sec_star_i[0].size(), (size_t)1);
  CHECK_EQ(d.sec_star_i[1].size(), (size_t)1);
  CHECK_EQ(d.pencil.size() + d.sec_star.size(), (size_t)t2.n);
}

static void test_patterns() {
  Pattern p = pattern_of_delta_set(realize_pattern({1, 0, 1, 0}));
  CHECK(p == Pattern({1, 0, 1, 0}));
  CHECK_EQ(p.size(), 5);
  CHECK(pattern_of_delta_set(path(3)) == Pattern({0, 1, 0, 0}));
  CHECK_THROWS(pattern_of_delta_set(cycle(4)));

  ConfigGraph j = fiber_join({0, 0, 0, 1}, 0);
  CHECK_EQ(j.n, 4);
  CHECK_EQ(j.mult(0, 3), 1);
  CHECK_EQ(j.mult(1, 3), 0);
}

static void test_canonical() {
  CanonicalResult r = canonical_form(triangle());
  CHECK_EQ(r.aut_order, Int(6));

  Constraints c;
  c.pointwise = {0};
  r = canonical_form(triangle(), c);
  CHECK_EQ(r.aut_order, Int(2));

  c.pointwise = {};
  c.setwise = {{0, 1}};
  r = canonical_form(triangle(), c);
  CHECK_EQ(r.aut_order, Int(2));  // swap {0,1} allowed, 2 fixed

  // invariance under relabeling, constrained and not
  testu::Rng rng(5);
  for (int it = 0; it < 30; ++it) {
    int n = rng.uniform(4, 10);
    ConfigGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform(0, 2) == 0) g.set_mult(i, j, 1);
    for (int i = 0; i < n; ++i) g.colors[i] = (uint8_t)rng.uniform(0, 1);
    Perm perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(0, i)]);
    ConfigGraph h(n);
    for (int i = 0; i < n; ++i) {
      h.colors[perm[i]] = g.colors[i];
      for (int j = 0; j < n; ++j) h.adj[size_t(perm[i]) * n + perm[j]] = (uint8_t)g.mult(i, j);
    }
    CHECK(canonical_form(g).bytes == canonical_form(h).bytes);
    Constraints cg, ch;
    cg.pointwise = {0};
    ch.pointwise = {perm[0]};
    cg.setwise = {{1, 2}};
    ch.setwise = {{perm[1], perm[2]}};
    CHECK(canonical_form(g, cg).bytes == canonical_form(h, ch).bytes);
  }

  // disjoint union of k vertices: automorphism group S_k
  ConfigGraph disc(5);
  CHECK_EQ(canonical_form(disc).aut_order, Int(120));

  // 4-cycle: dihedral of order 8
  CHECK_EQ(canonical_form(cycle(4)).aut_order, Int(8));

  // colored: exceptional vertices cannot swap with lines
  ConfigGraph bi(2);
  bi.colors[1] = 0;
  CHECK_EQ(canonical_form(bi).aut_order, Int(1));
}

static void test_json_roundtrip() {
  ConfigGraph t = triangle().with_vertex({0, 1});
  t.colors[3] = 0;
  ConfigGraph u = ConfigGraph::from_json(t.to_json());
  CHECK(t == u);
}

int main() {
  test_fano_lattice();
  test_classify_dynkin();
  test_kappa_girth();
  test_pencil();
  test_patterns();
  test_canonical();
  test_json_roundtrip();
  return testu::finish("graph_test");
}
