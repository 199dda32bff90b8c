// Lattice utilities: Smith/Hermite forms, quotient structure, finite abelian
// groups.  The quotient structure is cross-checked against an independent
// oracle built on fraction-free determinants and Cramer solving, which shares
// no code with the Smith elimination path.

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "unillc/lattice.hpp"

using namespace unillc;

namespace {

// ---- independent oracle ----------------------------------------------------
// For a full-rank square relation matrix R, the order of the class of v in
// Z^r/rowspan(R) is the smallest k > 0 with k*v in rowspan(R).  Solving
// x R = v by Cramer gives rational x; the order is the lcm of the
// denominators.  Uses only zmat_det (Bareiss), not the Smith machinery.
Zint oracle_class_order(const ZMat& rel, const ZVec& v) {
  std::size_t r = rel.size();
  Zint det = zmat_det(rel);
  REQUIRE(det != 0);
  Zint order = 1;
  for (std::size_t i = 0; i < r; ++i) {
    // Cramer for x_i: replace row i of R by v (row-vector convention).
    ZMat m = rel;
    m[i] = v;
    Zint num = zmat_det(m);
    // x_i = num/det; denominator after reduction:
    Zint g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), det.get_mpz_t());
    Zint den = det / g;
    if (den < 0) den = -den;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), den.get_mpz_t());
  }
  return order;
}

Zint order_from_residues(const QuotientLattice& q, const ZVec& v) {
  auto res = q.project(v);
  const auto& f = q.invariant_factors();
  Zint order = 1;
  for (std::size_t t = 0; t < f.size(); ++t) {
    Zint g;
    mpz_gcd(g.get_mpz_t(), res[t].get_mpz_t(), f[t].get_mpz_t());
    Zint o = f[t] / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), o.get_mpz_t());
  }
  return order;
}

ZMat random_full_rank(std::mt19937_64& rng, std::size_t r, long maxabs) {
  std::uniform_int_distribution<long> d(-maxabs, maxabs);
  for (;;) {
    ZMat m = zmat_zero(r, r);
    for (auto& row : m)
      for (auto& x : row) x = d(rng);
    Zint det = zmat_det(m);
    if (det != 0 && abs(det) <= 48) return m;
  }
}

}  // namespace

TEST_CASE("determinant and matrix basics") {
  ZMat a = {{Zint(2), Zint(1)}, {Zint(7), Zint(4)}};
  CHECK(zmat_det(a) == 1);
  CHECK(zmat_det(zmat_identity(5)) == 1);
  CHECK(zmat_det(zmat_zero(3, 3)) == 0);
  ZMat b = {{Zint(0), Zint(1)}, {Zint(1), Zint(0)}};
  CHECK(zmat_det(b) == -1);
  CHECK(zmat_mul(a, zmat_identity(2)) == a);
}

TEST_CASE("hermite normal form is a basis of the row span") {
  // Span of (2,4),(1,1): index |det| = 2 sublattice.
  ZMat a = {{Zint(2), Zint(4)}, {Zint(1), Zint(1)}};
  ZMat h = hermite_normal_form(a);
  REQUIRE(h.size() == 2);
  CHECK(h[0][0] > 0);
  // Row span unchanged: original rows solvable in the HNF basis.
  CHECK_NOTHROW(FiniteAbelianGroup::solve_in_basis(h, {Zint(2), Zint(4)}));
  CHECK_NOTHROW(FiniteAbelianGroup::solve_in_basis(h, {Zint(1), Zint(1)}));
  CHECK_THROWS_AS(FiniteAbelianGroup::solve_in_basis(h, {Zint(0), Zint(1)}),
                  std::invalid_argument);
}

TEST_CASE("smith normal form on textbook matrices") {
  // Cartan matrix of type A_2: quotient Z/3 (standard fact).
  ZMat a2 = {{Zint(2), Zint(-1)}, {Zint(-1), Zint(2)}};
  QuotientLattice q(2, a2);
  REQUIRE(q.invariant_factors().size() == 1);
  CHECK(q.invariant_factors()[0] == 3);

  // Cartan matrix of type D_4 (Bourbaki numbering, node 2 central):
  // fundamental group (Z/2)^2.
  ZMat d4 = {{Zint(2), Zint(-1), Zint(0), Zint(0)},
             {Zint(-1), Zint(2), Zint(-1), Zint(-1)},
             {Zint(0), Zint(-1), Zint(2), Zint(0)},
             {Zint(0), Zint(-1), Zint(0), Zint(2)}};
  QuotientLattice qd(4, d4);
  REQUIRE(qd.invariant_factors().size() == 2);
  CHECK(qd.invariant_factors()[0] == 2);
  CHECK(qd.invariant_factors()[1] == 2);
  CHECK(qd.order() == 4);

  // Cartan matrix of type D_5: fundamental group Z/4.
  ZMat d5 = {{Zint(2), Zint(-1), Zint(0), Zint(0), Zint(0)},
             {Zint(-1), Zint(2), Zint(-1), Zint(0), Zint(0)},
             {Zint(0), Zint(-1), Zint(2), Zint(-1), Zint(-1)},
             {Zint(0), Zint(0), Zint(-1), Zint(2), Zint(0)},
             {Zint(0), Zint(0), Zint(-1), Zint(0), Zint(2)}};
  QuotientLattice qd5(5, d5);
  REQUIRE(qd5.invariant_factors().size() == 1);
  CHECK(qd5.invariant_factors()[0] == 4);
}

TEST_CASE("smith decomposition identity u*a*v = d") {
  std::mt19937_64 rng(5u);
  for (int iter = 0; iter < 50; ++iter) {
    ZMat a = random_full_rank(rng, 3, 4);
    SmithResult s = smith_normal_form(a);
    CHECK(zmat_mul(zmat_mul(s.u, a), s.v) == s.d);
    Zint du = zmat_det(s.u), dv = zmat_det(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    auto diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      CHECK(diag[i] >= 0);
      if (diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
    }
  }
}

TEST_CASE("quotient structure agrees with determinant/Cramer oracle") {
  std::mt19937_64 rng(99u);
  std::uniform_int_distribution<long> vd(-5, 5);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t r = 2 + iter % 3;  // ranks 2..4
    ZMat rel = random_full_rank(rng, r, 3);
    QuotientLattice q(r, rel);
    Zint det = zmat_det(rel);
    if (det < 0) det = -det;
    CHECK(q.order() == det);
    // Orders of unit-vector classes and of random classes.
    for (std::size_t i = 0; i < r; ++i) {
      ZVec e(r, Zint(0));
      e[i] = 1;
      CHECK(order_from_residues(q, e) == oracle_class_order(rel, e));
    }
    ZVec v(r);
    for (auto& x : v) x = vd(rng);
    CHECK(order_from_residues(q, v) == oracle_class_order(rel, v));
    // lift is a section of project.
    auto res = q.project(v);
    CHECK(q.project(q.lift(res)) == res);
  }
}

TEST_CASE("infinite quotients are rejected") {
  ZMat rel = {{Zint(2), Zint(0)}};
  CHECK_THROWS_AS(QuotientLattice(2, rel), std::invalid_argument);
}

TEST_CASE("finite abelian groups: span and subgroup structure") {
  FiniteAbelianGroup g({Zint(2), Zint(4)});
  CHECK(g.order() == 8);
  CHECK(g.elements().size() == 8);

  // <(1,2)> has order 2.
  auto s1 = g.span({{Zint(1), Zint(2)}});
  CHECK(s1.size() == 2);
  auto inv1 = g.subgroup_invariants({{Zint(1), Zint(2)}});
  REQUIRE(inv1.size() == 1);
  CHECK(inv1[0] == 2);

  // <(0,2),(1,0)> is Klein four.
  auto inv2 = g.subgroup_invariants({{Zint(0), Zint(2)}, {Zint(1), Zint(0)}});
  REQUIRE(inv2.size() == 2);
  CHECK(inv2[0] == 2);
  CHECK(inv2[1] == 2);

  // <(0,1)> is Z/4.
  auto inv3 = g.subgroup_invariants({{Zint(0), Zint(1)}});
  REQUIRE(inv3.size() == 1);
  CHECK(inv3[0] == 4);

  // Full group.
  auto inv4 = g.subgroup_invariants({{Zint(1), Zint(0)}, {Zint(0), Zint(1)}});
  REQUIRE(inv4.size() == 2);
  CHECK(inv4[0] == 2);
  CHECK(inv4[1] == 4);

  // Endomorphism application: negation on Z/2 x Z/4.
  ZMat neg = {{Zint(-1), Zint(0)}, {Zint(0), Zint(-1)}};
  CHECK(g.apply(neg, {Zint(1), Zint(3)}) == std::vector<Zint>{Zint(1), Zint(1)});
}

TEST_CASE("subgroup span sizes agree with invariant factors") {
  std::mt19937_64 rng(7u);
  FiniteAbelianGroup g({Zint(2), Zint(2), Zint(6)});
  auto elems = g.elements();
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<std::vector<Zint>> gens{elems[pick(rng)], elems[pick(rng)]};
    auto inv = g.subgroup_invariants(gens);
    Zint expect = 1;
    for (const auto& f : inv) expect *= f;
    CHECK(Zint(g.span(gens).size()) == expect);
  }
}
