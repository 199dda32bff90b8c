#pragma once

/**
 * Built-in structure catalog.
 *
 * Each entry describes one isogeny variant of one family of groups split by a
 * ramified extension: its decorated local index (affine diagram plus
 * unramified Frobenius action), the relative diagram obtained by folding, the
 * omega group with its action on the relative diagram, residual torus order
 * polynomials, the fixed subgroup of the dual group, and a companion group
 * with matching affine Weyl data.  The same data can be serialized to and
 * loaded from a canonical JSON form; loading re-runs the structural
 * self-checks, and a separate routine re-derives every omega group from the
 * cocharacter lattices.
 *
 * Families (subscript ranges follow the built-in tables):
 *   B-C_n    quotients of ramified special unitary groups of even degree
 *   C-BC_n   quotients of ramified special unitary groups of odd degree
 *   C-B_n    ramified even orthogonal isogenies (quasi-split)
 *   2B-C_n   unramified-twisted forms of B-C_n
 *   2C-B_m   unramified-twisted ramified even orthogonal isogenies
 *   F4^I     ramified outer forms of the rank-six exceptional type
 *   G2^I     ramified triality forms of the rank-four orthogonal type
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "unillc/diagram.hpp"
#include "unillc/half_laurent.hpp"
#include "unillc/lattice.hpp"
#include "unillc/omega.hpp"
#include "unillc/rational_function.hpp"
#include "unillc/rootdata.hpp"
#include "unillc/version.hpp"

namespace unillc {

struct OmegaData {
  long order = 1;
  std::vector<long> invariants;  // invariant factors > 1
  std::vector<std::vector<int>> element_perms;  // action on relative nodes;
                                                // element 0 is the identity
  friend bool operator==(const OmegaData&, const OmegaData&) = default;
};

struct DualGroupData {
  std::string fixed_desc;  // e.g. "Sp(4,C)"
  std::string fixed_type;  // e.g. "C2"
  int fixed_dim = 0;
  std::vector<int> fixed_exponents;
  int pi0 = 1;
  int a = 0;  // dim G minus fixed_dim
  long center_fixed_order = 1;
  friend bool operator==(const DualGroupData&, const DualGroupData&) = default;
};

struct TorusData {
  std::string shape;  // display form, e.g. "(q+1)(q-1)^2"
  RationalFunction order;

  friend bool operator==(const TorusData&, const TorusData&) = default;
};

struct CompanionData {
  std::string name;           // e.g. "SO(5)"
  std::string splitting_tag;  // "split" or "unr2-inner"
  char abs_type = 'B';
  int abs_rank = 0;
  std::string lattice_tag;  // "sc" or "ad"
  bool disconnected = false;  // extra direct factor of order two
  LocalIndex local;
  AffineDiagram relative;
  std::vector<int> bijection;  // local-node bijection, main -> companion
  std::vector<long> iwahori_params_twice;
  OmegaData omega;
  TorusData torus;
  friend bool operator==(const CompanionData&, const CompanionData&) = default;
};

struct CatalogEntry {
  std::string family;  // "B-C", "C-BC", "C-B", "2B-C", "2C-B", "F4^I", "G2^I"
  int n = 0;           // family subscript
  std::string isogeny;     // canonical: "d=<k>", "sc", "so", "ad"
  std::string lattice_tag; // "d=<k>", "sc", "so", "ad"
  std::string group_desc;
  std::string splitting_tag;  // "ram2", "ram2.unr2", "ram3"
  std::string r_tag;          // "" or "3|6"
  char abs_type = 'A';
  int abs_rank = 0;
  int dim_g = 0;
  int rank_nr = 0;  // relative rank: relative nodes minus one
  std::vector<int> marked;  // distinguished local vertices
  std::vector<int> inertia_perm;  // generator of the inertia image
  std::vector<int> frob_perm;     // Frobenius image on the absolute diagram
  LocalIndex local;
  AffineDiagram relative;
  std::vector<std::vector<int>> orbit_map;  // relative node -> local nodes
  std::vector<long> iwahori_params_twice;   // 2 * N(s) per relative node
  OmegaData omega;
  TorusData torus;
  DualGroupData dual;
  CompanionData companion;
  std::string relevance_char;  // "trivial" or "order2"

  std::string id() const {
    std::string s = family;
    if (n > 0) s += "_" + std::to_string(n);
    return s + "[" + isogeny + "]";
  }
  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct Catalog {
  int version = 1;
  std::vector<CatalogEntry> entries;
};

// ---------------------------------------------------------------------------
// Diagram builders (shared frozen geometry)
// ---------------------------------------------------------------------------

namespace catalog_detail {

inline std::vector<std::string> node_labels(int n, const std::string& prefix) {
  std::vector<std::string> ls;
  for (int i = 0; i < n; ++i) ls.push_back(prefix + std::to_string(i));
  return ls;
}

/// Fork-tailed chain: legs 0 and 1 joined at 2, chain to a long end node.
inline AffineDiagram fork_chain(int n, const std::string& prefix) {
  std::vector<DiagramEdge> es;
  if (n == 2) {
    es = {{0, 2, 2, 0}, {1, 2, 2, 1}};
  } else {
    es = {{0, 2, 1, -1}, {1, 2, 1, -1}};
    for (int i = 2; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n - 1});
  }
  return AffineDiagram(n + 1, node_labels(n + 1, prefix), {0, 1},
                       std::move(es));
}

/// Fork-tailed chain with the end arrow (and rank-two leg arrows) reversed.
inline AffineDiagram fork_chain_companion(int n, const std::string& prefix) {
  std::vector<DiagramEdge> es;
  if (n == 2) {
    es = {{0, 2, 2, 2}, {1, 2, 2, 2}};
  } else {
    es = {{0, 2, 1, -1}, {1, 2, 1, -1}};
    for (int i = 2; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n});
  }
  return AffineDiagram(n + 1, node_labels(n + 1, prefix), {0, 1},
                       std::move(es));
}

/// Chain with both double-bond arrows pointing toward node 0 (n = 1: the
/// infinite bond, arrow at the first node).
inline AffineDiagram oneway_chain(int n, const std::string& prefix) {
  std::vector<DiagramEdge> es;
  if (n == 1) {
    es = {{0, 1, 4, 0}};
  } else {
    es = {{0, 1, 2, 0}};
    for (int i = 1; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n - 1});
  }
  return AffineDiagram(n + 1, node_labels(n + 1, prefix), {0, n},
                       std::move(es));
}

/// Chain with double bonds pointing inward at both ends (n = 1: the infinite
/// bond, arrow at the second node).  Mirror-symmetric.
inline AffineDiagram inward_chain(int n, const std::string& prefix) {
  std::vector<DiagramEdge> es;
  if (n == 1) {
    es = {{0, 1, 4, 1}};
  } else {
    es = {{0, 1, 2, 1}};
    for (int i = 1; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n - 1});
  }
  return AffineDiagram(n + 1, node_labels(n + 1, prefix), {0, n},
                       std::move(es));
}

/// Chain with double bonds pointing outward at both ends (n >= 2).
/// Mirror-symmetric.
inline AffineDiagram outward_chain(int n, const std::string& prefix) {
  std::vector<DiagramEdge> es = {{0, 1, 2, 0}};
  for (int i = 1; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
  es.push_back({n - 1, n, 2, n});
  return AffineDiagram(n + 1, node_labels(n + 1, prefix), {0, n},
                       std::move(es));
}

inline AffineDiagram f4_index(const std::string& prefix) {
  return AffineDiagram(5, node_labels(5, prefix), {0},
                       {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 3, 2, 2},
                        {3, 4, 1, -1}});
}

inline AffineDiagram f4_companion_index(const std::string& prefix) {
  return AffineDiagram(5, node_labels(5, prefix), {0},
                       {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 3, 2, 3},
                        {3, 4, 1, -1}});
}

inline AffineDiagram g2_index(const std::string& prefix) {
  return AffineDiagram(3, node_labels(3, prefix), {0},
                       {{0, 1, 1, -1}, {1, 2, 3, 1}});
}

inline AffineDiagram g2_companion_index(const std::string& prefix) {
  return AffineDiagram(3, node_labels(3, prefix), {0},
                       {{0, 1, 1, -1}, {1, 2, 3, 2}});
}

inline std::vector<int> swap01_perm(int n) {
  auto p = identity_permutation(n);
  std::swap(p[0], p[1]);
  return p;
}

// ---------------------------------------------------------------------------
// Derived attributes
// ---------------------------------------------------------------------------

/// Twice the quadratic-relation exponent per folded node, from the orbit
/// shape: fixed node 1, non-adjacent pair 2, adjacent pair 3.
inline std::vector<long> params_from_local(const LocalIndex& li) {
  std::vector<long> out;
  for (const auto& orb : li.orbits()) {
    if (orb.size() == 1) {
      out.push_back(2);
    } else if (orb.size() == 2) {
      bool adjacent = li.diagram.bond(orb[0], orb[1]) > 0;
      out.push_back(adjacent ? 6 : 4);
    } else {
      throw std::logic_error("params_from_local: orbit size");
    }
  }
  return out;
}

/// (q-1)^a (q+1)^b (q^2-1)^c as an order polynomial with a display shape.
inline TorusData torus_product(int a, int b, int c) {
  RationalFunction q = RationalFunction::q_pow(1);
  RationalFunction one = RationalFunction::one();
  RationalFunction poly = one;
  for (int i = 0; i < a; ++i) poly = poly * (q - one);
  for (int i = 0; i < b; ++i) poly = poly * (q + one);
  RationalFunction q2 = RationalFunction::q_pow(2);
  for (int i = 0; i < c; ++i) poly = poly * (q2 - one);
  std::string shape;
  auto piece = [&](const std::string& base, int e) {
    if (e == 0) return;
    shape += base;
    if (e > 1) shape += "^" + std::to_string(e);
  };
  piece("(q^2-1)", c);
  piece("(q+1)", b);
  piece("(q-1)", a);
  if (shape.empty()) shape = "1";
  return TorusData{shape, poly};
}

inline OmegaData omega_trivial(int nodes) {
  return OmegaData{1, {}, {identity_permutation(nodes)}};
}

inline OmegaData omega_order2(int nodes, const std::vector<int>& action) {
  return OmegaData{2, {2}, {identity_permutation(nodes), action}};
}

inline OmegaData omega_order2_trivial_action(int nodes) {
  return omega_order2(nodes, identity_permutation(nodes));
}

inline std::vector<int> odd_exponents(int count) {
  std::vector<int> e;
  for (int i = 0; i < count; ++i) e.push_back(2 * i + 1);
  return e;
}

}  // namespace catalog_detail

// ---------------------------------------------------------------------------
// Root data attached to entries
// ---------------------------------------------------------------------------

/// Cocharacter datum named by an absolute type, rank, and lattice tag:
/// "sc", "ad", "so" (coroots plus the first fundamental coweight), or
/// "d=<k>" (coroots plus k times the first fundamental coweight).
inline BasedRootDatum named_root_datum(char type, int rank,
                                       const std::string& lattice_tag) {
  if ((type == 'B' || type == 'C') && rank == 1) type = 'A';
  ZMat c = cartan_matrix(type, rank);
  if (lattice_tag == "sc") return BasedRootDatum::simply_connected(c);
  if (lattice_tag == "ad") return BasedRootDatum::adjoint(c);
  if (lattice_tag == "so") {
    ZVec gen(rank, Zint(0));
    gen[0] = 1;
    return BasedRootDatum::with_extra_generators(c, {gen});
  }
  if (lattice_tag.rfind("d=", 0) == 0) {
    int d = AffineDiagram::parse_int(lattice_tag.substr(2));
    if (d <= 0) throw std::invalid_argument("named_root_datum: bad d");
    ZVec gen(rank, Zint(0));
    gen[0] = d;
    return BasedRootDatum::with_extra_generators(c, {gen});
  }
  throw std::invalid_argument("named_root_datum: unknown lattice tag '" +
                              lattice_tag + "'");
}

inline BasedRootDatum entry_root_datum(const CatalogEntry& e) {
  return named_root_datum(e.abs_type, e.abs_rank, e.lattice_tag);
}

inline BasedRootDatum companion_root_datum(const CatalogEntry& e) {
  return named_root_datum(e.companion.abs_type, e.companion.abs_rank,
                          e.companion.lattice_tag);
}

// ---------------------------------------------------------------------------
// Structural self-checks
// ---------------------------------------------------------------------------

/// Structural problems of an entry (empty = consistent).  Only inexpensive
/// combinatorial checks; the lattice recomputation of omega groups lives in
/// verify_entry_omega().
inline std::vector<std::string> entry_structural_problems(
    const CatalogEntry& e) {
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(e.id() + ": " + what);
  };
  try {
    e.local.validate();
    e.relative.validate();
    e.companion.local.validate();
    e.companion.relative.validate();
  } catch (const std::exception& ex) {
    bad.push_back(e.id() + ": invalid diagram: " + ex.what());
    return bad;
  }
  expect(fold(e.local) == e.relative, "relative diagram is not the fold");
  expect(fold(e.companion.local) == e.companion.relative,
         "companion relative diagram is not the fold");
  expect(e.orbit_map == e.local.orbits(), "orbit map mismatch");
  expect(e.rank_nr == e.relative.num_nodes - 1, "relative rank mismatch");
  expect(e.iwahori_params_twice == catalog_detail::params_from_local(e.local),
         "quadratic parameters disagree with the orbit rule");
  expect(e.companion.iwahori_params_twice ==
             catalog_detail::params_from_local(e.companion.local),
         "companion quadratic parameters disagree with the orbit rule");
  expect(e.iwahori_params_twice == e.companion.iwahori_params_twice,
         "main and companion quadratic parameters differ");

  // Dimension bookkeeping.
  int expected_dim = 0;
  switch (e.abs_type) {
    case 'A': expected_dim = e.abs_rank * (e.abs_rank + 2); break;
    case 'D': expected_dim = e.abs_rank * (2 * e.abs_rank - 1); break;
    case 'E': expected_dim = 78; break;
    default: expected_dim = -1;
  }
  expect(e.dim_g == expected_dim, "absolute dimension mismatch");
  int fixed_dim = 0;
  for (int ex : e.dual.fixed_exponents) fixed_dim += 2 * ex + 1;
  expect(e.dual.fixed_dim == fixed_dim,
         "fixed-subgroup dimension disagrees with its exponents");
  expect(e.dual.a == e.dim_g - e.dual.fixed_dim,
         "gamma exponent is not the dimension drop");
  expect(e.dual.center_fixed_order == e.omega.order,
         "fixed-center order differs from the omega order");

  // Omega actions: element 0 identity, every permutation an automorphism of
  // the relative diagram, list closed under composition, sizes consistent.
  auto check_omega = [&](const OmegaData& om, const AffineDiagram& rel,
                         const std::string& who) {
    expect(om.order == static_cast<long>(om.element_perms.size()),
           who + ": omega order differs from the element count");
    long inv_prod = 1;
    for (long f : om.invariants) inv_prod *= f;
    expect(inv_prod == om.order, who + ": invariant factors do not multiply up");
    if (om.element_perms.empty()) return;
    expect(om.element_perms[0] == identity_permutation(rel.num_nodes),
           who + ": first omega element is not the identity");
    for (const auto& p : om.element_perms)
      expect(rel.is_automorphism(p), who + ": omega element is not a "
                                           "special-preserving automorphism");
    for (const auto& p : om.element_perms)
      for (const auto& r : om.element_perms) {
        auto pr = compose_permutations(p, r);
        expect(std::find(om.element_perms.begin(), om.element_perms.end(),
                         pr) != om.element_perms.end(),
               who + ": omega elements are not closed under composition");
      }
  };
  check_omega(e.omega, e.relative, "main");
  check_omega(e.companion.omega, e.companion.relative, "companion");
  expect(e.omega.element_perms == e.companion.omega.element_perms,
         "omega actions of main and companion differ");

  // The main/companion bijection: identity on node indices, preserving bonds
  // (arrows ignored), Frobenius actions, and special marks.
  expect(e.companion.bijection ==
             identity_permutation(e.local.diagram.num_nodes),
         "companion bijection is not the identity");
  expect(bijection_intertwines(e.local, e.companion.local,
                               e.companion.bijection, true),
         "companion bijection does not intertwine the local indices");

  // Torus polynomials: degree = local rank, positive at q = 2.
  auto check_torus = [&](const TorusData& t, const LocalIndex& li,
                         const std::string& who) {
    try {
      HalfLaurent p = t.order.as_laurent();
      expect(p.leading_exp() == 2 * (li.diagram.num_nodes - 1),
             who + ": torus order degree is not the local rank");
      expect(p.eval_q(Rat(2)) > 0, who + ": torus order not positive at q=2");
    } catch (const std::exception& ex) {
      bad.push_back(e.id() + ": " + who + ": torus order: " + ex.what());
    }
  };
  check_torus(e.torus, e.local, "main");
  check_torus(e.companion.torus, e.companion.local, "companion");
  expect(e.torus.order == e.companion.torus.order,
         "main and companion torus orders differ");

  for (int m : e.marked)
    expect(m >= 0 && m < e.local.diagram.num_nodes, "marked vertex range");
  expect(e.relevance_char == "trivial" || e.relevance_char == "order2",
         "unknown relevance character tag");
  return bad;
}

/**
 * Recomputes the omega group of the entry (and of its companion) from the
 * cocharacter lattices and compares order and invariant factors with the
 * stored data.  Returns problems (empty = verified).
 */
inline std::vector<std::string> verify_entry_omega(const CatalogEntry& e) {
  std::vector<std::string> bad;
  auto to_longs = [](const std::vector<Zint>& v) {
    std::vector<long> r;
    for (const auto& x : v) r.push_back(static_cast<long>(x.get_si()));
    return r;
  };
  try {
    std::vector<std::vector<int>> inertia;
    if (e.inertia_perm != identity_permutation(e.abs_rank))
      inertia.push_back(e.inertia_perm);
    OmegaGroup om = compute_omega(entry_root_datum(e), inertia, e.frob_perm);
    if (om.order() != e.omega.order)
      bad.push_back(e.id() + ": lattice omega order " + om.order().get_str() +
                    " != stored " + std::to_string(e.omega.order));
    else if (to_longs(om.invariants) != e.omega.invariants)
      bad.push_back(e.id() + ": lattice omega invariants differ");
  } catch (const std::exception& ex) {
    bad.push_back(e.id() + ": omega recomputation failed: " + ex.what());
  }
  try {
    BasedRootDatum crd = companion_root_datum(e);
    OmegaGroup om =
        compute_omega(crd, {}, identity_permutation(e.companion.abs_rank));
    Zint expected = om.order() * (e.companion.disconnected ? 2 : 1);
    if (expected != e.companion.omega.order)
      bad.push_back(e.id() + ": companion lattice omega order " +
                    expected.get_str() + " != stored " +
                    std::to_string(e.companion.omega.order));
  } catch (const std::exception& ex) {
    bad.push_back(e.id() + ": companion omega recomputation failed: " +
                  ex.what());
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Family builders
// ---------------------------------------------------------------------------

namespace catalog_detail {

/// Shared dual-group block for the even special-unitary families.
inline DualGroupData dual_for_even_su(int n, int d, long omega_order) {
  DualGroupData du;
  int two_n = 2 * n;
  bool both_even = d % 2 == 0 && (two_n / d) % 2 == 0;
  if (d % 2 == 1) {
    du.fixed_desc = "Sp(" + std::to_string(two_n) + ",C)";
    du.pi0 = 1;
  } else if (both_even) {
    du.fixed_desc = "PSp(" + std::to_string(two_n) + ",C)x{1,-1}";
    du.pi0 = 2;
  } else {
    du.fixed_desc = "PSp(" + std::to_string(two_n) + ",C)";
    du.pi0 = 1;
  }
  du.fixed_type = "C" + std::to_string(n);
  du.fixed_dim = n * (2 * n + 1);
  du.fixed_exponents = odd_exponents(n);
  du.a = 2 * n * n - n - 1;
  du.center_fixed_order = omega_order;
  return du;
}

/// Companion block for the even special-unitary families: an odd orthogonal
/// isogeny with the same affine diagram shape.
inline CompanionData companion_for_even_su(int n, int d, bool twisted) {
  CompanionData co;
  int two_n = 2 * n;
  bool both_even = d % 2 == 0 && (two_n / d) % 2 == 0;
  int nodes = n + 1;
  if (d % 2 == 1) {
    co.name = "SO(" + std::to_string(two_n + 1) + ")";
    co.lattice_tag = "ad";
  } else if (both_even) {
    co.name = "Spin(" + std::to_string(two_n + 1) + ")x{1,-1}";
    co.lattice_tag = "sc";
    co.disconnected = true;
  } else {
    co.name = "Spin(" + std::to_string(two_n + 1) + ")";
    co.lattice_tag = "sc";
  }
  co.abs_type = 'B';
  co.abs_rank = n;
  co.splitting_tag = twisted ? "unr2-inner" : "split";
  co.local.diagram = fork_chain_companion(n, "w");
  co.local.frobenius = twisted ? swap01_perm(nodes) : identity_permutation(nodes);
  co.relative = fold(co.local);
  co.bijection = identity_permutation(nodes);
  co.iwahori_params_twice = params_from_local(co.local);
  int rel_nodes = co.relative.num_nodes;
  if (d % 2 == 1) {
    co.omega = twisted ? omega_order2_trivial_action(rel_nodes)
                       : omega_order2(rel_nodes, swap01_perm(rel_nodes));
  } else if (both_even) {
    co.omega = omega_order2_trivial_action(rel_nodes);
  } else {
    co.omega = omega_trivial(rel_nodes);
  }
  co.torus = twisted ? torus_product(n - 1, 1, 0) : torus_product(n, 0, 0);
  return co;
}

inline std::string even_su_desc(int n, int d, bool twisted) {
  int two_n = 2 * n;
  int k = two_n / d;
  std::string base;
  if (k == 1)
    base = "SU(" + std::to_string(two_n) + ")";
  else if (k == two_n)
    base = "PU(" + std::to_string(two_n) + ")";
  else
    base = "SU(" + std::to_string(two_n) + ")/mu(" + std::to_string(k) + ")";
  return base + (twisted ? " (ramified, unramified-twisted)" : " (ramified)");
}

/// One entry of B-C_n (twisted = false) or 2B-C_n (twisted = true).
inline CatalogEntry build_even_su_entry(int n, int d, bool twisted) {
  CatalogEntry e;
  int two_n = 2 * n;
  int nodes = n + 1;
  e.family = twisted ? "2B-C" : "B-C";
  e.n = n;
  e.isogeny = "d=" + std::to_string(d);
  e.lattice_tag = e.isogeny;
  e.group_desc = even_su_desc(n, d, twisted);
  e.splitting_tag = twisted ? "ram2.unr2" : "ram2";
  e.abs_type = 'A';
  e.abs_rank = two_n - 1;
  e.dim_g = two_n * two_n - 1;
  e.marked = {0};
  e.inertia_perm = chain_flip(two_n - 1);
  e.frob_perm = twisted ? chain_flip(two_n - 1)
                        : identity_permutation(two_n - 1);
  e.local.diagram = fork_chain(n, "v");
  e.local.frobenius =
      twisted ? swap01_perm(nodes) : identity_permutation(nodes);
  e.relative = fold(e.local);
  e.rank_nr = e.relative.num_nodes - 1;
  e.orbit_map = e.local.orbits();
  e.iwahori_params_twice = params_from_local(e.local);
  bool even_quot = (two_n / d) % 2 == 0;
  bool both_even = d % 2 == 0 && even_quot;
  int rel_nodes = e.relative.num_nodes;
  if (!even_quot) {
    e.omega = omega_trivial(rel_nodes);
  } else if (d % 2 == 1 && !twisted) {
    e.omega = omega_order2(rel_nodes, swap01_perm(rel_nodes));
  } else {
    // Even-isogeny variants and all unramified-twisted variants act
    // trivially on the (folded) diagram.
    e.omega = omega_order2_trivial_action(rel_nodes);
  }
  (void)both_even;
  e.torus = twisted ? torus_product(n - 1, 1, 0) : torus_product(n, 0, 0);
  e.dual = dual_for_even_su(n, d, e.omega.order);
  e.companion = companion_for_even_su(n, d, twisted);
  e.relevance_char = twisted ? "order2" : "trivial";
  return e;
}

/// One entry of C-BC_n: odd ramified special unitary quotients.
inline CatalogEntry build_odd_su_entry(int n, int d) {
  CatalogEntry e;
  int N = 2 * n + 1;
  int nodes = n + 1;
  e.family = "C-BC";
  e.n = n;
  e.isogeny = "d=" + std::to_string(d);
  e.lattice_tag = e.isogeny;
  int k = N / d;
  if (k == 1)
    e.group_desc = "SU(" + std::to_string(N) + ") (ramified)";
  else if (k == N)
    e.group_desc = "PU(" + std::to_string(N) + ") (ramified)";
  else
    e.group_desc = "SU(" + std::to_string(N) + ")/mu(" + std::to_string(k) +
                   ") (ramified)";
  e.splitting_tag = "ram2";
  e.abs_type = 'A';
  e.abs_rank = N - 1;
  e.dim_g = (N - 1) * (N + 1);
  e.marked = {0};
  e.inertia_perm = chain_flip(N - 1);
  e.frob_perm = identity_permutation(N - 1);
  e.local.diagram = oneway_chain(n, "v");
  e.local.frobenius = identity_permutation(nodes);
  e.relative = fold(e.local);
  e.rank_nr = n;
  e.orbit_map = e.local.orbits();
  e.iwahori_params_twice = params_from_local(e.local);
  e.omega = omega_trivial(nodes);
  e.torus = torus_product(n, 0, 0);
  e.dual.fixed_desc = "SO(" + std::to_string(N) + ",C)";
  e.dual.fixed_type = "B" + std::to_string(n);
  e.dual.fixed_dim = n * (2 * n + 1);
  e.dual.fixed_exponents = odd_exponents(n);
  e.dual.pi0 = 1;
  e.dual.a = 2 * n * n + 3 * n;
  e.dual.center_fixed_order = 1;
  CompanionData co;
  co.name = "Sp(" + std::to_string(2 * n) + ")";
  co.splitting_tag = "split";
  co.abs_type = 'C';
  co.abs_rank = n;
  co.lattice_tag = "sc";
  co.local.diagram = inward_chain(n, "w");
  co.local.frobenius = identity_permutation(nodes);
  co.relative = fold(co.local);
  co.bijection = identity_permutation(nodes);
  co.iwahori_params_twice = params_from_local(co.local);
  co.omega = omega_trivial(nodes);
  co.torus = torus_product(n, 0, 0);
  e.companion = co;
  e.relevance_char = "trivial";
  return e;
}

/// Companion block for the even orthogonal families: a symplectic isogeny.
inline CompanionData companion_for_orthogonal(int rank_c, const std::string& iso,
                                              bool twisted) {
  // rank_c: symplectic rank (companion abs rank); diagram has rank_c+1 nodes.
  CompanionData co;
  int nodes = rank_c + 1;
  if (iso == "sc") {
    co.name = "Sp(" + std::to_string(2 * rank_c) + ")";
    co.lattice_tag = "sc";
  } else if (iso == "so") {
    co.name = "Sp(" + std::to_string(2 * rank_c) + ")x{1,-1}";
    co.lattice_tag = "sc";
    co.disconnected = true;
  } else {  // ad
    co.name = "PSp(" + std::to_string(2 * rank_c) + ")";
    co.lattice_tag = "ad";
  }
  co.abs_type = 'C';
  co.abs_rank = rank_c;
  co.splitting_tag = twisted ? "unr2-inner" : "split";
  co.local.diagram = inward_chain(rank_c, "w");
  co.local.frobenius =
      twisted ? chain_flip(nodes) : identity_permutation(nodes);
  co.relative = fold(co.local);
  co.bijection = identity_permutation(nodes);
  co.iwahori_params_twice = params_from_local(co.local);
  int rel_nodes = co.relative.num_nodes;
  if (iso == "sc") {
    co.omega = omega_trivial(rel_nodes);
  } else if (iso == "so") {
    co.omega = omega_order2_trivial_action(rel_nodes);
  } else {
    co.omega = twisted ? omega_order2_trivial_action(rel_nodes)
                       : omega_order2(rel_nodes, chain_flip(rel_nodes));
  }
  if (!twisted) {
    co.torus = torus_product(rank_c, 0, 0);
  } else {
    int m = rank_c + 1;  // local rank of the twisted diagram is m - 1
    co.torus = m % 2 == 0 ? torus_product(0, 1, m / 2 - 1)
                          : torus_product(0, 0, (m - 1) / 2);
  }
  return co;
}

inline DualGroupData dual_for_orthogonal(int rank_b, const std::string& iso,
                                         int dim_g, long omega_order) {
  DualGroupData du;
  int odd = 2 * rank_b + 1;
  if (iso == "sc") {
    du.fixed_desc = "SO(" + std::to_string(odd) + ",C)";
    du.pi0 = 1;
  } else if (iso == "so") {
    du.fixed_desc = "O(" + std::to_string(odd) + ",C)";
    du.pi0 = 2;
  } else {
    du.fixed_desc = "Spin(" + std::to_string(odd) + ",C)";
    du.pi0 = 1;
  }
  du.fixed_type = "B" + std::to_string(rank_b);
  du.fixed_dim = rank_b * (2 * rank_b + 1);
  du.fixed_exponents = odd_exponents(rank_b);
  du.a = dim_g - du.fixed_dim;
  du.center_fixed_order = omega_order;
  return du;
}

inline std::string orthogonal_desc(int even_dim, const std::string& iso,
                                   bool twisted) {
  std::string base = iso == "sc"   ? "Spin*"
                     : iso == "so" ? "SO*"
                                   : "PSO*";
  base += "(" + std::to_string(even_dim) + ")";
  return base + (twisted ? " (ramified, unramified-twisted)" : " (ramified)");
}

/// One entry of C-B_n: quasi-split ramified even orthogonal isogenies.
inline CatalogEntry build_orthogonal_entry(int n, const std::string& iso) {
  CatalogEntry e;
  int m = n + 1;  // absolute rank
  int nodes = n + 1;
  e.family = "C-B";
  e.n = n;
  e.isogeny = iso;
  e.lattice_tag = iso;
  e.group_desc = orthogonal_desc(2 * m, iso, false);
  e.splitting_tag = "ram2";
  e.abs_type = 'D';
  e.abs_rank = m;
  e.dim_g = m * (2 * m - 1);
  e.inertia_perm = fork_swap(m);
  e.frob_perm = identity_permutation(m);
  e.local.diagram = outward_chain(n, "v");
  e.local.frobenius = identity_permutation(nodes);
  e.relative = fold(e.local);
  e.rank_nr = n;
  e.orbit_map = e.local.orbits();
  e.iwahori_params_twice = params_from_local(e.local);
  if (iso == "sc") {
    e.omega = omega_trivial(nodes);
  } else if (iso == "so") {
    e.omega = omega_order2_trivial_action(nodes);
  } else {
    e.omega = omega_order2(nodes, chain_flip(nodes));
  }
  e.torus = torus_product(n, 0, 0);
  e.dual = dual_for_orthogonal(n, iso, e.dim_g, e.omega.order);
  e.companion = companion_for_orthogonal(n, iso, false);
  e.relevance_char = "trivial";
  return e;
}

/// One entry of 2C-B_m: unramified-twisted ramified even orthogonal
/// isogenies; subscript m is the absolute rank (m >= 3).
inline CatalogEntry build_twisted_orthogonal_entry(int m,
                                                   const std::string& iso) {
  CatalogEntry e;
  int nodes = m;  // local diagram has m nodes (rank m - 1 chain shape)
  e.family = "2C-B";
  e.n = m;
  e.isogeny = iso;
  e.lattice_tag = iso;
  e.group_desc = orthogonal_desc(2 * m, iso, true);
  e.splitting_tag = "ram2.unr2";
  e.abs_type = 'D';
  e.abs_rank = m;
  e.dim_g = m * (2 * m - 1);
  e.inertia_perm = fork_swap(m);
  e.frob_perm = fork_swap(m);
  e.local.diagram = outward_chain(m - 1, "v");
  e.local.frobenius = chain_flip(nodes);
  e.relative = fold(e.local);
  e.rank_nr = e.relative.num_nodes - 1;
  e.orbit_map = e.local.orbits();
  e.iwahori_params_twice = params_from_local(e.local);
  int rel_nodes = e.relative.num_nodes;
  if (iso == "sc") {
    e.omega = omega_trivial(rel_nodes);
  } else {
    e.omega = omega_order2_trivial_action(rel_nodes);
  }
  e.torus = m % 2 == 0 ? torus_product(0, 1, m / 2 - 1)
                       : torus_product(0, 0, (m - 1) / 2);
  e.dual = dual_for_orthogonal(m - 1, iso, e.dim_g, e.omega.order);
  e.companion = companion_for_orthogonal(m - 1, iso, true);
  e.relevance_char = "order2";
  return e;
}

inline CatalogEntry build_f4_entry(const std::string& iso) {
  CatalogEntry e;
  e.family = "F4^I";
  e.n = 0;
  e.isogeny = iso;
  e.lattice_tag = iso;
  e.group_desc = std::string("ramified outer form of E6 (") +
                 (iso == "sc" ? "simply connected" : "adjoint") + ")";
  e.splitting_tag = "ram2";
  e.abs_type = 'E';
  e.abs_rank = 6;
  e.dim_g = 78;
  e.inertia_perm = e6_flip();
  e.frob_perm = identity_permutation(6);
  e.local.diagram = f4_index("v");
  e.local.frobenius = identity_permutation(5);
  e.relative = fold(e.local);
  e.rank_nr = 4;
  e.orbit_map = e.local.orbits();
  e.iwahori_params_twice = params_from_local(e.local);
  e.omega = omega_trivial(5);
  e.torus = torus_product(4, 0, 0);
  e.dual.fixed_desc = "F4(C)";
  e.dual.fixed_type = "F4";
  e.dual.fixed_dim = 52;
  e.dual.fixed_exponents = {1, 5, 7, 11};
  e.dual.pi0 = 1;
  e.dual.a = 26;
  e.dual.center_fixed_order = 1;
  CompanionData co;
  co.name = "F4";
  co.splitting_tag = "split";
  co.abs_type = 'F';
  co.abs_rank = 4;
  co.lattice_tag = "sc";
  co.local.diagram = f4_companion_index("w");
  co.local.frobenius = identity_permutation(5);
  co.relative = fold(co.local);
  co.bijection = identity_permutation(5);
  co.iwahori_params_twice = params_from_local(co.local);
  co.omega = omega_trivial(5);
  co.torus = torus_product(4, 0, 0);
  e.companion = co;
  e.relevance_char = "trivial";
  return e;
}

inline CatalogEntry build_g2_entry(const std::string& iso) {
  CatalogEntry e;
  e.family = "G2^I";
  e.n = 0;
  e.isogeny = iso;
  e.lattice_tag = iso;
  e.group_desc = std::string("ramified triality form of D4 (") +
                 (iso == "sc" ? "simply connected" : "adjoint") + ")";
  e.splitting_tag = "ram3";
  e.r_tag = "3|6";
  e.abs_type = 'D';
  e.abs_rank = 4;
  e.dim_g = 28;
  e.inertia_perm = triality_rotation();
  e.frob_perm = identity_permutation(4);
  e.local.diagram = g2_index("v");
  e.local.frobenius = identity_permutation(3);
  e.relative = fold(e.local);
  e.rank_nr = 2;
  e.orbit_map = e.local.orbits();
  e.iwahori_params_twice = params_from_local(e.local);
  e.omega = omega_trivial(3);
  e.torus = torus_product(2, 0, 0);
  e.dual.fixed_desc = "G2(C)";
  e.dual.fixed_type = "G2";
  e.dual.fixed_dim = 14;
  e.dual.fixed_exponents = {1, 5};
  e.dual.pi0 = 1;
  e.dual.a = 14;
  e.dual.center_fixed_order = 1;
  CompanionData co;
  co.name = "G2";
  co.splitting_tag = "split";
  co.abs_type = 'G';
  co.abs_rank = 2;
  co.lattice_tag = "sc";
  co.local.diagram = g2_companion_index("w");
  co.local.frobenius = identity_permutation(3);
  co.relative = fold(co.local);
  co.bijection = identity_permutation(3);
  co.iwahori_params_twice = params_from_local(co.local);
  co.omega = omega_trivial(3);
  co.torus = torus_product(2, 0, 0);
  e.companion = co;
  e.relevance_char = "trivial";
  return e;
}

}  // namespace catalog_detail

/// Builds the full built-in catalog (deterministic order) and runs the
/// structural self-checks; throws std::logic_error when any check fails.
inline Catalog build_catalog() {
  using namespace catalog_detail;
  Catalog cat;
  cat.version = 1;
  for (int n = 2; n <= 8; ++n)
    for (int d = 1; d <= 2 * n; ++d)
      if ((2 * n) % d == 0)
        cat.entries.push_back(build_even_su_entry(n, d, false));
  for (int n = 1; n <= 8; ++n)
    for (int d = 1; d <= 2 * n + 1; ++d)
      if ((2 * n + 1) % d == 0) cat.entries.push_back(build_odd_su_entry(n, d));
  for (int n = 2; n <= 8; ++n)
    for (const char* iso : {"sc", "so", "ad"})
      cat.entries.push_back(build_orthogonal_entry(n, iso));
  for (int n = 2; n <= 8; ++n)
    for (int d = 1; d <= 2 * n; ++d)
      if ((2 * n) % d == 0)
        cat.entries.push_back(build_even_su_entry(n, d, true));
  for (int m = 3; m <= 8; ++m)
    for (const char* iso : {"sc", "so", "ad"})
      cat.entries.push_back(build_twisted_orthogonal_entry(m, iso));
  for (const char* iso : {"sc", "ad"})
    cat.entries.push_back(build_f4_entry(iso));
  for (const char* iso : {"sc", "ad"})
    cat.entries.push_back(build_g2_entry(iso));

  std::vector<std::string> bad;
  for (const auto& e : cat.entries) {
    auto p = entry_structural_problems(e);
    bad.insert(bad.end(), p.begin(), p.end());
  }
  if (!bad.empty()) {
    std::string msg = "catalog self-check failed:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw std::logic_error(msg);
  }
  return cat;
}

/// The built-in catalog, constructed once.
inline const Catalog& builtin_catalog() {
  static const Catalog cat = build_catalog();
  return cat;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace catalog_detail {

using ojson = nlohmann::ordered_json;

inline ojson omega_to_json(const OmegaData& om) {
  ojson j;
  j["order"] = om.order;
  j["invariants"] = om.invariants;
  j["element_perms"] = om.element_perms;
  return j;
}

inline OmegaData omega_from_json(const ojson& j) {
  OmegaData om;
  om.order = j.at("order").get<long>();
  om.invariants = j.at("invariants").get<std::vector<long>>();
  om.element_perms =
      j.at("element_perms").get<std::vector<std::vector<int>>>();
  return om;
}

inline ojson torus_to_json(const TorusData& t) {
  ojson j;
  j["shape"] = t.shape;
  j["order"] = t.order.render_q();
  return j;
}

inline TorusData torus_from_json(const ojson& j) {
  TorusData t;
  t.shape = j.at("shape").get<std::string>();
  t.order = RationalFunction::parse(j.at("order").get<std::string>());
  return t;
}

inline ojson entry_to_json(const CatalogEntry& e) {
  ojson j;
  j["id"] = e.id();
  j["family"] = e.family;
  j["n"] = e.n;
  j["isogeny"] = e.isogeny;
  j["lattice"] = e.lattice_tag;
  j["group"] = e.group_desc;
  j["splitting"] = e.splitting_tag;
  j["r_tag"] = e.r_tag;
  j["absolute_type"] = std::string(1, e.abs_type);
  j["absolute_rank"] = e.abs_rank;
  j["dim_g"] = e.dim_g;
  j["rank_nr"] = e.rank_nr;
  j["marked"] = e.marked;
  j["inertia_perm"] = e.inertia_perm;
  j["frob_perm"] = e.frob_perm;
  j["local"] = e.local.render_text();
  j["relative"] = e.relative.render_text();
  j["orbit_map"] = e.orbit_map;
  j["iwahori_params_twice"] = e.iwahori_params_twice;
  j["omega"] = omega_to_json(e.omega);
  j["torus"] = torus_to_json(e.torus);
  ojson du;
  du["fixed_desc"] = e.dual.fixed_desc;
  du["fixed_type"] = e.dual.fixed_type;
  du["fixed_dim"] = e.dual.fixed_dim;
  du["fixed_exponents"] = e.dual.fixed_exponents;
  du["pi0"] = e.dual.pi0;
  du["a"] = e.dual.a;
  du["center_fixed_order"] = e.dual.center_fixed_order;
  j["dual"] = du;
  ojson co;
  co["name"] = e.companion.name;
  co["splitting"] = e.companion.splitting_tag;
  co["absolute_type"] = std::string(1, e.companion.abs_type);
  co["absolute_rank"] = e.companion.abs_rank;
  co["lattice"] = e.companion.lattice_tag;
  co["disconnected"] = e.companion.disconnected;
  co["local"] = e.companion.local.render_text();
  co["relative"] = e.companion.relative.render_text();
  co["bijection"] = e.companion.bijection;
  co["iwahori_params_twice"] = e.companion.iwahori_params_twice;
  co["omega"] = omega_to_json(e.companion.omega);
  co["torus"] = torus_to_json(e.companion.torus);
  j["companion"] = co;
  j["relevance_char"] = e.relevance_char;
  return j;
}

inline CatalogEntry entry_from_json(const ojson& j) {
  CatalogEntry e;
  e.family = j.at("family").get<std::string>();
  e.n = j.at("n").get<int>();
  e.isogeny = j.at("isogeny").get<std::string>();
  e.lattice_tag = j.at("lattice").get<std::string>();
  e.group_desc = j.at("group").get<std::string>();
  e.splitting_tag = j.at("splitting").get<std::string>();
  e.r_tag = j.at("r_tag").get<std::string>();
  e.abs_type = j.at("absolute_type").get<std::string>().at(0);
  e.abs_rank = j.at("absolute_rank").get<int>();
  e.dim_g = j.at("dim_g").get<int>();
  e.rank_nr = j.at("rank_nr").get<int>();
  e.marked = j.at("marked").get<std::vector<int>>();
  e.inertia_perm = j.at("inertia_perm").get<std::vector<int>>();
  e.frob_perm = j.at("frob_perm").get<std::vector<int>>();
  e.local = LocalIndex::parse_text(j.at("local").get<std::string>());
  e.relative = AffineDiagram::parse_text(j.at("relative").get<std::string>());
  e.orbit_map = j.at("orbit_map").get<std::vector<std::vector<int>>>();
  e.iwahori_params_twice =
      j.at("iwahori_params_twice").get<std::vector<long>>();
  e.omega = omega_from_json(j.at("omega"));
  e.torus = torus_from_json(j.at("torus"));
  const ojson& du = j.at("dual");
  e.dual.fixed_desc = du.at("fixed_desc").get<std::string>();
  e.dual.fixed_type = du.at("fixed_type").get<std::string>();
  e.dual.fixed_dim = du.at("fixed_dim").get<int>();
  e.dual.fixed_exponents = du.at("fixed_exponents").get<std::vector<int>>();
  e.dual.pi0 = du.at("pi0").get<int>();
  e.dual.a = du.at("a").get<int>();
  e.dual.center_fixed_order = du.at("center_fixed_order").get<long>();
  const ojson& co = j.at("companion");
  e.companion.name = co.at("name").get<std::string>();
  e.companion.splitting_tag = co.at("splitting").get<std::string>();
  e.companion.abs_type = co.at("absolute_type").get<std::string>().at(0);
  e.companion.abs_rank = co.at("absolute_rank").get<int>();
  e.companion.lattice_tag = co.at("lattice").get<std::string>();
  e.companion.disconnected = co.at("disconnected").get<bool>();
  e.companion.local = LocalIndex::parse_text(co.at("local").get<std::string>());
  e.companion.relative =
      AffineDiagram::parse_text(co.at("relative").get<std::string>());
  e.companion.bijection = co.at("bijection").get<std::vector<int>>();
  e.companion.iwahori_params_twice =
      co.at("iwahori_params_twice").get<std::vector<long>>();
  e.companion.omega = omega_from_json(co.at("omega"));
  e.companion.torus = torus_from_json(co.at("torus"));
  e.relevance_char = j.at("relevance_char").get<std::string>();
  return e;
}

}  // namespace catalog_detail

/// Canonical JSON form of a catalog (stable field order, 2-space indent,
/// trailing newline).
inline std::string catalog_to_json(const Catalog& cat) {
  catalog_detail::ojson j;
  j["format"] = "unillc-catalog";
  j["version"] = cat.version;
  j["entries"] = catalog_detail::ojson::array();
  for (const auto& e : cat.entries)
    j["entries"].push_back(catalog_detail::entry_to_json(e));
  return j.dump(2) + "\n";
}

/// Parses a catalog from JSON text and re-runs the structural self-checks.
inline Catalog catalog_from_json(const std::string& text) {
  catalog_detail::ojson j;
  try {
    j = catalog_detail::ojson::parse(text);
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("catalog JSON parse error: ") +
                                ex.what());
  }
  try {
    if (j.at("format").get<std::string>() != "unillc-catalog")
      throw std::invalid_argument("catalog JSON: unknown format tag");
    Catalog cat;
    cat.version = j.at("version").get<int>();
    std::vector<std::string> bad;
    for (const auto& je : j.at("entries")) {
      CatalogEntry e = catalog_detail::entry_from_json(je);
      auto p = entry_structural_problems(e);
      bad.insert(bad.end(), p.begin(), p.end());
      cat.entries.push_back(std::move(e));
    }
    if (!bad.empty()) {
      std::string msg = "catalog file failed self-checks:";
      for (const auto& b : bad) msg += "\n  " + b;
      throw std::invalid_argument(msg);
    }
    return cat;
  } catch (const catalog_detail::ojson::exception& ex) {
    throw std::invalid_argument(std::string("catalog JSON structure error: ") +
                                ex.what());
  }
}

// ---------------------------------------------------------------------------
// Lookup
// ---------------------------------------------------------------------------

/// Canonical family name of a user-supplied alias (case-insensitive; hyphens
/// optional; "^I" optional for the exceptional families).  Throws on unknown
/// names.
inline std::string normalize_family(const std::string& raw) {
  std::string s;
  for (char c : raw)
    s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  static const std::map<std::string, std::string> table = {
      {"B-C", "B-C"},   {"BC", "B-C"},     {"C-BC", "C-BC"},
      {"CBC", "C-BC"},  {"C-B", "C-B"},    {"CB", "C-B"},
      {"2B-C", "2B-C"}, {"2BC", "2B-C"},   {"2C-B", "2C-B"},
      {"2CB", "2C-B"},  {"F4^I", "F4^I"},  {"F4I", "F4^I"},
      {"F4", "F4^I"},   {"G2^I", "G2^I"},  {"G2I", "G2^I"},
      {"G2", "G2^I"},
  };
  auto it = table.find(s);
  if (it == table.end())
    throw std::invalid_argument("unknown family '" + raw + "'");
  return it->second;
}

/// Canonical isogeny tag for a family member: "ad" and "sc" translate to the
/// d-tags for the special unitary families; "d=<k>" and "sc"/"so"/"ad" pass
/// through after validation.
inline std::string normalize_isogeny(const std::string& family, int n,
                                     const std::string& raw) {
  bool a_family = family == "B-C" || family == "C-BC" || family == "2B-C";
  if (a_family) {
    int big = family == "C-BC" ? 2 * n + 1 : 2 * n;
    std::string tag = raw;
    if (raw == "ad") tag = "d=1";
    if (raw == "sc") tag = "d=" + std::to_string(big);
    if (tag.rfind("d=", 0) != 0)
      throw std::invalid_argument("isogeny '" + raw + "' is not valid for " +
                                  family);
    int d = AffineDiagram::parse_int(tag.substr(2));
    if (d < 1 || big % d != 0)
      throw std::invalid_argument("isogeny '" + raw + "': d must divide " +
                                  std::to_string(big));
    return tag;
  }
  bool d_family = family == "C-B" || family == "2C-B";
  if (d_family) {
    if (raw == "sc" || raw == "so" || raw == "ad") return raw;
    throw std::invalid_argument("isogeny '" + raw + "' is not valid for " +
                                family);
  }
  if (raw == "sc" || raw == "ad") return raw;
  throw std::invalid_argument("isogeny '" + raw + "' is not valid for " +
                              family);
}

/// Splits an entry token like "C-BC_2" into family alias and subscript; the
/// subscript is std::nullopt when absent ("F4^I").
inline std::pair<std::string, std::optional<int>> parse_entry_token(
    const std::string& token) {
  auto pos = token.rfind('_');
  if (pos != std::string::npos && pos + 1 < token.size()) {
    bool digits = true;
    for (std::size_t i = pos + 1; i < token.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(token[i]));
    if (digits)
      return {token.substr(0, pos),
              AffineDiagram::parse_int(token.substr(pos + 1))};
  }
  return {token, std::nullopt};
}

/// All entries matching a token (family or family_subscript) and an optional
/// isogeny tag.
inline std::vector<const CatalogEntry*> match_entries(
    const Catalog& cat, const std::string& token,
    const std::optional<std::string>& isogeny = std::nullopt) {
  auto [fam_raw, sub] = parse_entry_token(token);
  std::string family = normalize_family(fam_raw);
  std::vector<const CatalogEntry*> out;
  for (const auto& e : cat.entries) {
    if (e.family != family) continue;
    if (sub && e.n != *sub) continue;
    if (isogeny && e.isogeny != normalize_isogeny(family, e.n, *isogeny))
      continue;
    out.push_back(&e);
  }
  if (out.empty())
    throw std::invalid_argument("no catalog entry matches '" + token + "'" +
                                (isogeny ? " with isogeny '" + *isogeny + "'"
                                         : ""));
  return out;
}

/// The unique entry for family/subscript/isogeny; throws when absent.
inline const CatalogEntry& find_entry(const Catalog& cat,
                                      const std::string& family_token, int n,
                                      const std::string& isogeny) {
  std::string family = normalize_family(family_token);
  std::string iso = normalize_isogeny(family, n, isogeny);
  for (const auto& e : cat.entries)
    if (e.family == family && e.n == n && e.isogeny == iso) return e;
  throw std::invalid_argument("no catalog entry " + family + "_" +
                              std::to_string(n) + "[" + iso + "]");
}

/// Transfers a facet of the entry's relative diagram to the companion's
/// relative diagram (the stored bijections are identities on node indices,
/// so this validates and returns the same node set).
inline Facet transfer_facet(const CatalogEntry& e, const Facet& f) {
  validate_facet(e.relative, f);
  if (e.relative.num_nodes != e.companion.relative.num_nodes)
    throw std::logic_error("transfer_facet: node count mismatch");
  return f;
}

}  // namespace unillc
