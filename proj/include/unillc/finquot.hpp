#pragma once

/**
 * Reductive quotients attached to facets.
 *
 * A facet of the relative diagram lifts to a Frobenius-stable subset of the
 * local index.  The induced subdiagram decomposes into components of finite
 * type; Frobenius permutes the components and may twist those it fixes.  The
 * group of residue-field points is the product of one order polynomial per
 * component orbit and the order of a central torus, obtained from the
 * family's full torus order by exact division.
 */

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "unillc/catalog.hpp"
#include "unillc/diagram.hpp"
#include "unillc/omega.hpp"
#include "unillc/rational_function.hpp"

namespace unillc {

// ---------------------------------------------------------------------------
// Finite-type order polynomials
// ---------------------------------------------------------------------------

/// Degrees of the invariant polynomials of the Weyl group.
inline std::vector<int> weyl_degrees(char type, int rank) {
  std::vector<int> d;
  switch (type) {
    case 'A':
      for (int i = 2; i <= rank + 1; ++i) d.push_back(i);
      return d;
    case 'B':
    case 'C':
      for (int i = 1; i <= rank; ++i) d.push_back(2 * i);
      return d;
    case 'D':
      if (rank < 2) break;
      for (int i = 1; i <= rank - 1; ++i) d.push_back(2 * i);
      d.push_back(rank);
      return d;
    case 'G':
      if (rank != 2) break;
      return {2, 6};
    case 'F':
      if (rank != 4) break;
      return {2, 6, 8, 12};
    case 'E':
      if (rank == 6) return {2, 5, 6, 8, 9, 12};
      break;
    default:
      break;
  }
  throw std::invalid_argument(std::string("weyl_degrees: unsupported type ") +
                              type + std::to_string(rank));
}

/// Number of positive roots.
inline int num_positive_roots(char type, int rank) {
  switch (type) {
    case 'A': return rank * (rank + 1) / 2;
    case 'B':
    case 'C': return rank * rank;
    case 'D': return rank * (rank - 1);
    case 'G': return 6;
    case 'F': return 24;
    case 'E':
      if (rank == 6) return 36;
      break;
    default: break;
  }
  throw std::invalid_argument(
      std::string("num_positive_roots: unsupported type ") + type +
      std::to_string(rank));
}

enum class TwistKind { None, Quadratic, Cubic };

/**
 * Order of the group of F_{q^scale} points of a finite-type group with the
 * given twist, as a polynomial in q.  Untwisted: q^N prod (q^{d_i} - 1).
 * Quadratic twists: type A gains signs (-1)^{d_i}; type D flips the sign on
 * the degree-`rank` factor.  The cubic twist exists for D4 only.
 */
inline RationalFunction finite_group_order(char type, int rank,
                                           TwistKind twist, int scale = 1) {
  if (scale < 1) throw std::invalid_argument("finite_group_order: scale");
  HalfLaurent poly = HalfLaurent::q_pow(num_positive_roots(type, rank));
  if (twist == TwistKind::None) {
    for (int d : weyl_degrees(type, rank))
      poly = poly * (HalfLaurent::q_pow(d) - HalfLaurent::one());
  } else if (twist == TwistKind::Quadratic && type == 'A') {
    for (int d : weyl_degrees(type, rank)) {
      HalfLaurent sign(d % 2 == 0 ? -1 : 1);  // minus (-1)^d
      poly = poly * (HalfLaurent::q_pow(d) + sign);
    }
  } else if (twist == TwistKind::Quadratic && type == 'D') {
    if (rank < 2)
      throw std::invalid_argument("finite_group_order: quadratic D twist");
    for (int i = 1; i <= rank - 1; ++i)
      poly = poly * (HalfLaurent::q_pow(2 * i) - HalfLaurent::one());
    poly = poly * (HalfLaurent::q_pow(rank) + HalfLaurent::one());
  } else if (twist == TwistKind::Cubic && type == 'D' && rank == 4) {
    poly = HalfLaurent::q_pow(12) *
           (HalfLaurent::q_pow(2) - HalfLaurent::one()) *
           (HalfLaurent::q_pow(8) + HalfLaurent::q_pow(4) +
            HalfLaurent::one()) *
           (HalfLaurent::q_pow(6) - HalfLaurent::one());
  } else {
    throw std::invalid_argument("finite_group_order: unsupported twist");
  }
  return RationalFunction(poly.exponents_scaled(scale));
}

// ---------------------------------------------------------------------------
// Component classification
// ---------------------------------------------------------------------------

struct FiniteComponent {
  char type = 'A';
  int rank = 0;
  std::vector<int> nodes;  // original local node ids, in diagram order: for
                           // chains an end-to-end walk, for forks the two
                           // short legs first, then the long branch
  friend bool operator==(const FiniteComponent&,
                         const FiniteComponent&) = default;
};

/**
 * Classifies one connected component of an induced subdiagram of `d` as a
 * finite type.  Components of proper subdiagrams are chains (types A, B, C,
 * F4, G2) or single-branch forks (type D); anything else is rejected.
 */
inline FiniteComponent classify_component(const AffineDiagram& d,
                                          const std::vector<int>& nodes) {
  FiniteComponent c;
  c.nodes = nodes;
  int k = static_cast<int>(nodes.size());
  c.rank = k;
  if (k == 1) {
    c.type = 'A';
    return c;
  }
  auto in_set = [&](int v) {
    return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
  };
  auto degree_in = [&](int v) {
    int deg = 0;
    for (int w : d.neighbors(v))
      if (in_set(w)) ++deg;
    return deg;
  };
  std::vector<int> branch_nodes;  // nodes of degree >= 3
  for (int v : nodes)
    if (degree_in(v) >= 3) branch_nodes.push_back(v);
  if (branch_nodes.size() > 1)
    throw std::invalid_argument("classify_component: multiple branch nodes");

  if (branch_nodes.size() == 1) {
    int center = branch_nodes[0];
    if (degree_in(center) != 3)
      throw std::invalid_argument("classify_component: branch degree > 3");
    // Walk the three branches; all bonds must be single.
    std::vector<std::vector<int>> branches;
    for (int w : d.neighbors(center)) {
      if (!in_set(w)) continue;
      std::vector<int> branch = {w};
      int prev = center, cur = w;
      while (true) {
        if (d.bond(prev, cur) != 1)
          throw std::invalid_argument(
              "classify_component: multiple bond at a fork");
        int next = -1;
        for (int x : d.neighbors(cur)) {
          if (!in_set(x) || x == prev) continue;
          if (next != -1)
            throw std::invalid_argument(
                "classify_component: branch is not a chain");
          next = x;
        }
        if (next == -1) break;
        branch.push_back(next);
        prev = cur;
        cur = next;
      }
      branches.push_back(std::move(branch));
    }
    std::sort(branches.begin(), branches.end(),
              [](const auto& a, const auto& b) {
                return a.size() != b.size() ? a.size() < b.size()
                                            : a.front() < b.front();
              });
    if (branches.size() != 3 || branches[0].size() != 1 ||
        branches[1].size() != 1)
      throw std::invalid_argument(
          "classify_component: fork shape is not of orthogonal type");
    c.type = 'D';
    c.nodes = {branches[0][0], branches[1][0], center};
    for (int v : branches[2]) c.nodes.push_back(v);
    if (k != static_cast<int>(c.nodes.size()))
      throw std::logic_error("classify_component: fork node count");
    return c;
  }

  // A chain: find an endpoint and walk it.
  int start = -1;
  for (int v : nodes)
    if (degree_in(v) <= 1) start = std::max(start, v);
  if (start == -1)
    throw std::invalid_argument("classify_component: component has a cycle");
  std::vector<int> walk = {start};
  int prev = -1, cur = start;
  while (static_cast<int>(walk.size()) < k) {
    int next = -1;
    for (int w : d.neighbors(cur)) {
      if (!in_set(w) || w == prev) continue;
      if (next != -1)
        throw std::invalid_argument("classify_component: not a chain");
      next = w;
    }
    if (next == -1)
      throw std::invalid_argument("classify_component: disconnected input");
    walk.push_back(next);
    prev = cur;
    cur = next;
  }

  // Locate multiple bonds along the walk.
  int multiple_at = -1;  // index i: bond between walk[i], walk[i+1]
  int multiple_bond = 0;
  for (int i = 0; i + 1 < k; ++i) {
    int b = d.bond(walk[i], walk[i + 1]);
    if (b >= 4)
      throw std::invalid_argument(
          "classify_component: unbounded bond inside a finite component");
    if (b >= 2) {
      if (multiple_at != -1)
        throw std::invalid_argument(
            "classify_component: several multiple bonds");
      multiple_at = i;
      multiple_bond = b;
    }
  }
  if (multiple_at == -1) {
    c.type = 'A';
    c.nodes = walk;
    return c;
  }
  if (multiple_bond == 3) {
    if (k != 2)
      throw std::invalid_argument("classify_component: triple bond rank");
    c.type = 'G';
    c.nodes = walk;
    return c;
  }
  bool at_end = multiple_at == 0 || multiple_at == k - 2;
  if (!at_end) {
    if (k != 4 || multiple_at != 1)
      throw std::invalid_argument(
          "classify_component: interior double bond is not of F4 shape");
    c.type = 'F';
    c.nodes = walk;
    return c;
  }
  // Orient the walk so the double bond sits at the far end.
  if (multiple_at == 0) std::reverse(walk.begin(), walk.end());
  const DiagramEdge* e = d.find_edge(walk[k - 2], walk[k - 1]);
  if (e == nullptr || e->arrow_to < 0)
    throw std::logic_error("classify_component: missing arrow");
  // Arrow toward the chain end: short last root (odd orthogonal shape);
  // arrow inward: long last root (symplectic shape).
  c.type = e->arrow_to == walk[k - 1] ? 'B' : 'C';
  c.nodes = walk;
  return c;
}

// ---------------------------------------------------------------------------
// Reductive quotients
// ---------------------------------------------------------------------------

struct ComponentOrbit {
  FiniteComponent rep;
  int orbit_size = 1;
  TwistKind twist = TwistKind::None;
  std::vector<std::vector<int>> members;  // component node sets in the orbit
  RationalFunction order;                 // residue-point count of the orbit
};

struct ReductiveQuotient {
  Facet facet;                    // relative facet
  std::vector<int> lifted_nodes;  // Frobenius-stable local node set
  std::vector<ComponentOrbit> orbits;
  RationalFunction central_torus_order;
  RationalFunction order;  // full residue-point count
  int dim = 0;
  int rank = 0;  // reductive rank, equal to the local rank
};

namespace finquot_detail {

/// The twist Frobenius induces on a component it fixes setwise, classified
/// by the order of the restricted permutation.
inline TwistKind component_twist(const FiniteComponent& c,
                                 const std::vector<int>& frob) {
  int order = 1;
  for (int v : c.nodes) {
    int len = 1, cur = frob[v];
    while (cur != v) {
      cur = frob[cur];
      ++len;
    }
    order = std::lcm(order, len);
  }
  if (order == 1) return TwistKind::None;
  if (order == 2 && (c.type == 'A' || c.type == 'D'))
    return TwistKind::Quadratic;
  if (order == 3 && c.type == 'D' && c.rank == 4) return TwistKind::Cubic;
  throw std::invalid_argument(
      "component_twist: twisted component of unsupported type");
}

}  // namespace finquot_detail

/**
 * The reductive quotient for a facet of the folded diagram: lifts the facet
 * along the orbit map, classifies the component orbits, and assembles the
 * order polynomial.  `full_torus` is the residue torus order at the smallest
 * facet; the central torus is its exact quotient by one cyclotomic factor per
 * Frobenius node-cycle in the lift.
 */
inline ReductiveQuotient reductive_quotient(
    const LocalIndex& li, const std::vector<std::vector<int>>& orbit_map,
    const RationalFunction& full_torus, const Facet& relative_facet) {
  const AffineDiagram& d = li.diagram;
  if (static_cast<int>(orbit_map.size()) == 0)
    throw std::invalid_argument("reductive_quotient: empty orbit map");
  ReductiveQuotient rq;
  rq.facet = relative_facet;
  rq.rank = d.num_nodes - 1;

  // Lift the facet to a Frobenius-stable local node set.
  for (int j : relative_facet) {
    if (j < 0 || j >= static_cast<int>(orbit_map.size()))
      throw std::invalid_argument("reductive_quotient: facet node range");
    for (int v : orbit_map[j]) rq.lifted_nodes.push_back(v);
  }
  std::sort(rq.lifted_nodes.begin(), rq.lifted_nodes.end());
  if (std::adjacent_find(rq.lifted_nodes.begin(), rq.lifted_nodes.end()) !=
      rq.lifted_nodes.end())
    throw std::invalid_argument("reductive_quotient: duplicate facet node");
  if (rq.lifted_nodes.size() >= static_cast<std::size_t>(d.num_nodes))
    throw std::invalid_argument("reductive_quotient: facet is not proper");

  // Components and their Frobenius orbits.
  std::vector<std::vector<int>> comps = d.components(rq.lifted_nodes);
  std::vector<bool> used(comps.size(), false);
  auto image_of = [&](const std::vector<int>& nodes) {
    std::vector<int> img;
    for (int v : nodes) img.push_back(li.frobenius[v]);
    std::sort(img.begin(), img.end());
    return img;
  };
  auto find_comp = [&](const std::vector<int>& nodes) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i] == nodes) return i;
    throw std::logic_error("reductive_quotient: Frobenius image escapes");
  };
  int roots_total = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (used[i]) continue;
    ComponentOrbit orbit;
    std::vector<int> cur = comps[i];
    while (true) {
      std::size_t idx = find_comp(cur);
      if (used[idx]) break;
      used[idx] = true;
      orbit.members.push_back(comps[idx]);
      cur = image_of(comps[idx]);
    }
    orbit.orbit_size = static_cast<int>(orbit.members.size());
    orbit.rep = classify_component(d, orbit.members.front());
    if (orbit.orbit_size == 1) {
      orbit.twist = finquot_detail::component_twist(orbit.rep, li.frobenius);
    } else {
      // Frobenius to the orbit_size returns each member to itself; for the
      // order-two Frobenius actions stored in the catalog that power is the
      // identity, so the orbit carries no residual twist.
      orbit.twist = TwistKind::None;
    }
    orbit.order = finite_group_order(orbit.rep.type, orbit.rep.rank,
                                     orbit.twist, orbit.orbit_size);
    roots_total +=
        orbit.orbit_size * 2 * num_positive_roots(orbit.rep.type,
                                                  orbit.rep.rank);
    rq.orbits.push_back(std::move(orbit));
  }

  // Central torus: divide the full torus order by one factor q^len - 1 per
  // Frobenius node-cycle inside the lift.
  RationalFunction cyc = RationalFunction::one();
  {
    std::vector<bool> seen(d.num_nodes, false);
    for (int v : rq.lifted_nodes) {
      if (seen[v]) continue;
      int len = 0, cur = v;
      do {
        seen[cur] = true;
        ++len;
        cur = li.frobenius[cur];
      } while (cur != v);
      cyc = cyc * (RationalFunction::q_pow(len) - RationalFunction::one());
    }
  }
  rq.central_torus_order = full_torus / cyc;
  HalfLaurent central;
  try {
    central = rq.central_torus_order.as_laurent();
  } catch (const std::domain_error&) {
    throw std::logic_error(
        "reductive_quotient: torus order division is not exact");
  }
  if (!central.is_zero() && central.trailing_exp() < 0)
    throw std::logic_error(
        "reductive_quotient: torus order has negative exponents");

  rq.order = rq.central_torus_order;
  for (const auto& orbit : rq.orbits) rq.order = rq.order * orbit.order;
  rq.dim = roots_total + rq.rank;
  if (rq.order.as_laurent().leading_exp() != 2 * rq.dim)
    throw std::logic_error(
        "reductive_quotient: order degree disagrees with the dimension");
  return rq;
}

inline ReductiveQuotient reductive_quotient(const CatalogEntry& e,
                                            const Facet& relative_facet) {
  validate_facet(e.relative, relative_facet);
  return reductive_quotient(e.local, e.orbit_map, e.torus.order,
                            relative_facet);
}

inline ReductiveQuotient companion_reductive_quotient(
    const CatalogEntry& e, const Facet& relative_facet) {
  validate_facet(e.companion.relative, relative_facet);
  return reductive_quotient(e.companion.local, e.companion.local.orbits(),
                            e.companion.torus.order, relative_facet);
}

// ---------------------------------------------------------------------------
// Facet comparison between a group and its companion
// ---------------------------------------------------------------------------

struct FacetMatch {
  bool diagrams_isomorphic = false;
  bool dims_equal = false;
  bool orders_equal = false;
  bool omega_stabilizers_equal = false;
  bool all() const {
    return diagrams_isomorphic && dims_equal && orders_equal &&
           omega_stabilizers_equal;
  }
};

/**
 * Compares the reductive quotients of a relative facet on the two sides of a
 * catalog entry: subdiagram shape (arrows disregarded), dimension, exact
 * residue-point count, and the orders of the omega stabilizers.
 */
inline FacetMatch check_facet_match(const CatalogEntry& e, const Facet& f) {
  FacetMatch m;
  Facet g = transfer_facet(e, f);
  ReductiveQuotient main = reductive_quotient(e, f);
  ReductiveQuotient comp = companion_reductive_quotient(e, g);

  if (main.lifted_nodes.empty() || comp.lifted_nodes.empty()) {
    m.diagrams_isomorphic =
        main.lifted_nodes.empty() && comp.lifted_nodes.empty();
  } else {
    auto [main_sub, main_ids] = e.local.diagram.subdiagram(main.lifted_nodes);
    auto [comp_sub, comp_ids] =
        e.companion.local.diagram.subdiagram(comp.lifted_nodes);
    (void)main_ids;
    (void)comp_ids;
    m.diagrams_isomorphic =
        diagram_isomorphic_up_to_arrows(main_sub, comp_sub, false).has_value();
  }
  m.dims_equal = main.dim == comp.dim;
  m.orders_equal = main.order == comp.order;

  FacetStabilizer sa =
      omega_facet_stabilizer(e.omega.element_perms, e.relative.num_nodes, f);
  FacetStabilizer sb = omega_facet_stabilizer(
      e.companion.omega.element_perms, e.companion.relative.num_nodes, g);
  m.omega_stabilizers_equal = sa.setwise_order() == sb.setwise_order() &&
                              sa.pointwise_order() == sb.pointwise_order();
  return m;
}

}  // namespace unillc
