#pragma once

/**
 * Length-zero symmetry groups of affine diagrams ("omega groups").
 *
 * For a cocharacter datum with a Galois action given by diagram permutations
 * (an inertia subgroup and a Frobenius element), the omega group is computed
 * as the Frobenius-fixed subgroup of the inertia coinvariants of the class
 * group.  Companion helpers push omega along the map to the adjoint datum
 * (kernel and image of the isogeny), recompute the order through the dual
 * route (inertia invariants, then Frobenius coinvariants, of the character
 * group of the class group), and cut out facet stabilizers from a stored
 * action on the relative diagram.
 */

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "unillc/diagram.hpp"
#include "unillc/lattice.hpp"
#include "unillc/rootdata.hpp"

namespace unillc {

/// The endomorphism induced on the residue coordinates of a finite quotient
/// by a lattice action (given in basis coordinates).  Row i is the image of
/// the i-th residue generator.
inline ZMat endo_on_quotient(const QuotientLattice& q,
                             const ZMat& action_in_basis) {
  std::size_t k = q.invariant_factors().size();
  ZMat endo;
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<Zint> gen(k, Zint(0));
    gen[t] = 1;
    endo.push_back(q.project(zvec_mat(q.lift(gen), action_in_basis)));
  }
  return endo;
}

struct OmegaGroup {
  QuotientLattice coinvariants;  ///< inertia coinvariants of the class group
  std::vector<std::vector<Zint>>
      elements;                  ///< Frobenius-fixed residue tuples, sorted
  std::vector<Zint> invariants;  ///< invariant factors of the fixed subgroup

  Zint order() const { return Zint(static_cast<long>(elements.size())); }
};

/**
 * Omega group of a datum whose Galois group acts through `inertia_perms`
 * (generators of the inertia image) and `frob_perm`.
 */
inline OmegaGroup compute_omega(const BasedRootDatum& rd,
                                const std::vector<std::vector<int>>& inertia_perms,
                                const std::vector<int>& frob_perm) {
  std::vector<ZMat> inertia_actions;
  for (const auto& p : inertia_perms)
    inertia_actions.push_back(rd.action_in_basis(p));
  QuotientLattice coinv = rd.twisted_class_group(inertia_actions);
  ZMat frob_endo = endo_on_quotient(coinv, rd.action_in_basis(frob_perm));

  FiniteAbelianGroup amb(coinv.invariant_factors());
  std::vector<std::vector<Zint>> fixed;
  for (const auto& x : amb.elements())
    if (amb.apply(frob_endo, x) == x) fixed.push_back(x);
  std::sort(fixed.begin(), fixed.end());

  OmegaGroup out{coinv, fixed, amb.subgroup_invariants(fixed)};
  return out;
}

struct KernelImage {
  Zint kernel_order = 1;
  Zint image_order = 1;
  std::vector<Zint> kernel_invariants;  // invariant factors of the kernel
};

/**
 * Kernel and image of the natural map from the omega group of `rd` to the
 * omega group of the adjoint datum with the same Cartan matrix and the same
 * Galois permutations.
 */
inline KernelImage isogeny_kernel_image(
    const BasedRootDatum& rd, const std::vector<std::vector<int>>& inertia_perms,
    const std::vector<int>& frob_perm) {
  OmegaGroup src = compute_omega(rd, inertia_perms, frob_perm);
  BasedRootDatum ad = BasedRootDatum::adjoint(rd.cartan());
  OmegaGroup dst = compute_omega(ad, inertia_perms, frob_perm);

  std::set<std::vector<Zint>> dst_set(dst.elements.begin(),
                                      dst.elements.end());
  std::vector<std::vector<Zint>> kernel;
  std::set<std::vector<Zint>> image;
  for (const auto& x : src.elements) {
    // Residues -> basis coordinates -> ambient coweight -> adjoint residues.
    ZVec ambient = rd.ambient(src.coinvariants.lift(x));
    std::vector<Zint> y = dst.coinvariants.project(ad.in_basis(ambient));
    if (dst_set.find(y) == dst_set.end())
      throw std::logic_error(
          "isogeny_kernel_image: image escapes the target omega group");
    image.insert(y);
    bool zero = true;
    for (const auto& v : y) zero = zero && v == 0;
    if (zero) kernel.push_back(x);
  }
  FiniteAbelianGroup amb(src.coinvariants.invariant_factors());
  KernelImage ki;
  ki.kernel_order = Zint(static_cast<long>(kernel.size()));
  ki.image_order = Zint(static_cast<long>(image.size()));
  ki.kernel_invariants = amb.subgroup_invariants(kernel);
  return ki;
}

/**
 * Order of the Frobenius coinvariants of the inertia invariants of the
 * character group of the class group — the dual-side computation of the same
 * order as compute_omega, through unrelated code (characters and adjoint
 * actions instead of lattice coinvariants).
 */
inline Zint dual_fixed_center_order(
    const BasedRootDatum& rd, const std::vector<std::vector<int>>& inertia_perms,
    const std::vector<int>& frob_perm) {
  QuotientLattice cls = rd.class_group();
  std::vector<Zint> d = cls.invariant_factors();
  std::size_t k = d.size();
  FiniteAbelianGroup grp(d);

  // Dual (adjoint) action on characters: determined by
  // <x * E, y> = <x, dual(E, y)> for the pairing sum_j x_j y_j / d_j mod 1.
  auto dual_apply = [&](const ZMat& endo, const std::vector<Zint>& y) {
    std::vector<Zint> r(k, Zint(0));
    for (std::size_t i = 0; i < k; ++i) {
      Zint acc = 0;
      for (std::size_t j = 0; j < k; ++j) {
        Zint t = d[i] * endo[i][j] * y[j];
        if (t % d[j] != 0)
          throw std::logic_error("dual_fixed_center_order: non-integral term");
        acc += t / d[j];
      }
      mpz_mod(r[i].get_mpz_t(), acc.get_mpz_t(), d[i].get_mpz_t());
    }
    return r;
  };

  std::vector<ZMat> inertia_endos;
  for (const auto& p : inertia_perms)
    inertia_endos.push_back(endo_on_quotient(cls, rd.action_in_basis(p)));
  ZMat frob_endo = endo_on_quotient(cls, rd.action_in_basis(frob_perm));

  // Inertia invariants of the character group.
  std::vector<std::vector<Zint>> inv;
  for (const auto& y : grp.elements()) {
    bool fixed = true;
    for (const auto& e : inertia_endos) fixed = fixed && dual_apply(e, y) == y;
    if (fixed) inv.push_back(y);
  }
  // Frobenius coinvariants of that subgroup: quotient by the span of the
  // differences frob(y) - y.
  std::set<std::vector<Zint>> inv_set(inv.begin(), inv.end());
  std::vector<std::vector<Zint>> diffs;
  for (const auto& y : inv) {
    auto fy = dual_apply(frob_endo, y);
    if (inv_set.find(fy) == inv_set.end())
      throw std::logic_error(
          "dual_fixed_center_order: Frobenius does not preserve invariants");
    diffs.push_back(grp.add(fy, grp.neg(y)));
  }
  Zint denom = Zint(static_cast<long>(grp.span(diffs).size()));
  return Zint(static_cast<long>(inv.size())) / denom;
}

/// Index lists of the omega elements stabilizing a facet.
struct FacetStabilizer {
  std::vector<int> setwise;    ///< elements with perm(J) = J as a set
  std::vector<int> pointwise_complement;  ///< elements fixing every node not in J

  Zint setwise_order() const {
    return Zint(static_cast<long>(setwise.size()));
  }
  Zint pointwise_order() const {
    return Zint(static_cast<long>(pointwise_complement.size()));
  }
};

/**
 * Stabilizers of a facet under a stored omega action on the relative
 * diagram: one permutation of the diagram nodes per group element.
 */
inline FacetStabilizer omega_facet_stabilizer(
    const std::vector<std::vector<int>>& element_perms, int num_nodes,
    const Facet& facet) {
  FacetStabilizer out;
  std::set<int> in(facet.begin(), facet.end());
  for (std::size_t e = 0; e < element_perms.size(); ++e) {
    const auto& p = element_perms[e];
    if (static_cast<int>(p.size()) != num_nodes)
      throw std::invalid_argument("omega_facet_stabilizer: perm size");
    bool set_ok = true;
    for (int v : facet) set_ok = set_ok && in.count(p[v]) > 0;
    if (set_ok) out.setwise.push_back(static_cast<int>(e));
    bool pt_ok = true;
    for (int v = 0; v < num_nodes; ++v)
      if (!in.count(v) && p[v] != v) pt_ok = false;
    if (pt_ok) out.pointwise_complement.push_back(static_cast<int>(e));
  }
  return out;
}

}  // namespace unillc
