#pragma once

/**
 * Based root data in fundamental-coweight coordinates.
 *
 * Fix a Cartan matrix C of rank r (Bourbaki numbering).  The ambient lattice
 * Z^r is the coweight lattice in the basis of fundamental coweights, so the
 * pairing with the i-th simple root reads off the i-th coordinate, and the
 * j-th simple coroot has coordinate vector equal to column j of C.  A
 * cocharacter lattice is any full-rank sublattice X containing all coroots;
 * it is stored as a Hermite-normal-form row basis.
 *
 * Diagram automorphisms act by permuting coordinates (sigma sends the i-th
 * fundamental coweight to the sigma(i)-th).  The class group X / (coroot
 * span) and its twisted quotients are computed through QuotientLattice.
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "unillc/lattice.hpp"

namespace unillc {

/// Cartan matrix of the given simple type in Bourbaki numbering ('A'..'G').
inline ZMat cartan_matrix(char type, int rank) {
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument("cartan_matrix: " + why);
  };
  if (rank < 1) bad("rank must be positive");
  std::size_t n = static_cast<std::size_t>(rank);
  ZMat c = zmat_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) c[i][i] = 2;
  auto chain = [&](std::size_t upto) {
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      c[i][i + 1] = -1;
      c[i + 1][i] = -1;
    }
  };
  switch (type) {
    case 'A':
      chain(n);
      break;
    case 'B':
      if (rank < 2) bad("type B needs rank >= 2");
      chain(n);
      c[n - 2][n - 1] = -2;
      break;
    case 'C':
      if (rank < 2) bad("type C needs rank >= 2");
      chain(n);
      c[n - 1][n - 2] = -2;
      break;
    case 'D':
      if (rank < 3) bad("type D needs rank >= 3");
      chain(n - 1);
      c[n - 2][n - 1] = 0;
      c[n - 1][n - 2] = 0;
      c[n - 3][n - 1] = -1;
      c[n - 1][n - 3] = -1;
      break;
    case 'E': {
      if (rank < 6 || rank > 8) bad("type E needs rank 6..8");
      // Chain 1-3-4-5-..., branch node 2 attached to 4 (Bourbaki).
      std::vector<std::pair<int, int>> es = {{0, 2}, {2, 3}, {3, 4}, {4, 5},
                                             {1, 3}};
      if (rank >= 7) es.push_back({5, 6});
      if (rank == 8) es.push_back({6, 7});
      for (auto [i, j] : es) {
        c[i][j] = -1;
        c[j][i] = -1;
      }
      break;
    }
    case 'F':
      if (rank != 4) bad("type F needs rank 4");
      chain(n);
      c[1][2] = -2;
      break;
    case 'G':
      if (rank != 2) bad("type G needs rank 2");
      c[0][1] = -1;
      c[1][0] = -3;
      break;
    default:
      bad("unknown type");
  }
  return c;
}

/// Permutation matrix for the row-vector convention: x -> x * M sends
/// coordinate i to coordinate perm[i].
inline ZMat perm_matrix(const std::vector<int>& perm) {
  std::size_t n = perm.size();
  ZMat m = zmat_zero(n, n);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    int v = perm[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v])
      throw std::invalid_argument("perm_matrix: not a permutation");
    hit[v] = true;
    m[i][v] = 1;
  }
  return m;
}

/// Order-reversing permutation 0..n-1 -> n-1..0 (chain flip).
inline std::vector<int> chain_flip(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  return p;
}

/// The type-D automorphism exchanging the two fork nodes (Bourbaki last two).
inline std::vector<int> fork_swap(int rank) {
  if (rank < 3) throw std::invalid_argument("fork_swap: rank");
  std::vector<int> p(rank);
  for (int i = 0; i < rank; ++i) p[i] = i;
  std::swap(p[rank - 2], p[rank - 1]);
  return p;
}

/// The order-3 rotation of the three outer nodes of the rank-4 fork
/// (Bourbaki 1 -> 3 -> 4 -> 1, center fixed).
inline std::vector<int> triality_rotation() { return {2, 1, 3, 0}; }

/// The flip of the rank-6 'E' diagram (Bourbaki 1<->6, 3<->5, 2 and 4 fixed).
inline std::vector<int> e6_flip() { return {5, 1, 4, 3, 2, 0}; }

inline std::vector<int> identity_permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline std::vector<int> compose_permutations(const std::vector<int>& first,
                                             const std::vector<int>& then) {
  if (first.size() != then.size())
    throw std::invalid_argument("compose_permutations: size");
  std::vector<int> r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
  return r;
}

class BasedRootDatum {
 public:
  BasedRootDatum(ZMat cartan, ZMat basis)
      : cartan_(std::move(cartan)), basis_(std::move(basis)) {
    std::size_t r = cartan_.size();
    if (r == 0) throw std::invalid_argument("BasedRootDatum: empty");
    for (const auto& row : cartan_)
      if (row.size() != r) throw std::invalid_argument("BasedRootDatum: cartan");
    basis_ = hermite_normal_form(basis_);
    if (basis_.size() != r)
      throw std::invalid_argument("BasedRootDatum: basis not full rank");
    for (int j = 0; j < static_cast<int>(r); ++j)
      in_basis(coroot(j));  // throws when a coroot escapes the lattice
  }

  static BasedRootDatum simply_connected(const ZMat& cartan) {
    return BasedRootDatum(cartan, zmat_transpose(cartan));
  }

  static BasedRootDatum adjoint(const ZMat& cartan) {
    return BasedRootDatum(cartan, zmat_identity(cartan.size()));
  }

  /// Lattice generated by the coroots together with extra coweights.
  static BasedRootDatum with_extra_generators(const ZMat& cartan,
                                              const std::vector<ZVec>& gens) {
    ZMat stack = zmat_transpose(cartan);
    for (const auto& g : gens) {
      if (g.size() != cartan.size())
        throw std::invalid_argument("with_extra_generators: width");
      stack.push_back(g);
    }
    return BasedRootDatum(cartan, stack);
  }

  int rank() const { return static_cast<int>(cartan_.size()); }
  const ZMat& cartan() const { return cartan_; }
  const ZMat& basis() const { return basis_; }

  /// Coweight-coordinate vector of the j-th simple coroot (column j of C).
  ZVec coroot(int j) const {
    std::size_t r = cartan_.size();
    if (j < 0 || static_cast<std::size_t>(j) >= r)
      throw std::invalid_argument("coroot: index");
    ZVec v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = cartan_[i][j];
    return v;
  }

  /// Pairing of the i-th simple root with an ambient coweight vector.
  Zint pair_root(int i, const ZVec& x) const {
    if (i < 0 || static_cast<std::size_t>(i) >= x.size() ||
        x.size() != cartan_.size())
      throw std::invalid_argument("pair_root");
    return x[i];
  }

  /// Coordinates of an ambient vector in the stored lattice basis; throws
  /// std::invalid_argument when the vector is not in the lattice.
  ZVec in_basis(const ZVec& ambient) const {
    return FiniteAbelianGroup::solve_in_basis(basis_, ambient);
  }

  bool contains(const ZVec& ambient) const {
    try {
      in_basis(ambient);
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }

  /// Ambient coweight vector of basis coordinates (x -> x * basis).
  ZVec ambient(const ZVec& coords) const { return zvec_mat(coords, basis_); }

  /// Whether the coordinate permutation maps the lattice onto itself.
  bool stabilized_by(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != rank()) return false;
    ZMat m = perm_matrix(perm);
    for (const auto& row : basis_)
      if (!contains(zvec_mat(row, m))) return false;
    return true;
  }

  /// The action of the permutation written in the lattice basis: basis-row
  /// coordinates x map to x * A.
  ZMat action_in_basis(const std::vector<int>& perm) const {
    if (!stabilized_by(perm))
      throw std::invalid_argument(
          "action_in_basis: permutation does not stabilize the lattice");
    ZMat m = perm_matrix(perm);
    ZMat a;
    for (const auto& row : basis_) a.push_back(in_basis(zvec_mat(row, m)));
    return a;
  }

  /// Rows expressing every simple coroot in the lattice basis.
  ZMat coroot_rows_in_basis() const {
    ZMat rows;
    for (int j = 0; j < rank(); ++j) rows.push_back(in_basis(coroot(j)));
    return rows;
  }

  /// X / (coroot span), the class group of the datum, in basis coordinates.
  QuotientLattice class_group() const {
    return QuotientLattice(cartan_.size(), coroot_rows_in_basis());
  }

  /**
   * X / (coroot span + sum_k (A_k - 1) X) for actions given in basis
   * coordinates: the coinvariants of the class group under the subgroup
   * generated by the actions.
   */
  QuotientLattice twisted_class_group(const std::vector<ZMat>& actions) const {
    std::size_t r = cartan_.size();
    ZMat rel = coroot_rows_in_basis();
    for (const auto& a : actions) {
      if (a.size() != r) throw std::invalid_argument("twisted_class_group");
      for (std::size_t i = 0; i < r; ++i) {
        ZVec row = a[i];
        row[i] -= 1;
        rel.push_back(row);
      }
    }
    return QuotientLattice(r, rel);
  }

 private:
  ZMat cartan_;
  ZMat basis_;
};

}  // namespace unillc
