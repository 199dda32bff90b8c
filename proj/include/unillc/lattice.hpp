#pragma once

/**
 * Exact integer-lattice utilities: dense matrices over arbitrary-precision
 * integers, Hermite and Smith normal forms, quotient lattices Z^r / rowspan,
 * and small finite abelian groups presented by invariant factors.
 *
 * Conventions: lattice elements are row vectors; a lattice or sublattice is
 * the row span of a matrix.  Sizes in this library are tiny (rank <= 16), so
 * all algorithms favour clarity over asymptotics.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace unillc {

using Zint = mpz_class;
using ZVec = std::vector<Zint>;
using ZMat = std::vector<ZVec>;  // row-major

inline ZMat zmat_zero(std::size_t rows, std::size_t cols) {
  return ZMat(rows, ZVec(cols, Zint(0)));
}

inline ZMat zmat_identity(std::size_t n) {
  ZMat m = zmat_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size(), k = a[0].size(), m = b[0].size();
  if (k != b.size()) throw std::invalid_argument("zmat_mul: shape mismatch");
  ZMat r = zmat_zero(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) r[i][j] += a[i][t] * b[t][j];
  return r;
}

inline ZMat zmat_transpose(const ZMat& a) {
  if (a.empty()) return {};
  ZMat r = zmat_zero(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

inline ZVec zvec_mat(const ZVec& v, const ZMat& m) {
  if (m.empty()) return {};
  if (v.size() != m.size()) throw std::invalid_argument("zvec_mat: shape");
  ZVec r(m[0].size(), Zint(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * m[i][j];
  return r;
}

inline ZVec zvec_add(const ZVec& a, const ZVec& b) {
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline ZVec zvec_sub(const ZVec& a, const ZVec& b) {
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
inline Zint zmat_det(ZMat a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("zmat_det: not square");
  if (n == 0) return 1;
  Zint sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace detail {

inline void row_swap(ZMat& m, std::size_t i, std::size_t j) {
  std::swap(m[i], m[j]);
}

inline void row_negate(ZMat& m, std::size_t i) {
  for (auto& x : m[i]) x = -x;
}

/// row i -= f * row j
inline void row_axpy(ZMat& m, std::size_t i, std::size_t j, const Zint& f) {
  for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] -= f * m[j][c];
}

inline void col_swap(ZMat& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

inline void col_negate(ZMat& m, std::size_t i) {
  for (auto& row : m) row[i] = -row[i];
}

/// col i -= f * col j
inline void col_axpy(ZMat& m, std::size_t i, std::size_t j, const Zint& f) {
  for (auto& row : m) row[i] -= f * row[j];
}

}  // namespace detail

/// Row-style Hermite normal form of the row span of `a` (zero rows dropped):
/// upper-staircase basis with positive pivots and reduced entries above them.
inline ZMat hermite_normal_form(ZMat a) {
  if (a.empty()) return a;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;  // current pivot row
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid the column below r to a single nonzero entry at row r.
    for (;;) {
      std::size_t piv = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (piv == rows || abs(a[i][c]) < abs(a[piv][c])))
          piv = i;
      if (piv == rows) break;  // column all zero below r
      detail::row_swap(a, r, piv);
      if (a[r][c] < 0) detail::row_negate(a, r);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] != 0) {
          Zint f = a[i][c] / a[r][c];
          detail::row_axpy(a, i, r, f);
          if (a[i][c] != 0) clean = false;
        }
      }
      if (clean) break;
    }
    if (a[r][c] != 0) {
      // Reduce the entries above the pivot.
      for (std::size_t i = 0; i < r; ++i) {
        Zint f;
        mpz_fdiv_q(f.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        detail::row_axpy(a, i, r, f);
      }
      ++r;
    }
  }
  a.resize(r);
  return a;
}

/// Result of Smith normal form: u * a * v = d with u, v unimodular and d
/// diagonal, d[i] | d[i+1], nonnegative.
struct SmithResult {
  ZMat u, v, d;
  /// Diagonal entries (length min(rows, cols)).
  std::vector<Zint> diagonal() const {
    std::vector<Zint> r;
    std::size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size());
    for (std::size_t i = 0; i < n; ++i) r.push_back(d[i][i]);
    return r;
  }
};

inline SmithResult smith_normal_form(ZMat a) {
  std::size_t rows = a.size(), cols = rows == 0 ? 0 : a[0].size();
  SmithResult res;
  res.u = zmat_identity(rows);
  res.v = zmat_identity(cols);
  res.d = a;
  ZMat& m = res.d;
  std::size_t n = std::min(rows, cols);
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      // Find the nonzero entry of smallest absolute value in the submatrix.
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (m[i][j] != 0 &&
              (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) {
        goto done;  // submatrix is zero; remaining diagonal entries are 0
      }
      if (bi != k) {
        detail::row_swap(m, k, bi);
        detail::row_swap(res.u, k, bi);
      }
      if (bj != k) {
        detail::col_swap(m, k, bj);
        detail::col_swap(res.v, k, bj);
      }
      if (m[k][k] < 0) {
        detail::row_negate(m, k);
        detail::row_negate(res.u, k);
      }
      bool dirty = false;
      for (std::size_t i = k + 1; i < rows; ++i)
        if (m[i][k] != 0) {
          Zint f = m[i][k] / m[k][k];
          detail::row_axpy(m, i, k, f);
          detail::row_axpy(res.u, i, k, f);
          if (m[i][k] != 0) dirty = true;
        }
      for (std::size_t j = k + 1; j < cols; ++j)
        if (m[k][j] != 0) {
          Zint f = m[k][j] / m[k][k];
          detail::col_axpy(m, j, k, f);
          detail::col_axpy(res.v, j, k, f);
          if (m[k][j] != 0) dirty = true;
        }
      if (dirty) continue;
      // Divisibility: ensure m[k][k] divides every remaining entry.
      bool fixed = true;
      for (std::size_t i = k + 1; i < rows && fixed; ++i)
        for (std::size_t j = k + 1; j < cols && fixed; ++j)
          if (m[i][j] % m[k][k] != 0) {
            // Add row i to row k to pull the bad entry into play.
            detail::row_axpy(m, k, i, Zint(-1));
            detail::row_axpy(res.u, k, i, Zint(-1));
            fixed = false;
          }
      if (fixed) break;
    }
  }
done:
  return res;
}

/**
 * The quotient Z^r / rowspan(relations) with explicit representatives.
 *
 * project() maps a vector to its residue tuple (one residue per invariant
 * factor, factors of 1 skipped); lift() returns a representative vector of a
 * residue tuple.  Only finite quotients are supported (the relation span must
 * have full rank r).
 */
class QuotientLattice {
 public:
  QuotientLattice(std::size_t rank, const ZMat& relations) : rank_(rank) {
    ZMat rel = relations;
    for (const auto& row : rel)
      if (row.size() != rank_)
        throw std::invalid_argument("QuotientLattice: relation width");
    SmithResult s = smith_normal_form(rel.empty() ? zmat_zero(0, rank_) : rel);
    std::vector<Zint> diag = s.diagonal();
    diag.resize(rank_, Zint(0));
    for (const auto& d : diag)
      if (d == 0)
        throw std::invalid_argument(
            "QuotientLattice: infinite quotient (relations not full rank)");
    v_ = s.v;
    v_inv_ = invert_unimodular(v_);
    for (std::size_t i = 0; i < rank_; ++i)
      if (diag[i] != 1) {
        factors_.push_back(diag[i]);
        factor_pos_.push_back(i);
      }
  }

  std::size_t rank() const { return rank_; }

  /// Invariant factors > 1, in divisibility order.
  const std::vector<Zint>& invariant_factors() const { return factors_; }

  Zint order() const {
    Zint o = 1;
    for (const auto& f : factors_) o *= f;
    return o;
  }

  /// Residue tuple of a vector (length = #invariant factors).
  std::vector<Zint> project(const ZVec& x) const {
    if (x.size() != rank_) throw std::invalid_argument("project: width");
    ZVec y = zvec_mat(x, v_);
    std::vector<Zint> r;
    for (std::size_t t = 0; t < factors_.size(); ++t) {
      Zint m;
      mpz_mod(m.get_mpz_t(), y[factor_pos_[t]].get_mpz_t(),
              factors_[t].get_mpz_t());
      r.push_back(m);
    }
    return r;
  }

  /// A representative vector of a residue tuple.
  ZVec lift(const std::vector<Zint>& residues) const {
    if (residues.size() != factors_.size())
      throw std::invalid_argument("lift: residue count");
    ZVec y(rank_, Zint(0));
    for (std::size_t t = 0; t < factors_.size(); ++t)
      y[factor_pos_[t]] = residues[t];
    return zvec_mat(y, v_inv_);
  }

  bool is_trivial() const { return factors_.empty(); }

 private:
  std::size_t rank_;
  ZMat v_, v_inv_;
  std::vector<Zint> factors_;
  std::vector<std::size_t> factor_pos_;

  static ZMat invert_unimodular(const ZMat& m) {
    // Gauss-Jordan over Q would need rationals; over Z a unimodular matrix
    // inverts by the adjugate route via repeated HNF is clumsy, so solve
    // column systems with Bareiss + Cramer (sizes are tiny).
    std::size_t n = m.size();
    Zint det = zmat_det(m);
    if (det != 1 && det != -1)
      throw std::invalid_argument("invert_unimodular: determinant not +-1");
    ZMat inv = zmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // Cofactor expansion: inv[j][i] = det(M with row i, col j removed)
        // * sign / det.
        ZMat minor;
        minor.reserve(n - 1);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == i) continue;
          ZVec row;
          row.reserve(n - 1);
          for (std::size_t c = 0; c < n; ++c)
            if (c != j) row.push_back(m[r][c]);
          minor.push_back(row);
        }
        Zint cof = zmat_det(minor);
        if ((i + j) % 2 == 1) cof = -cof;
        inv[j][i] = cof / det;
      }
    return inv;
  }
};

/**
 * A small finite abelian group G = Z/d_1 x ... x Z/d_k (d_i > 1, d_i | d_{i+1})
 * with elements stored as residue tuples.  Endomorphisms are integer matrices
 * acting on tuples (entry (i,j): coefficient of generator j in the image of
 * generator i), taken modulo the factors.  Intended for groups of order
 * at most a few hundred; operations enumerate elements.
 */
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<Zint> factors)
      : factors_(std::move(factors)) {
    for (const auto& f : factors_)
      if (f <= 1) throw std::invalid_argument("FiniteAbelianGroup: factor <= 1");
  }

  const std::vector<Zint>& factors() const { return factors_; }
  std::size_t ngens() const { return factors_.size(); }

  Zint order() const {
    Zint o = 1;
    for (const auto& f : factors_) o *= f;
    return o;
  }

  std::vector<Zint> zero() const {
    return std::vector<Zint>(factors_.size(), Zint(0));
  }

  std::vector<Zint> add(const std::vector<Zint>& a,
                        const std::vector<Zint>& b) const {
    std::vector<Zint> r(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      r[i] = a[i] + b[i];
      mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), factors_[i].get_mpz_t());
    }
    return r;
  }

  std::vector<Zint> neg(const std::vector<Zint>& a) const {
    std::vector<Zint> r(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      r[i] = -a[i];
      mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), factors_[i].get_mpz_t());
    }
    return r;
  }

  std::vector<Zint> apply(const ZMat& endo, const std::vector<Zint>& a) const {
    if (endo.size() != factors_.size())
      throw std::invalid_argument("apply: endomorphism shape");
    std::vector<Zint> r(factors_.size(), Zint(0));
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = 0; j < factors_.size(); ++j)
        r[j] += a[i] * endo[i][j];
    for (std::size_t j = 0; j < factors_.size(); ++j)
      mpz_mod(r[j].get_mpz_t(), r[j].get_mpz_t(), factors_[j].get_mpz_t());
    return r;
  }

  /// All elements, lexicographically ordered.
  std::vector<std::vector<Zint>> elements() const {
    std::vector<std::vector<Zint>> out;
    std::vector<Zint> cur = zero();
    for (;;) {
      out.push_back(cur);
      std::size_t i = factors_.size();
      while (i > 0) {
        --i;
        cur[i] += 1;
        if (cur[i] < factors_[i]) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
      if (factors_.empty()) return out;
    }
  }

  /// Subgroup generated by the given elements, as a sorted element set.
  std::set<std::vector<Zint>> span(
      const std::vector<std::vector<Zint>>& gens) const {
    std::set<std::vector<Zint>> seen;
    std::vector<std::vector<Zint>> frontier{zero()};
    seen.insert(zero());
    while (!frontier.empty()) {
      std::vector<std::vector<Zint>> next;
      for (const auto& x : frontier)
        for (const auto& g : gens) {
          auto y = add(x, g);
          if (seen.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    return seen;
  }

  /// Invariant factors (> 1, divisibility order) of the subgroup generated by
  /// `gens`, computed by lifting to Z^k and reusing Smith normal form on the
  /// preimage lattice.
  std::vector<Zint> subgroup_invariants(
      const std::vector<std::vector<Zint>>& gens) const {
    // Preimage lattice L of the subgroup in Z^k contains diag(d) Z^k; the
    // subgroup is L / diag(d).  Relation matrix of that quotient: rows of
    // diag(d) expressed in a basis of L.
    std::size_t k = factors_.size();
    if (k == 0) return {};
    ZMat lat;
    for (std::size_t i = 0; i < k; ++i) {
      ZVec row(k, Zint(0));
      row[i] = factors_[i];
      lat.push_back(row);
    }
    for (const auto& g : gens) {
      if (g.size() != k) throw std::invalid_argument("subgroup_invariants");
      lat.push_back(ZVec(g.begin(), g.end()));
    }
    ZMat basis = hermite_normal_form(lat);
    if (basis.size() != k)
      throw std::logic_error("subgroup_invariants: basis rank");
    // Express diag(d) rows in terms of `basis` (integral by construction).
    ZMat rel = zmat_zero(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      ZVec target(k, Zint(0));
      target[i] = factors_[i];
      rel[i] = solve_in_basis(basis, target);
    }
    QuotientLattice q(k, rel);
    return q.invariant_factors();
  }

  /// Solves x * basis = target over the integers (basis upper-staircase
  /// square from hermite_normal_form); throws if no integral solution.
  static ZVec solve_in_basis(const ZMat& basis, const ZVec& target) {
    std::size_t k = basis.size();
    ZVec x(k, Zint(0));
    ZVec rem = target;
    // basis is in upper-staircase (HNF) form: solve back-substitution by
    // scanning pivot columns.
    std::vector<std::size_t> pivot_col(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t c = 0;
      while (c < basis[i].size() && basis[i][c] == 0) ++c;
      if (c == basis[i].size())
        throw std::invalid_argument("solve_in_basis: zero basis row");
      pivot_col[i] = c;
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t c = pivot_col[i];
      if (rem[c] % basis[i][c] != 0)
        throw std::invalid_argument("solve_in_basis: not in lattice");
      Zint f = rem[c] / basis[i][c];
      x[i] = f;
      for (std::size_t t = 0; t < rem.size(); ++t) rem[t] -= f * basis[i][t];
    }
    for (const auto& v : rem)
      if (v != 0) throw std::invalid_argument("solve_in_basis: not in lattice");
    return x;
  }

 private:
  std::vector<Zint> factors_;
};

}  // namespace unillc
