#pragma once

/**
 * Iwahori–Hecke algebras with unequal parameters.
 *
 * A presentation consists of a Coxeter matrix m(i,j) (0 encodes an unbounded
 * entry) and one exponent per generator, stored doubled so half-integer
 * exponents stay exact.  The algebra is spanned by basis elements indexed by
 * group elements, with
 *
 *     N_s^2           = q^{N(s)} N_e
 *     N_w N_s         = N_{ws}              if the length goes up,
 *     N_w N_s         = q^{N(s)} N_{w s}    if the length goes down,
 *
 * so products of basis elements are monomials.  Words are normalized to the
 * lexicographically smallest reduced expression by exploring the braid class
 * (Tits' solution of the word problem): a word is reducible exactly when some
 * braid-equivalent word carries an adjacent equal pair, which is then
 * deleted and the search restarted.
 *
 * A finite group of diagram automorphisms that preserves the presentation
 * can be adjoined; its elements permute the basis by relabelling letters.
 */

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unillc/catalog.hpp"
#include "unillc/diagram.hpp"
#include "unillc/half_laurent.hpp"

namespace unillc {

using Word = std::vector<int>;

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

struct HeckePresentation {
  std::string family;  // free-form provenance tags
  std::string facet;
  std::string sigma;
  std::vector<long> twice_param;        // 2 N(s) per generator, positive
  std::vector<std::vector<int>> cox_m;  // m(i,j): 1 diagonal, 0 unbounded

  int num_gens() const { return static_cast<int>(twice_param.size()); }

  void validate() const {
    int n = num_gens();
    if (n <= 0) throw std::invalid_argument("presentation: no generators");
    for (long t : twice_param)
      if (t <= 0) throw std::invalid_argument("presentation: exponent <= 0");
    if (static_cast<int>(cox_m.size()) != n)
      throw std::invalid_argument("presentation: Coxeter matrix size");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(cox_m[i].size()) != n)
        throw std::invalid_argument("presentation: Coxeter matrix row size");
      if (cox_m[i][i] != 1)
        throw std::invalid_argument("presentation: Coxeter diagonal");
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int m = cox_m[i][j];
        if (m != 0 && m != 2 && m != 3 && m != 4 && m != 6)
          throw std::invalid_argument("presentation: Coxeter entry");
        if (m != cox_m[j][i])
          throw std::invalid_argument("presentation: Coxeter symmetry");
      }
    }
  }

  static HeckePresentation from_diagram(const AffineDiagram& d,
                                        std::vector<long> twice) {
    HeckePresentation p;
    p.twice_param = std::move(twice);
    int n = d.num_nodes;
    p.cox_m.assign(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i) {
      p.cox_m[i][i] = 1;
      for (int j = 0; j < n; ++j)
        if (i != j) p.cox_m[i][j] = d.coxeter_m(i, j);
    }
    p.validate();
    return p;
  }

  /// Iwahori presentation of a catalog entry (the relative diagram with the
  /// stored exponents).
  static HeckePresentation from_entry(const CatalogEntry& e) {
    HeckePresentation p =
        from_diagram(e.relative, e.iwahori_params_twice);
    p.family = e.id();
    p.facet = "iwahori";
    p.sigma = "unit";
    return p;
  }

  static HeckePresentation from_companion(const CatalogEntry& e) {
    HeckePresentation p = from_diagram(e.companion.relative,
                                       e.companion.iwahori_params_twice);
    p.family = e.id() + ":companion";
    p.facet = "iwahori";
    p.sigma = "unit";
    return p;
  }

  /// Canonical text form:
  ///   family <tag> / facet <tag> / sigma <tag>
  ///   generator <i> <N>          (N integral or half-integral, "3/2")
  ///   coxeter <i> <j> <m>        (i < j, only entries with m != 2; "inf")
  std::string render() const {
    validate();
    std::ostringstream out;
    out << "family " << (family.empty() ? "-" : family) << "\n";
    out << "facet " << (facet.empty() ? "-" : facet) << "\n";
    out << "sigma " << (sigma.empty() ? "-" : sigma) << "\n";
    for (int i = 0; i < num_gens(); ++i) {
      out << "generator " << i << " ";
      if (twice_param[i] % 2 == 0)
        out << twice_param[i] / 2;
      else
        out << twice_param[i] << "/2";
      out << "\n";
    }
    for (int i = 0; i < num_gens(); ++i)
      for (int j = i + 1; j < num_gens(); ++j) {
        int m = cox_m[i][j];
        if (m == 2) continue;
        out << "coxeter " << i << " " << j << " ";
        if (m == 0)
          out << "inf";
        else
          out << m;
        out << "\n";
      }
    return out.str();
  }

  static HeckePresentation parse(const std::string& text) {
    HeckePresentation p;
    std::map<int, long> gens;
    std::vector<std::array<int, 3>> cox_lines;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("presentation line " +
                                  std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key)) continue;
      if (key == "family" || key == "facet" || key == "sigma") {
        std::string value;
        if (!(ls >> value)) fail("missing value");
        if (value != "-")
          (key == "family" ? p.family : key == "facet" ? p.facet : p.sigma) =
              value;
      } else if (key == "generator") {
        int idx;
        std::string val;
        if (!(ls >> idx >> val)) fail("generator needs index and exponent");
        long twice = 0;
        auto slash = val.find('/');
        try {
          if (slash == std::string::npos) {
            twice = 2 * std::stol(val);
          } else {
            if (val.substr(slash + 1) != "2") fail("denominator must be 2");
            twice = std::stol(val.substr(0, slash));
          }
        } catch (const std::logic_error&) {
          fail("bad exponent '" + val + "'");
        }
        if (gens.count(idx)) fail("duplicate generator");
        gens[idx] = twice;
      } else if (key == "coxeter") {
        int i, j;
        std::string val;
        if (!(ls >> i >> j >> val)) fail("coxeter needs i j m");
        int m = 0;
        if (val != "inf") {
          try {
            m = std::stoi(val);
          } catch (const std::logic_error&) {
            fail("bad order '" + val + "'");
          }
        }
        cox_lines.push_back({i, j, m});
      } else {
        fail("unknown key '" + key + "'");
      }
      std::string extra;
      if (ls >> extra) fail("trailing tokens");
    }
    int n = static_cast<int>(gens.size());
    p.twice_param.resize(n);
    for (const auto& [idx, twice] : gens) {
      if (idx < 0 || idx >= n)
        throw std::invalid_argument("presentation: generator indices must "
                                    "be 0..n-1");
      p.twice_param[idx] = twice;
    }
    p.cox_m.assign(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i) p.cox_m[i][i] = 1;
    for (const auto& [i, j, m] : cox_lines) {
      if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("presentation: coxeter indices");
      p.cox_m[i][j] = m;
      p.cox_m[j][i] = m;
    }
    p.validate();
    return p;
  }

  friend bool operator==(const HeckePresentation&,
                         const HeckePresentation&) = default;
};

// ---------------------------------------------------------------------------
// The algebra
// ---------------------------------------------------------------------------

/// Sparse element: basis word (always in normal form) -> coefficient.
using HeckeElement = std::map<Word, HalfLaurent>;

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(HeckePresentation pres, int max_word_length = 12,
                        std::size_t braid_class_cap = 1u << 20)
      : pres_(std::move(pres)),
        max_len_(max_word_length),
        class_cap_(braid_class_cap) {
    pres_.validate();
  }

  const HeckePresentation& presentation() const { return pres_; }
  int max_word_length() const { return max_len_; }

  /// Lexicographically smallest reduced expression of the group element the
  /// word spells.  Throws std::overflow_error when the word is longer than
  /// the configured bound or a braid class grows past the cap.
  Word reduce(const Word& w) const {
    check_word(w);
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(w);
      if (it != memo_.end()) return it->second;
    }
    Word cur = w;
    while (true) {
      std::set<Word> seen;
      std::deque<Word> queue;
      seen.insert(cur);
      queue.push_back(cur);
      std::optional<Word> shorter;
      while (!queue.empty() && !shorter) {
        Word x = std::move(queue.front());
        queue.pop_front();
        for (std::size_t k = 0; k + 1 < x.size(); ++k)
          if (x[k] == x[k + 1]) {
            Word y = x;
            y.erase(y.begin() + static_cast<long>(k),
                    y.begin() + static_cast<long>(k) + 2);
            shorter = std::move(y);
            break;
          }
        if (shorter) break;
        for_each_braid_neighbor(x, [&](Word y) {
          if (seen.insert(y).second) {
            if (seen.size() > class_cap_)
              throw std::overflow_error("reduce: braid class cap exceeded");
            queue.push_back(std::move(y));
          }
        });
      }
      if (shorter) {
        cur = std::move(*shorter);
        continue;
      }
      Word best = *seen.begin();  // same length throughout: lex min
      std::lock_guard<std::mutex> lk(mu_);
      memo_.emplace(w, best);
      return best;
    }
  }

  int length(const Word& w) const { return static_cast<int>(reduce(w).size()); }

  /// N_a N_b as a monomial: u-exponent and normalized word.
  std::pair<long, Word> basis_product(const Word& a, const Word& b) const {
    long exp = 0;
    Word u = reduce(a);
    for (int s : b) {
      check_gen(s);
      Word t = u;
      t.push_back(s);
      Word r = reduce(t);
      if (r.size() == u.size() + 1) {
        u = std::move(r);
      } else if (r.size() + 1 == u.size()) {
        exp += pres_.twice_param[s];
        u = std::move(r);
      } else {
        throw std::logic_error("basis_product: length step is not one");
      }
    }
    return {exp, u};
  }

  // -- elements ------------------------------------------------------------

  HeckeElement zero() const { return {}; }

  HeckeElement basis(const Word& w) const {
    auto [exp, v] = basis_product({}, w);
    HeckeElement e;
    e[v] = HalfLaurent::u_pow(exp);
    return e;
  }

  HeckeElement scaled(const HeckeElement& a, const HalfLaurent& c) const {
    HeckeElement out;
    for (const auto& [w, coeff] : a) {
      HalfLaurent v = coeff * c;
      if (!v.is_zero()) out[w] = v;
    }
    return out;
  }

  HeckeElement add(const HeckeElement& a, const HeckeElement& b) const {
    HeckeElement out = a;
    for (const auto& [w, coeff] : b) {
      HalfLaurent v = out.count(w) ? out[w] + coeff : coeff;
      if (v.is_zero())
        out.erase(w);
      else
        out[w] = v;
    }
    return out;
  }

  HeckeElement mul(const HeckeElement& a, const HeckeElement& b) const {
    HeckeElement out;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        auto [exp, v] = basis_product(wa, wb);
        HalfLaurent term = ca * cb * HalfLaurent::u_pow(exp);
        auto it = out.find(v);
        HalfLaurent sum = it == out.end() ? term : it->second + term;
        if (sum.is_zero())
          out.erase(v);
        else
          out[v] = sum;
      }
    return out;
  }

  /// Specialization u -> 1 (the group algebra limit).
  std::map<Word, Rat> at_unit(const HeckeElement& a) const {
    std::map<Word, Rat> out;
    for (const auto& [w, coeff] : a) {
      Rat v = coeff.eval_u(Rat(1));
      if (v != 0) out[w] = v;
    }
    return out;
  }

 private:
  void check_gen(int s) const {
    if (s < 0 || s >= pres_.num_gens())
      throw std::invalid_argument("hecke: generator out of range");
  }
  void check_word(const Word& w) const {
    if (static_cast<int>(w.size()) > max_len_)
      throw std::overflow_error("reduce: word length bound exceeded");
    for (int s : w) check_gen(s);
  }

  template <typename F>
  void for_each_braid_neighbor(const Word& x, F&& emit) const {
    for (std::size_t p = 0; p + 1 < x.size(); ++p) {
      int i = x[p], j = x[p + 1];
      if (i == j) continue;
      int m = pres_.cox_m[i][j];
      if (m == 0) continue;
      if (p + static_cast<std::size_t>(m) > x.size()) continue;
      bool alternates = true;
      for (int t = 0; t < m && alternates; ++t)
        alternates = x[p + static_cast<std::size_t>(t)] == (t % 2 == 0 ? i : j);
      if (!alternates) continue;
      Word y = x;
      for (int t = 0; t < m; ++t)
        y[p + static_cast<std::size_t>(t)] = t % 2 == 0 ? j : i;
      emit(std::move(y));
    }
  }

  HeckePresentation pres_;
  int max_len_;
  std::size_t class_cap_;
  mutable std::mutex mu_;
  mutable std::map<Word, Word> memo_;
};

// ---------------------------------------------------------------------------
// Extension by diagram automorphisms
// ---------------------------------------------------------------------------

/// Distinct permutations in a stored automorphism list (the effective action
/// of an omega group on a diagram), identity first, deterministic order.
inline std::vector<std::vector<int>> effective_omega_action(
    const std::vector<std::vector<int>>& perms) {
  std::set<std::vector<int>> uniq(perms.begin(), perms.end());
  if (perms.empty()) throw std::invalid_argument("omega action: empty list");
  std::vector<int> id = identity_permutation(
      static_cast<int>(perms.front().size()));
  if (!uniq.count(id))
    throw std::invalid_argument("omega action: identity missing");
  std::vector<std::vector<int>> out = {id};
  for (const auto& p : uniq)
    if (p != id) out.push_back(p);
  return out;
}

class ExtendedHeckeAlgebra {
 public:
  /// Basis labels: (automorphism index, word); N_{om} N_w.
  using ExtElement = std::map<std::pair<int, Word>, HalfLaurent>;

  ExtendedHeckeAlgebra(HeckeAlgebra base,
                       std::vector<std::vector<int>> omega_perms)
      : base_(std::move(base)), omega_(std::move(omega_perms)) {
    int n = base_.presentation().num_gens();
    if (omega_.empty() ||
        omega_[0] != identity_permutation(n))
      throw std::invalid_argument("extension: first element must be the "
                                  "identity permutation");
    for (const auto& p : omega_) {
      if (static_cast<int>(p.size()) != n)
        throw std::invalid_argument("extension: permutation size");
      for (int i = 0; i < n; ++i) {
        if (base_.presentation().twice_param[p[i]] !=
            base_.presentation().twice_param[i])
          throw std::invalid_argument(
              "extension: permutation breaks the exponents");
        for (int j = 0; j < n; ++j)
          if (base_.presentation().cox_m[p[i]][p[j]] !=
              base_.presentation().cox_m[i][j])
            throw std::invalid_argument(
                "extension: permutation breaks the Coxeter matrix");
      }
    }
    // Closure and inverses.
    for (std::size_t a = 0; a < omega_.size(); ++a)
      for (std::size_t b = 0; b < omega_.size(); ++b)
        (void)omega_mul(static_cast<int>(a), static_cast<int>(b));
    for (std::size_t a = 0; a < omega_.size(); ++a)
      (void)omega_inv(static_cast<int>(a));
  }

  const HeckeAlgebra& base() const { return base_; }
  int omega_size() const { return static_cast<int>(omega_.size()); }
  const std::vector<int>& omega_perm(int a) const { return omega_.at(a); }

  int omega_mul(int a, int b) const {
    // The product acts by applying b's permutation first.
    std::vector<int> comp = compose_permutations(omega_.at(b), omega_.at(a));
    return omega_index(comp);
  }

  int omega_inv(int a) const {
    const std::vector<int>& p = omega_.at(a);
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return omega_index(inv);
  }

  Word act(int a, const Word& w) const {
    const std::vector<int>& p = omega_.at(a);
    Word out;
    out.reserve(w.size());
    for (int s : w) out.push_back(p.at(s));
    return out;
  }

  ExtElement basis(int om, const Word& w) const {
    (void)omega_.at(om);
    auto [exp, v] = base_.basis_product({}, w);
    ExtElement e;
    e[{om, v}] = HalfLaurent::u_pow(exp);
    return e;
  }

  ExtElement add(const ExtElement& a, const ExtElement& b) const {
    ExtElement out = a;
    for (const auto& [k, coeff] : b) {
      HalfLaurent v = out.count(k) ? out[k] + coeff : coeff;
      if (v.is_zero())
        out.erase(k);
      else
        out[k] = v;
    }
    return out;
  }

  ExtElement mul(const ExtElement& a, const ExtElement& b) const {
    ExtElement out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        const auto& [o1, w1] = ka;
        const auto& [o2, w2] = kb;
        // N_{o1} N_{w1} N_{o2} N_{w2}
        //   = N_{o1} N_{o2} N_{o2^{-1}(w1)} N_{w2}.
        Word moved = act(omega_inv(o2), w1);
        auto [exp, v] = base_.basis_product(moved, w2);
        std::pair<int, Word> key = {omega_mul(o1, o2), v};
        HalfLaurent term = ca * cb * HalfLaurent::u_pow(exp);
        auto it = out.find(key);
        HalfLaurent sum = it == out.end() ? term : it->second + term;
        if (sum.is_zero())
          out.erase(key);
        else
          out[key] = sum;
      }
    return out;
  }

 private:
  int omega_index(const std::vector<int>& p) const {
    for (std::size_t i = 0; i < omega_.size(); ++i)
      if (omega_[i] == p) return static_cast<int>(i);
    throw std::invalid_argument("extension: permutations are not closed");
  }

  HeckeAlgebra base_;
  std::vector<std::vector<int>> omega_;
};

/// Iwahori–Hecke algebra of a catalog entry, extended by the effective
/// omega action on the relative diagram.
inline ExtendedHeckeAlgebra iwahori_hecke(const CatalogEntry& e,
                                          int max_word_length = 12) {
  return ExtendedHeckeAlgebra(
      HeckeAlgebra(HeckePresentation::from_entry(e), max_word_length),
      effective_omega_action(e.omega.element_perms));
}

}  // namespace unillc
