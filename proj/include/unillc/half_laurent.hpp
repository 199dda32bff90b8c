#pragma once

/**
 * Exact Laurent polynomials in a half-power indeterminate.
 *
 * The base variable is u; the convention throughout the library is q = u^2,
 * so u stands for a square root of a prime power q.  Coefficients are exact
 * arbitrary-precision rationals (GMP).  A HalfLaurent value is always held in
 * canonical form: the exponent->coefficient map contains no zero
 * coefficients, hence structural equality coincides with mathematical
 * equality.
 *
 * Note the GMP-wide precondition: mpq_class values passed in must be in
 * canonical form (mpq_class(p, q) does not reduce; call canonicalize()).
 * All rationals produced by mpq arithmetic are canonical automatically.
 */

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unillc {

/// Exact rational scalar type used across the library.
using Rat = mpq_class;

/// Renders a rational as "p" or "p/q".
inline std::string to_string(const Rat& r) { return r.get_str(); }

class HalfLaurent {
 public:
  /// Hard bound on |exponent|; arithmetic that would exceed it throws
  /// std::overflow_error instead of wrapping.
  static constexpr long kMaxExp = 1L << 20;

  HalfLaurent() = default;

  explicit HalfLaurent(long constant) {
    if (constant != 0) coeff_[0] = Rat(constant);
  }

  explicit HalfLaurent(const Rat& constant) {
    if (constant != 0) coeff_[0] = constant;
  }

  /// c * u^k.
  static HalfLaurent u_pow(long k, const Rat& c = Rat(1)) {
    check_exp(k);
    HalfLaurent p;
    if (c != 0) p.coeff_[k] = c;
    return p;
  }

  /// c * q^k = c * u^{2k}.
  static HalfLaurent q_pow(long k, const Rat& c = Rat(1)) {
    return u_pow(2 * k, c);
  }

  static HalfLaurent zero() { return HalfLaurent(); }
  static HalfLaurent one() { return HalfLaurent(1); }

  bool is_zero() const { return coeff_.empty(); }

  bool is_one() const {
    return coeff_.size() == 1 && coeff_.begin()->first == 0 &&
           coeff_.begin()->second == 1;
  }

  /// Number of nonzero terms.
  std::size_t term_count() const { return coeff_.size(); }

  /// Smallest exponent with nonzero coefficient; requires nonzero value.
  long trailing_exp() const {
    require_nonzero("trailing_exp");
    return coeff_.begin()->first;
  }

  /// Largest exponent with nonzero coefficient; requires nonzero value.
  long leading_exp() const {
    require_nonzero("leading_exp");
    return coeff_.rbegin()->first;
  }

  /// Coefficient of the largest exponent; requires nonzero value.
  const Rat& leading_coeff() const {
    require_nonzero("leading_coeff");
    return coeff_.rbegin()->second;
  }

  /// Coefficient of u^k (zero if absent).
  Rat coeff(long k) const {
    auto it = coeff_.find(k);
    return it == coeff_.end() ? Rat(0) : it->second;
  }

  /// True when every exponent is even, i.e. the value is a polynomial in q.
  bool is_q_polynomial() const {
    for (const auto& [e, c] : coeff_)
      if (e % 2 != 0) return false;
    return true;
  }

  /// True when no exponent is negative.
  bool is_polynomial() const {
    return coeff_.empty() || coeff_.begin()->first >= 0;
  }

  const std::map<long, Rat>& terms() const { return coeff_; }

  // ---- ring operations ----------------------------------------------------

  HalfLaurent operator-() const {
    HalfLaurent r = *this;
    for (auto& [e, c] : r.coeff_) c = -c;
    return r;
  }

  HalfLaurent& operator+=(const HalfLaurent& o) {
    for (const auto& [e, c] : o.coeff_) add_term(e, c);
    return *this;
  }

  HalfLaurent& operator-=(const HalfLaurent& o) {
    for (const auto& [e, c] : o.coeff_) add_term(e, -c);
    return *this;
  }

  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) {
    a += b;
    return a;
  }

  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) {
    a -= b;
    return a;
  }

  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r;
    for (const auto& [ea, ca] : a.coeff_)
      for (const auto& [eb, cb] : b.coeff_) {
        long e = checked_add(ea, eb);
        r.add_term(e, ca * cb);
      }
    return r;
  }

  HalfLaurent& operator*=(const HalfLaurent& o) {
    *this = *this * o;
    return *this;
  }

  HalfLaurent scaled(const Rat& s) const {
    HalfLaurent r;
    if (s == 0) return r;
    for (const auto& [e, c] : coeff_) r.coeff_[e] = c * s;
    return r;
  }

  /// Multiplies by u^k.
  HalfLaurent shifted(long k) const {
    HalfLaurent r;
    for (const auto& [e, c] : coeff_) r.coeff_[checked_add(e, k)] = c;
    return r;
  }

  /// Substitutes u^m for u (m >= 1); used for orders over extension fields.
  HalfLaurent exponents_scaled(long m) const {
    if (m < 1) throw std::invalid_argument("exponents_scaled: m must be >= 1");
    HalfLaurent r;
    for (const auto& [e, c] : coeff_) {
      if (e != 0 && (std::abs(e) > kMaxExp / m))
        throw std::overflow_error("HalfLaurent exponent overflow");
      r.coeff_[e * m] = c;
    }
    return r;
  }

  HalfLaurent pow(long n) const {
    if (n < 0) throw std::invalid_argument("HalfLaurent::pow: negative power");
    HalfLaurent r = one();
    HalfLaurent base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = n > 1 ? base * base : base;
      n >>= 1;
    }
    return r;
  }

  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
    return a.coeff_ == b.coeff_;
  }

  friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) {
    return !(a == b);
  }

  /// Total order (lexicographic on the canonical term map); used only to get
  /// deterministic containers, it has no algebraic meaning.
  friend bool operator<(const HalfLaurent& a, const HalfLaurent& b) {
    return a.coeff_ < b.coeff_;
  }

  // ---- evaluation ---------------------------------------------------------

  /// Exact evaluation at u = u0 (u0 != 0 required when negative exponents
  /// occur).
  Rat eval_u(const Rat& u0) const {
    Rat acc(0);
    for (const auto& [e, c] : coeff_) acc += c * rat_pow(u0, e);
    return acc;
  }

  /// Exact evaluation at q = q0; requires all exponents even.
  Rat eval_q(const Rat& q0) const {
    if (!is_q_polynomial())
      throw std::domain_error(
          "eval_q: value has odd u-exponents and is not a function of q");
    Rat acc(0);
    for (const auto& [e, c] : coeff_) acc += c * rat_pow(q0, e / 2);
    return acc;
  }

  /// Evaluation at q = q0 allowing odd exponents when q0 is a perfect square
  /// of a rational (then u0 = sqrt(q0) exactly).
  Rat eval_q_via_sqrt(const Rat& q0) const {
    if (is_q_polynomial()) return eval_q(q0);
    Rat u0;
    if (!exact_sqrt(q0, u0))
      throw std::domain_error(
          "eval: odd u-exponents present and q value has no exact rational "
          "square root");
    return eval_u(u0);
  }

  // ---- text form ----------------------------------------------------------

  /**
   * Renders in the variable u: terms in descending exponent order joined by
   * " + " / " - ", coefficients as integers or p/q fractions, unit
   * coefficients elided, exponent 1 written without ^.  Examples:
   * "u^4 - 1", "3*u^-2 + 1/2", "0".
   */
  std::string render_u() const { return render_impl("u", 1); }

  /**
   * Renders in the variable q (q = u^2); requires all exponents even.
   */
  std::string render_q() const {
    if (!is_q_polynomial())
      throw std::domain_error("render_q: odd u-exponents present");
    return render_impl("q", 2);
  }

  /// u-rendering when odd exponents occur, q-rendering otherwise.
  std::string render() const {
    return is_q_polynomial() ? render_q() : render_u();
  }

  /**
   * Parses the textual form produced by render_u/render_q.  Both variables
   * are accepted in any position ("q" meaning u^2), so every rendered form
   * round-trips.  Whitespace is insignificant.  Throws std::invalid_argument
   * on malformed input.
   */
  static HalfLaurent parse(const std::string& text);

 private:
  std::map<long, Rat> coeff_;

  void require_nonzero(const char* who) const {
    if (coeff_.empty())
      throw std::domain_error(std::string(who) + ": zero polynomial");
  }

  void add_term(long e, const Rat& c) {
    check_exp(e);
    auto it = coeff_.find(e);
    if (it == coeff_.end()) {
      if (c != 0) coeff_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) coeff_.erase(it);
    }
  }

  static void check_exp(long e) {
    if (e > kMaxExp || e < -kMaxExp)
      throw std::overflow_error("HalfLaurent exponent overflow");
  }

  static long checked_add(long a, long b) {
    long s = a + b;  // |a|,|b| <= kMaxExp so this cannot wrap in long
    check_exp(s);
    return s;
  }

  static Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
      if (e < 0)
        throw std::domain_error("evaluation at u = 0 with negative exponent");
      return Rat(0);
    }
    Rat base = x;
    long n = e;
    if (n < 0) {
      base = Rat(1) / base;
      n = -n;
    }
    Rat acc(1);
    while (n > 0) {
      if (n & 1) acc *= base;
      if (n > 1) base *= base;
      n >>= 1;
    }
    return acc;
  }

  /// Writes sqrt(x) into out and returns true when x is a square of a
  /// rational.
  static bool exact_sqrt(const Rat& x, Rat& out) {
    if (x < 0) return false;
    mpz_class num = x.get_num(), den = x.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = Rat(rn) / Rat(rd);
    return true;
  }

  std::string render_impl(const char* var, long unit) const {
    if (coeff_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
      Rat c = it->second;
      long e = it->first / unit;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      if (e != 0) {
        mono = var;
        if (e != 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) {
        out += to_string(c);
      } else if (c == 1) {
        out += mono;
      } else {
        out += to_string(c) + "*" + mono;
      }
    }
    return out;
  }
};

// ---- parser ---------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  HalfLaurent run() {
    HalfLaurent acc;
    skip_ws();
    if (at_end()) throw error("empty polynomial text");
    bool negative = take_sign_optional();
    for (;;) {
      acc += parse_term(negative);
      skip_ws();
      if (at_end()) break;
      char op = s_[pos_];
      if (op != '+' && op != '-') throw error("expected '+' or '-'");
      ++pos_;
      negative = op == '-';
      skip_ws();
      if (at_end()) throw error("dangling operator");
    }
    return acc;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  std::invalid_argument error(const std::string& why) const {
    return std::invalid_argument("polynomial parse error at offset " +
                                 std::to_string(pos_) + ": " + why);
  }

  bool at_end() const { return pos_ >= s_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool take_sign_optional() {
    if (!at_end() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      bool neg = s_[pos_] == '-';
      ++pos_;
      skip_ws();
      return neg;
    }
    return false;
  }

  bool peek_digit() const {
    return !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  bool peek_var() const {
    return !at_end() && (s_[pos_] == 'u' || s_[pos_] == 'q');
  }

  mpz_class parse_integer() {
    if (!peek_digit()) throw error("expected digits");
    std::size_t start = pos_;
    while (peek_digit()) ++pos_;
    return mpz_class(s_.substr(start, pos_ - start));
  }

  long parse_signed_long() {
    bool neg = false;
    if (!at_end() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    mpz_class v = parse_integer();
    if (!v.fits_slong_p()) throw error("exponent out of range");
    long r = v.get_si();
    return neg ? -r : r;
  }

  HalfLaurent parse_term(bool negative) {
    skip_ws();
    Rat coeff(1);
    bool saw_coeff = false;
    if (peek_digit()) {
      mpz_class num = parse_integer();
      mpz_class den(1);
      skip_ws();
      if (!at_end() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        den = parse_integer();
        if (den == 0) throw error("zero denominator");
      }
      coeff = Rat(num) / Rat(den);
      saw_coeff = true;
      skip_ws();
      if (!at_end() && s_[pos_] == '*') {
        ++pos_;
        skip_ws();
        if (!peek_var()) throw error("expected variable after '*'");
      }
    }
    long exp = 0;
    if (peek_var()) {
      long unit = s_[pos_] == 'q' ? 2 : 1;
      ++pos_;
      long e = 1;
      skip_ws();
      if (!at_end() && s_[pos_] == '^') {
        ++pos_;
        skip_ws();
        e = parse_signed_long();
      }
      if (e != 0 && std::abs(e) > HalfLaurent::kMaxExp / unit)
        throw error("exponent out of range");
      exp = e * unit;
    } else if (!saw_coeff) {
      throw error("expected coefficient or variable");
    }
    if (negative) coeff = -coeff;
    return HalfLaurent::u_pow(exp, coeff);
  }
};

}  // namespace detail

inline HalfLaurent HalfLaurent::parse(const std::string& text) {
  return detail::PolyParser(text).run();
}

}  // namespace unillc
