#pragma once

/**
 * Exact rational functions in the half-power variable u (see
 * half_laurent.hpp).  Values are kept in a unique canonical form so that
 * structural equality equals mathematical equality:
 *
 *   - numerator and denominator share no polynomial factor,
 *   - the denominator is an ordinary polynomial with nonzero constant term
 *     (all u-power factors are moved into the numerator),
 *   - the denominator has integer coefficients with content 1 and positive
 *     leading coefficient.
 */

#include <stdexcept>
#include <string>
#include <utility>

#include "unillc/half_laurent.hpp"

namespace unillc {

namespace detail {

/// Quotient and remainder of ordinary polynomial division over Q.
/// Both inputs must be polynomials (no negative exponents); b nonzero.
inline std::pair<HalfLaurent, HalfLaurent> poly_divmod(const HalfLaurent& a,
                                                       const HalfLaurent& b) {
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero");
  HalfLaurent q, r = a;
  const long db = b.leading_exp();
  const Rat& lb = b.leading_coeff();
  while (!r.is_zero() && r.leading_exp() >= db) {
    long shift = r.leading_exp() - db;
    Rat factor = r.leading_coeff() / lb;
    HalfLaurent t = HalfLaurent::u_pow(shift, factor);
    q += t;
    r -= t * b;
  }
  return {q, r};
}

/// Monic gcd over Q of two ordinary polynomials (gcd(0,0) = 0).
inline HalfLaurent poly_gcd(HalfLaurent a, HalfLaurent b) {
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(a, b);
    (void)q;
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = a.scaled(Rat(1) / a.leading_coeff());
  return a;
}

/// Rational content with the sign of the leading coefficient: dividing by it
/// leaves an integer polynomial with coprime coefficients and positive
/// leading coefficient.
inline Rat signed_content(const HalfLaurent& p) {
  if (p.is_zero()) throw std::domain_error("signed_content: zero polynomial");
  mpz_class g(0), l(1);
  for (const auto& [e, c] : p.terms()) {
    mpz_class num = c.get_num();
    if (num < 0) num = -num;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat content = Rat(g) / Rat(l);
  if (p.leading_coeff() < 0) content = -content;
  return content;
}

}  // namespace detail

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(HalfLaurent::one()) {}

  /*implicit*/ RationalFunction(const HalfLaurent& p)
      : num_(p), den_(HalfLaurent::one()) {
    canonicalize();
  }

  explicit RationalFunction(long constant)
      : num_(HalfLaurent(constant)), den_(HalfLaurent::one()) {}

  explicit RationalFunction(const Rat& constant)
      : num_(HalfLaurent(constant)), den_(HalfLaurent::one()) {}

  RationalFunction(HalfLaurent numerator, HalfLaurent denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero())
      throw std::domain_error("RationalFunction: zero denominator");
    canonicalize();
  }

  static RationalFunction one() { return RationalFunction(1); }
  static RationalFunction zero() { return RationalFunction(); }
  static RationalFunction u_pow(long k) {
    return RationalFunction(HalfLaurent::u_pow(k));
  }
  static RationalFunction q_pow(long k) {
    return RationalFunction(HalfLaurent::q_pow(k));
  }

  const HalfLaurent& numerator() const { return num_; }
  const HalfLaurent& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  /// The value as a HalfLaurent when the denominator is 1.
  const HalfLaurent& as_laurent() const {
    if (!is_laurent())
      throw std::domain_error("as_laurent: nontrivial denominator");
    return num_;
  }

  // ---- field operations ---------------------------------------------------

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_,
                            a.den_ * b.den_);
  }

  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_,
                            a.den_ * b.den_);
  }

  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b) {
    if (b.is_zero())
      throw std::domain_error("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RationalFunction(den_, num_);
  }

  RationalFunction pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    RationalFunction r = one();
    RationalFunction base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      if (n > 1) base = base * base;
      n >>= 1;
    }
    return r;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  friend bool operator<(const RationalFunction& a, const RationalFunction& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  // ---- evaluation ---------------------------------------------------------

  /// Exact evaluation at u = u0; throws std::domain_error at a pole.
  Rat eval_u(const Rat& u0) const {
    Rat d = den_.eval_u(u0);
    if (d == 0)
      throw std::domain_error("evaluation at a pole (u = " + to_string(u0) +
                              ")");
    return num_.eval_u(u0) / d;
  }

  /// Exact evaluation at q = q0; requires even exponents throughout.
  Rat eval_q(const Rat& q0) const {
    if (!num_.is_q_polynomial() || !den_.is_q_polynomial())
      throw std::domain_error(
          "eval_q: value has odd u-exponents and is not a function of q");
    Rat d = den_.eval_q(q0);
    if (d == 0)
      throw std::domain_error("evaluation at a pole (q = " + to_string(q0) +
                              ")");
    return num_.eval_q(q0) / d;
  }

  /// Evaluation at q = q0, falling back to u = sqrt(q0) when odd exponents
  /// occur and q0 has an exact rational square root.
  Rat eval_q_via_sqrt(const Rat& q0) const {
    if (num_.is_q_polynomial() && den_.is_q_polynomial()) return eval_q(q0);
    Rat zero_test = den_.eval_q_via_sqrt(q0);
    if (zero_test == 0)
      throw std::domain_error("evaluation at a pole (q = " + to_string(q0) +
                              ")");
    return num_.eval_q_via_sqrt(q0) / zero_test;
  }

  bool is_q_function() const {
    return num_.is_q_polynomial() && den_.is_q_polynomial();
  }

  // ---- text form ----------------------------------------------------------

  /// "num" for polynomials, "(num)/(den)" otherwise, in the u variable.
  std::string render_u() const {
    if (den_.is_one()) return num_.render_u();
    return "(" + num_.render_u() + ")/(" + den_.render_u() + ")";
  }

  /// Same in the q variable; requires even exponents throughout.
  std::string render_q() const {
    if (den_.is_one()) return num_.render_q();
    return "(" + num_.render_q() + ")/(" + den_.render_q() + ")";
  }

  /// q-rendering when possible, u-rendering otherwise.
  std::string render() const {
    return is_q_function() ? render_q() : render_u();
  }

  /// Parses "poly" or "(poly)/(poly)" (whitespace insignificant).
  static RationalFunction parse(const std::string& text) {
    std::size_t i = 0, n = text.size();
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < n && text[i] == '(') {
      // Find the matching ')' for the numerator group.
      std::size_t depth = 0, j = i;
      for (; j < n; ++j) {
        if (text[j] == '(') ++depth;
        if (text[j] == ')' && --depth == 0) break;
      }
      if (j >= n)
        throw std::invalid_argument("rational function parse: unbalanced '('");
      std::string num_text = text.substr(i + 1, j - i - 1);
      std::size_t k = j + 1;
      while (k < n && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k == n) return RationalFunction(HalfLaurent::parse(num_text));
      if (text[k] != '/')
        throw std::invalid_argument("rational function parse: expected '/'");
      ++k;
      while (k < n && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k == n || text[k] != '(')
        throw std::invalid_argument(
            "rational function parse: expected '(' after '/'");
      std::size_t depth2 = 0, m = k;
      for (; m < n; ++m) {
        if (text[m] == '(') ++depth2;
        if (text[m] == ')' && --depth2 == 0) break;
      }
      if (m >= n)
        throw std::invalid_argument("rational function parse: unbalanced '('");
      std::string den_text = text.substr(k + 1, m - k - 1);
      for (std::size_t t = m + 1; t < n; ++t)
        if (!std::isspace(static_cast<unsigned char>(text[t])))
          throw std::invalid_argument(
              "rational function parse: trailing characters");
      return RationalFunction(HalfLaurent::parse(num_text),
                              HalfLaurent::parse(den_text));
    }
    return RationalFunction(HalfLaurent::parse(text));
  }

 private:
  HalfLaurent num_, den_;

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = HalfLaurent::one();
      return;
    }
    // Move all u-power factors of the denominator into the numerator.
    long td = den_.trailing_exp();
    if (td != 0) {
      den_ = den_.shifted(-td);
      num_ = num_.shifted(-td);
    }
    // Cancel the polynomial gcd (u-powers of the numerator stay aside).
    long tn = num_.trailing_exp();
    HalfLaurent num_poly = num_.shifted(-tn);
    HalfLaurent g = detail::poly_gcd(num_poly, den_);
    if (!g.is_one()) {
      num_poly = detail::poly_divmod(num_poly, g).first;
      den_ = detail::poly_divmod(den_, g).first;
    }
    num_ = num_poly.shifted(tn);
    // Normalize the denominator to a primitive integer polynomial with
    // positive leading coefficient.
    Rat c = detail::signed_content(den_);
    den_ = den_.scaled(Rat(1) / c);
    num_ = num_.scaled(Rat(1) / c);
  }
};

}  // namespace unillc
