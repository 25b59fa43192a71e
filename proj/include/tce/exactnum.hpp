#pragma once

// Exact arithmetic over Q(sqrt 2) and the LaTeX value syntax used by TCE documents.

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstring>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include "tce/error.hpp"

namespace tce {

using Rational = mpq_class;

namespace detail {

inline int sgn(const Rational& q) { return ::sgn(q); }

inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw MathError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Square root of a non-negative rational when it is itself rational.
/// mpf get_d truncates; pick whichever neighbour is nearer.
inline double nearest_double(const mpf_class& v) {
  const double t = v.get_d();
  if (!std::isfinite(t) || v == 0) return t;
  const double away = std::nextafter(t, v > 0 ? HUGE_VAL : -HUGE_VAL);
  const mpf_class dt = abs(v - mpf_class(t, 256));
  const mpf_class da = abs(v - mpf_class(away, 256));
  if (da < dt) return away;
  if (da == dt) {
    // Tie: even mantissa.
    std::int64_t bits;
    std::memcpy(&bits, &t, sizeof bits);
    return (bits & 1) ? away : t;
  }
  return t;
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return make_rational(rn, rd);
}

}  // namespace detail

/// An element rat + rad * sqrt(2) of Q(sqrt 2). The representation is unique, so
/// structural equality is numeric equality.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(long v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
  ExactValue(int v) : rat_(v) {}   // NOLINT(google-explicit-constructor)
  explicit ExactValue(Rational rat, Rational rad = 0) : rat_(std::move(rat)), rad_(std::move(rad)) {
    rat_.canonicalize();
    rad_.canonicalize();
  }

  static ExactValue sqrt2() { return ExactValue(Rational(0), Rational(1)); }
  static ExactValue fraction(long num, long den) {
    return ExactValue(detail::make_rational(num, den));
  }

  const Rational& rat() const noexcept { return rat_; }
  const Rational& rad() const noexcept { return rad_; }

  bool is_zero() const { return rat_ == 0 && rad_ == 0; }
  bool is_rational() const { return rad_ == 0; }
  bool is_integer() const { return rad_ == 0 && rat_.get_den() == 1; }

  /// Sign of the real number, decided without rounding.
  int sign() const {
    const int sp = detail::sgn(rat_);
    const int sq = detail::sgn(rad_);
    if (sp >= 0 && sq >= 0) return (sp > 0 || sq > 0) ? 1 : 0;
    if (sp <= 0 && sq <= 0) return -1;
    // Opposite signs: compare p^2 against 2 q^2.
    const int cmp = ::cmp(Rational(rat_ * rat_), Rational(2 * rad_ * rad_));
    const int mag = (cmp > 0) - (cmp < 0);
    return sp > 0 ? mag : -mag;
  }

  ExactValue conjugate() const { return ExactValue(rat_, -rad_); }
  ExactValue abs() const { return sign() < 0 ? -*this : *this; }

  /// p^2 - 2 q^2, the field norm.
  Rational norm() const { return rat_ * rat_ - 2 * rad_ * rad_; }

  ExactValue inverse() const {
    if (is_zero()) throw MathError("division by zero");
    const Rational n = norm();
    return ExactValue(rat_ / n, -rad_ / n);
  }

  /// Nearest binary64 of a 256-bit evaluation.
  double to_double() const {
    if (rad_ == 0) return rat_.get_d() == 0 ? 0.0 : detail::nearest_double(mpf_class(rat_, 256));
    constexpr mp_bitcnt_t kBits = 256;
    const mpf_class root2 = sqrt(mpf_class(2, kBits));
    const mpf_class p(rat_, kBits);
    const mpf_class q(rad_, kBits);
    if (detail::sgn(rat_) * detail::sgn(rad_) >= 0) return detail::nearest_double(mpf_class(p + q * root2, kBits));
    // Opposite signs cancel; evaluate norm / conjugate instead.
    const mpf_class n(norm(), kBits);
    return detail::nearest_double(mpf_class(n / (p - q * root2), kBits));
  }

  ExactValue operator-() const { return ExactValue(-rat_, -rad_); }

  ExactValue& operator+=(const ExactValue& o) {
    rat_ += o.rat_;
    rad_ += o.rad_;
    return *this;
  }
  ExactValue& operator-=(const ExactValue& o) {
    rat_ -= o.rat_;
    rad_ -= o.rad_;
    return *this;
  }
  ExactValue& operator*=(const ExactValue& o) {
    Rational r = rat_ * o.rat_ + 2 * rad_ * o.rad_;
    Rational s = rat_ * o.rad_ + rad_ * o.rat_;
    rat_ = std::move(r);
    rad_ = std::move(s);
    return *this;
  }
  ExactValue& operator/=(const ExactValue& o) { return *this *= o.inverse(); }

  friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
  friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
  friend ExactValue operator*(ExactValue a, const ExactValue& b) { return a *= b; }
  friend ExactValue operator/(ExactValue a, const ExactValue& b) { return a /= b; }

  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.rat_ == b.rat_ && a.rad_ == b.rad_;
  }
  friend std::strong_ordering operator<=>(const ExactValue& a, const ExactValue& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational rat_{0};
  Rational rad_{0};
};

/// Orders by representation (rat, then rad); cheaper than numeric order, usable as a map key.
struct ReprLess {
  bool operator()(const ExactValue& a, const ExactValue& b) const {
    const int c = ::cmp(a.rat(), b.rat());
    if (c != 0) return c < 0;
    return ::cmp(a.rad(), b.rad()) < 0;
  }
};

inline int sign(const ExactValue& v) { return v.sign(); }
inline double to_double(const ExactValue& v) { return v.to_double(); }

/// Square root inside Q(sqrt 2), or nullopt when it leaves the field.
/// Throws MathError for negative input.
inline std::optional<ExactValue> exact_sqrt(const ExactValue& a) {
  const int s = a.sign();
  if (s < 0) throw MathError("square root of a negative value");
  if (s == 0) return ExactValue{};
  const Rational& p = a.rat();
  const Rational& q = a.rad();
  // (u + v sqrt2)^2 = p + q sqrt2  <=>  u^2 + 2 v^2 = p,  2uv = q.
  // t = u^2 solves t^2 - p t + q^2/2 = 0.
  const Rational disc = p * p - 2 * q * q;
  const auto root = detail::rational_sqrt(disc);
  if (!root) return std::nullopt;
  for (const Rational& t : {Rational((p + *root) / 2), Rational((p - *root) / 2)}) {
    if (detail::sgn(t) < 0) continue;
    const auto u = detail::rational_sqrt(t);
    if (!u) continue;
    Rational v;
    if (*u == 0) {
      // q must vanish; v^2 = p / 2.
      if (q != 0) continue;
      const auto vv = detail::rational_sqrt(Rational(p / 2));
      if (!vv) continue;
      v = *vv;
    } else {
      v = q / (2 * *u);
    }
    ExactValue cand(*u, v);
    if (cand.sign() < 0) cand = -cand;
    if (cand * cand == a) return cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LaTeX values

namespace detail {

/// Whitespace-free view of the input with a map back to source offsets.
class LatexCursor {
 public:
  explicit LatexCursor(std::string_view src) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      const char c = src[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
      text_.push_back(c);
      origin_.push_back(i);
    }
    origin_.push_back(src.size());
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t where() const { return origin_[pos_]; }

  bool accept(std::string_view tok) {
    if (std::string_view(text_).substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  bool accept_frac() { return accept("\\frac{") || accept("\\dfrac{") || accept("\\tfrac{"); }
  bool accept_sqrt2() { return accept("\\sqrt{2}"); }

  mpz_class uint() {
    const std::size_t start = pos_;
    while (!done() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(text_.substr(start, pos_ - start), 10);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, where()); }

 private:
  std::string text_;
  std::vector<std::size_t> origin_;
  std::size_t pos_ = 0;
};

struct LatexTerm {
  Rational coeff;
  bool radical = false;
};

inline LatexTerm parse_latex_term(LatexCursor& cur) {
  int sign = 1;
  if (cur.accept("+")) {
  } else if (cur.accept("-")) {
    sign = -1;
  }
  LatexTerm term;
  if (cur.accept_frac()) {
    if (cur.accept_sqrt2()) {
      // \frac{\sqrt{2}}{d}
      cur.expect("}{");
      const mpz_class den = cur.uint();
      cur.expect("}");
      if (den == 0) cur.fail("zero denominator");
      term = {make_rational(1, den), true};
    } else {
      const mpz_class num = cur.uint();
      if (cur.accept_sqrt2()) {
        // \frac{n\sqrt{2}}{d}
        cur.expect("}{");
        const mpz_class den = cur.uint();
        cur.expect("}");
        if (den == 0) cur.fail("zero denominator");
        term = {make_rational(num, den), true};
      } else {
        cur.expect("}{");
        const mpz_class den = cur.uint();
        cur.expect("}");
        if (den == 0) cur.fail("zero denominator");
        term = {make_rational(num, den), cur.accept_sqrt2()};
      }
    }
  } else if (cur.peek() >= '0' && cur.peek() <= '9') {
    const mpz_class num = cur.uint();
    term = {Rational(num), cur.accept_sqrt2()};
  } else if (cur.accept_sqrt2()) {
    term = {Rational(1), true};
  } else {
    cur.fail("expected a number, \\frac or \\sqrt{2}");
  }
  if (sign < 0) term.coeff = -term.coeff;
  return term;
}

inline std::string rational_latex(const Rational& q) {
  const mpz_class num = abs(q.get_num());
  std::string body = q.get_den() == 1 ? num.get_str()
                                      : "\\frac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
  return sgn(q) < 0 ? "-" + body : body;
}

inline std::string radical_latex(const Rational& q) {
  const mpz_class num = abs(q.get_num());
  const std::string coeff = num == 1 ? std::string() : num.get_str();
  std::string body = q.get_den() == 1
                         ? coeff + "\\sqrt{2}"
                         : "\\frac{" + coeff + "\\sqrt{2}}{" + q.get_den().get_str() + "}";
  return sgn(q) < 0 ? "-" + body : body;
}

}  // namespace detail

/// Parses `term` or `term sign term` (one rational and one radical term).
inline ExactValue parse_latex(std::string_view s) {
  detail::LatexCursor cur(s);
  if (cur.done()) cur.fail("empty value");
  const detail::LatexTerm first = detail::parse_latex_term(cur);
  if (cur.done()) {
    return first.radical ? ExactValue(Rational(0), first.coeff) : ExactValue(first.coeff);
  }
  if (cur.peek() != '+' && cur.peek() != '-') cur.fail("expected '+' or '-'");
  const std::size_t second_at = cur.where();
  const detail::LatexTerm second = detail::parse_latex_term(cur);
  if (!cur.done()) cur.fail("trailing input");
  if (first.radical == second.radical) {
    throw ParseError("two terms of the same kind", second_at);
  }
  return first.radical ? ExactValue(second.coeff, first.coeff) : ExactValue(first.coeff, second.coeff);
}

/// Canonical LaTeX: zero terms omitted, rational term first, "0" for zero.
inline std::string format_latex(const ExactValue& v) {
  if (v.is_zero()) return "0";
  if (v.rad() == 0) return detail::rational_latex(v.rat());
  const std::string rad = detail::radical_latex(v.rad());
  if (v.rat() == 0) return rad;
  const std::string rat = detail::rational_latex(v.rat());
  return rad.front() == '-' ? rat + rad : rat + "+" + rad;
}

inline std::ostream& operator<<(std::ostream& os, const ExactValue& v) { return os << format_latex(v); }

// ---------------------------------------------------------------------------
// Scalar: exact or approximate

/// Either an exact Q(sqrt 2) value or a binary64 approximation. Any operation
/// with an approximate operand yields an approximate result.
class Scalar {
 public:
  Scalar() : v_(ExactValue{}) {}
  Scalar(ExactValue v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : v_(ExactValue(v)) {}        // NOLINT(google-explicit-constructor)
  static Scalar approx(double d) { return Scalar(Tag{}, d); }

  bool is_exact() const noexcept { return std::holds_alternative<ExactValue>(v_); }
  const ExactValue& exact() const {
    if (!is_exact()) throw NotExact("scalar is approximate");
    return std::get<ExactValue>(v_);
  }
  double to_double() const {
    return is_exact() ? std::get<ExactValue>(v_).to_double() : std::get<double>(v_);
  }
  int sign() const {
    if (is_exact()) return std::get<ExactValue>(v_).sign();
    const double d = std::get<double>(v_);
    return (d > 0) - (d < 0);
  }

  Scalar operator-() const {
    return is_exact() ? Scalar(-std::get<ExactValue>(v_)) : approx(-std::get<double>(v_));
  }
  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_exact() && b.exact().is_zero()) throw MathError("division by zero");
    if (!b.is_exact() && b.to_double() == 0.0) throw MathError("division by zero");
    return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Same track and same value. Mixed tracks never compare equal.
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

 private:
  struct Tag {};
  Scalar(Tag, double d) : v_(d) {}

  template <class Op>
  static Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.is_exact() && b.is_exact()) return Scalar(op(a.exact(), b.exact()));
    return approx(op(a.to_double(), b.to_double()));
  }

  std::variant<ExactValue, double> v_;
};

inline int sign(const Scalar& s) { return s.sign(); }
inline double to_double(const Scalar& s) { return s.to_double(); }
inline double to_double(double d) { return d; }

namespace detail {

/// Plain decimal literal: digits with a decimal point and/or an exponent.
inline std::optional<double> parse_decimal(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  bool digits = false, point = false, exponent = false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '.' && !point && !exponent) {
      point = true;
    } else if ((c == 'e' || c == 'E') && digits && !exponent) {
      exponent = true;
      if (i + 1 < body.size() && (body[i + 1] == '+' || body[i + 1] == '-')) ++i;
      digits = false;
    } else if (c == '-' && i == 0) {
    } else {
      return std::nullopt;
    }
  }
  if (!digits || (!point && !exponent)) return std::nullopt;
  double out = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(out)) return std::nullopt;
  return out;
}

}  // namespace detail

/// LaTeX-exact values become Exact; decimal literals become Approx.
inline Scalar parse_scalar(std::string_view s) {
  try {
    return Scalar(parse_latex(s));
  } catch (const ParseError& latex_error) {
    if (auto d = detail::parse_decimal(s)) return Scalar::approx(*d);
    throw;
  }
}

/// Exact values as canonical LaTeX; approximate values as the shortest
/// round-tripping decimal, always carrying a '.' or exponent.
inline std::string format_scalar(const Scalar& s) {
  if (s.is_exact()) return format_latex(s.exact());
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, s.to_double());
  std::string out(buf, res.ptr);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << format_scalar(s); }

}  // namespace tce
