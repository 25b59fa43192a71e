#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <mpfr.h>

#include "tce/exactnum.hpp"

namespace tce::test {

/// 256-bit binary float, RAII.
class Big {
 public:
  static constexpr mpfr_prec_t kPrec = 256;

  Big() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  explicit Big(const ExactValue& x) : Big() {
    Big root2;
    mpfr_sqrt_ui(root2.v_, 2, MPFR_RNDN);
    Big rad;
    mpfr_set_q(rad.v_, x.rad().get_mpq_t(), MPFR_RNDN);
    mpfr_mul(rad.v_, rad.v_, root2.v_, MPFR_RNDN);
    mpfr_set_q(v_, x.rat().get_mpq_t(), MPFR_RNDN);
    mpfr_add(v_, v_, rad.v_, MPFR_RNDN);
  }
  Big(const Big& o) : Big() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big& operator=(const Big& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }

  friend Big operator+(const Big& a, const Big& b) { Big r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator-(const Big& a, const Big& b) { Big r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator*(const Big& a, const Big& b) { Big r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator/(const Big& a, const Big& b) { Big r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// |a - b| <= 2^-rel_bits * max(1, |a|, |b|)
  friend bool close(const Big& a, const Big& b, long rel_bits = 200) {
    Big diff = a - b;
    mpfr_abs(diff.v_, diff.v_, MPFR_RNDN);
    Big scale;
    mpfr_set_ui(scale.v_, 1, MPFR_RNDN);
    Big aa = a, bb = b;
    mpfr_abs(aa.v_, aa.v_, MPFR_RNDN);
    mpfr_abs(bb.v_, bb.v_, MPFR_RNDN);
    mpfr_max(scale.v_, scale.v_, aa.v_, MPFR_RNDN);
    mpfr_max(scale.v_, scale.v_, bb.v_, MPFR_RNDN);
    mpfr_mul_2si(scale.v_, scale.v_, -rel_bits, MPFR_RNDN);
    return mpfr_cmp(diff.v_, scale.v_) <= 0;
  }

 private:
  mpfr_t v_;
};

/// Random Q(sqrt 2) values: small rationals, Pell-style near cancellations
/// and occasional zeros.
class ValueFuzzer {
 public:
  explicit ValueFuzzer(std::uint64_t seed) : rng_(seed) {}

  ExactValue next() {
    const int mode = pick(0, 9);
    if (mode == 0) return ExactValue(0);
    if (mode == 1) {
      // p - q sqrt2 with p/q a convergent of sqrt 2: tiny but nonzero.
      static const long kPell[][2] = {{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}, {99, 70}, {239, 169},
                                      {577, 408}, {1393, 985}, {3363, 2378}, {8119, 5741}};
      const auto& c = kPell[pick(0, 10)];
      const long s = pick(0, 1) ? 1 : -1;
      return ExactValue(Rational(s * c[0]), Rational(-s * c[1]));
    }
    return ExactValue(rational(), mode == 2 ? Rational(0) : rational());
  }

 private:
  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rational rational() {
    Rational r(mpz_class(pick(-1000, 1000)), mpz_class(pick(1, 64)));
    r.canonicalize();
    return r;
  }
  std::mt19937_64 rng_;
};

}  // namespace tce::test
