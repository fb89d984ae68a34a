#pragma once

#include <mpfr.h>

#include <string>

#include "kron/algebra.hpp"

namespace kron {

// MPFR-backed float with a fixed 192-bit mantissa and explicit per-operation
// rounding modes, so upper-bound evaluations can round every step towards
// +infinity. 192 bits comfortably exceeds the 128-bit floor the soundness
// checks require.
class HpFloat {
 public:
  static constexpr mpfr_prec_t kPrec = 192;

  HpFloat();  // NaN
  explicit HpFloat(long v);
  explicit HpFloat(double v);
  explicit HpFloat(const BigInteger& v, mpfr_rnd_t rnd = MPFR_RNDN);
  explicit HpFloat(const BigRational& v, mpfr_rnd_t rnd = MPFR_RNDN);
  HpFloat(const HpFloat& o);
  HpFloat(HpFloat&& o) noexcept;
  HpFloat& operator=(HpFloat o) noexcept;
  ~HpFloat();

  static HpFloat pi(mpfr_rnd_t rnd = MPFR_RNDN);
  static HpFloat nan() { return HpFloat(); }

  bool is_nan() const;
  // three-way comparisons; exact against rationals
  int cmp(const HpFloat& o) const;
  int cmp(const BigRational& q) const;
  bool operator<(const HpFloat& o) const { return cmp(o) < 0; }
  bool operator>(const HpFloat& o) const { return cmp(o) > 0; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
  std::string str(int sig_digits = 20) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

HpFloat add(const HpFloat& a, const HpFloat& b, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat sub(const HpFloat& a, const HpFloat& b, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat mul(const HpFloat& a, const HpFloat& b, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat div(const HpFloat& a, const HpFloat& b, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat mul_z(const HpFloat& a, const BigInteger& b, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat div_z(const HpFloat& a, const BigInteger& b, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat neg(const HpFloat& a);
HpFloat sqrt_hp(const HpFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat exp_hp(const HpFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
HpFloat log_hp(const HpFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);

}  // namespace kron
