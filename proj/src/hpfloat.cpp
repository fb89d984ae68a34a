#include "kron/hpfloat.hpp"

#include <utility>
#include <vector>

namespace kron {

HpFloat::HpFloat() {
  mpfr_init2(v_, kPrec);
  mpfr_set_nan(v_);
}

HpFloat::HpFloat(long v) {
  mpfr_init2(v_, kPrec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

HpFloat::HpFloat(double v) {
  mpfr_init2(v_, kPrec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

HpFloat::HpFloat(const BigInteger& v, mpfr_rnd_t rnd) {
  mpfr_init2(v_, kPrec);
  mpfr_set_z(v_, v.get_mpz_t(), rnd);
}

HpFloat::HpFloat(const BigRational& v, mpfr_rnd_t rnd) {
  mpfr_init2(v_, kPrec);
  mpfr_set_q(v_, v.get_mpq_t(), rnd);
}

HpFloat::HpFloat(const HpFloat& o) {
  mpfr_init2(v_, kPrec);
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

HpFloat::HpFloat(HpFloat&& o) noexcept {
  mpfr_init2(v_, kPrec);
  mpfr_swap(v_, o.v_);
}

HpFloat& HpFloat::operator=(HpFloat o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

HpFloat::~HpFloat() { mpfr_clear(v_); }

HpFloat HpFloat::pi(mpfr_rnd_t rnd) {
  HpFloat r;
  mpfr_const_pi(r.v_, rnd);
  return r;
}

bool HpFloat::is_nan() const { return mpfr_nan_p(v_) != 0; }

int HpFloat::cmp(const HpFloat& o) const { return mpfr_cmp(v_, o.v_); }

int HpFloat::cmp(const BigRational& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }

double HpFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

std::string HpFloat::str(int sig_digits) const {
  char fmt[32];
  snprintf(fmt, sizeof fmt, "%%.%dRg", sig_digits);
  std::vector<char> buf(sig_digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
  return std::string(buf.data());
}

#define KRON_HP_BINOP(name, fn)                                        \
  HpFloat name(const HpFloat& a, const HpFloat& b, mpfr_rnd_t rnd) {   \
    HpFloat r;                                                         \
    fn(r.raw(), a.raw(), b.raw(), rnd);                                \
    return r;                                                          \
  }

KRON_HP_BINOP(add, mpfr_add)
KRON_HP_BINOP(sub, mpfr_sub)
KRON_HP_BINOP(mul, mpfr_mul)
KRON_HP_BINOP(div, mpfr_div)

#undef KRON_HP_BINOP

HpFloat mul_z(const HpFloat& a, const BigInteger& b, mpfr_rnd_t rnd) {
  HpFloat r;
  mpfr_mul_z(r.raw(), a.raw(), b.get_mpz_t(), rnd);
  return r;
}

HpFloat div_z(const HpFloat& a, const BigInteger& b, mpfr_rnd_t rnd) {
  HpFloat r;
  mpfr_div_z(r.raw(), a.raw(), b.get_mpz_t(), rnd);
  return r;
}

HpFloat neg(const HpFloat& a) {
  HpFloat r;
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

#define KRON_HP_UNOP(name, fn)                        \
  HpFloat name(const HpFloat& a, mpfr_rnd_t rnd) {    \
    HpFloat r;                                        \
    fn(r.raw(), a.raw(), rnd);                        \
    return r;                                         \
  }

KRON_HP_UNOP(sqrt_hp, mpfr_sqrt)
KRON_HP_UNOP(exp_hp, mpfr_exp)
KRON_HP_UNOP(log_hp, mpfr_log)

#undef KRON_HP_UNOP

}  // namespace kron
