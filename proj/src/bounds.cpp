#include "kron/bounds.hpp"

#include <mpfr.h>

#include <numeric>
#include <stdexcept>

#include "kron/euler.hpp"
#include "kron/quiver.hpp"

namespace kron {

namespace {

// pi sqrt(2/3) (sqrt(a) + sqrt(b)), rounded up.
HpFloat entropy_exponent_up(long a, long b) {
  HpFloat sqa = sqrt_hp(HpFloat(a), MPFR_RNDU);
  HpFloat sqb = sqrt_hp(HpFloat(b), MPFR_RNDU);
  HpFloat two_thirds(make_rational(BigInteger(2), BigInteger(3)), MPFR_RNDU);
  HpFloat rate = mul(HpFloat::pi(MPFR_RNDU), sqrt_hp(two_thirds, MPFR_RNDU), MPFR_RNDU);
  return mul(rate, add(sqa, sqb, MPFR_RNDU), MPFR_RNDU);
}

}  // namespace

HpFloat chi_upper_bound(long a, long b, long m) {
  if (a < 1 || b < 1 || m < 1) throw std::invalid_argument("chi_upper_bound needs a, b, m >= 1");
  BigInteger exact = pow_integer(BigInteger(2), static_cast<unsigned long>(a + b));
  exact *= pow_integer(BigInteger(m), static_cast<unsigned long>(a + b - 1));
  exact *= pow_integer(BigInteger(b), static_cast<unsigned long>(a));
  exact *= pow_integer(BigInteger(a), static_cast<unsigned long>(b));
  HpFloat t(exact, MPFR_RNDU);
  t = mul(t, sqrt_hp(HpFloat(BigInteger(BigInteger(a) * b), MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
  t = mul(t, exp_hp(entropy_exponent_up(a, b), MPFR_RNDU), MPFR_RNDU);
  return div_z(t, factorial(a) * factorial(b), MPFR_RNDU);
}

BigInteger chi_partition_upper_bound_exact(const PartitionPair& pair, long m) {
  pair.a.validate();
  pair.b.validate();
  if (m < 1) throw std::invalid_argument("arrow multiplicity m must be positive");
  const long a = pair.a.total();
  const long b = pair.b.total();
  if (a < 1 || b < 1) throw std::invalid_argument("partition pair must have positive totals");
  if (pair.a.is_trivial() && pair.b.is_trivial()) {
    return pow_integer(BigInteger(m), static_cast<unsigned long>(a + b - 1)) *
           pow_integer(BigInteger(a), static_cast<unsigned long>(b - 1)) *
           pow_integer(BigInteger(b), static_cast<unsigned long>(a - 1));
  }
  const long ahat = pair.a.hat();
  const long bhat = pair.b.hat();
  BigInteger out = pow_integer(BigInteger(m), static_cast<unsigned long>(ahat + bhat - 1));
  out *= pow_integer(BigInteger(b), static_cast<unsigned long>(ahat));
  out *= pow_integer(BigInteger(a), static_cast<unsigned long>(bhat));
  std::map<long, long> exponents;
  for (const auto& [size, mult] : pair.a.parts) exponents[size] += mult;
  for (const auto& [size, mult] : pair.b.parts) exponents[size] += mult;
  for (const auto& [size, mult] : exponents) {
    out *= pow_integer(BigInteger(size), static_cast<unsigned long>(mult));
  }
  return out;
}

HpFloat chi_partition_upper_bound(const PartitionPair& pair, long m) {
  return HpFloat(chi_partition_upper_bound_exact(pair, m), MPFR_RNDU);
}

HpFloat interval_m1(long m) {
  if (m < 3) throw std::invalid_argument("interval endpoints need m >= 3");
  HpFloat s = sqrt_hp(HpFloat(BigInteger(BigInteger(m) * m - 4), MPFR_RNDD), MPFR_RNDD);
  return div(sub(HpFloat(m), s, MPFR_RNDU), HpFloat(2L), MPFR_RNDU);
}

HpFloat interval_m2(long m) {
  if (m < 3) throw std::invalid_argument("interval endpoints need m >= 3");
  HpFloat s = sqrt_hp(HpFloat(BigInteger(BigInteger(m) * m - 4), MPFR_RNDD), MPFR_RNDD);
  return div(add(HpFloat(m), s, MPFR_RNDD), HpFloat(2L), MPFR_RNDD);
}

namespace {

// Core evaluation; k_exact is null on grid points, where the radicand
// k(m-k)-1 is instead formed at doubled precision to survive cancellation
// near the interval ends.
AsymptoticValues asymptotic_core(long m, const HpFloat& kf, const BigRational* k_exact) {
  AsymptoticValues out;
  HpFloat one(1L);
  HpFloat lnm = log_hp(HpFloat(m), MPFR_RNDN);
  HpFloat ln2 = log_hp(HpFloat(2L), MPFR_RNDN);
  HpFloat lnk = log_hp(kf, MPFR_RNDN);
  HpFloat kp1 = add(kf, one, MPFR_RNDN);
  HpFloat km1 = sub(kf, one, MPFR_RNDN);
  HpFloat base = add(add(lnm, ln2, MPFR_RNDN), one, MPFR_RNDN);
  out.g = sub(mul(kp1, base, MPFR_RNDN), mul(km1, lnk, MPFR_RNDN), MPFR_RNDN);

  out.i_triv = HpFloat::nan();
  if (k_exact && k_exact->get_den() == 1 && *k_exact >= 1) {
    long kz = static_cast<long>(k_exact->get_num().get_si());
    HpFloat lf = log_hp(HpFloat(factorial(kz - 1), MPFR_RNDN), MPFR_RNDN);
    out.i_triv = sub(add(mul(lnm, HpFloat(kz + 1), MPFR_RNDN), one, MPFR_RNDN), lf, MPFR_RNDN);
  }

  const BigInteger A = BigInteger(m - 1) * (m - 1);
  const BigInteger B = BigInteger(m) * m - 2 * m;
  HpFloat K = sub(mul(HpFloat(A, MPFR_RNDN), log_hp(HpFloat(A, MPFR_RNDN), MPFR_RNDN), MPFR_RNDN),
                  mul(HpFloat(B, MPFR_RNDN), log_hp(HpFloat(B, MPFR_RNDN), MPFR_RNDN), MPFR_RNDN),
                  MPFR_RNDN);
  HpFloat sq_rad = HpFloat::nan();
  if (k_exact) {
    BigRational rad = *k_exact * (BigRational(m) - *k_exact) - 1;  // = -(k^2 - mk + 1) >= 0
    sq_rad = sqrt_hp(HpFloat(rad, MPFR_RNDN), MPFR_RNDN);
  } else {
    mpfr_t r, tmp;
    mpfr_init2(r, 2 * HpFloat::kPrec);
    mpfr_init2(tmp, 2 * HpFloat::kPrec);
    mpfr_si_sub(tmp, m, kf.raw(), MPFR_RNDN);   // m - k, exact at this precision
    mpfr_mul(r, kf.raw(), tmp, MPFR_RNDN);      // k (m - k)
    mpfr_sub_si(r, r, 1, MPFR_RNDN);            // k (m - k) - 1
    if (mpfr_sgn(r) < 0) mpfr_set_zero(r, 1);
    mpfr_sqrt(r, r, MPFR_RNDN);
    HpFloat s;
    mpfr_set(s.raw(), r, MPFR_RNDN);
    sq_rad = s;
    mpfr_clear(r);
    mpfr_clear(tmp);
  }
  out.f = mul(div(K, sqrt_hp(HpFloat(m - 2), MPFR_RNDN), MPFR_RNDN), sq_rad, MPFR_RNDN);
  out.h = div(out.g, out.f, MPFR_RNDN);
  return out;
}

}  // namespace

AsymptoticValues asymptotic_values(long m, const BigRational& k) {
  if (m < 3) throw std::invalid_argument("asymptotic curves need m >= 3");
  if (k <= 0) throw std::invalid_argument("slope ratio k must be positive");
  BigRational disc = k * k - BigRational(m) * k + 1;
  if (disc > 0) {
    throw std::domain_error("k lies outside the imaginary-root interval [m1, m2]");
  }
  return asymptotic_core(m, HpFloat(k, MPFR_RNDN), &k);
}

HpFloat min_h_on_grid(long m, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  HpFloat lo = interval_m1(m);
  HpFloat hi = interval_m2(m);
  HpFloat step = div(sub(hi, lo, MPFR_RNDD), HpFloat(static_cast<long>(points - 1)), MPFR_RNDD);
  HpFloat best = HpFloat::nan();
  for (int t = 0; t < points; ++t) {
    HpFloat k = t == points - 1 ? hi : add(lo, mul(step, HpFloat(static_cast<long>(t)), MPFR_RNDN), MPFR_RNDN);
    if (k.cmp(hi) > 0) k = hi;
    AsymptoticValues v = asymptotic_core(m, k, nullptr);
    if (best.is_nan() || v.h.cmp(best) < 0) best = v.h;
  }
  return best;
}

std::vector<BoundReport> bound_table(long a_max, long m, int workers) {
  if (a_max < 1) throw std::invalid_argument("bound table needs a_max >= 1");
  if (m < 3) throw std::invalid_argument("bound table needs m >= 3");
  std::vector<BoundReport> rows;
  for (long a = 1; a <= a_max; ++a) {
    for (long b = 1; b < a * m; ++b) {
      if (std::gcd(a, b) != 1) continue;
      if (BigInteger(a) * a + BigInteger(b) * b >= BigInteger(m) * a * b) continue;
      BoundReport r;
      r.a = a;
      r.b = b;
      r.m = m;
      r.chi_value = chi_kronecker(a, b, workers).chi.eval(BigInteger(m));
      r.upper_bound = chi_upper_bound(a, b, m);
      r.k = make_rational(BigInteger(b), BigInteger(a));
      r.ratio = div(HpFloat(r.chi_value, MPFR_RNDN), r.upper_bound, MPFR_RNDN);
      AsymptoticValues v = asymptotic_values(m, r.k);
      r.f = v.f;
      r.g = v.g;
      r.h = v.h;
      r.i_triv = v.i_triv;
      r.schur_root = true;
      r.dimension = moduli_dimension(a, b, m);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string bound_table_csv(const std::vector<BoundReport>& rows) {
  std::string out = "a,b,m,chi,upper_bound,ratio,k,f,g,h,i_triv,schur_root,dimension\n";
  for (const auto& r : rows) {
    out += std::to_string(r.a) + ',' + std::to_string(r.b) + ',' + std::to_string(r.m) + ',';
    out += rational_str(r.chi_value) + ',';
    out += r.upper_bound.str(12) + ',';
    out += r.ratio.str(12) + ',';
    out += rational_str(r.k) + ',';
    out += r.f.str(12) + ',';
    out += r.g.str(12) + ',';
    out += r.h.str(12) + ',';
    out += (r.i_triv.is_nan() ? std::string("nan") : r.i_triv.str(12)) + ',';
    out += (r.schur_root ? "true" : "false");
    out += ',' + std::to_string(r.dimension) + '\n';
  }
  return out;
}

}  // namespace kron
