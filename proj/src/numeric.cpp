#include "lcl/numeric.hpp"

#include <cstdio>
#include <vector>

#include "lcl/error.hpp"

namespace lcl {

mpz_class tower(unsigned k, std::uint64_t max_bits) {
  mpz_class v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (v > mpz_class(static_cast<unsigned long>(max_bits)))
      throw GuardError("2^" + v.get_str() + " bits", max_bits, "tower materialization");
    mpz_class next = 1;
    mpz_mul_2exp(next.get_mpz_t(), next.get_mpz_t(), v.get_ui());
    v = next;
  }
  return v;
}

unsigned long ceil_log2(const mpz_class& x) {
  if (x <= 1) return 0;
  // sizeinbase(x,2) = floor(log2 x)+1; exact powers of two drop one.
  std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  mpz_class pow2 = 1;
  mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), bits - 1);
  return pow2 == x ? bits - 1 : bits;
}

unsigned log_star(const mpz_class& x) {
  mpz_class v = x;
  unsigned steps = 0;
  while (v > 1) {
    v = static_cast<unsigned long>(ceil_log2(v));
    ++steps;
  }
  return steps;
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
  if (n < 0) return 0;
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

mpz_class multiset_count(const mpz_class& s, unsigned long k) {
  if (s == 0) return k == 0 ? 1 : 0;
  return binomial(s + static_cast<long>(k) - 1, k);
}

mpz_class ceil_log2_pow(const mpz_class& base, const mpz_class& expo) {
  if (base < 2 || expo < 1) throw LclError("ceil_log2_pow needs base >= 2, expo >= 1");
  if (mpz_popcount(base.get_mpz_t()) == 1) {
    unsigned long k = mpz_sizeinbase(base.get_mpz_t(), 2) - 1;
    return expo * k;
  }
  // For other bases expo*log2(base) is irrational; directed rounding from
  // both sides pins its ceiling exactly.
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(mpz_sizeinbase(expo.get_mpz_t(), 2)) + 96;
  for (int tries = 0; tries < 6; ++tries, prec *= 2) {
    mpfr_t lo, hi, e;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_init2(e, prec);
    mpfr_set_z(e, expo.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(lo, base.get_mpz_t(), MPFR_RNDD);
    mpfr_log2(lo, lo, MPFR_RNDD);
    mpfr_mul(lo, lo, e, MPFR_RNDD);
    mpfr_set_z(hi, base.get_mpz_t(), MPFR_RNDU);
    mpfr_log2(hi, hi, MPFR_RNDU);
    mpfr_mul(hi, hi, e, MPFR_RNDU);
    mpz_class cl, ch;
    mpfr_get_z(cl.get_mpz_t(), lo, MPFR_RNDU);
    mpfr_get_z(ch.get_mpz_t(), hi, MPFR_RNDU);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(e);
    if (cl == ch) return cl;
  }
  throw LclError("log2 bound did not stabilize");
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a_hex(const std::string& data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
  return buf;
}

BigFloat::BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
BigFloat::BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::log2_of(const mpz_class& x) {
  BigFloat t(prec());
  t.set(x);
  mpfr_log2(v_, t.v_, MPFR_RNDN);
}

std::string BigFloat::to_decimal(int digits) const {
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%dRNf", digits);
  char* s = nullptr;
  mpfr_asprintf(&s, fmt, v_);
  std::string out = s ? s : "nan";
  mpfr_free_str(s);
  return out;
}

}  // namespace lcl
