#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace lcl {

// 2^2^...^2 (k twos); k=0 gives 1. Refuses to materialize beyond `max_bits`.
mpz_class tower(unsigned k, std::uint64_t max_bits = 1u << 20);

// ceil(log2 x) for x >= 1; 0 for x = 1.
unsigned long ceil_log2(const mpz_class& x);

// Iterations of ceil_log2 until the value drops to <= 1.
unsigned log_star(const mpz_class& x);

// Exact binomial coefficient.
mpz_class binomial(const mpz_class& n, unsigned long k);

// Exact ceil(expo * log2(base)) for base >= 2, expo >= 1: the bit size of
// base^expo without materializing it.
mpz_class ceil_log2_pow(const mpz_class& base, const mpz_class& expo);

// Number of size-k multisets over s symbols: C(s+k-1, k).
mpz_class multiset_count(const mpz_class& s, unsigned long k);

// FNV-1a 64-bit digest, hex-rendered.
std::uint64_t fnv1a(const std::string& data);
std::string fnv1a_hex(const std::string& data);

// RAII wrapper over an MPFR float at a fixed precision.
class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat& operator=(const BigFloat& o);
  ~BigFloat();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  void set(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }
  void set(const mpz_class& x) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  void set(const BigFloat& x) { mpfr_set(v_, x.v_, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Fixed-point decimal rendering with `digits` fractional digits.
  std::string to_decimal(int digits) const;

  void add(const BigFloat& a, const BigFloat& b) { mpfr_add(v_, a.v_, b.v_, MPFR_RNDN); }
  void sub(const BigFloat& a, const BigFloat& b) { mpfr_sub(v_, a.v_, b.v_, MPFR_RNDN); }
  void mul(const BigFloat& a, const BigFloat& b) { mpfr_mul(v_, a.v_, b.v_, MPFR_RNDN); }
  void div(const BigFloat& a, const BigFloat& b) { mpfr_div(v_, a.v_, b.v_, MPFR_RNDN); }
  void mul_ui(const BigFloat& a, unsigned long b) { mpfr_mul_ui(v_, a.v_, b, MPFR_RNDN); }
  void div_ui(const BigFloat& a, unsigned long b) { mpfr_div_ui(v_, a.v_, b, MPFR_RNDN); }
  void add_ui(const BigFloat& a, unsigned long b) { mpfr_add_ui(v_, a.v_, b, MPFR_RNDN); }
  // log2 of an exact integer.
  void log2_of(const mpz_class& x);
  void log2_of(const BigFloat& x) { mpfr_log2(v_, x.v_, MPFR_RNDN); }

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(double d) const { return mpfr_cmp_d(v_, d); }

private:
  mpfr_t v_;
};

}  // namespace lcl
