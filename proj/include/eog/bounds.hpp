#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "eog/graph.hpp"

namespace eog {

namespace detail {

inline constexpr mpfr_prec_t kPrecision = 256;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(x_, kPrecision); }
  explicit Mpfr(unsigned long v) : Mpfr() { mpfr_set_ui(x_, v, MPFR_RNDN); }
  ~Mpfr() { mpfr_clear(x_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

 private:
  mpfr_t x_;
};

inline void set_big(mpfr_ptr out, const BigInt& v, mpfr_rnd_t rnd) {
  mpfr_set_str(out, v.str().c_str(), 10, rnd);
}

inline BigInt ceil_to_big(mpfr_srcptr x) {
  mpz_t z;
  mpz_init(z);
  mpfr_get_z(z, x, MPFR_RNDU);
  char* s = mpz_get_str(nullptr, 10, z);
  BigInt out(s);
  void (*free_fn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(s, std::char_traits<char>::length(s) + 1);
  mpz_clear(z);
  return out;
}

// c5 = sqrt(9 log2(c3) (k-1) / 2) rounded in direction rnd.
inline void c5_into(mpfr_ptr out, int k, mpfr_rnd_t rnd) {
  mpfr_set_ui(out, static_cast<unsigned long>(4 * k - 4), rnd);
  mpfr_log2(out, out, rnd);
  mpfr_mul_ui(out, out, static_cast<unsigned long>(9 * (k - 1)), rnd);
  mpfr_div_ui(out, out, 2, rnd);
  mpfr_sqrt(out, out, rnd);
}

inline BigInt ceil_rational(const Rational& r) {
  BigInt p = numerator(r);
  BigInt q = denominator(r);
  BigInt quotient = p / q;
  if (quotient * q < p) ++quotient;
  return quotient;
}

}  // namespace detail

/// Certified enclosure lo <= value <= hi.
struct Enclosure {
  double lo = 0;
  double hi = 0;
};

/// Constants of the recursion for a forest with k >= 2 left vertices on ell vertices:
/// c1 = (134 k ell^2)^(1/(k-1)), c2 = 1/(k-1), c3 = 4k-4,
/// c4 = (c1 c3)^(3/c2) / 2, c5 = sqrt(9 log2(c3) / (2 c2)).
struct RecursionConstants {
  int k = 0;
  int ell = 0;
  BigInt c1_power;  // c1^(k-1) = 134 k ell^2, exact
  Enclosure c1;
  Rational c2;
  std::int64_t c3 = 0;
  Rational c4;  // exact: (134 k ell^2)^3 c3^(3(k-1)) / 2
  Enclosure c5;
};

inline RecursionConstants recursion_constants(int k, int ell) {
  if (k < 2) throw std::invalid_argument("recursion constants need k >= 2");
  RecursionConstants c;
  c.k = k;
  c.ell = ell;
  c.c1_power = BigInt(134) * k * ell * ell;
  c.c2 = Rational(1, k - 1);
  c.c3 = 4 * k - 4;
  c.c4 = Rational(power(c.c1_power, 3) * power(BigInt(c.c3), 3 * (k - 1))) / 2;

  detail::Mpfr x;
  for (mpfr_rnd_t rnd : {MPFR_RNDD, MPFR_RNDU}) {
    detail::set_big(x.get(), c.c1_power, rnd);
    mpfr_rootn_ui(x.get(), x.get(), static_cast<unsigned long>(k - 1), rnd);
    (rnd == MPFR_RNDD ? c.c1.lo : c.c1.hi) = mpfr_get_d(x.get(), rnd);
    detail::c5_into(x.get(), k, rnd);
    (rnd == MPFR_RNDD ? c.c5.lo : c.c5.hi) = mpfr_get_d(x.get(), rnd);
  }
  return c;
}

/// Upper bound max(c4 n, n 2^(c5 sqrt(log2 n))), rounded up. Every rounding
/// step goes upward, so the value is never below the real expression.
inline BigInt bound(std::int64_t n, int k, int ell) {
  if (n < 1) throw std::invalid_argument("bound needs n >= 1");
  const RecursionConstants c = recursion_constants(k, ell);
  const BigInt linear = detail::ceil_rational(c.c4 * n);

  detail::Mpfr x;
  detail::Mpfr c5;
  detail::c5_into(c5.get(), k, MPFR_RNDU);
  mpfr_set_si(x.get(), n, MPFR_RNDU);
  mpfr_log2(x.get(), x.get(), MPFR_RNDU);
  mpfr_sqrt(x.get(), x.get(), MPFR_RNDU);
  mpfr_mul(x.get(), x.get(), c5.get(), MPFR_RNDU);
  mpfr_exp2(x.get(), x.get(), MPFR_RNDU);
  mpfr_mul_si(x.get(), x.get(), n, MPFR_RNDU);
  const BigInt branch = detail::ceil_to_big(x.get());
  return linear > branch ? linear : branch;
}

/// t = ceil(2 log2 d0 / (3 log2 c3)), found exactly as the least t >= 1 with
/// c3^(3t) >= d0^2.
inline int iteration_count(const Rational& d0, int k) {
  if (k < 2) throw std::invalid_argument("iteration count needs k >= 2");
  if (d0 <= 1) throw std::invalid_argument("iteration count needs d0 > 1");
  const BigInt c3 = 4 * k - 4;
  const BigInt p2 = numerator(d0) * numerator(d0);
  const BigInt q2 = denominator(d0) * denominator(d0);
  int t = 1;
  BigInt lhs = power(c3, 3);
  while (lhs * q2 < p2) {
    lhs *= power(c3, 3);
    ++t;
  }
  return t;
}

/// Which of the three alternatives hold for (d0, m0) at t = iteration_count:
///   (a) d0^(c2 t/3) <= m0/d0,  (b) d0^(c2 t/3) <= (c1 c3)^t,
///   (c) d0^(c2 t/3) <= c3^(c2 C(t,2)).
/// Each is raised to the power 3(k-1) and compared exactly.
struct CaseCheck {
  int t = 0;
  bool a = false;
  bool b = false;
  bool c = false;
  bool any() const { return a || b || c; }
};

inline CaseCheck case_analysis(const Rational& d0, const Rational& m0, int k, int ell) {
  CaseCheck out;
  out.t = iteration_count(d0, k);
  const std::int64_t e = 3 * static_cast<std::int64_t>(k - 1);
  const Rational lhs = power(d0, out.t);
  const BigInt c3 = 4 * k - 4;
  out.a = lhs <= power(Rational(m0 / d0), e);
  out.b = lhs <= Rational(power(BigInt(134) * k * ell * ell, 3 * static_cast<std::int64_t>(out.t)) *
                          power(c3, e * out.t));
  const std::int64_t pairs = static_cast<std::int64_t>(out.t) * (out.t - 1) / 2;
  out.c = lhs <= Rational(power(c3, 3 * pairs));
  return out;
}

/// Trivial linear bound for k = 1 (stars with s edges): avoiding hosts have
/// maximum degree below s, hence at most floor((s-1) n / 2) edges.
inline BigInt star_bound(std::int64_t n, std::int64_t star_edges) {
  return BigInt((star_edges - 1) * n / 2);
}

}  // namespace eog
