#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace asaiverify {

using i64 = std::int64_t;
using i128 = __int128;
using Complex = std::complex<double>;

// Error taxonomy shared across the toolkit.  Each operation documents which
// kinds it may raise.
enum class Err {
  NotPrime,
  ClassNumberNotOne,
  UnsupportedRing,
  ZeroModulus,
  GeneratorSearchExhausted,
  Overflow,
  NonIntegralR,
  NonIntegralLambda,
  DNotDividesN,
  LNotCoprimeToD,
  PoleProximity,
  QuadratureFailure,
  TruncationBudgetExceeded,
  RegimeExceeded,
  UnknownSuite,
  ConfigInvalid,
  IoFailure,
};

class VerifyError : public std::runtime_error {
public:
  Err kind;
  VerifyError(Err k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// ---------------------------------------------------------------------------
// checked 64-bit arithmetic (desk-scale inputs; anything that would overflow
// signals a bug in the caller, not a value to silently wrap)

inline i64 checked_i64(i128 v, const char* what = "value") {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw VerifyError(Err::Overflow, std::string("64-bit overflow in ") + what);
  return static_cast<i64>(v);
}

inline i64 mul_i64(i64 a, i64 b) { return checked_i64(i128(a) * i128(b), "product"); }
inline i64 add_i64(i64 a, i64 b) { return checked_i64(i128(a) + i128(b), "sum"); }

inline i64 gcd_i64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// floor division / true mathematical mod
inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  if (r != 0 && ((r < 0) != (m < 0))) r += m;
  return r;
}

// ---------------------------------------------------------------------------
// exact rationals on 64 bits with 128-bit intermediates

struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;
  Rational(i64 n) : num(n), den(1) {}
  Rational(i64 n, i64 d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw VerifyError(Err::Overflow, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i64 g = gcd_i64(num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw VerifyError(Err::Overflow, "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rational r;
    r.num = checked_i64(n, "rational numerator");
    r.den = checked_i64(d, "rational denominator");
    return r;
  }

  Rational operator+(const Rational& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
  }
  Rational operator-(const Rational& o) const {
    return make(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
  }
  Rational operator*(const Rational& o) const {
    return make(i128(num) * o.num, i128(den) * o.den);
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw VerifyError(Err::Overflow, "rational division by zero");
    return make(i128(num) * o.den, i128(den) * o.num);
  }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  double to_double() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// ---------------------------------------------------------------------------
// elementary multiplicative number theory over Z

inline bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (i64 f = 37; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

struct PrimePower {
  i64 p;
  int e;
};

inline std::vector<PrimePower> factorize(i64 n) {
  if (n < 0) n = -n;
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.push_back({p, e});
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::vector<i64> divisors_of(i64 n) {
  auto fac = factorize(n);
  std::vector<i64> divs{1};
  for (const auto& [p, e] : fac) {
    size_t sz = divs.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline int mobius(i64 n) {
  if (n == 1) return 1;
  int cnt = 0;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    ++cnt;
  }
  return (cnt % 2 == 0) ? 1 : -1;
}

inline i64 euler_phi(i64 n) {
  i64 r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

// Kronecker symbol (a|n), full generality.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -sign;
  }
  int v = 0;
  while (n % 2 == 0) { n /= 2; ++v; }
  if (v % 2 == 1) {
    if (a % 2 == 0) return 0;
    i64 am8 = mod_floor(a, 8);
    if (am8 == 3 || am8 == 5) sign = -sign;
  }
  a = mod_floor(a, n);
  while (a != 0) {
    int w = 0;
    while (a % 2 == 0) { a /= 2; ++w; }
    if (w % 2 == 1) {
      i64 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) sign = -sign;
    }
    // quadratic reciprocity for odd positive a, n
    if (a % 4 == 3 && n % 4 == 3) sign = -sign;
    i64 t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? sign : 0;
}

inline i64 power_mod(i64 base, i64 exp, i64 mod) {
  i128 r = 1, b = mod_floor(base, mod);
  while (exp > 0) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return i64(r);
}

// inverse of a modulo m (gcd(a,m)=1), extended Euclid
inline i64 inverse_mod(i64 a, i64 m) {
  i64 t = 0, nt = 1, r = m, nr = mod_floor(a, m);
  while (nr != 0) {
    i64 q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw VerifyError(Err::Overflow, "inverse_mod of non-unit");
  return mod_floor(t, m);
}

// e(x) = exp(2 pi i x)
inline Complex unit_exp(double x) {
  double th = 6.283185307179586476925286766559 * x;
  return Complex(std::cos(th), std::sin(th));
}

// ---------------------------------------------------------------------------
// deterministic work distribution: run fn(i) for i in [0, count) on n workers,
// results are whatever fn writes (callers pre-size output slots per i)

int worker_count_from_env(int requested);

inline void parallel_for(i64 count, int workers, const std::function<void(i64)>& fn) {
  if (workers <= 1 || count < 2) {
    for (i64 i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<i64> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        i64 i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace asaiverify
