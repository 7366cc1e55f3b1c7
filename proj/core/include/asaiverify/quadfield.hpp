#pragma once

#include <map>
#include <memory>
#include <unordered_map>

#include "asaiverify/util.hpp"

namespace asaiverify::quadfield {

enum class OmegaKind { sqrtD, halfIntegral };

struct QuadInt;

// All static data of K = Q(sqrt(D)) with D prime and class number one.
// Ring basis is (1, omega) with omega = sqrt(D) for D = 2,3 mod 4 and
// omega = (1+sqrt(D))/2 for D = 1 mod 4, so the ring is the maximal order.
struct FieldContext {
  i64 D = 0;
  i64 disc = 0;
  OmegaKind omega_kind = OmegaKind::sqrtD;
  // omega satisfies omega^2 = tr_omega * omega - nm_omega
  i64 tr_omega = 0;
  i64 nm_omega = 0;
  double omega_real = 0.0;  // real embedding of omega (positive root)
  i64 eps0_a = 0, eps0_b = 0;  // fundamental unit in the (1, omega) basis
  double log_eps0 = 0.0;
  i64 class_number = 0;
  Rational minkowski_bound;

  QuadInt omega() const;
  QuadInt sqrtD() const;  // the different generator delta as a ring element
  QuadInt eps0() const;
  QuadInt from_int(i64 n) const;
};

using FieldHandle = std::shared_ptr<const FieldContext>;

// Element a + b*omega of O_K with exact integer coordinates.
struct QuadInt {
  i64 a = 0;
  i64 b = 0;
  const FieldContext* ctx = nullptr;

  QuadInt() = default;
  QuadInt(i64 a_, i64 b_, const FieldContext* c) : a(a_), b(b_), ctx(c) {}

  bool is_zero() const { return a == 0 && b == 0; }

  QuadInt conj() const {
    // omega' = tr_omega - omega
    return QuadInt(add_i64(a, mul_i64(b, ctx->tr_omega)), -b, ctx);
  }
  i64 trace() const { return add_i64(mul_i64(2, a), mul_i64(b, ctx->tr_omega)); }
  i64 norm() const {
    // N(a + b omega) = a^2 + a b tr_omega + b^2 nm_omega
    i128 n = i128(a) * a + i128(a) * b * ctx->tr_omega + i128(b) * b * ctx->nm_omega;
    return checked_i64(n, "norm");
  }
  bool is_unit() const {
    i64 n = norm();
    return n == 1 || n == -1;
  }
  bool is_rational() const { return b == 0; }

  QuadInt operator+(const QuadInt& o) const { return QuadInt(add_i64(a, o.a), add_i64(b, o.b), ctx); }
  QuadInt operator-(const QuadInt& o) const { return QuadInt(add_i64(a, -o.a), add_i64(b, -o.b), ctx); }
  QuadInt operator-() const { return QuadInt(-a, -b, ctx); }
  QuadInt operator*(const QuadInt& o) const {
    // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = tr w - nm
    i128 bd = i128(b) * o.b;
    i128 ra = i128(a) * o.a - bd * ctx->nm_omega;
    i128 rb = i128(a) * o.b + i128(b) * o.a + bd * ctx->tr_omega;
    return QuadInt(checked_i64(ra, "mul"), checked_i64(rb, "mul"), ctx);
  }
  QuadInt operator*(i64 k) const { return QuadInt(mul_i64(a, k), mul_i64(b, k), ctx); }

  bool operator==(const QuadInt& o) const { return a == o.a && b == o.b; }
  bool operator!=(const QuadInt& o) const { return !(*this == o); }
  bool operator<(const QuadInt& o) const { return a != o.a ? a < o.a : b < o.b; }

  double real1() const { return double(a) + double(b) * ctx->omega_real; }
  double real2() const { return double(a) + double(b) * (double(ctx->tr_omega) - ctx->omega_real); }

  std::string str() const;
};

// exact division in K; ok=false when x/y is not in O_K
bool divide_exact(const QuadInt& x, const QuadInt& y, QuadInt& out);
bool divides(const QuadInt& y, const QuadInt& x);  // y | x in O_K

// element of K as x/den with x in O_K
struct KElem {
  QuadInt num;
  i64 den = 1;
};

// Explicit residue system of O_K/(c) from the Smith normal form of
// multiplication by c on the basis (1, omega).
struct ResidueRing {
  QuadInt modulus;
  i64 size = 0;
  i64 d1 = 1, d2 = 1;          // SNF diagonal, d1 | d2, d1*d2 = |N(c)|
  i64 U[2][2] = {{1, 0}, {0, 1}};     // unimodular row transform
  i64 Uinv[2][2] = {{1, 0}, {0, 1}};
  std::vector<QuadInt> reps;          // complete residue system, canonical order
  std::vector<i64> unit_positions;    // indices into reps of (O_K/c)^*
  std::vector<i64> inverse_of;        // same length as reps; inverse rep index or -1
  std::vector<i64> unit_rank;         // rep index -> position in unit_positions or -1

  i64 index_of(const QuadInt& x) const;   // canonical index in [0, size)
  QuadInt canonical_rep(const QuadInt& x) const;
  bool is_unit(const QuadInt& x) const { return inverse_of[index_of(x)] >= 0; }
  QuadInt inverse(const QuadInt& x) const;
  std::vector<QuadInt> unit_reps() const;
};

FieldHandle make_field(i64 D);
ResidueRing residue_ring(const QuadInt& c);

// (x, c) = (1) as ideals, via the Z-lattice spanned by x, x*omega, c, c*omega
bool coprime_to(const QuadInt& x, const QuadInt& c);
// absolute norm of the ideal (x, y); 1 iff coprime
i64 ideal_gcd_norm(const QuadInt& x, const QuadInt& y);

enum class Splitting { split, inert, ramified };

struct IdealPrimeFactor {
  i64 p = 0;                 // rational prime below
  QuadInt generator;         // generator of one prime ideal above p
  Splitting type = Splitting::inert;
  int exponent = 0;          // exponent of this prime ideal in the factorization
};

struct IdealFactorization {
  i64 n = 0;
  std::vector<IdealPrimeFactor> factors;  // one entry per distinct prime ideal
};

// factorization of the ideal (n) for a rational integer n != 0
IdealFactorization factor_in_K(i64 n, const FieldContext& ctx);
// factorization of the ideal (x) for a nonzero element
IdealFactorization factor_element(const QuadInt& x);

// all ideal divisors of (n), one generator each, norm-sorted
std::vector<QuadInt> ideal_divisors(i64 n, const FieldContext& ctx);
std::vector<QuadInt> ideal_divisors_of(const QuadInt& x);

// generator of the gcd ideal (x) + (y); canonical: rational d0 or d0*sqrtD when
// the gcd is conjugation-stable, otherwise any generator
QuadInt ideal_gcd(const QuadInt& x, const QuadInt& y);

// ideal Moebius function of (x): 0 on non-squarefree, else (-1)^(#prime ideals)
int mobius_K(const QuadInt& x);

// largest rational integer dividing x (content in the (1, omega) basis)
inline i64 rational_content(const QuadInt& x) { return gcd_i64(x.a, x.b); }

// v (ideal valuation) of x at the prime ideal generated by pi
int valuation_at(const QuadInt& x, const QuadInt& pi);

// unit-canonical associate: scan x * eps0^k (and sign) for the representative
// with smallest (|N|, |a|+|b|, a, b); two associates reduce to the same element
QuadInt canonical_associate(const QuadInt& x);

}  // namespace asaiverify::quadfield
