#include "asaiverify/zagier.hpp"

#include <cmath>
#include <cstdlib>

namespace asaiverify::zagier {

using charsums::chi_D;
using quadfield::residue_ring;
using quadfield::ResidueRing;

Complex bridge_lhs(i64 a, const QuadInt& l, const FieldContext& ctx) {
  if (a < 1) throw VerifyError(Err::ZeroModulus, "bridge needs a >= 1");
  i64 n = mul_i64(ctx.D, a);
  QuadInt modulus = ctx.sqrtD() * a;  // n / delta
  ResidueRing ring = residue_ring(modulus);
  Complex sum(0.0, 0.0);
  for (const QuadInt& r : ring.reps) {
    QuadInt rr = r * r.conj();
    if (rr.b != 0) throw VerifyError(Err::UnsupportedRing, "rr' not rational");
    if (mod_floor(rr.a - 1, n) != 0) continue;
    // e(Tr(r l)/n), a plain rational phase; well-defined mod n/delta
    i64 tr = (r * l).trace();
    sum += unit_exp(double(mod_floor(tr, n)) / double(n));
  }
  return sum;
}

namespace {

std::vector<i64> common_rational_divisors(const QuadInt& l, i64 a) {
  i64 content = quadfield::rational_content(l);
  i64 g = gcd_i64(content, a);
  return divisors_of(g);
}

// S_{D1}(n * inv(D2), m, c) with the (d | D1) character; D1 = 1 means the
// trivial character.  Terms with (D2, c) > 1 are defined as zero.
Complex twisted_S(i64 D1, i64 D2, i64 n, i64 m, i64 c, const FieldContext& ctx) {
  if (c < 1) throw VerifyError(Err::ZeroModulus, "twisted_S needs c >= 1");
  if (c == 1) return Complex(1.0, 0.0);
  if (gcd_i64(D2, c) != 1) return Complex(0.0, 0.0);
  i64 d2bar = inverse_mod(D2, c);
  i64 neff = mod_floor(i64(mod_floor(i128(n) * d2bar, c)), c);
  if (D1 == 1) return charsums::kloosterman_rational(neff, m, c);
  Complex sum(0.0, 0.0);
  for (i64 d = 1; d < c; ++d) {
    if (gcd_i64(d, c) != 1) continue;
    int chi = kronecker(d, D1);
    if (chi == 0) continue;
    i64 dbar = inverse_mod(d, c);
    i64 arg = mod_floor(i64(mod_floor(i128(neff) * dbar + i128(m) * d, c)), c);
    sum += double(chi) * unit_exp(double(arg) / double(c));
  }
  return sum;
}

}  // namespace

Complex H_b(i64 b, i64 n, i64 m, const FieldContext& ctx) {
  i64 D = ctx.D;
  Complex total(0.0, 0.0);
  // D2 = 1, D1 = D: psi(1)/1 = 1, c = b*D
  {
    i64 c = mul_i64(b, D);
    Complex s = twisted_S(D, 1, n, m, c, ctx);
    total += s * (1.0 / double(c));
  }
  // D2 = D, D1 = 1: needs D | n and (b, D) = 1; psi(D) = (1/D legendre) sqrt(D) = sqrt(D)
  if (mod_floor(n, D) == 0 && gcd_i64(b, D) == 1) {
    i64 c = b;  // b * D1
    double jac = (c == 1) ? 1.0 : double(kronecker(c, D));
    Complex s = twisted_S(1, D, n / D, m, c, ctx);
    total += s * (std::sqrt(double(D)) / double(D)) * (jac / double(c));
  }
  return total;
}

Complex bridge_rhs_coprime(i64 a, const QuadInt& l, const FieldContext& ctx) {
  if (a < 1) throw VerifyError(Err::ZeroModulus, "bridge needs a >= 1");
  i64 nl = l.norm();
  if (gcd_i64(nl, ctx.D) != 1)
    throw VerifyError(Err::LNotCoprimeToD, "(l, D) must be 1");
  Complex sum(0.0, 0.0);
  for (i64 r : common_rational_divisors(l, a)) {
    i64 first = nl / (r * r);
    i64 c = ctx.D * (a / r);
    sum += double(r) * charsums::kloosterman_twisted(first, 1, c, ctx);
  }
  return sum * (1.0 / std::sqrt(double(ctx.D)));
}

Complex bridge_rhs_general(i64 a, const QuadInt& l, const FieldContext& ctx) {
  if (a < 1) throw VerifyError(Err::ZeroModulus, "bridge needs a >= 1");
  i64 nl = l.norm();
  Complex sum(0.0, 0.0);
  for (i64 r : common_rational_divisors(l, a))
    sum += H_b(a / r, -(nl / (r * r)), -1, ctx);
  return sum * (double(a) * std::sqrt(double(ctx.D)));
}

}  // namespace asaiverify::zagier
