#include "asaiverify/charsums.hpp"

#include <cstdlib>

namespace asaiverify::charsums {

using quadfield::divide_exact;
using quadfield::ideal_divisors_of;
using quadfield::ideal_gcd;
using quadfield::mobius_K;

Rational additive_phase(const KElem& x) {
  // x/delta + x'/delta' = (x - x')/sqrt(D); for x = (a + b*omega)/den the
  // numerator is b*(omega - omega')/sqrt(D) = b (half-integral) or 2b (sqrtD)
  const FieldContext& ctx = *x.num.ctx;
  i64 scale = (ctx.omega_kind == quadfield::OmegaKind::halfIntegral) ? 1 : 2;
  return Rational::make(i128(x.num.b) * scale, x.den);
}

Complex psi_additive(const KElem& x) {
  Rational r = additive_phase(x);
  i64 rem = mod_floor(r.num, r.den);
  return unit_exp(double(rem) / double(r.den));
}

Complex kloosterman_K(const QuadInt& r, const QuadInt& s, const ResidueRing& ring) {
  const QuadInt& c = ring.modulus;
  if (std::abs(c.norm()) == 1) return Complex(1.0, 0.0);  // unit modulus convention
  i64 nc = c.norm();
  QuadInt cbar = c.conj();
  Complex sum(0.0, 0.0);
  double comp_re = 0.0, comp_im = 0.0;  // Kahan compensation
  for (i64 pos : ring.unit_positions) {
    const QuadInt& x = ring.reps[size_t(pos)];
    QuadInt xbar = ring.reps[size_t(ring.inverse_of[size_t(pos)])];
    // (r*xbar + s*x) / c = (r*xbar + s*x) * conj(c) / N(c)
    QuadInt num = (r * xbar + s * x) * cbar;
    Complex term = psi_additive({num, nc});
    double y_re = term.real() - comp_re;
    double t_re = sum.real() + y_re;
    comp_re = (t_re - sum.real()) - y_re;
    double y_im = term.imag() - comp_im;
    double t_im = sum.imag() + y_im;
    comp_im = (t_im - sum.imag()) - y_im;
    sum = Complex(t_re, t_im);
  }
  return sum;
}

Complex kloosterman_K(const QuadInt& r, const QuadInt& s, const QuadInt& c) {
  if (c.is_zero()) throw VerifyError(Err::ZeroModulus, "Kloosterman sum modulo zero");
  ResidueRing ring = quadfield::residue_ring(c);
  return kloosterman_K(r, s, ring);
}

Complex kloosterman_twisted(i64 n, i64 m, i64 c, const FieldContext& ctx) {
  if (c < 1) throw VerifyError(Err::ZeroModulus, "twisted Kloosterman needs c >= 1");
  if (c == 1) return Complex(1.0, 0.0);
  Complex sum(0.0, 0.0);
  for (i64 x = 1; x < c; ++x) {
    if (gcd_i64(x, c) != 1) continue;
    int chi = chi_D(x, ctx);
    if (chi == 0) continue;
    i64 xbar = inverse_mod(x, c);
    i64 arg = mod_floor(i64(mod_floor(i128(n) * x + i128(m) * xbar, c)), c);
    sum += double(chi) * unit_exp(double(arg) / double(c));
  }
  return sum;
}

Complex kloosterman_rational(i64 n, i64 m, i64 c) {
  if (c < 1) throw VerifyError(Err::ZeroModulus, "Kloosterman needs c >= 1");
  if (c == 1) return Complex(1.0, 0.0);
  Complex sum(0.0, 0.0);
  for (i64 x = 1; x < c; ++x) {
    if (gcd_i64(x, c) != 1) continue;
    i64 xbar = inverse_mod(x, c);
    i64 arg = mod_floor(i64(mod_floor(i128(n) * x + i128(m) * xbar, c)), c);
    sum += unit_exp(double(arg) / double(c));
  }
  return sum;
}

i64 ramanujan_Z(i64 n, i64 y) {
  if (n < 1) throw VerifyError(Err::ZeroModulus, "Ramanujan sum needs n >= 1");
  i64 g = gcd_i64(y, n);
  if (g == 0) g = n;  // y = 0
  i64 q = n / g;
  int mu = mobius(q);
  if (mu == 0) return 0;
  return mu * (euler_phi(n) / euler_phi(q));
}

i64 ramanujan_Z_brute(i64 n, i64 y) {
  double re = 0.0, im = 0.0;
  for (i64 x = 1; x <= n; ++x) {
    if (gcd_i64(x, n) != 1) continue;
    Complex e = unit_exp(double(mod_floor(x * (y % n), n)) / double(n));
    re += e.real();
    im += e.imag();
  }
  if (std::abs(im) > 1e-6)
    throw VerifyError(Err::UnsupportedRing, "Ramanujan brute sum not real");
  double rounded = std::round(re);
  if (std::abs(re - rounded) > 1e-6)
    throw VerifyError(Err::UnsupportedRing, "Ramanujan brute sum not integral");
  return i64(rounded);
}

Complex ramanujan_K(const QuadInt& r, const ResidueRing& ring) {
  const QuadInt& c = ring.modulus;
  if (std::abs(c.norm()) == 1) return Complex(1.0, 0.0);
  i64 nc = c.norm();
  QuadInt cbar = c.conj();
  Complex sum(0.0, 0.0);
  for (i64 pos : ring.unit_positions) {
    const QuadInt& x = ring.reps[size_t(pos)];
    QuadInt num = (x * r) * cbar;
    sum += psi_additive({num, nc});
  }
  return sum;
}

i64 ramanujan_K_mobius(const QuadInt& r, const QuadInt& c) {
  if (c.is_zero()) throw VerifyError(Err::ZeroModulus, "Ramanujan sum modulo zero");
  const FieldContext& ctx = *c.ctx;
  QuadInt g = r.is_zero() ? c : ideal_gcd(r, c);
  // common ideal divisors of (r) and (c) = divisors of the gcd ideal
  i64 acc = 0;
  for (const QuadInt& a : ideal_divisors_of(g)) {
    QuadInt q;
    if (!divide_exact(c, a, q)) continue;  // a | g | c always holds; defensive
    int mu = mobius_K(q);
    if (mu == 0) continue;
    acc += mu * std::abs(a.norm());
  }
  (void)ctx;
  return acc;
}

}  // namespace asaiverify::charsums
