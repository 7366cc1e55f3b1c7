#include "asaiverify/solnsets.hpp"

#include <cmath>
#include <cstdlib>

namespace asaiverify::solnsets {

using quadfield::canonical_associate;
using quadfield::coprime_to;
using quadfield::divide_exact;
using quadfield::ideal_divisors_of;
using quadfield::ideal_gcd_norm;
using quadfield::residue_ring;

QuadInt gcd_with_conj(const QuadInt& c) {
  const FieldContext& ctx = *c.ctx;
  i64 norm_d = ideal_gcd_norm(c, c.conj());
  // (c, c') is conjugation-stable, hence generated by d0 or d0*sqrt(D)
  i64 d0 = i64(std::llround(std::sqrt(double(norm_d))));
  for (i64 t = std::max<i64>(1, d0 - 1); t <= d0 + 1; ++t) {
    if (t * t != norm_d) continue;
    QuadInt cand = ctx.from_int(t);
    if (quadfield::divides(cand, c) && quadfield::divides(cand, c.conj())) return cand;
  }
  if (norm_d % ctx.D == 0) {
    i64 rem = norm_d / ctx.D;
    i64 s = i64(std::llround(std::sqrt(double(rem))));
    for (i64 t = std::max<i64>(1, s - 1); t <= s + 1; ++t) {
      if (t * t != rem) continue;
      QuadInt cand = ctx.sqrtD() * t;
      if (quadfield::divides(cand, c) && quadfield::divides(cand, c.conj())) return cand;
    }
  }
  throw VerifyError(Err::UnsupportedRing,
                    "(c, c') not generated by d0 or d0*sqrt(D)");
}

std::vector<XSolution> enumerate_X(const QuadInt& c, i64 n, const ResidueRing& ring) {
  if (c.is_zero()) throw VerifyError(Err::ZeroModulus, "X(c, n) with c = 0");
  const FieldContext& ctx = *c.ctx;
  QuadInt delta = ctx.sqrtD();
  QuadInt dc = delta * c;
  QuadInt dcp = dc.conj();  // delta' c'
  i64 Ndc = dc.norm();
  std::vector<XSolution> out;
  for (i64 pos : ring.unit_positions) {
    const QuadInt& x = ring.reps[size_t(pos)];
    QuadInt s = dcp * x + dc * x.conj();
    if (s.b != 0) throw VerifyError(Err::UnsupportedRing, "trace combination not rational");
    i64 rem = n - s.a;
    if (rem % Ndc != 0) continue;
    out.push_back({x, rem / Ndc, c, n});
  }
  return out;
}

std::vector<XSolution> enumerate_X(const QuadInt& c, i64 n) {
  ResidueRing ring = residue_ring(c);
  return enumerate_X(c, n, ring);
}

X0Structure enumerate_X0(const QuadInt& c) {
  X0Structure st;
  if (c.is_zero()) throw VerifyError(Err::ZeroModulus, "X(c, 0) with c = 0");
  const FieldContext& ctx = *c.ctx;
  st.solutions = enumerate_X(c, 0);
  st.nonempty = !st.solutions.empty();

  // shape certificate: scan associates c * eps0^j for a rational one or a
  // rational multiple of sqrt(D)
  QuadInt eps = ctx.eps0();
  QuadInt inv_eps = eps.conj();
  if (eps.norm() == -1) inv_eps = -inv_eps;
  QuadInt sd = ctx.sqrtD();
  for (int dir = 0; dir < 2 && st.shape == X0Structure::Shape::neither; ++dir) {
    QuadInt cur = c;
    for (int j = 0; j <= 40; ++j) {
      if (cur.is_rational()) {
        st.shape = X0Structure::Shape::rational_associate;
        st.unit_power = dir == 0 ? j : -j;
        st.magnitude = std::abs(cur.a);
        break;
      }
      QuadInt q;
      if (divide_exact(cur, sd, q) && q.is_rational()) {
        st.shape = X0Structure::Shape::sqrtD_associate;
        st.unit_power = dir == 0 ? j : -j;
        st.magnitude = std::abs(q.a);
        break;
      }
      bool ok = true;
      try { cur = cur * (dir == 0 ? eps : inv_eps); } catch (const VerifyError&) { ok = false; }
      if (!ok) break;
      if (std::abs(cur.a) > (i64(1) << 40) || std::abs(cur.b) > (i64(1) << 40)) break;
    }
  }
  return st;
}

i64 check_D_divides_n(const QuadInt& c, const QuadInt& x, i64 m) {
  const FieldContext& ctx = *c.ctx;
  QuadInt dc = ctx.sqrtD() * c;
  QuadInt s = dc.conj() * x + dc * x.conj();
  if (s.b != 0) throw VerifyError(Err::UnsupportedRing, "trace combination not rational");
  i64 n = checked_i64(i128(s.a) + i128(dc.norm()) * m, "n value");
  if (mod_floor(n, ctx.D) != 0)
    throw VerifyError(Err::UnsupportedRing, "D does not divide n");
  return n;
}

namespace {

// modulus (n / delta) as a ring element; requires D | n
QuadInt n_over_delta(i64 n, const FieldContext& ctx) {
  // n / sqrt(D) = (n / D) * sqrt(D)
  if (mod_floor(n, ctx.D) != 0)
    throw VerifyError(Err::DNotDividesN, "n/delta is not integral (D does not divide n)");
  return ctx.sqrtD() * (n / ctx.D);
}

// does the ideal (mod) divide val?
bool divides_ideal(const QuadInt& mod, const QuadInt& val) {
  return quadfield::divides(mod, val);
}

}  // namespace

YEnumeration enumerate_Y(const QuadInt& c, i64 n) {
  YEnumeration out;
  if (n == 0) throw VerifyError(Err::ZeroModulus, "Y(c, n) needs n != 0");
  const FieldContext& ctx = *c.ctx;
  QuadInt d = gcd_with_conj(c);
  QuadInt q;
  if (!divide_exact(ctx.from_int(n), d, q)) {
    out.d_divides_n = false;  // empty by convention
    return out;
  }
  if (mod_floor(n, ctx.D) != 0) {
    out.d_divides_n = false;
    return out;
  }
  QuadInt modulus = n_over_delta(n, ctx);
  ResidueRing ring_nd = residue_ring(modulus);
  QuadInt delta = ctx.sqrtD();
  QuadInt A0, B0;
  if (!divide_exact(delta * c, d, A0) || !divide_exact(delta.conj() * c.conj(), d, B0))
    throw VerifyError(Err::UnsupportedRing, "d does not divide delta c");
  QuadInt n_over_d;
  divide_exact(ctx.from_int(n), d, n_over_d);

  // proper ideal divisors of d (non-associate to d), for condition (b)
  std::vector<QuadInt> proper_k;
  i64 nd_abs = std::abs(d.norm());
  for (const QuadInt& k : ideal_divisors_of(d))
    if (std::abs(k.norm()) != nd_abs) proper_k.push_back(k);

  for (i64 pos : ring_nd.unit_positions) {
    const QuadInt& r = ring_nd.reps[size_t(pos)];
    // rr' = 1 (mod n); well-defined on classes mod n/delta because D | n
    QuadInt rr = r * r.conj();
    if (rr.b != 0) throw VerifyError(Err::UnsupportedRing, "rr' not rational");
    if (mod_floor(rr.a - 1, std::abs(n)) != 0) continue;
    QuadInt expr = A0 * r + B0;
    if (!divides_ideal(n_over_d, expr)) continue;
    bool ok = true;
    for (const QuadInt& k : proper_k) {
      QuadInt n_over_k;
      if (!divide_exact(ctx.from_int(n), k, n_over_k))
        throw VerifyError(Err::UnsupportedRing, "k does not divide n");
      if (divides_ideal(n_over_k, expr)) { ok = false; break; }
    }
    if (ok) out.classes.push_back({r, n, c, d});
  }
  return out;
}

YSolution map_to_r(const XSolution& sol, const ResidueRing& ring_c,
                   const ResidueRing& ring_nd) {
  if (sol.n == 0) throw VerifyError(Err::ZeroModulus, "r-map needs n != 0");
  const FieldContext& ctx = *sol.c.ctx;
  QuadInt xbar = ring_c.inverse(sol.x);
  QuadInt delta = ctx.sqrtD();
  QuadInt dc = delta * sol.c;
  QuadInt num = xbar * sol.n - dc.conj();
  QuadInt r;
  if (!divide_exact(num, dc, r))
    throw VerifyError(Err::NonIntegralR, "(n xbar - delta' c') not divisible by delta c");
  QuadInt rc = ring_nd.canonical_rep(r);
  return {rc, sol.n, sol.c, gcd_with_conj(sol.c)};
}

bool lambda_criterion(const QuadInt& c, const QuadInt& d, const QuadInt& r, i64 n) {
  const FieldContext& ctx = *c.ctx;
  QuadInt delta = ctx.sqrtD();
  // lambda from  delta' c'/d = -(delta c/d) r + lambda (n/d)
  QuadInt lhs, A;
  if (!divide_exact(delta.conj() * c.conj(), d, lhs) || !divide_exact(delta * c, d, A))
    throw VerifyError(Err::UnsupportedRing, "d does not divide delta c");
  QuadInt n_over_d;
  if (!divide_exact(ctx.from_int(n), d, n_over_d))
    throw VerifyError(Err::DNotDividesN, "d does not divide n");
  QuadInt num = lhs + A * r;
  QuadInt lambda;
  if (!divide_exact(num, n_over_d, lambda))
    throw VerifyError(Err::NonIntegralLambda, "lambda is not integral");
  // gcd of lambda and d inside Z: a rational integer divides an element of
  // O_K exactly when it divides its coordinate content
  i64 content_l = lambda.is_zero() ? 0 : quadfield::rational_content(lambda);
  i64 content_d = quadfield::rational_content(d);
  return gcd_i64(content_l, content_d) == 1;
}

i64 count_congruence_solutions(i64 n, const QuadInt& r, const QuadInt& d, i64 f) {
  const FieldContext& ctx = *r.ctx;
  // rr' = 1 (mod n) precondition
  QuadInt rr = r * r.conj();
  if (rr.b != 0 || mod_floor(rr.a - 1, std::abs(n)) != 0)
    throw VerifyError(Err::UnsupportedRing, "precondition rr' = 1 (mod n) violated");
  // modulus  n f / (d delta)
  QuadInt num = ctx.from_int(mul_i64(n, f));
  QuadInt den = d * ctx.sqrtD();
  QuadInt modulus;
  if (!divide_exact(num, den, modulus))
    throw VerifyError(Err::UnsupportedRing, "n f / (d delta) not integral");
  ResidueRing ring = residue_ring(modulus);
  i64 count = 0;
  for (const QuadInt& c : ring.reps) {
    QuadInt expr = c * r - c.conj();
    if (quadfield::divides(modulus, expr)) ++count;
  }
  return count;
}

std::optional<QuadInt> y_to_x_witness(const YSolution& y, const ResidueRing& ring_c) {
  const FieldContext& ctx = *y.c.ctx;
  QuadInt delta = ctx.sqrtD();
  QuadInt n_over_delta_el;
  if (!divide_exact(ctx.from_int(y.n), delta, n_over_delta_el)) return std::nullopt;
  QuadInt num = y.c.conj() - y.c * y.r;
  QuadInt xi;
  if (!divide_exact(num, n_over_delta_el, xi)) return std::nullopt;
  if (!coprime_to(xi, y.c)) return std::nullopt;
  // x with x * xi = 1 (mod c); xbar = xi
  QuadInt x = ring_c.inverse(ring_c.canonical_rep(xi));
  return x;
}

}  // namespace asaiverify::solnsets
