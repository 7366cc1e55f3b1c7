#include "asaiverify/quadfield.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace asaiverify::quadfield {

QuadInt FieldContext::omega() const { return QuadInt(0, 1, this); }

QuadInt FieldContext::sqrtD() const {
  // sqrt(D) = 2*omega - 1 in the half-integral basis
  if (omega_kind == OmegaKind::sqrtD) return QuadInt(0, 1, this);
  return QuadInt(-1, 2, this);
}

QuadInt FieldContext::eps0() const { return QuadInt(eps0_a, eps0_b, this); }
QuadInt FieldContext::from_int(i64 n) const { return QuadInt(n, 0, this); }

std::string QuadInt::str() const {
  if (b == 0) return std::to_string(a);
  std::string s = std::to_string(a);
  s += (b < 0 ? "-" : "+");
  s += std::to_string(b < 0 ? -b : b);
  s += "w";
  return s;
}

bool divide_exact(const QuadInt& x, const QuadInt& y, QuadInt& out) {
  if (y.is_zero()) return false;
  // x / y = x * conj(y) / N(y)
  QuadInt t = x * y.conj();
  i64 n = y.norm();
  if (t.a % n != 0 || t.b % n != 0) return false;
  out = QuadInt(t.a / n, t.b / n, x.ctx);
  return true;
}

bool divides(const QuadInt& y, const QuadInt& x) {
  QuadInt q;
  return divide_exact(x, y, q);
}

// ---------------------------------------------------------------------------
// continued fraction of a quadratic irrational (P0 + sqrt(D)) / Q0 and the
// fundamental unit derived from its convergents

namespace {

struct CfUnit {
  i64 a, b;  // unit a + b*omega, > 1 in the real embedding
};

// fundamental solution of x^2 - D y^2 = +-1 via the continued fraction of
// sqrt(D); returns x + y*sqrt(D) expressed as (x, y)
std::pair<i64, i64> pell_unit(i64 D) {
  i64 a0 = i64(std::floor(std::sqrt(double(D))));
  while ((a0 + 1) * (a0 + 1) <= D) ++a0;
  while (a0 * a0 > D) --a0;
  i64 P = 0, Q = 1, a = a0;
  i64 hm1 = 1, hm2 = 0, km1 = 0, km2 = 1;  // convergent recurrences
  for (int it = 0; it < 20000; ++it) {
    i64 h = checked_i64(i128(a) * hm1 + hm2, "pell convergent");
    i64 k = checked_i64(i128(a) * km1 + km2, "pell convergent");
    i128 val = i128(h) * h - i128(D) * k * k;
    if (val == 1 || val == -1) return {h, k};
    hm2 = hm1; hm1 = h;
    km2 = km1; km1 = k;
    P = a * Q - P;
    Q = (D - P * P) / Q;
    a = (P + a0) / Q;
  }
  throw VerifyError(Err::UnsupportedRing, "continued fraction did not close");
}

}  // namespace

FieldHandle make_field(i64 D) {
  if (!is_prime_i64(D)) throw VerifyError(Err::NotPrime, "D must be a prime");
  auto ctx = std::make_shared<FieldContext>();
  ctx->D = D;
  if (D % 4 == 1) {
    ctx->omega_kind = OmegaKind::halfIntegral;
    ctx->disc = D;
    ctx->tr_omega = 1;
    ctx->nm_omega = (1 - D) / 4;
    ctx->omega_real = (1.0 + std::sqrt(double(D))) / 2.0;
  } else {
    ctx->omega_kind = OmegaKind::sqrtD;
    ctx->disc = 4 * D;
    ctx->tr_omega = 0;
    ctx->nm_omega = -D;
    ctx->omega_real = std::sqrt(double(D));
  }

  // Fundamental unit.  The continued fraction of sqrt(D) yields the smallest
  // unit > 1 of Z[sqrt(D)]; for D = 1 mod 4 the maximal order may contain a
  // smaller half-integral unit (its cube lands in Z[sqrt(D)]), so scan
  // (u + v*sqrt(D))/2 with v below the Pell solution.
  auto [px, py] = pell_unit(D);
  double sd = std::sqrt(double(D));
  double best = double(px) + double(py) * sd;
  i64 ua = px, ub = py;  // coordinates w.r.t. (1, sqrt(D))
  if (ctx->omega_kind == OmegaKind::halfIntegral) {
    for (i64 v = 1; v <= py; ++v) {
      // (u + v sqrt(D))/2 integral and unit: u = v mod 2, u^2 - D v^2 = +-4
      i128 dv2 = i128(D) * v * v;
      for (i128 t : {dv2 - 4, dv2 + 4}) {
        if (t <= 0) continue;
        i64 u = i64(std::llround(std::sqrt(double(t))));
        for (i64 uu = std::max<i64>(u - 2, 1); uu <= u + 2; ++uu) {
          if (i128(uu) * uu == t && ((uu & 1) == (v & 1))) {
            double cand = (double(uu) + double(v) * sd) / 2.0;
            if (cand > 1.0 && cand < best) {
              best = cand;
              ua = uu; ub = v;  // means (ua + ub sqrt(D))/2
            }
          }
        }
      }
    }
  }
  // convert to the (1, omega) basis
  if (ctx->omega_kind == OmegaKind::halfIntegral) {
    if (ua == px && ub == py) {
      // Pell unit px + py sqrt(D) = (px - py) + 2 py * omega
      ctx->eps0_a = px - py;
      ctx->eps0_b = 2 * py;
    } else {
      // half-integral unit (ua + ub sqrt(D))/2 = (ua - ub)/2 + ub * omega
      ctx->eps0_a = (ua - ub) / 2;
      ctx->eps0_b = ub;
    }
  } else {
    ctx->eps0_a = ua;
    ctx->eps0_b = ub;
  }

  QuadInt eps = ctx->eps0();
  i64 ne = eps.norm();
  if (ne != 1 && ne != -1)
    throw VerifyError(Err::UnsupportedRing, "fundamental unit candidate is not a unit");
  double e1 = eps.real1();
  if (e1 < 0) { ctx->eps0_a = -ctx->eps0_a; ctx->eps0_b = -ctx->eps0_b; e1 = -e1; }
  if (e1 < 1.0) {
    // replace by the conjugate-inverse so the real embedding exceeds 1
    QuadInt c = ctx->eps0().conj();
    if (ne == -1) c = -c;
    ctx->eps0_a = c.a;
    ctx->eps0_b = c.b;
    e1 = ctx->eps0().real1();
  }
  ctx->log_eps0 = std::log(e1);

  // Class-number-one certificate: every prime ideal with norm below the
  // Minkowski bound (sqrt(disc)/2 for a real quadratic field) must be
  // principal.  Inert primes are principal by fiat; split/ramified primes
  // need a generator of norm +-p.
  i64 floor_sqrt_disc = i64(std::floor(std::sqrt(double(ctx->disc))));
  while ((floor_sqrt_disc + 1) * (floor_sqrt_disc + 1) <= ctx->disc) ++floor_sqrt_disc;
  while (floor_sqrt_disc * floor_sqrt_disc > ctx->disc) --floor_sqrt_disc;
  ctx->minkowski_bound = Rational(floor_sqrt_disc, 2);
  ctx->class_number = 1;
  for (i64 p = 2; 4 * p * p <= ctx->disc; ++p) {
    if (!is_prime_i64(p)) continue;
    int chi = kronecker(ctx->disc, p);
    if (chi == -1) continue;
    bool found = false;
    i64 search = 2 * floor_sqrt_disc + i64(std::ceil(std::sqrt(double(p * D)))) + 4;
    for (i64 bb = 0; bb <= search && !found; ++bb)
      for (i64 aa = -search; aa <= search && !found; ++aa) {
        QuadInt x(aa, bb, ctx.get());
        i64 n = x.norm();
        if (n == p || n == -p) found = true;
      }
    if (!found)
      throw VerifyError(Err::ClassNumberNotOne,
                        "prime ideal below the Minkowski bound is not principal");
  }

  // internal consistency: eps0 * eps0' = +-1 exactly
  QuadInt check = eps * eps.conj();
  if (!(check == ctx->from_int(1) || check == ctx->from_int(-1)))
    throw VerifyError(Err::UnsupportedRing, "unit norm check failed");
  return ctx;
}

// ---------------------------------------------------------------------------
// residue rings via 2x2 Smith normal form

namespace {

// SNF of integer 2x2 matrix A (column lattice): U * A * V = diag(d1, d2),
// U, V unimodular.  Only U is needed to index residues.
void snf2(i64 A[2][2], i64 U[2][2], i64& d1, i64& d2) {
  i64 M[2][2] = {{A[0][0], A[0][1]}, {A[1][0], A[1][1]}};
  i64 Uw[2][2] = {{1, 0}, {0, 1}};
  auto row_op = [&](int i, int j, i64 q) {  // row_i -= q * row_j
    for (int k = 0; k < 2; ++k) { M[i][k] -= q * M[j][k]; Uw[i][k] -= q * Uw[j][k]; }
  };
  auto swap_rows = [&]() {
    std::swap(M[0][0], M[1][0]); std::swap(M[0][1], M[1][1]);
    std::swap(Uw[0][0], Uw[1][0]); std::swap(Uw[0][1], Uw[1][1]);
  };
  auto swap_cols = [&]() { std::swap(M[0][0], M[0][1]); std::swap(M[1][0], M[1][1]); };

  for (int it = 0; it < 200; ++it) {
    // move a nonzero pivot of smallest magnitude to (0,0)
    bool all0 = true;
    i64 bi = 0, bj = 0, bv = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (M[i][j] != 0 && (all0 || std::abs(M[i][j]) < bv)) {
          all0 = false; bv = std::abs(M[i][j]); bi = i; bj = j;
        }
    if (all0) break;
    if (bi == 1) swap_rows();
    if (bj == 1) swap_cols();
    bool again = false;
    if (M[1][0] % M[0][0] != 0 || M[0][1] % M[0][0] != 0) again = true;
    row_op(1, 0, M[1][0] / M[0][0]);
    // column op: col1 -= q * col0 (V untracked)
    i64 q = M[0][1] / M[0][0];
    M[0][1] -= q * M[0][0];
    M[1][1] -= q * M[1][0];
    if (again || M[1][0] != 0 || M[0][1] != 0) continue;
    if (M[1][1] % M[0][0] != 0) {
      // add row 1 to row 0 to pull the remainder into the pivot
      for (int k = 0; k < 2; ++k) { M[0][k] += M[1][k]; Uw[0][k] += Uw[1][k]; }
      continue;
    }
    break;
  }
  d1 = std::abs(M[0][0]);
  d2 = std::abs(M[1][1]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) U[i][j] = Uw[i][j];
}

}  // namespace

i64 ResidueRing::index_of(const QuadInt& x) const {
  i64 w0 = U[0][0] * x.a + U[0][1] * x.b;
  i64 w1 = U[1][0] * x.a + U[1][1] * x.b;
  return mod_floor(w0, d1) * d2 + mod_floor(w1, d2);
}

QuadInt ResidueRing::canonical_rep(const QuadInt& x) const { return reps[index_of(x)]; }

QuadInt ResidueRing::inverse(const QuadInt& x) const {
  i64 idx = inverse_of[index_of(x)];
  if (idx < 0) throw VerifyError(Err::ZeroModulus, "inverse of a non-unit residue");
  return reps[idx];
}

std::vector<QuadInt> ResidueRing::unit_reps() const {
  std::vector<QuadInt> out;
  out.reserve(unit_positions.size());
  for (i64 i : unit_positions) out.push_back(reps[i]);
  return out;
}

ResidueRing residue_ring(const QuadInt& c) {
  if (c.is_zero()) throw VerifyError(Err::ZeroModulus, "residue ring modulo zero");
  const FieldContext* ctx = c.ctx;
  ResidueRing R;
  R.modulus = c;
  // multiplication-by-c matrix on the basis (1, omega); columns are c*1, c*omega
  QuadInt c1 = c;
  QuadInt cw = c * ctx->omega();
  i64 A[2][2] = {{c1.a, cw.a}, {c1.b, cw.b}};
  snf2(A, R.U, R.d1, R.d2);
  R.size = R.d1 * R.d2;
  if (R.size != std::abs(c.norm()))
    throw VerifyError(Err::UnsupportedRing, "SNF size mismatch");
  // U^{-1} via the adjugate (det U = +-1)
  i64 det = R.U[0][0] * R.U[1][1] - R.U[0][1] * R.U[1][0];
  R.Uinv[0][0] = det * R.U[1][1];
  R.Uinv[0][1] = -det * R.U[0][1];
  R.Uinv[1][0] = -det * R.U[1][0];
  R.Uinv[1][1] = det * R.U[0][0];

  R.reps.resize(size_t(R.size));
  for (i64 i = 0; i < R.d1; ++i)
    for (i64 j = 0; j < R.d2; ++j) {
      i64 a = R.Uinv[0][0] * i + R.Uinv[0][1] * j;
      i64 b = R.Uinv[1][0] * i + R.Uinv[1][1] * j;
      R.reps[size_t(i * R.d2 + j)] = QuadInt(a, b, ctx);
    }

  R.inverse_of.assign(size_t(R.size), -1);
  R.unit_rank.assign(size_t(R.size), -1);
  std::vector<char> unit(size_t(R.size), 0);
  for (i64 i = 0; i < R.size; ++i)
    unit[size_t(i)] = coprime_to(R.reps[size_t(i)], c) ? 1 : 0;
  QuadInt one = ctx->from_int(1);
  i64 one_idx = R.index_of(one);
  for (i64 i = 0; i < R.size; ++i) {
    if (!unit[size_t(i)] || R.inverse_of[size_t(i)] >= 0) continue;
    for (i64 j = i; j < R.size; ++j) {
      if (!unit[size_t(j)]) continue;
      QuadInt prod = R.reps[size_t(i)] * R.reps[size_t(j)];
      if (R.index_of(prod) == one_idx) {
        R.inverse_of[size_t(i)] = j;
        R.inverse_of[size_t(j)] = i;
        break;
      }
    }
    if (R.inverse_of[size_t(i)] < 0)
      throw VerifyError(Err::UnsupportedRing, "unit residue without inverse");
  }
  for (i64 i = 0; i < R.size; ++i)
    if (unit[size_t(i)]) {
      R.unit_rank[size_t(i)] = i64(R.unit_positions.size());
      R.unit_positions.push_back(i);
    }
  return R;
}

// ---------------------------------------------------------------------------
// ideal gcd via the 2x4 lattice [x, x*omega, c, c*omega] -> HNF determinant

i64 ideal_gcd_norm(const QuadInt& x, const QuadInt& y) {
  const FieldContext* ctx = x.ctx;
  QuadInt gens[4] = {x, x * ctx->omega(), y, y * ctx->omega()};
  // column vectors (a, b); bring to upper triangular by gcd elimination
  i128 rows[4][2];
  for (int i = 0; i < 4; ++i) { rows[i][0] = gens[i].a; rows[i][1] = gens[i].b; }
  // eliminate second coordinate
  i128 g = 0;
  auto ext_gcd = [](i128 a, i128 b, i128& s, i128& t) {
    i128 old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (r != 0) {
      i128 q = old_r / r;
      i128 tmp = old_r - q * r; old_r = r; r = tmp;
      tmp = old_s - q * ss; old_s = ss; ss = tmp;
      tmp = old_t - q * tt; old_t = tt; tt = tmp;
    }
    s = old_s; t = old_t;
    if (old_r < 0) { s = -s; t = -t; old_r = -old_r; }
    return old_r;
  };
  // gcd of the b-components with Bezout tracking over the 4 generators
  i128 bg = 0;
  i128 comb_a = 0;  // a-component of the combination realizing bg
  for (int i = 0; i < 4; ++i) {
    if (rows[i][1] == 0) continue;
    if (bg == 0) { bg = rows[i][1] < 0 ? -rows[i][1] : rows[i][1];
      comb_a = rows[i][1] < 0 ? -rows[i][0] : rows[i][0]; continue; }
    i128 s, t;
    i128 ng = ext_gcd(bg, rows[i][1], s, t);
    comb_a = s * comb_a + t * rows[i][0];
    bg = ng;
  }
  // reduce all rows by the combination, leaving pure-a rows
  i128 ag = 0;
  for (int i = 0; i < 4; ++i) {
    i128 aa = rows[i][0], bb = rows[i][1];
    if (bg != 0) {
      i128 q = bb / bg;  // bb is a multiple of bg
      aa -= q * comb_a;
    }
    if (aa < 0) aa = -aa;
    i128 t0 = ag, t1 = aa;
    while (t1) { i128 r = t0 % t1; t0 = t1; t1 = r; }
    ag = t0;
  }
  if (bg == 0 && ag == 0) return 0;
  g = ag * (bg == 0 ? 1 : bg);
  return checked_i64(g < 0 ? -g : g, "ideal gcd norm");
}

bool coprime_to(const QuadInt& x, const QuadInt& c) { return ideal_gcd_norm(x, c) == 1; }

// ---------------------------------------------------------------------------
// prime splitting and factorizations

namespace {

QuadInt find_norm_generator(i64 p, const FieldContext& ctx) {
  // search |N(a + b omega)| = p over a growing box
  i64 bound = 4 + 2 * i64(std::ceil(std::sqrt(double(p) * double(ctx.D))));
  for (i64 bb = 0; bb <= bound; ++bb)
    for (i64 aa = -bound; aa <= bound; ++aa) {
      QuadInt x(aa, bb, &ctx);
      i64 n = x.norm();
      if (n == p || n == -p) return x;
    }
  throw VerifyError(Err::GeneratorSearchExhausted,
                    "no generator of norm " + std::to_string(p) + " in the search box");
}

}  // namespace

int valuation_at(const QuadInt& x, const QuadInt& pi) {
  int v = 0;
  QuadInt cur = x, q;
  while (divide_exact(cur, pi, q)) {
    cur = q;
    ++v;
    if (v > 200) throw VerifyError(Err::UnsupportedRing, "runaway valuation");
  }
  return v;
}

IdealFactorization factor_in_K(i64 n, const FieldContext& ctx) {
  if (n == 0) throw VerifyError(Err::ZeroModulus, "factor_in_K(0)");
  IdealFactorization F;
  F.n = n;
  for (const auto& [p, e] : factorize(n)) {
    int chi = kronecker(ctx.disc, p);
    if (chi == -1) {
      F.factors.push_back({p, ctx.from_int(p), Splitting::inert, e});
    } else if (chi == 0) {
      QuadInt g = (p == ctx.D) ? ctx.sqrtD() : find_norm_generator(p, ctx);
      F.factors.push_back({p, g, Splitting::ramified, 2 * e});
    } else {
      QuadInt g = find_norm_generator(p, ctx);
      F.factors.push_back({p, g, Splitting::split, e});
      F.factors.push_back({p, g.conj(), Splitting::split, e});
    }
  }
  return F;
}

IdealFactorization factor_element(const QuadInt& x) {
  if (x.is_zero()) throw VerifyError(Err::ZeroModulus, "factor_element(0)");
  const FieldContext& ctx = *x.ctx;
  IdealFactorization F;
  F.n = x.norm();
  for (const auto& [p, e] : factorize(std::abs(F.n))) {
    int chi = kronecker(ctx.disc, p);
    if (chi == -1) {
      F.factors.push_back({p, ctx.from_int(p), Splitting::inert,
                           valuation_at(x, ctx.from_int(p))});
    } else if (chi == 0) {
      QuadInt g = (p == ctx.D) ? ctx.sqrtD() : find_norm_generator(p, ctx);
      F.factors.push_back({p, g, Splitting::ramified, valuation_at(x, g)});
    } else {
      QuadInt g = find_norm_generator(p, ctx);
      int v1 = valuation_at(x, g);
      int v2 = valuation_at(x, g.conj());
      if (v1 > 0) F.factors.push_back({p, g, Splitting::split, v1});
      if (v2 > 0) F.factors.push_back({p, g.conj(), Splitting::split, v2});
    }
  }
  return F;
}

namespace {

std::vector<QuadInt> divisors_from_factorization(const IdealFactorization& F,
                                                 const FieldContext& ctx) {
  std::vector<QuadInt> divs{ctx.from_int(1)};
  for (const auto& f : F.factors) {
    size_t sz = divs.size();
    QuadInt pk = ctx.from_int(1);
    for (int k = 1; k <= f.exponent; ++k) {
      pk = pk * f.generator;
      for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end(), [](const QuadInt& x, const QuadInt& y) {
    i64 nx = std::abs(x.norm()), ny = std::abs(y.norm());
    if (nx != ny) return nx < ny;
    return x < y;
  });
  return divs;
}

}  // namespace

std::vector<QuadInt> ideal_divisors(i64 n, const FieldContext& ctx) {
  if (n < 1) throw VerifyError(Err::ZeroModulus, "ideal_divisors needs n >= 1");
  return divisors_from_factorization(factor_in_K(n, ctx), ctx);
}

std::vector<QuadInt> ideal_divisors_of(const QuadInt& x) {
  return divisors_from_factorization(factor_element(x), *x.ctx);
}

QuadInt ideal_gcd(const QuadInt& x, const QuadInt& y) {
  const FieldContext& ctx = *x.ctx;
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  QuadInt g = ctx.from_int(1);
  IdealFactorization fx = factor_element(x);
  for (const auto& f : fx.factors) {
    int vy = valuation_at(y, f.generator);
    int v = std::min(f.exponent, vy);
    for (int i = 0; i < v; ++i) g = g * f.generator;
  }
  return g;
}

int mobius_K(const QuadInt& x) {
  IdealFactorization F = factor_element(x);
  int cnt = 0;
  for (const auto& f : F.factors) {
    if (f.exponent > 1) return 0;
    if (f.exponent == 1) ++cnt;
  }
  return cnt % 2 == 0 ? 1 : -1;
}

QuadInt canonical_associate(const QuadInt& x) {
  if (x.is_zero()) return x;
  const FieldContext& ctx = *x.ctx;
  QuadInt eps = ctx.eps0();
  QuadInt inv_eps = eps.conj();  // eps^{-1} up to sign of N(eps)
  if (eps.norm() == -1) inv_eps = -inv_eps;
  auto better = [](const QuadInt& u, const QuadInt& v) {
    i64 su = std::abs(u.a) + std::abs(u.b), sv = std::abs(v.a) + std::abs(v.b);
    if (su != sv) return su < sv;
    if (u.a != v.a) return u.a > v.a;
    return u.b > v.b;
  };
  QuadInt best = x;
  for (int dir = 0; dir < 2; ++dir) {
    QuadInt cur = x;
    const QuadInt& mult = dir == 0 ? eps : inv_eps;
    for (int k = 0; k < 64; ++k) {
      bool ok = true;
      QuadInt nxt = cur;
      try { nxt = cur * mult; } catch (const VerifyError&) { ok = false; }
      if (!ok) break;
      cur = nxt;
      i64 s_cur = std::abs(cur.a) + std::abs(cur.b);
      i64 s_best = std::abs(best.a) + std::abs(best.b);
      if (better(cur, best)) best = cur;
      if (s_cur > 4 * s_best + 8) break;
    }
  }
  QuadInt neg = -best;
  if (better(neg, best)) best = neg;
  return best;
}

}  // namespace asaiverify::quadfield
