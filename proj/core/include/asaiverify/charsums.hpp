#pragma once

#include "asaiverify/quadfield.hpp"

namespace asaiverify::charsums {

using quadfield::FieldContext;
using quadfield::KElem;
using quadfield::QuadInt;
using quadfield::ResidueRing;

// quadratic character attached to the field, as the Kronecker symbol of disc
inline int chi_D(i64 n, const FieldContext& ctx) { return kronecker(ctx.disc, n); }

// additive character e(x/delta + x'/delta') for x in K; exact rational phase
Complex psi_additive(const KElem& x);

// the rational number x/delta + x'/delta' itself
Rational additive_phase(const KElem& x);

// quadratic-field Kloosterman sum over the unit residues of O_K/(c):
//   S(r, s, c) = sum_x e((r xbar + s x) / (delta c) + conjugate slot)
// with x xbar = 1 (c).  Unit modulus returns 1.
Complex kloosterman_K(const QuadInt& r, const QuadInt& s, const ResidueRing& ring);
Complex kloosterman_K(const QuadInt& r, const QuadInt& s, const QuadInt& c);

// chi_D-twisted rational Kloosterman sum over (Z/c)^*
Complex kloosterman_twisted(i64 n, i64 m, i64 c, const FieldContext& ctx);
// untwisted variant (trivial character)
Complex kloosterman_rational(i64 n, i64 m, i64 c);

// classical Ramanujan sum, closed form mu(n/g) phi(n) / phi(n/g), g = (y, n)
i64 ramanujan_Z(i64 n, i64 y);
// brute-force oracle: sum over units mod n of e(x y / n), rounded to the
// nearest integer after checking the imaginary part vanishes
i64 ramanujan_Z_brute(i64 n, i64 y);

// Ramanujan sum over O_K: S(r, 0, c) = sum over units x (c) of e(x r / (delta c) ...)
Complex ramanujan_K(const QuadInt& r, const ResidueRing& ring);
// ideal-Moebius closed form: sum over (a) | ((r),(c)) of mu_K((c)/(a)) N(a)
i64 ramanujan_K_mobius(const QuadInt& r, const QuadInt& c);

}  // namespace asaiverify::charsums
