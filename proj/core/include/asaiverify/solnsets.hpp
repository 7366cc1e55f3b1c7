#pragma once

#include <optional>

#include "asaiverify/quadfield.hpp"

namespace asaiverify::solnsets {

using quadfield::FieldContext;
using quadfield::QuadInt;
using quadfield::ResidueRing;

// member of X(c, n): unit residue x mod c and m in Z with
//   delta' c' x + delta c x' = n - m N(delta c)
struct XSolution {
  QuadInt x;
  i64 m = 0;
  QuadInt c;
  i64 n = 0;
};

// member of Y(c, n): class r mod (n/delta) with
//   (a)  (delta c / d) r + (delta' c' / d) = 0 mod (n/d)
//   (b)  the same expression nonzero mod (n/k) for every proper divisor k of d
struct YSolution {
  QuadInt r;
  i64 n = 0;
  QuadInt c;
  QuadInt d;
};

// d = (c, c') as a canonical generator: rational d0, or d0 * sqrt(D)
QuadInt gcd_with_conj(const QuadInt& c);

std::vector<XSolution> enumerate_X(const QuadInt& c, i64 n, const ResidueRing& ring);
std::vector<XSolution> enumerate_X(const QuadInt& c, i64 n);

// structure of X(c, 0): Prop-style shape certificate plus the actual solutions
struct X0Structure {
  bool nonempty = false;
  enum class Shape { rational_associate, sqrtD_associate, neither } shape =
      Shape::neither;
  i64 unit_power = 0;          // j with c * eps0^{-j} of the named shape (when found)
  i64 magnitude = 0;           // the rational a (or b, for the sqrt(D) branch)
  std::vector<XSolution> solutions;
};
X0Structure enumerate_X0(const QuadInt& c);

// the r-map of the correspondence: r = (n xbar - delta' c') / (delta c),
// reduced canonically mod (n/delta)
YSolution map_to_r(const XSolution& sol, const ResidueRing& ring_c,
                   const ResidueRing& ring_nd);

struct YEnumeration {
  std::vector<YSolution> classes;
  bool d_divides_n = true;  // flagged false when d does not divide n (empty set)
};
YEnumeration enumerate_Y(const QuadInt& c, i64 n);

// n = delta' c' x + delta c x' - N(delta c) m, with the divisibility D | n asserted
i64 check_D_divides_n(const QuadInt& c, const QuadInt& x, i64 m);

// gcd criterion for membership of (a multiple of) c in X_n(r, d):
// lambda from  delta' c'/d = -(delta c/d) r + lambda n/d  must be coprime to d in Z
bool lambda_criterion(const QuadInt& c, const QuadInt& d, const QuadInt& r, i64 n);

// residues c mod (n f / (d delta)) with c r = c' (mod n f / (d delta));
// counted over the full residue system of that ideal
i64 count_congruence_solutions(i64 n, const QuadInt& r, const QuadInt& d, i64 f);

// inverse construction from the surjectivity argument: xi = (c' - c r)/(n/delta)
std::optional<QuadInt> y_to_x_witness(const YSolution& y, const ResidueRing& ring_c);

}  // namespace asaiverify::solnsets
