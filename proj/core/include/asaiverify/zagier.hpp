#pragma once

#include "asaiverify/charsums.hpp"

namespace asaiverify::zagier {

using quadfield::FieldContext;
using quadfield::QuadInt;

// one checked instance of the exponential-sum identity, n = D a
struct BridgeInstance {
  i64 D = 0;
  i64 a = 0;
  QuadInt l;
  Complex lhs;
  Complex rhs;
  double abs_error = 0.0;
};

// sum over classes r mod (n/delta) with r r' = 1 (mod n) of e((r l + r' l')/n)
Complex bridge_lhs(i64 a, const QuadInt& l, const FieldContext& ctx);

// (1/sqrt(D)) sum over rational r | l, r | a of r * S_D(l l'/r^2, 1, D a / r);
// requires (l, D) = 1
Complex bridge_rhs_coprime(i64 a, const QuadInt& l, const FieldContext& ctx);

// a sqrt(D) sum over rational r | l, r | a of H_{a/r}(-l l'/r^2, -1), where
// H_b stacks the twisted Kloosterman sums over the factorizations D = D1 D2
Complex bridge_rhs_general(i64 a, const QuadInt& l, const FieldContext& ctx);

// H_b(n, m) for prime D: the D2 = 1 branch always, the D2 = D branch when
// D | n and (b, D) = 1
Complex H_b(i64 b, i64 n, i64 m, const FieldContext& ctx);

}  // namespace asaiverify::zagier
