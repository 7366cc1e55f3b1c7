#pragma once

#include <map>

#include "asaiverify/charsums.hpp"

namespace asaiverify::multident {

using quadfield::FieldContext;
using quadfield::QuadInt;

// R(n, d) = (1/(d n)) sum_{a | d} (mu(a)/a) prod_{p | n a / d} 1/(1 + 1/p), exact
Rational R(i64 n, i64 d);

// sum_{d | n} R(n, d); the checked identity is that this equals 1/n exactly
Rational R_sum_check(i64 n);

// Hecke character omega_mu on the unit-trivializing lattice mu_k = k pi / log eps0,
// evaluated on an ideal through any generator g: |g/g'|^{i mu_k}
Complex omega_mu(const QuadInt& generator, int k);
double mu_k_value(const FieldContext& ctx, int k);

// sigma_{s, omega}(x) = sum over ideal divisors a of (x) of omega_mu(a) N(a)^s
Complex sigma_omega(const QuadInt& x, Complex s, int mu_index);

// tau_{it}(n) = sum_{ab = n} chi_D(a) (a/b)^{it}, n >= 1
Complex tau_it(i64 n, double t, const FieldContext& ctx);

// psi_mu(y) = sum over ideals q with N(q) = y of omega_mu(q)
Complex psi_mu(i64 y, int mu_index, const FieldContext& ctx);

enum class EulerKind { ramanujanL, split, inert, ramified };

// residual of the claimed per-prime factorization: the divisor-sum generating
// function (finite/truncated series, independent oracle) against the displayed
// closed form; mu_index enters the split factor through omega^2
double euler_factor_identity_check(EulerKind kind, Complex s, double t, i64 p,
                                   const FieldContext& ctx, int mu_index = 0);

// both divisor identities relating quadratic-field divisor sums to rational
// ones; returns the two absolute residuals
std::pair<double, double> compa_identity_check(const QuadInt& l, double t,
                                               int mu_index);

// multiplicative coefficient model with nebentypus chi_D: a_1 = 1,
// a_{p^{k+1}} = a_p a_{p^k} - chi_D(p) a_{p^{k-1}}, multiplicative across
// coprime indices.  Satake parameters alpha_p live on the unit circle.
struct HeckeSequence {
  const FieldContext* ctx = nullptr;
  bool trivial_character = false;  // degenerate divisor-count model
  std::map<i64, Complex> satake;
  std::vector<Complex> values;  // values[n] = a_n, n <= depth

  Complex a(i64 n) const { return values[size_t(n)]; }
};

HeckeSequence make_hecke_sequence(const FieldContext& ctx, i64 depth, std::uint64_t seed,
                                  bool trivial_character = false);

// max residual of a_n a_m = sum_{r | (n,m)} chi(r) a_{n m / r^2} over
// n, m <= depth, plus the base-changed eigenvalue relation for
// alpha_l = sum_{r | l} a_{N(l)/r^2} over quadratic l with 0 < N(l) <= depth
double hecke_relation_check(const HeckeSequence& seq, i64 depth);

// alpha_l for quadratic l (N(l) > 0)
Complex hecke_alpha(const HeckeSequence& seq, const QuadInt& l);

}  // namespace asaiverify::multident
