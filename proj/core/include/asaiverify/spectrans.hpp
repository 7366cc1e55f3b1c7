#pragma once

#include <functional>

#include "asaiverify/util.hpp"

namespace asaiverify::spectrans {

// smooth compactly supported bump on (a, b):
//   V(x) = amplitude * exp(-1/(1 - u^2)),  u = (2x - a - b)/(b - a)
struct TestFunction {
  double a = 1.0;
  double b = 3.0;
  double amplitude = 1.0;

  double operator()(double x) const {
    if (x <= a || x >= b) return 0.0;
    double u = (2.0 * x - a - b) / (b - a);
    double w = 1.0 - u * u;
    return amplitude * std::exp(-1.0 / w);
  }
  double derivative(double x) const {
    if (x <= a || x >= b) return 0.0;
    double u = (2.0 * x - a - b) / (b - a);
    double w = 1.0 - u * u;
    return (*this)(x) * (-2.0 * u / (w * w)) * (2.0 / (b - a));
  }
  bool is_zero() const { return amplitude == 0.0; }
};

TestFunction make_bump(double a, double b);
// bump scaled to unit integral
TestFunction make_normalized_bump(double a, double b);

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
};

// adaptive Gauss-Kronrod on [a, b]
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol, int max_depth = 30);

struct TransformValue {
  Complex param;       // real t (principal) or even integer k (discrete)
  Complex value;
  double est_error = 0.0;
};

// complex Gamma via Lanczos approximation with reflection
Complex complex_gamma(Complex z);

// J-Bessel of complex order: ascending series for x <= series_limit, Hankel
// asymptotic expansion beyond; real orders delegate to std::cyl_bessel_j
Complex bessel_j(Complex nu, double x);
double bessel_j_real(double nu, double x);

// B_{2it}(x) = (2 sin(pi i t))^{-1} (J_{-2it}(x) - J_{2it}(x)), real for real t
double kernel_B(double t, double x);

// h(V, t) = int V(x) B_{2it}(x) dx / x
TransformValue h_principal(const TestFunction& V, double t);
// h(V, k) = i^k int V(x) J_{k-1}(x) dx / x for even k; the i^k power is
// (-1)^{k/2}, toggled by include_ik
TransformValue h_discrete(const TestFunction& V, int k, bool include_ik = false);

// V*W(z): double oscillatory integral over the compact support rectangle,
// phase-adaptive panel subdivision with 16-point tensor Gauss-Legendre
Complex convolve(const TestFunction& V, const TestFunction& W, double z,
                 double* est_error = nullptr);

// right side of the inversion formula reconstructing Re(V*W)(z):
//   4 pi int_0^T M(t) tanh(pi t) B_{2it}(z) t dt
//   + 2 pi sum over even k <= K of (k-1) i^k J_{k-1}(z) M(k),  M = h(V)h(W)
Complex sears_titchmarsh_rhs(const TestFunction& V, const TestFunction& W, double z,
                             double T = 30.0, int K = 40);
// uncorrected variant (4 pi on both parts, no i^k), kept for comparison reports
Complex sears_titchmarsh_rhs_displayed(const TestFunction& V, const TestFunction& W,
                                       double z, double T = 30.0, int K = 40);

struct PlancherelResult {
  double lhs = 0.0;       // int V1 V2 dx/x
  double rhs = 0.0;       // spectral side
  double rel_residual = 0.0;
};
PlancherelResult plancherel_check(const TestFunction& V1, const TestFunction& V2);

// Re V*W sampled on a two-segment z-grid (log-spaced up to z_mid where the
// kernel oscillates like 1/z, uniform beyond), with an amplitude/phase fit at
// the far end for closed-form tail integration of the transforms
struct ConvGrid {
  const TestFunction* V = nullptr;
  const TestFunction* W = nullptr;
  // segment 1: log-spaced nodes s_i = log z in [log z_lo, log z_mid]
  double s0 = 0.0, ds = 0.0;
  std::vector<double> log_values;
  // segment 2: uniform nodes in [z_mid, z_hi]
  double z0 = 0.0, dz = 0.0;
  std::vector<double> values;
  double max_imag = 0.0;
  double skipped_mass = 0.0;  // bound on the omitted (0, z_lo) contribution
  // Re V*W(x) ~ x^{-1/2} [(A + A1/x + A2/x^2) cos x + (sin-part)] at the far end
  double tail_A = 0.0, tail_B = 0.0, tail_A1 = 0.0, tail_B1 = 0.0;
  double tail_A2 = 0.0, tail_B2 = 0.0;
  double z_hi = 0.0;
};

ConvGrid build_conv_grid(const TestFunction& V, const TestFunction& W,
                         double z_lo = 0.1, double z_hi = 200.0, double dz = 0.025);

// h(V*W, param) from the grid: Simpson over [z0, z_hi] plus the analytic tail
// against the large-argument kernel asymptotics
TransformValue h_of_convolution(const ConvGrid& grid, double t);           // principal
TransformValue h_of_convolution_discrete(const ConvGrid& grid, int k,
                                         bool include_ik = false);

}  // namespace asaiverify::spectrans
