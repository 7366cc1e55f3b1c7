#include "asaiverify/spectrans.hpp"

#include <array>
#include <cmath>

namespace asaiverify::spectrans {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

// G7-K15 Gauss-Kronrod pair
constexpr std::array<double, 8> kKronrodNodes = {
    0.0, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr std::array<double, 8> kKronrodWeights = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr std::array<double, 4> kGaussWeights = {  // nodes 0, 2, 4, 6 of the Kronrod set
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

struct GK {
  double integral;
  double error;
};

GK gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double resk = kKronrodWeights[0] * fc;
  double resg = kGaussWeights[0] * fc;
  for (int i = 1; i < 8; ++i) {
    double fv = f(c - h * kKronrodNodes[i]) + f(c + h * kKronrodNodes[i]);
    resk += kKronrodWeights[i] * fv;
    if (i % 2 == 0) resg += kGaussWeights[i / 2] * fv;
  }
  double err = std::abs(resk - resg) * h;
  return {resk * h, err};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, double& value, double& err) {
  GK r = gk15(f, a, b);
  if (r.error < tol || depth <= 0) {
    value += r.integral;
    err += r.error;
    return;
  }
  double m = 0.5 * (a + b);
  adapt(f, a, m, tol * 0.5, depth - 1, value, err);
  adapt(f, m, b, tol * 0.5, depth - 1, value, err);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol, int max_depth) {
  if (!(b > a)) return {0.0, 0.0};
  double value = 0.0, err = 0.0;
  adapt(f, a, b, tol, max_depth, value, err);
  if (err > std::max(tol * 64.0, 1e-9 * (1.0 + std::abs(value))))
    throw VerifyError(Err::QuadratureFailure, "adaptive quadrature did not converge");
  return {value, err};
}

TestFunction make_bump(double a, double b) { return TestFunction{a, b, 1.0}; }

TestFunction make_normalized_bump(double a, double b) {
  TestFunction v{a, b, 1.0};
  QuadResult q = integrate([&](double x) { return v(x); }, a, b, 1e-12);
  v.amplitude = 1.0 / q.value;
  return v;
}

// ---------------------------------------------------------------------------
// complex Gamma (Lanczos, g = 7, 9 terms)

Complex complex_gamma(Complex z) {
  static const double kLanczos[9] = {
      0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,  12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection
    return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  Complex t = z + 7.5;
  return std::sqrt(kTwoPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// ---------------------------------------------------------------------------
// J-Bessel

namespace {

constexpr double kSeriesLimit = 26.0;

Complex bessel_series(Complex nu, double x) {
  // sum_m (-1)^m (x/2)^{2m+nu} / (m! Gamma(m + 1 + nu)), accumulated in long
  // double precision against the cancellation at larger x
  std::complex<long double> sum(0.0L, 0.0L);
  Complex t0 = std::exp(nu * std::log(0.5 * x)) / complex_gamma(nu + 1.0);
  std::complex<long double> term(t0.real(), t0.imag());
  long double q = -(long double)(0.25 * x * x);
  long double peak = std::abs(t0);
  for (int m = 0; m < 400; ++m) {
    sum += term;
    std::complex<long double> denom =
        std::complex<long double>(m + 1, 0) *
        (std::complex<long double>(nu.real(), nu.imag()) + (long double)(m + 1));
    term = term * q / denom;
    long double mag = std::abs(term);
    if (mag > peak) peak = mag;
    if (mag < 1e-20L * (std::abs(sum) + peak * 1e-4L) && m > x) break;
  }
  return Complex(double(sum.real()), double(sum.imag()));
}

// Hankel large-argument expansion; valid when x comfortably exceeds |nu|^2
Complex bessel_asymptotic(Complex nu, double x) {
  Complex mu = 4.0 * nu * nu;
  Complex P(1.0, 0.0), Q(0.0, 0.0);
  Complex ak(1.0, 0.0);
  double smallest = 1e300;
  for (int k = 1; k <= 40; ++k) {
    double odd = double(2 * k - 1);
    ak *= (mu - odd * odd) / (double(k) * 8.0 * x);
    double mag = std::abs(ak);
    if (mag > smallest && k > 4) break;  // asymptotic series started diverging
    smallest = std::min(smallest, mag);
    int r = k % 4;
    if (r == 1) Q += ak;
    else if (r == 2) P -= ak;
    else if (r == 3) Q -= ak;
    else P += ak;
    if (mag < 1e-17) break;
  }
  if (smallest > 1e-11 * (std::abs(P) + std::abs(Q)))
    throw VerifyError(Err::RegimeExceeded,
                      "Bessel asymptotic regime needs larger argument for this order");
  Complex omega = Complex(x, 0.0) - nu * (kPi / 2.0) - (kPi / 4.0);
  return std::sqrt(2.0 / (kPi * x)) * (std::cos(omega) * P - std::sin(omega) * Q);
}

}  // namespace

double bessel_j_real(double nu, double x) {
  if (nu >= 0.0) return std::cyl_bessel_j(nu, x);
  double n = -nu;
  if (std::abs(n - std::round(n)) < 1e-12) {
    int k = int(std::llround(n));
    double v = std::cyl_bessel_j(double(k), x);
    return (k % 2 == 0) ? v : -v;
  }
  return std::cyl_bessel_j(n, x) * std::cos(n * kPi) -
         std::cyl_neumann(n, x) * std::sin(n * kPi);
}

Complex bessel_j(Complex nu, double x) {
  if (x < 0.0) throw VerifyError(Err::RegimeExceeded, "J evaluated at negative argument");
  if (x == 0.0) return nu == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  if (nu.imag() == 0.0) return Complex(bessel_j_real(nu.real(), x), 0.0);
  if (std::abs(nu.imag()) > 120.0)
    throw VerifyError(Err::RegimeExceeded, "order too large for the series regime");
  if (x <= kSeriesLimit) return bessel_series(nu, x);
  return bessel_asymptotic(nu, x);
}

double kernel_B(double t, double x) {
  if (x <= 0.0) throw VerifyError(Err::RegimeExceeded, "B kernel needs x > 0");
  if (std::abs(t) < 1e-6) {
    // limit value -(2/pi) d/dnu J_nu(x) at nu = 0, i.e. -Y_0(x)
    return -std::cyl_neumann(0.0, x);
  }
  Complex j = bessel_j(Complex(0.0, 2.0 * t), x);
  return -j.imag() / std::sinh(kPi * t);
}

// ---------------------------------------------------------------------------
// transforms

TransformValue h_principal(const TestFunction& V, double t) {
  if (V.is_zero()) return {Complex(t, 0.0), Complex(0.0, 0.0), 0.0};
  QuadResult q = integrate([&](double x) { return V(x) * kernel_B(t, x) / x; },
                           V.a, V.b, 1e-11);
  return {Complex(t, 0.0), Complex(q.value, 0.0), q.est_error};
}

TransformValue h_discrete(const TestFunction& V, int k, bool include_ik) {
  if (k <= 0 || k % 2 != 0)
    throw VerifyError(Err::ConfigInvalid, "discrete transform needs even k > 0");
  if (V.is_zero()) return {Complex(double(k), 0.0), Complex(0.0, 0.0), 0.0};
  QuadResult q = integrate(
      [&](double x) { return V(x) * bessel_j_real(double(k - 1), x) / x; }, V.a, V.b,
      1e-11);
  double sign = include_ik ? ((k / 2) % 2 == 0 ? 1.0 : -1.0) : 1.0;
  return {Complex(double(k), 0.0), Complex(sign * q.value, 0.0), q.est_error};
}

// ---------------------------------------------------------------------------
// oscillatory double integral V*W(z)

namespace {

struct ConvIntegrand {
  const TestFunction* V;
  const TestFunction* W;
  double z;

  double phase(double x, double y) const {
    return 0.5 * z * (x / y + y / x) + 8.0 * kPi * kPi / (z * x * y);
  }
  Complex eval(double x, double y) const {
    double vw = (*V)(4.0 * kPi / x) * (*W)(4.0 * kPi / y);
    if (vw == 0.0) return Complex(0.0, 0.0);
    double ph = phase(x, y);
    return vw / (x * y) * Complex(std::cos(ph), std::sin(ph));
  }
};

constexpr std::array<double, 8> kGL16Nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGL16Weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
constexpr std::array<double, 4> kGL8Nodes = {0.1834346424956498, 0.5255324099163290,
                                             0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGL8Weights = {0.3626837833783620, 0.3137066458778873,
                                               0.2223810344533745, 0.1012285362903763};

void gl_points(double a, double b, double* pts, double* wts, int n /*8 or 16*/) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  if (n == 16) {
    for (int i = 0; i < 8; ++i) {
      pts[2 * i] = c - h * kGL16Nodes[i];
      pts[2 * i + 1] = c + h * kGL16Nodes[i];
      wts[2 * i] = wts[2 * i + 1] = h * kGL16Weights[i];
    }
  } else {
    for (int i = 0; i < 4; ++i) {
      pts[2 * i] = c - h * kGL8Nodes[i];
      pts[2 * i + 1] = c + h * kGL8Nodes[i];
      wts[2 * i] = wts[2 * i + 1] = h * kGL8Weights[i];
    }
  }
}

struct PanelSum {
  Complex v16;
  Complex v8;
};

PanelSum panel_tensor(const ConvIntegrand& F, double x0, double x1, double y0,
                      double y1) {
  double px[16], wx[16], py[16], wy[16];
  gl_points(x0, x1, px, wx, 16);
  gl_points(y0, y1, py, wy, 16);
  Complex s16(0.0, 0.0);
  for (int i = 0; i < 16; ++i) {
    Complex row(0.0, 0.0);
    for (int j = 0; j < 16; ++j) row += wy[j] * F.eval(px[i], py[j]);
    s16 += wx[i] * row;
  }
  double qx[8], vx[8], qy[8], vy[8];
  gl_points(x0, x1, qx, vx, 8);
  gl_points(y0, y1, qy, vy, 8);
  Complex s8(0.0, 0.0);
  for (int i = 0; i < 8; ++i) {
    Complex row(0.0, 0.0);
    for (int j = 0; j < 8; ++j) row += vy[j] * F.eval(qx[i], qy[j]);
    s8 += vx[i] * row;
  }
  return {s16, s8};
}

void conv_recurse(const ConvIntegrand& F, double x0, double x1, double y0, double y1,
                  int depth, Complex& acc, double& err, i64& panels) {
  // phase range estimate from corners and centre
  double p[5] = {F.phase(x0, y0), F.phase(x0, y1), F.phase(x1, y0), F.phase(x1, y1),
                 F.phase(0.5 * (x0 + x1), 0.5 * (y0 + y1))};
  double lo = p[0], hi = p[0];
  for (double v : p) { lo = std::min(lo, v); hi = std::max(hi, v); }
  // 16-point tensor Gauss handles a full wave of phase at ~1e-19 accuracy;
  // splitting below two pi per panel buys nothing
  double range = (hi - lo) * 1.5;
  if (range > 3.0 * kPi && depth > 0) {
    // split the axis with the larger phase variation
    double vx = std::max(std::abs(p[2] - p[0]), std::abs(p[3] - p[1]));
    double vy = std::max(std::abs(p[1] - p[0]), std::abs(p[3] - p[2]));
    if (vx >= vy) {
      double xm = 0.5 * (x0 + x1);
      conv_recurse(F, x0, xm, y0, y1, depth - 1, acc, err, panels);
      conv_recurse(F, xm, x1, y0, y1, depth - 1, acc, err, panels);
    } else {
      double ym = 0.5 * (y0 + y1);
      conv_recurse(F, x0, x1, y0, ym, depth - 1, acc, err, panels);
      conv_recurse(F, x0, x1, ym, y1, depth - 1, acc, err, panels);
    }
    return;
  }
  PanelSum s = panel_tensor(F, x0, x1, y0, y1);
  acc += s.v16;
  err += std::abs(s.v16 - s.v8);
  ++panels;
  if (panels > 2000000)
    throw VerifyError(Err::QuadratureFailure, "convolution panel budget exhausted");
}

}  // namespace

Complex convolve(const TestFunction& V, const TestFunction& W, double z,
                 double* est_error) {
  if (z <= 0.0) throw VerifyError(Err::QuadratureFailure, "convolution needs z > 0");
  if (V.is_zero() || W.is_zero()) {
    if (est_error) *est_error = 0.0;
    return Complex(0.0, 0.0);
  }
  ConvIntegrand F{&V, &W, z};
  double x0 = 4.0 * kPi / V.b, x1 = 4.0 * kPi / V.a;
  double y0 = 4.0 * kPi / W.b, y1 = 4.0 * kPi / W.a;
  Complex acc(0.0, 0.0);
  double err = 0.0;
  i64 panels = 0;
  conv_recurse(F, x0, x1, y0, y1, 40, acc, err, panels);
  if (est_error) *est_error = err;
  return acc;
}

// ---------------------------------------------------------------------------
// inversion formula right side and Plancherel

Complex sears_titchmarsh_rhs(const TestFunction& V, const TestFunction& W, double z,
                             double T, int K) {
  // Reconstruction of Re(V*W)(z) from its spectral data:
  //   4 pi int_0^T M(t) tanh(pi t) B_{2it}(z) t dt
  //   + 2 pi sum over even k of (k-1) i^k J_{k-1}(z) M(k).
  // The i^k sign and the discrete coefficient 2 pi are forced by the kernel
  // transform values (the continuous B-transform of the oscillatory kernel is
  // pi B B, the J-transform is i^k pi J J); the tail estimate for the t-cut is
  // twice the magnitude of the last block.
  auto M = [&](double t) {
    return h_principal(V, t).value.real() * h_principal(W, t).value.real();
  };
  double cont = 0.0, last_block = 0.0;
  for (double t0 = 0.0; t0 < T; t0 += 2.0) {
    double t1 = std::min(t0 + 2.0, T);
    QuadResult q = integrate(
        [&](double t) { return M(t) * std::tanh(kPi * t) * kernel_B(t, z) * t; }, t0,
        t1, 1e-10);
    cont += q.value;
    last_block = std::abs(q.value);
  }
  double tail_bound = 2.0 * last_block;
  if (tail_bound > 1e-4 * (std::abs(cont) + 1e-12))
    throw VerifyError(Err::TruncationBudgetExceeded,
                      "spectral t-integral tail estimate above tolerance");
  double disc = 0.0;
  for (int k = 2; k <= K; k += 2) {
    double mk = h_discrete(V, k).value.real() * h_discrete(W, k).value.real();
    double ik = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    disc += ik * double(k - 1) * bessel_j_real(double(k - 1), z) * mk;
  }
  return Complex(4.0 * kPi * cont + 2.0 * kPi * disc, 0.0);
}

Complex sears_titchmarsh_rhs_displayed(const TestFunction& V, const TestFunction& W,
                                       double z, double T, int K) {
  // the uncorrected variant with 4 pi on both parts and no i^k sign
  auto M = [&](double t) {
    return h_principal(V, t).value.real() * h_principal(W, t).value.real();
  };
  double cont = 0.0;
  for (double t0 = 0.0; t0 < T; t0 += 2.0) {
    double t1 = std::min(t0 + 2.0, T);
    cont += integrate(
                [&](double t) { return M(t) * std::tanh(kPi * t) * kernel_B(t, z) * t; },
                t0, t1, 1e-10)
                .value;
  }
  double disc = 0.0;
  for (int k = 2; k <= K; k += 2) {
    double mk = h_discrete(V, k).value.real() * h_discrete(W, k).value.real();
    disc += double(k - 1) * bessel_j_real(double(k - 1), z) * mk;
  }
  return Complex(4.0 * kPi * (cont + disc), 0.0);
}

PlancherelResult plancherel_check(const TestFunction& V1, const TestFunction& V2) {
  PlancherelResult out;
  double lo = std::max(V1.a, V2.a), hi = std::min(V1.b, V2.b);
  out.lhs = (lo < hi)
                ? integrate([&](double x) { return V1(x) * V2(x) / x; }, lo, hi, 1e-12)
                      .value
                : 0.0;
  auto M = [&](double t) {
    return h_principal(V1, t).value.real() * h_principal(V2, t).value.real();
  };
  double cont = 0.0;
  for (double t0 = 0.0; t0 < 30.0; t0 += 2.0) {
    QuadResult q = integrate(
        [&](double t) { return M(t) * std::tanh(kPi * t) * t; }, t0, t0 + 2.0, 1e-10);
    cont += q.value;
  }
  double disc = 0.0;
  for (int k = 2; k <= 40; k += 2) {
    double mk = h_discrete(V1, k).value.real() * h_discrete(V2, k).value.real();
    disc += double(k - 1) * mk;
  }
  // the t-integral runs over the full line; the integrand is even in t
  out.rhs = 2.0 * (2.0 * cont + disc);
  double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-12});
  out.rel_residual = std::abs(out.lhs - out.rhs) / scale;
  return out;
}

// ---------------------------------------------------------------------------
// V*W on a grid and transform-of-convolution

ConvGrid build_conv_grid(const TestFunction& V, const TestFunction& W, double z_lo,
                         double z_hi, double dz) {
  ConvGrid g;
  g.V = &V;
  g.W = &W;
  g.z_hi = z_hi;
  int workers = worker_count_from_env(0);

  // segment 1: log-spaced over [z_lo, z_mid]; the kernel phase varies like
  // c/z there, so a uniform step in log z keeps the per-step phase constant
  double z_mid = 2.0;
  size_t n1 = 3200;
  if (n1 % 2 == 1) ++n1;
  g.s0 = std::log(z_lo);
  g.ds = (std::log(z_mid) - g.s0) / double(n1);
  g.log_values.resize(n1 + 1);
  std::vector<double> imags1(n1 + 1);
  parallel_for(i64(n1) + 1, workers, [&](i64 i) {
    double z = std::exp(g.s0 + double(i) * g.ds);
    Complex c = convolve(V, W, z);
    g.log_values[size_t(i)] = c.real();
    imags1[size_t(i)] = std::abs(c.imag());
  });

  // bound for the omitted (0, z_lo) piece: the kernel magnitude collapses
  // super-polynomially there; probe a few points
  double probe = 0.0;
  for (double z : {0.25 * z_lo, 0.5 * z_lo, 0.75 * z_lo, z_lo})
    probe = std::max(probe, std::abs(convolve(V, W, z)));
  g.skipped_mass = probe * 4.0;

  // segment 2: uniform over [z_mid, z_hi], even interval count for Simpson
  size_t intervals = size_t(std::llround((z_hi - z_mid) / dz));
  if (intervals % 2 == 1) ++intervals;
  g.z0 = z_mid;
  g.dz = (z_hi - z_mid) / double(intervals);
  size_t n = intervals + 1;
  g.values.resize(n);
  std::vector<double> imags(n);
  parallel_for(i64(n), workers, [&](i64 i) {
    double z = g.z0 + double(i) * g.dz;
    Complex c = convolve(V, W, z);
    g.values[size_t(i)] = c.real();
    imags[size_t(i)] = std::abs(c.imag());
  });
  for (double v : imags1) g.max_imag = std::max(g.max_imag, v);
  for (double v : imags) g.max_imag = std::max(g.max_imag, v);

  // least-squares fit of
  //   x^{-1/2} [(A0 + A1/x + A2/x^2) cos x + (B0 + B1/x + B2/x^2) sin x]
  // over the last four periods
  double za = z_hi - 8.0 * kPi;
  constexpr int kP = 6;
  double M[kP][kP] = {};
  double rhsv[kP] = {};
  for (size_t i = 0; i < n; ++i) {
    double z = g.z0 + double(i) * g.dz;
    if (z < za) continue;
    double w = 1.0 / std::sqrt(z);
    double base[kP] = {w * std::cos(z),     w * std::sin(z),
                       w * std::cos(z) / z, w * std::sin(z) / z,
                       w * std::cos(z) / (z * z), w * std::sin(z) / (z * z)};
    for (int r = 0; r < kP; ++r) {
      rhsv[r] += g.values[i] * base[r];
      for (int c = 0; c < kP; ++c) M[r][c] += base[r] * base[c];
    }
  }
  double sol[kP] = {};
  {
    double A[kP][kP + 1];
    for (int r = 0; r < kP; ++r) {
      for (int c = 0; c < kP; ++c) A[r][c] = M[r][c];
      A[r][kP] = rhsv[r];
    }
    for (int col = 0; col < kP; ++col) {
      int piv = col;
      for (int r = col + 1; r < kP; ++r)
        if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
      for (int c = 0; c <= kP; ++c) std::swap(A[col][c], A[piv][c]);
      if (std::abs(A[col][col]) < 1e-14) A[col][col] = 1e-14;
      for (int r = 0; r < kP; ++r) {
        if (r == col) continue;
        double f = A[r][col] / A[col][col];
        for (int c = col; c <= kP; ++c) A[r][c] -= f * A[col][c];
      }
    }
    for (int r = 0; r < kP; ++r) sol[r] = A[r][kP] / A[r][r];
  }
  g.tail_A = sol[0];
  g.tail_B = sol[1];
  g.tail_A1 = sol[2];
  g.tail_B1 = sol[3];
  g.tail_A2 = sol[4];
  g.tail_B2 = sol[5];
  return g;
}

namespace {

// int_Z^inf e^{i w x} x^{-n} dx, by repeated integration by parts (4 terms)
Complex osc_tail(double w, int n, double Z) {
  Complex iw(0.0, w);
  Complex acc(0.0, 0.0);
  double zn = std::pow(Z, -n);
  Complex phase = std::polar(1.0, w * Z);
  Complex coef = -phase / iw;
  double nn = double(n);
  // T_n = -e^{iwZ} Z^{-n} / (iw) + (n/(iw)) T_{n+1}
  Complex factor(1.0, 0.0);
  for (int j = 0; j < 4; ++j) {
    acc += coef * factor * zn;
    factor *= (nn + j) / iw;
    zn /= Z;
  }
  return acc;
}

// one power level of the product tail:
//   int_Z^inf x^{-n} (A cos x + B sin x)(u cos(x - phi0) + v sin(x - phi0)) dx
double product_tail_level(double A, double B, double u, double v, double phi0,
                          int n, double Z) {
  double c0 = std::cos(phi0), s0 = std::sin(phi0);
  // cos x cos chi = (c0 + cos(2x - phi0))/2     sin x cos chi = (s0 + sin(2x - phi0))/2
  // cos x sin chi = (-s0 + sin(2x - phi0))/2    sin x sin chi = (c0 - cos(2x - phi0))/2
  double dc = 0.5 * (u * (A * c0 + B * s0) + v * (-A * s0 + B * c0));
  double osc_cos = 0.5 * (u * A - v * B);
  double osc_sin = 0.5 * (u * B + v * A);
  double tail = dc * std::pow(Z, 1.0 - n) / (double(n) - 1.0);
  Complex e2 = osc_tail(2.0, n, Z) * std::polar(1.0, -phi0);
  return tail + osc_cos * e2.real() + osc_sin * e2.imag();
}

// tail of int_Z^inf f(x) K(x) dx / x with
//   f ~ x^{-1/2} [(A0 + A1/x) cos x + (B0 + B1/x) sin x]
//   K ~ sqrt(2/(pi x)) [ alpha cos chi + beta sin chi + (gamma cos chi + delta sin chi)/x ]
// chi = x - phi0; x^{-4} levels are dropped
double kernel_weighted_tail(const ConvGrid& g, double phi0, double alpha, double beta,
                            double gamma, double delta) {
  double Z = g.z_hi;
  double scale = std::sqrt(2.0 / kPi);
  double t2 = product_tail_level(g.tail_A, g.tail_B, alpha, beta, phi0, 2, Z);
  double t3 = product_tail_level(g.tail_A1, g.tail_B1, alpha, beta, phi0, 3, Z) +
              product_tail_level(g.tail_A, g.tail_B, gamma, delta, phi0, 3, Z);
  double t4 = product_tail_level(g.tail_A2, g.tail_B2, alpha, beta, phi0, 4, Z) +
              product_tail_level(g.tail_A1, g.tail_B1, gamma, delta, phi0, 4, Z);
  return scale * (t2 + t3 + t4);
}

double simpson_on_grid(const std::vector<double>& f, double h) {
  size_t n = f.size();
  if (n < 3) return 0.0;
  size_t m = (n % 2 == 1) ? n : n - 1;  // odd number of points for Simpson
  double s = f[0] + f[m - 1];
  for (size_t i = 1; i < m - 1; i += 2) s += 4.0 * f[i];
  for (size_t i = 2; i < m - 1; i += 2) s += 2.0 * f[i];
  double res = s * h / 3.0;
  if (m != n) res += 0.5 * h * (f[n - 2] + f[n - 1]);  // trapezoid for the last sliver
  return res;
}

}  // namespace

TransformValue h_of_convolution(const ConvGrid& grid, double t) {
  // segment 1 in s = log z: dz/z = ds
  size_t n1 = grid.log_values.size();
  std::vector<double> f1(n1);
  for (size_t i = 0; i < n1; ++i) {
    double z = std::exp(grid.s0 + double(i) * grid.ds);
    f1[i] = grid.log_values[i] * kernel_B(t, z);
  }
  size_t n = grid.values.size();
  std::vector<double> f(n);
  for (size_t i = 0; i < n; ++i) {
    double z = grid.z0 + double(i) * grid.dz;
    f[i] = grid.values[i] * kernel_B(t, z) / z;
  }
  double main = simpson_on_grid(f1, grid.ds) + simpson_on_grid(f, grid.dz);
  // B_{2it}(x) ~ -sqrt(2/(pi x)) [ P sin(chi) + (qc/x) cos(chi) ], chi = x - pi/4,
  // qc = (mu - 1)/8, P = 1 - (mu-1)(mu-9)/(2 (8x)^2), mu = 4 (2it)^2 = -16 t^2
  double mu = -16.0 * t * t;
  double qc = (mu - 1.0) / 8.0;
  double p0 = 1.0 - (mu - 1.0) * (mu - 9.0) / (2.0 * std::pow(8.0 * grid.z_hi, 2));
  double tail = kernel_weighted_tail(grid, kPi / 4.0, 0.0, -p0, -qc, 0.0);
  double est = std::abs(tail) * 0.02 + grid.skipped_mass;
  return {Complex(t, 0.0), Complex(main + tail, 0.0), est};
}

TransformValue h_of_convolution_discrete(const ConvGrid& grid, int k, bool include_ik) {
  if (k <= 0 || k % 2 != 0)
    throw VerifyError(Err::ConfigInvalid, "discrete transform needs even k > 0");
  size_t n1 = grid.log_values.size();
  std::vector<double> f1(n1);
  for (size_t i = 0; i < n1; ++i) {
    double z = std::exp(grid.s0 + double(i) * grid.ds);
    f1[i] = grid.log_values[i] * bessel_j_real(double(k - 1), z);
  }
  size_t n = grid.values.size();
  std::vector<double> f(n);
  for (size_t i = 0; i < n; ++i) {
    double z = grid.z0 + double(i) * grid.dz;
    f[i] = grid.values[i] * bessel_j_real(double(k - 1), z) / z;
  }
  double main = simpson_on_grid(f1, grid.ds) + simpson_on_grid(f, grid.dz);
  // J_{k-1}(x) ~ sqrt(2/(pi x)) [ P cos(chi) - (qc/x) sin(chi) ],
  // chi = x - phi0, phi0 = (k-1) pi/2 + pi/4, qc = (mu - 1)/8, mu = 4 (k-1)^2
  double m1 = double(k - 1);
  double mu = 4.0 * m1 * m1;
  double qc = (mu - 1.0) / 8.0;
  double p0 = 1.0 - (mu - 1.0) * (mu - 9.0) / (2.0 * std::pow(8.0 * grid.z_hi, 2));
  double phi0 = m1 * kPi / 2.0 + kPi / 4.0;
  double tail = kernel_weighted_tail(grid, phi0, p0, 0.0, 0.0, -qc);
  double sign = include_ik ? ((k / 2) % 2 == 0 ? 1.0 : -1.0) : 1.0;
  double est = std::abs(tail) * 0.02 + grid.skipped_mass;
  return {Complex(double(k), 0.0), Complex(sign * (main + tail), 0.0), est};
}

}  // namespace asaiverify::spectrans
