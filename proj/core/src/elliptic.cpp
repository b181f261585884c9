#include "isogreen/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace isogreen {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Modulus ladder for descending Landen: k -> (1-k')/(1+k') until negligible.
struct LandenLadder {
  std::array<double, 16> k{};
  int levels = 0;
};

LandenLadder build_ladder(double k) {
  LandenLadder lad;
  lad.k[0] = k;
  int i = 0;
  while (lad.k[i] > 1e-15 && i + 1 < static_cast<int>(lad.k.size())) {
    const double kp = std::sqrt((1.0 - lad.k[i]) * (1.0 + lad.k[i]));
    lad.k[i + 1] = (1.0 - kp) / (1.0 + kp);
    ++i;
  }
  lad.levels = i;
  return lad;
}

}  // namespace

double complete_K(double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw DomainError("complete_K: modulus must be in [0,1)");
  double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int it = 0; it < 60 && std::abs(a - b) > 4e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

double complete_E(double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw DomainError("complete_E: modulus must be in [0,1)");
  double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k)), c = k;
  double sum = 0.5 * c * c;
  double pow2 = 1.0;
  for (int it = 0; it < 40 && std::abs(c) > 1e-17; ++it) {
    c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += 0.5 * pow2 * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

EllipticContext make_context(double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw DomainError("make_context: modulus must be in [0,1)");
  EllipticContext ctx;
  ctx.k = k;
  ctx.k_prime = std::sqrt((1.0 - k) * (1.0 + k));
  ctx.K = complete_K(k);
  ctx.E = complete_E(k);
  ctx.K_prime = (k == 0.0) ? kKPrimeCap : complete_K(ctx.k_prime);
  return ctx;
}

JacobiReal jacobi_real(double u, double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw DomainError("jacobi_real: modulus must be in [0,1)");
  if (k < 1e-15) return {std::sin(u), std::cos(u), 1.0};

  const LandenLadder lad = build_ladder(k);
  double scale = 1.0;
  for (int i = 1; i <= lad.levels; ++i) scale *= 1.0 + lad.k[i];

  const double phi = u / scale;
  double s = std::sin(phi), c = std::cos(phi), d = 1.0;
  for (int i = lad.levels; i >= 1; --i) {
    const double ki = lad.k[i];
    const double t = 1.0 + ki * s * s;
    s = (1.0 + ki) * s / t;
    c = c * d / t;
    const double ks = lad.k[i - 1] * s;
    d = std::sqrt(std::max(0.0, 1.0 - ks * ks));
  }
  return {s, c, d};
}

JacobiComplex jacobi(Complex u, const EllipticContext& ctx) {
  const double x = u.real(), y = u.imag();
  if (std::abs(y) < 1e-300) {
    const JacobiReal j = jacobi_real(x, ctx.k);
    return {Complex(j.sn), Complex(j.cn), Complex(j.dn)};
  }
  const JacobiReal jx = jacobi_real(x, ctx.k);
  const JacobiReal jy = jacobi_real(y, ctx.k_prime);
  const double k2 = ctx.k * ctx.k;
  const double den = jy.cn * jy.cn + k2 * jx.sn * jx.sn * jy.sn * jy.sn;
  if (std::abs(den) < kPoleGuard)
    throw PoleError("jacobi: argument at a pole of sn/cn/dn");
  const Complex sn(jx.sn * jy.dn / den,
                   jx.cn * jx.dn * jy.sn * jy.cn / den);
  const Complex cn(jx.cn * jy.cn / den,
                   -jx.sn * jx.dn * jy.sn * jy.dn / den);
  const Complex dn(jx.dn * jy.cn * jy.dn / den,
                   -k2 * jx.sn * jx.cn * jy.sn / den);
  return {sn, cn, dn};
}

Complex sc(Complex u, const EllipticContext& ctx) {
  const JacobiComplex j = jacobi(u, ctx);
  if (std::abs(j.cn) < kPoleGuard)
    throw PoleError("sc: pole, u = K (mod 2K) on the real axis");
  return j.sn / j.cn;
}

Complex dc(Complex u, const EllipticContext& ctx) {
  const JacobiComplex j = jacobi(u, ctx);
  if (std::abs(j.cn) < kPoleGuard) throw PoleError("dc: pole at cn = 0");
  return j.dn / j.cn;
}

Complex ns(Complex u, const EllipticContext& ctx) {
  const JacobiComplex j = jacobi(u, ctx);
  if (std::abs(j.sn) < kPoleGuard) throw PoleError("ns: pole at sn = 0");
  return 1.0 / j.sn;
}

Complex nc(Complex u, const EllipticContext& ctx) {
  const JacobiComplex j = jacobi(u, ctx);
  if (std::abs(j.cn) < kPoleGuard) throw PoleError("nc: pole at cn = 0");
  return 1.0 / j.cn;
}

double sc(double u, const EllipticContext& ctx) {
  const JacobiReal j = jacobi_real(u, ctx.k);
  if (std::abs(j.cn) < kPoleGuard)
    throw PoleError("sc: pole, u = K (mod 2K)");
  return j.sn / j.cn;
}

double dc(double u, const EllipticContext& ctx) {
  const JacobiReal j = jacobi_real(u, ctx.k);
  if (std::abs(j.cn) < kPoleGuard) throw PoleError("dc: pole at cn = 0");
  return j.dn / j.cn;
}

double ns(double u, const EllipticContext& ctx) {
  const JacobiReal j = jacobi_real(u, ctx.k);
  if (std::abs(j.sn) < kPoleGuard) throw PoleError("ns: pole at sn = 0");
  return 1.0 / j.sn;
}

double nc(double u, const EllipticContext& ctx) {
  const JacobiReal j = jacobi_real(u, ctx.k);
  if (std::abs(j.cn) < kPoleGuard) throw PoleError("nc: pole at cn = 0");
  return 1.0 / j.cn;
}

namespace detail {

double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 1e-10;
  double dx, dy, dz;
  double mu;
  do {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = (x + y + z) / 3.0;
    dx = (mu - x) / mu;
    dy = (mu - y) / mu;
    dz = (mu - z) / mu;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > errtol);
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
  constexpr double errtol = 1e-10;
  double sum = 0.0, fac = 1.0;
  double dx, dy, dz, mu;
  do {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = 0.2 * (x + y + 3.0 * z);
    dx = (mu - x) / mu;
    dy = (mu - y) / mu;
    dz = (mu - z) / mu;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > errtol);
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  const double s1 = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee);
  const double s2 = dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
  return 3.0 * sum + fac * (1.0 + s1 + s2) / (mu * std::sqrt(mu));
}

}  // namespace detail

double big_F(double x, const EllipticContext& ctx) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("big_F: argument must be in [0,1]");
  if (x == 0.0) return 0.0;
  const double c2 = (1.0 - x) * (1.0 + x);
  const double kx = ctx.k * x;
  const double d2 = (1.0 - kx) * (1.0 + kx);
  return x * detail::carlson_rf(c2, d2, 1.0);
}

double dc_squared_integral(double u, const EllipticContext& ctx) {
  const double K = ctx.K;
  if (!(u > 0.0 && u < 2.0 * K))
    throw DomainError("dc_squared_integral: u must be in (0, 2K)");
  if (std::abs(u - K) < kDcPoleGuard)
    throw PoleError("dc_squared_integral: u within guard distance of the pole at K");
  // Meromorphic continuation past the pole: Dc(u+2K) = Dc(u) + 2(K-E), Dc odd.
  if (u > K) return 2.0 * (K - ctx.E) - dc_squared_integral(2.0 * K - u, ctx);
  const double k = ctx.k;
  auto f = [&](double v) {
    const JacobiReal j = jacobi_real(v, k);
    const double q = j.dn / j.cn;
    return q * q;
  };
  double error = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, 0.0, u, 17, 1e-14, &error);
  return val;
}

double A_func(double u, const EllipticContext& ctx) {
  const double K = ctx.K;
  if (!(u > 0.0 && u < 2.0 * K)) throw DomainError("A_func: u must be in (0, 2K)");
  if (std::abs(u - K) < kDcPoleGuard)
    throw PoleError("A_func: u within guard distance of the pole at K");
  if (ctx.k == 0.0) return std::tan(u);
  if (u > K) return -A_func(2.0 * K - u, ctx);  // odd, 2K-periodic continuation
  const double Dc = dc_squared_integral(u, ctx);
  return (Dc + (ctx.E - K) / K * u) / ctx.k_prime;
}

TorusPoint reduce_to_torus(Complex u, const EllipticContext& ctx) {
  if (!ctx.has_finite_torus())
    throw DomainError("reduce_to_torus: torus degenerates at k = 0");
  const double px = 4.0 * ctx.K, py = 4.0 * ctx.K_prime;
  double re = std::fmod(u.real(), px);
  if (re < 0.0) re += px;
  double im = std::fmod(u.imag(), py);
  if (im < 0.0) im += py;
  return {Complex(re, im)};
}

}  // namespace isogreen
