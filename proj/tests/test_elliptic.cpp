#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "isogreen/elliptic.hpp"
#include "oracles.hpp"

using namespace isogreen;

namespace {
const double kPi = 3.14159265358979323846;

std::vector<double> sample_moduli() { return {0.1, 0.3, 0.5, 0.7, 0.9}; }
}  // namespace

TEST_SUITE_BEGIN("elliptic");

TEST_CASE("context at k = 0 degenerates to trigonometry") {
  const EllipticContext c = make_context(0.0);
  CHECK(c.K == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(c.E == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(c.k_prime == 1.0);
  CHECK(c.K_prime == kKPrimeCap);
  CHECK_FALSE(c.has_finite_torus());
}

TEST_CASE("context constants match the AGM oracle at k = 0.8") {
  const EllipticContext c = make_context(0.8);
  CHECK(std::abs(c.K - oracles::agm_K(0.8)) < 1e-13 * c.K);
  CHECK(std::abs(c.E - oracles::agm_E(0.8)) < 1e-13 * c.E);
  CHECK(std::abs(c.k_prime - 0.6) < 1e-15);
}

TEST_CASE("context rejects out-of-range moduli") {
  CHECK_THROWS_AS(make_context(-0.1), DomainError);
  CHECK_THROWS_AS(make_context(1.0), DomainError);
  CHECK_THROWS_AS(make_context(1.2), DomainError);
}

TEST_CASE("Legendre relation holds to 1e-12") {
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    const double Ep = complete_E(c.k_prime);
    const double lhs = c.E * c.K_prime + Ep * c.K - c.K * c.K_prime;
    CHECK(std::abs(lhs - kPi / 2) < 1e-12 * (kPi / 2));
  }
}

TEST_CASE("K increases and E decreases in the modulus") {
  double prevK = complete_K(0.0), prevE = complete_E(0.0);
  for (double k = 0.05; k < 0.999; k += 0.05) {
    const double Kk = complete_K(k), Ek = complete_E(k);
    CHECK(Kk > prevK);
    CHECK(Ek < prevE);
    prevK = Kk;
    prevE = Ek;
  }
}

TEST_CASE("jacobi degenerates to sin/cos at k = 0") {
  const EllipticContext c = make_context(0.0);
  for (double u : {0.2, 1.1, 2.7, -0.9}) {
    const JacobiComplex j = jacobi(Complex(u, 0.0), c);
    CHECK(std::abs(j.sn - std::sin(u)) < 1e-14);
    CHECK(std::abs(j.cn - std::cos(u)) < 1e-14);
    CHECK(std::abs(j.dn - 1.0) < 1e-14);
  }
}

TEST_CASE("jacobi special value at u = K") {
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    const JacobiReal j = jacobi_real(c.K, k);
    CHECK(std::abs(j.sn - 1.0) < 1e-13);
    CHECK(std::abs(j.cn) < 1e-13);
    CHECK(std::abs(j.dn - c.k_prime) < 1e-13);
  }
}

TEST_CASE("real-argument jacobi matches the AGM phase oracle on (0, K)") {
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    for (int i = 1; i < 40; ++i) {
      const double u = c.K * i / 40.0;
      const JacobiReal j = jacobi_real(u, k);
      const oracles::Jac o = oracles::jacobi_agm(u, k);
      CHECK(std::abs(j.sn - o.sn) < 1e-13);
      CHECK(std::abs(j.cn - o.cn) < 1e-13);
      CHECK(std::abs(j.dn - o.dn) < 1e-13);
    }
  }
}

TEST_CASE("complex jacobi cross-checked against the addition-formula oracle") {
  const EllipticContext c = make_context(0.6);
  const JacobiComplex j = jacobi(Complex(0.3, 0.2), c);
  const oracles::JacC o = oracles::jacobi_addition(0.3, 0.2, 0.6);
  CHECK(std::abs(j.sn - o.sn) < 1e-11);
  CHECK(std::abs(j.cn - o.cn) < 1e-11);
  CHECK(std::abs(j.dn - o.dn) < 1e-11);
}

TEST_CASE("complex jacobi identities and periodicity on sampled torus points") {
  std::mt19937_64 rng(20240811);
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    std::uniform_real_distribution<double> ux(0.0, 4.0 * c.K);
    std::uniform_real_distribution<double> uy(0.0, 4.0 * c.K_prime);
    int done = 0;
    while (done < 60) {
      const Complex u(ux(rng), uy(rng));
      JacobiComplex j;
      try {
        j = jacobi(u, c);
      } catch (const PoleError&) {
        continue;
      }
      if (std::abs(j.sn) > 1e4) continue;  // too close to a pole for tight checks
      CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-11);
      CHECK(std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0) < 1e-11);
      const JacobiComplex jp = jacobi(u + Complex(4.0 * c.K, 0.0), c);
      const JacobiComplex ji = jacobi(u + Complex(0.0, 2.0 * c.K_prime), c);
      CHECK(std::abs(jp.sn - j.sn) < 1e-10 * std::max(1.0, std::abs(j.sn)));
      CHECK(std::abs(ji.sn - j.sn) < 1e-10 * std::max(1.0, std::abs(j.sn)));
      ++done;
    }
  }
}

TEST_CASE("jacobi signals the pole at u = iK'") {
  const EllipticContext c = make_context(0.5);
  CHECK_THROWS_AS(jacobi(Complex(0.0, c.K_prime), c), PoleError);
}

TEST_CASE("sc degenerates to tan at k = 0") {
  const EllipticContext c = make_context(0.0);
  for (double u : {0.1, 0.7, 1.2}) {
    CHECK(std::abs(sc(u, c) - std::tan(u)) < 1e-13);
  }
}

TEST_CASE("sc at the self-dual point K/2") {
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    const double v = sc(c.K / 2, c);
    CHECK(std::abs(c.k_prime * v * v - 1.0) < 1e-12);
  }
}

TEST_CASE("sc complement identity sc(K-theta) k' sc(theta) = 1") {
  std::mt19937_64 rng(7);
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    std::uniform_real_distribution<double> ut(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
      const double theta = ut(rng) * c.K;
      const double lhs = sc(c.K - theta, c) * c.k_prime * sc(theta, c);
      CHECK(std::abs(lhs - 1.0) < 1e-11);
    }
  }
}

TEST_CASE("quotient identity k'^2 sc^2 + k'^2 = dc^2 - k^2") {
  std::mt19937_64 rng(8);
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    std::uniform_real_distribution<double> ut(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
      const double theta = ut(rng) * c.K;
      const double kp2 = c.k_prime * c.k_prime;
      const double lhs = kp2 * sc(theta, c) * sc(theta, c) + kp2;
      const double rhs = dc(theta, c) * dc(theta, c) - k * k;
      CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(rhs)));
    }
  }
}

// sc(u+K) = -1/(k' sc u), so the product of sqrt(k') sc at half-period shift
// is -1 (at k = 0 this is tan(u + pi/2) tan(u) = -1).
TEST_CASE("sc half-period identity sqrt(k') sc(u+K) sqrt(k') sc(u) = -1") {
  std::mt19937_64 rng(9);
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    int done = 0;
    while (done < 50) {
      const double u = ut(rng) * c.K;
      double a, b;
      try {
        a = sc(u, c);
        b = sc(u + c.K, c);
      } catch (const PoleError&) {
        continue;
      }
      if (std::abs(a) < 1e-3 || std::abs(a) > 1e3) continue;
      CHECK(std::abs(c.k_prime * a * b + 1.0) < 1e-10);
      ++done;
    }
  }
}

TEST_CASE("sc periods: sc(u+2K) = sc(u) and sc(u+2iK') = -sc(u)") {
  std::mt19937_64 rng(10);
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    std::uniform_real_distribution<double> ux(0.0, 4.0 * c.K);
    std::uniform_real_distribution<double> uy(0.1, 3.9 * c.K_prime);
    int done = 0;
    while (done < 30) {
      const Complex u(ux(rng), uy(rng));
      Complex a, b, d;
      try {
        a = sc(u, c);
        b = sc(u + Complex(2.0 * c.K, 0.0), c);
        d = sc(u + Complex(0.0, 2.0 * c.K_prime), c);
      } catch (const PoleError&) {
        continue;
      }
      const double scale = std::max(1.0, std::abs(a));
      if (scale > 1e4) continue;
      CHECK(std::abs(b - a) < 1e-10 * scale);
      CHECK(std::abs(d + a) < 1e-10 * scale);
      ++done;
    }
  }
}

TEST_CASE("sc signals its pole on the real axis") {
  const EllipticContext c = make_context(0.4);
  CHECK_THROWS_AS(sc(c.K, c), PoleError);
  CHECK_THROWS_AS(sc(3.0 * c.K, c), PoleError);
}

TEST_CASE("big_F endpoints and inverse round trip") {
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    CHECK(big_F(0.0, c) == 0.0);
    CHECK(std::abs(big_F(1.0, c) - c.K) < 1e-12 * c.K);
    for (double x : {0.1, 0.35, 0.5, 0.82, 0.99}) {
      const double v = big_F(x, c);
      CHECK(std::abs(jacobi_real(v, k).sn - x) < 1e-11);
    }
  }
  const EllipticContext c3 = make_context(0.3);
  const double v = big_F(0.5, c3);
  CHECK(std::abs(jacobi_real(v, 0.3).sn - 0.5) < 1e-11);
  CHECK_THROWS_AS(big_F(1.5, c3), DomainError);
  CHECK_THROWS_AS(big_F(-0.2, c3), DomainError);
}

TEST_CASE("big_F is strictly increasing") {
  const EllipticContext c = make_context(0.7);
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double v = big_F(i / 40.0, c);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("A_func trigonometric degeneration at k = 0") {
  const EllipticContext c = make_context(0.0);
  CHECK(std::abs(A_func(kPi / 4, c) - 1.0) < 1e-14);
}

TEST_CASE("A_func at the symmetric point K/2") {
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    const double lhs = A_func(c.K / 2, c);
    const double rhs = ns(c.K / 2, c) * dc(c.K / 2, c) / (2.0 * c.k_prime);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("Dc adaptive quadrature agrees with a fixed Gauss-Legendre rule") {
  const EllipticContext c = make_context(0.5);
  const double u = 0.7;
  const double adaptive = dc_squared_integral(u, c);
  const double fixed = oracles::gauss_legendre(
      [&](double v) {
        const JacobiReal j = jacobi_real(v, 0.5);
        const double q = j.dn / j.cn;
        return q * q;
      },
      0.0, u);
  CHECK(std::abs(adaptive - fixed) < 1e-11 * std::max(1.0, std::abs(fixed)));
}

TEST_CASE("A sum identity A(theta) + A(K-theta) = ns dc / k'") {
  std::mt19937_64 rng(11);
  for (double k : sample_moduli()) {
    const EllipticContext c = make_context(k);
    std::uniform_real_distribution<double> ut(0.02, 0.98);
    for (int i = 0; i < 20; ++i) {
      const double theta = ut(rng) * c.K;
      const double lhs = A_func(theta, c) + A_func(c.K - theta, c);
      const double rhs = ns(theta, c) * dc(theta, c) / c.k_prime;
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("A_func is strictly increasing on (0, K)") {
  for (double k : {0.2, 0.6}) {
    const EllipticContext c = make_context(k);
    double prev = -1e300;
    for (int i = 1; i <= 30; ++i) {
      const double u = c.K * i / 31.0;
      const double v = A_func(u, c);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("A_func continuation to (K, 2K) is odd under reflection") {
  const EllipticContext c = make_context(0.45);
  const double u = 1.3 * c.K;
  CHECK(std::abs(A_func(u, c) + A_func(2.0 * c.K - u, c)) < 1e-12);
}

TEST_CASE("A_func pole guard near K") {
  const EllipticContext c = make_context(0.5);
  CHECK_THROWS_AS(A_func(c.K, c), PoleError);
  CHECK_THROWS_AS(A_func(c.K - 1e-8, c), PoleError);
  CHECK_THROWS_AS(A_func(-0.1, c), DomainError);
}

TEST_CASE("torus reduction lands in the fundamental rectangle and is idempotent") {
  const EllipticContext c = make_context(0.6);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ur(-40.0, 40.0);
  for (int i = 0; i < 100; ++i) {
    const Complex u(ur(rng), ur(rng));
    const TorusPoint p = reduce_to_torus(u, c);
    CHECK(p.u.real() >= 0.0);
    CHECK(p.u.real() < 4.0 * c.K);
    CHECK(p.u.imag() >= 0.0);
    CHECK(p.u.imag() < 4.0 * c.K_prime);
    const TorusPoint q = reduce_to_torus(p.u, c);
    CHECK(q.u == p.u);
  }
  const EllipticContext c0 = make_context(0.0);
  CHECK_THROWS_AS(reduce_to_torus(Complex(1.0, 1.0), c0), DomainError);
}

TEST_SUITE_END();
