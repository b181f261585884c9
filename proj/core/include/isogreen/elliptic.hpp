#pragma once

#include <complex>

#include "isogreen/errors.hpp"

// Complete/incomplete elliptic integrals and Jacobi elliptic functions at
// real and complex arguments, plus the auxiliary antiderivative
//   A(u|k) = (Dc(u|k) + u*(E-K)/K) / k',   Dc(u|k) = int_0^u dc^2(v|k) dv,
// which enters the vertex masses of the massive Laplacian.
//
// Conventions: modulus k (not the parameter m = k^2); quarter periods
// K = K(k), K' = K(k'). All functions are pure; EllipticContext is immutable
// after construction and safe to share across threads.

namespace isogreen {

using Complex = std::complex<double>;

// K(0') = K(1) diverges; contexts with k = 0 carry this finite sentinel
// instead. It exceeds K(k) for every double 0 < k < 1, so any genuine
// quarter period is below it. Torus reductions reject capped contexts.
inline constexpr double kKPrimeCap = 710.0;

struct EllipticContext {
  double k = 0.0;        // modulus, in [0,1)
  double k_prime = 1.0;  // sqrt(1-k^2)
  double K = 0.0;        // complete integral of the first kind
  double K_prime = 0.0;  // K(k'); kKPrimeCap when k = 0
  double E = 0.0;        // complete integral of the second kind

  bool has_finite_torus() const { return K_prime < kKPrimeCap; }
};

EllipticContext make_context(double k);

// Complete integrals by the arithmetic-geometric mean. complete_K(1) throws.
double complete_K(double k);
double complete_E(double k);

struct JacobiReal {
  double sn, cn, dn;
};
struct JacobiComplex {
  Complex sn, cn, dn;
};

// Real-argument sn/cn/dn by descending Landen transformation.
JacobiReal jacobi_real(double u, double k);

// Complex argument, split into real/imaginary parts through the k' functions.
JacobiComplex jacobi(Complex u, const EllipticContext& ctx);

// Quotient functions. Throw PoleError within kPoleGuard of the pole
// (|cn| or |sn| below the guard).
inline constexpr double kPoleGuard = 1e-12;

Complex sc(Complex u, const EllipticContext& ctx);
Complex dc(Complex u, const EllipticContext& ctx);
Complex ns(Complex u, const EllipticContext& ctx);
Complex nc(Complex u, const EllipticContext& ctx);

double sc(double u, const EllipticContext& ctx);
double dc(double u, const EllipticContext& ctx);
double ns(double u, const EllipticContext& ctx);
double nc(double u, const EllipticContext& ctx);

// Incomplete integral of the first kind in the modular-sine convention:
// big_F(x) = int_0^x dt / sqrt((1-t^2)(1-k^2 t^2)), so sn(big_F(x)) = x
// and big_F(1) = K.
double big_F(double x, const EllipticContext& ctx);

// Dc(u) = int_0^u dc^2(v|k) dv for u in (0, K); continued to (K, 2K) as the
// meromorphic function Dc(u) = Dc(u-2K) + 2(K-E) (simple pole at u = K).
// Throws PoleError within kDcPoleGuard of u = K.
inline constexpr double kDcPoleGuard = 1e-6;
double dc_squared_integral(double u, const EllipticContext& ctx);

// A(u|k); odd and 2K-periodic, strictly increasing on (0, K], A(u|0) = tan u.
double A_func(double u, const EllipticContext& ctx);

// Point on the torus C / (4K Z + 4iK' Z), canonically reduced so that
// Re(u) in [0, 4K) and Im(u) in [0, 4K'). Requires a finite torus (k > 0).
struct TorusPoint {
  Complex u;
};
TorusPoint reduce_to_torus(Complex u, const EllipticContext& ctx);

namespace detail {
// Carlson symmetric forms, by the duplication algorithm.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
}  // namespace detail

}  // namespace isogreen
