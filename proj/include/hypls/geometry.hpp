#pragma once

// Volume of centered geodesic balls in H^n and the quantities derived from it:
//   Psi(rho) = n sigma_n int_0^rho sinh^(n-1)(s) ds,   F = Psi^{-1},
//   surface_factor(t) = n sigma_n sinh^(n-1)(F(t)).

#include <cmath>
#include <stdexcept>

#include "hypls/constants.hpp"
#include "hypls/quadrature.hpp"
#include "hypls/roots.hpp"

namespace hypls {

struct GeodesicRadius {
  explicit GeodesicRadius(double r) : rho(r) {
    if (!(r >= 0.0)) throw std::domain_error("GeodesicRadius: rho must be >= 0");
  }
  double rho;
};

struct VolumeCoordinate {
  explicit VolumeCoordinate(double v) : t(v) {
    if (!(v >= 0.0)) throw std::domain_error("VolumeCoordinate: t must be >= 0");
  }
  double t;
};

class HyperbolicSpace {
 public:
  explicit HyperbolicSpace(Dimension n)
      : n_(n), sigma_(sigma(n.real())), n_sigma_(n.real() * sigma_),
        large_scale_(n_sigma_ / (std::ldexp(1.0, n.value() - 1) * (n.real() - 1.0))) {}

  [[nodiscard]] Dimension dimension() const { return n_; }
  [[nodiscard]] double sigma_n() const { return sigma_; }

  /// int_0^rho sinh^(n-1).
  [[nodiscard]] double sinh_power_integral(double rho) const {
    const int k = n_.value() - 1;
    if (rho <= kSeriesRadius) {
      // rho^n int_0^1 u^k (sinh(rho u)/(rho u))^k du; positive integrand, no cancellation.
      const auto& rule = gauss_legendre<24>();
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        const double x = rho * u;
        const double sinhc = x == 0.0 ? 1.0 : std::sinh(x) / x;
        sum += rule.weights[i] * std::pow(u * sinhc, k);
      }
      return std::pow(rho, n_.value()) * sum;
    }
    // I_j = sinh^(j-1) cosh / j - (j-1)/j I_(j-2), I_0 = rho, I_1 = cosh - 1.
    const double sh = std::sinh(rho);
    const double ch = std::cosh(rho);
    double prev2 = rho;
    double prev1 = 2.0 * std::sinh(0.5 * rho) * std::sinh(0.5 * rho);
    if (k == 0) return prev2;
    double sh_pow = 1.0;  // sinh^(j-1)
    for (int j = 2; j <= k; ++j) {
      sh_pow *= sh;
      const double cur = sh_pow * ch / j - (j - 1.0) / j * prev2;
      prev2 = prev1;
      prev1 = cur;
    }
    return prev1;
  }

  [[nodiscard]] double psi(double rho) const {
    if (!(rho >= 0.0)) throw std::domain_error("psi: rho must be >= 0");
    return n_sigma_ * sinh_power_integral(rho);
  }
  [[nodiscard]] double psi(GeodesicRadius r) const { return psi(r.rho); }

  /// Psi'(rho) = n sigma_n sinh^(n-1)(rho), the area of the geodesic sphere.
  [[nodiscard]] double sphere_area(double rho) const {
    return n_sigma_ * std::pow(std::sinh(rho), n_.value() - 1);
  }

  struct Inversion {
    double rho;
    int iterations;
  };

  /// F(t) with the iteration count of the safeguarded Newton solve.
  [[nodiscard]] Inversion psi_inverse_detail(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("psi_inverse: t must be >= 0");
    if (t == 0.0) return {0.0, 0};
    if (std::isinf(t)) return {t, 0};
    const double nm1 = n_.real() - 1.0;
    // sinh s >= s gives Psi(rho) >= sigma rho^n; sinh s <= e^s/2 gives
    // Psi(rho) <= A (e^((n-1)rho) - 1). Together they bracket the root.
    const double hi = std::pow(t / sigma_, 1.0 / n_.real());
    const double lo = std::min(hi, std::log1p(t / large_scale_) / nm1);
    const double guess = lo > 1.0 ? lo : hi;
    auto f_df = [this, t](double rho) {
      return std::pair<double, double>{psi(rho) - t, sphere_area(rho)};
    };
    const auto res = roots::safeguarded_newton(f_df, lo, hi, guess, 1e-15);
    return {res.x, res.iterations};
  }

  [[nodiscard]] double psi_inverse(double t) const { return psi_inverse_detail(t).rho; }
  [[nodiscard]] GeodesicRadius psi_inverse(VolumeCoordinate v) const {
    return GeodesicRadius(psi_inverse(v.t));
  }

  /// Perimeter of the centered geodesic ball of volume t.
  [[nodiscard]] double surface_factor(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("surface_factor: t must be >= 0");
    if (t == 0.0) return 0.0;
    return sphere_area(psi_inverse(t));
  }

  /// sinh^(q(n-1))(F(t)) - (t/sigma)^(q(n-1)/n) - ((n-1)/n)^q (t/sigma)^q,
  /// nonnegative when q >= 2n/(n-1).
  [[nodiscard]] double lemma21_gap(double q, double t) const {
    if (!detail::leq(n_.critical_q(), q)) {
      throw std::domain_error("lemma21_gap: requires q >= 2n/(n-1)");
    }
    if (!(t > 0.0)) throw std::domain_error("lemma21_gap: requires t > 0");
    const double nn = n_.real();
    const double x = t / sigma_;
    const double lead = std::pow(std::sinh(psi_inverse(t)), q * (nn - 1.0));
    return lead - std::pow(x, q * (nn - 1.0) / nn) - std::pow((nn - 1.0) / nn, q) * std::pow(x, q);
  }

  /// The positive term sinh^(q(n-1))(F(t)) that lemma21_gap is measured against.
  [[nodiscard]] double lemma21_scale(double q, double t) const {
    return std::pow(std::sinh(psi_inverse(t)), q * (n_.real() - 1.0));
  }

 private:
  static constexpr double kSeriesRadius = 2.0;

  Dimension n_;
  double sigma_;
  double n_sigma_;
  double large_scale_;  // n sigma_n / (2^(n-1) (n-1))
};

inline double psi(Dimension n, GeodesicRadius rho) { return HyperbolicSpace(n).psi(rho); }
inline double psi_inverse(Dimension n, VolumeCoordinate t) { return HyperbolicSpace(n).psi_inverse(t.t); }
inline double surface_factor(Dimension n, VolumeCoordinate t) {
  return HyperbolicSpace(n).surface_factor(t.t);
}
inline double lemma21_gap(Dimension n, double q, double t) { return HyperbolicSpace(n).lemma21_gap(q, t); }

}  // namespace hypls
