#pragma once

#include "nervekit/rational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace nervekit {

/// Which diameter bound applies for Ricci curvature at least (d - 1) λ with λ > 0.
enum class ClampConvention {
  standard,  ///< π / sqrt(λ)
  scaled     ///< sqrt(π² / ((d - 1) λ))
};

struct SpaceFormParams {
  double lambda = 0;
  int d = 2;
  double D = 1;
  double epsilon = 1;
  ClampConvention clamp = ClampConvention::standard;
};

/// Surface measure of the unit (d - 1)-sphere, 2 π^{d/2} / Γ(d/2).
inline double unit_sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

/// sn_λ(t): sin(√λ t)/√λ, t, or sinh(√-λ t)/√-λ.
inline double sn(double lambda, double t) {
  if (lambda > 0) return std::sin(std::sqrt(lambda) * t) / std::sqrt(lambda);
  if (lambda < 0) return std::sinh(std::sqrt(-lambda) * t) / std::sqrt(-lambda);
  return t;
}

inline double spaceform_diameter(double lambda) {
  return lambda > 0 ? std::numbers::pi / std::sqrt(lambda) : INFINITY;
}

namespace detail {

inline double ball_volume_unchecked(double lambda, int d, double R) {
  if (R <= 0) return 0;
  auto f = [&](double t) { return std::pow(sn(lambda, t), d - 1); };
  double err = 0;
  double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, R, 15, 1e-12, &err);
  return unit_sphere_area(d) * integral;
}

}  // namespace detail

/// Volume of a radius-R ball in the simply connected space form of curvature λ,
/// ω_{d-1} ∫_0^R sn_λ(t)^{d-1} dt by adaptive Gauss-Kronrod quadrature.
inline double spaceform_ball_volume(double lambda, int d, double R) {
  if (d < 2) throw Error("dimension must be at least 2");
  if (!(R > 0)) throw Error("radius must be positive");
  if (lambda > 0 && R > spaceform_diameter(lambda) * (1 + 1e-12)) throw Error("radius exceeds the space-form diameter");
  return detail::ball_volume_unchecked(lambda, d, std::min(R, spaceform_diameter(lambda)));
}

/// Closed forms in dimensions 2 and 3, independent of the quadrature.
inline double spaceform_ball_volume_closed_form(double lambda, int d, double R) {
  const double pi = std::numbers::pi;
  if (d == 2) {
    if (lambda > 0) return 2 * pi * (1 - std::cos(std::sqrt(lambda) * R)) / lambda;
    if (lambda < 0) return 2 * pi * (std::cosh(std::sqrt(-lambda) * R) - 1) / (-lambda);
    return pi * R * R;
  }
  if (d == 3) {
    if (lambda > 0) {
      double k = std::sqrt(lambda);
      return 4 * pi * (R / 2 - std::sin(2 * k * R) / (4 * k)) / lambda;
    }
    if (lambda < 0) {
      double k = std::sqrt(-lambda);
      return 4 * pi * (std::sinh(2 * k * R) / (4 * k) - R / 2) / (-lambda);
    }
    return 4 * pi * R * R * R / 3;
  }
  throw Error("closed forms exist only for dimensions 2 and 3");
}

/// Diameter after the Bonnet-Myers clamp, with a flag when the clamp applied.
inline std::pair<double, bool> clamped_diameter(const SpaceFormParams& p) {
  if (p.lambda <= 0) return {p.D, false};
  double cap = p.clamp == ClampConvention::standard ? std::numbers::pi / std::sqrt(p.lambda)
                                                    : std::sqrt(std::numbers::pi * std::numbers::pi / ((p.d - 1) * p.lambda));
  return p.D > cap ? std::make_pair(cap, true) : std::make_pair(p.D, false);
}

inline void validate_params(const SpaceFormParams& p) {
  if (p.d < 2) throw Error("dimension must be at least 2");
  if (!(p.D > 0)) throw Error("diameter must be positive");
  if (!(p.epsilon > 0)) throw Error("epsilon must be positive");
}

struct ThetaResult {
  double value = 0;
  double D_used = 0;
  bool clamped = false;
};

/// Θ(λ, D, ε) = vol B_D / vol B_{ε/4} in the space form.
inline ThetaResult theta(const SpaceFormParams& p) {
  validate_params(p);
  auto [D, clamped] = clamped_diameter(p);
  if (p.epsilon / 4 > D) throw Error("epsilon exceeds diameter scale");
  return {spaceform_ball_volume(p.lambda, p.d, D) / spaceform_ball_volume(p.lambda, p.d, p.epsilon / 4), D, clamped};
}

/// Upper bound for the size of a minimal generator when ε is an expansivity constant.
inline double generator_cardinality_bound(const SpaceFormParams& p) { return theta(p).value; }

/// Largest ε with vol B_{ε/4} <= vol B_D / exp(ent0), by bisection on the radius; at most 4D.
inline double e_constant_bound(double lambda, int d, double D, double ent0,
                               ClampConvention clamp = ClampConvention::standard) {
  SpaceFormParams p{lambda, d, D, 1.0, clamp};
  validate_params(p);
  if (ent0 < 0) throw Error("entropy must be nonnegative");
  double Dc = clamped_diameter(p).first;
  double target = spaceform_ball_volume(lambda, d, Dc) / std::exp(ent0);
  if (ent0 == 0) return 4 * D;
  double lo = 0, hi = Dc;
  while (4 * (hi - lo) > 1e-12) {
    double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (detail::ball_volume_unchecked(lambda, d, mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::min(4 * lo, 4 * D);
}

struct SandwichReport {
  double ent0 = 0;
  std::uint64_t generator_size = 0;
  double lower = 0;
  std::optional<double> upper;
  bool lower_ok = false;
  bool upper_ok = true;
  double lower_slack = 0;
  std::optional<double> upper_slack;
  bool pass = false;
};

/// Evaluates e^{ent0} <= generator size <= Θ (the upper side only when parameters are given).
/// Comparisons allow a relative slack of 1e-12 for rounding in exp and log.
inline SandwichReport sandwich_check(double ent0, std::uint64_t generator_size,
                                     const std::optional<SpaceFormParams>& params = std::nullopt) {
  SandwichReport r;
  r.ent0 = ent0;
  r.generator_size = generator_size;
  r.lower = std::exp(ent0);
  const double size = static_cast<double>(generator_size);
  r.lower_slack = size - r.lower;
  r.lower_ok = r.lower <= size * (1 + 1e-12);
  if (params) {
    r.upper = theta(*params).value;
    r.upper_slack = *r.upper - size;
    r.upper_ok = size <= *r.upper * (1 + 1e-12);
  }
  r.pass = r.lower_ok && r.upper_ok;
  return r;
}

}  // namespace nervekit
