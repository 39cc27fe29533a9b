#pragma once

// Test-side oracles. These recompute expected values along routes
// independent of the library paths they check: raw quadric embeddings with
// textbook inner products, brute-force placements in the flat plane, and
// bisection solves.

#include <cmath>
#include <random>

#include "point.hpp"

namespace oracle {

struct Vec3 {
  double a = 0, b = 0, c = 0;
};

// Signature (-,+,+): de Sitter ambient.
inline double ip_ds(const Vec3& u, const Vec3& v) {
  return -u.a * v.a + u.b * v.b + u.c * v.c;
}

// Signature (-,-,+): anti-de Sitter ambient.
inline double ip_ads(const Vec3& u, const Vec3& v) {
  return -u.a * v.a - u.b * v.b + u.c * v.c;
}

// Hinge endpoints on the quadric: base point with two future unit timelike
// tangents u0 and cosh(phi) u0 + sinh(phi) e; the separation between the
// endpoints at distances d1, d2 comes straight from the ambient product.
// `shoulder` flips the first leg into the past.
inline double hinge_opposite_embed(double k, double d1, double d2,
                                   double coshphi, bool shoulder) {
  double r = 1.0 / std::sqrt(std::fabs(k));
  double sphi = std::sqrt(coshphi * coshphi - 1.0);
  if (k > 0.0) {
    Vec3 base{0, r, 0}, u0{1, 0, 0}, e{0, 0, 1};
    double s1 = shoulder ? -std::sinh(d1 / r) : std::sinh(d1 / r);
    Vec3 p1{base.a * std::cosh(d1 / r) + r * s1 * u0.a,
            base.b * std::cosh(d1 / r) + r * s1 * u0.b,
            base.c * std::cosh(d1 / r) + r * s1 * u0.c};
    Vec3 u2{coshphi * u0.a + sphi * e.a, coshphi * u0.b + sphi * e.b,
            coshphi * u0.c + sphi * e.c};
    Vec3 p2{base.a * std::cosh(d2 / r) + r * std::sinh(d2 / r) * u2.a,
            base.b * std::cosh(d2 / r) + r * std::sinh(d2 / r) * u2.b,
            base.c * std::cosh(d2 / r) + r * std::sinh(d2 / r) * u2.c};
    double arg = ip_ds(p1, p2) / (r * r);
    if (arg < 1.0) return 0.0;
    return r * std::acosh(arg);
  }
  Vec3 base{r, 0, 0}, u0{0, 1, 0}, e{0, 0, 1};
  double s1 = shoulder ? -std::sin(d1 / r) : std::sin(d1 / r);
  Vec3 p1{base.a * std::cos(d1 / r) + r * s1 * u0.a,
          base.b * std::cos(d1 / r) + r * s1 * u0.b,
          base.c * std::cos(d1 / r) + r * s1 * u0.c};
  Vec3 u2{coshphi * u0.a + sphi * e.a, coshphi * u0.b + sphi * e.b,
          coshphi * u0.c + sphi * e.c};
  Vec3 p2{base.a * std::cos(d2 / r) + r * std::sin(d2 / r) * u2.a,
          base.b * std::cos(d2 / r) + r * std::sin(d2 / r) * u2.b,
          base.c * std::cos(d2 / r) + r * std::sin(d2 / r) * u2.c};
  double arg = -ip_ads(p1, p2) / (r * r);
  if (arg >= 1.0 || arg <= -1.0) return 0.0;
  return r * std::acos(arg);
}

// Flat hinge by explicit placement: leg 1 straight up, leg 2 at rapidity phi.
inline double hinge_opposite_flat(double d1, double d2, double coshphi,
                                  bool shoulder) {
  double sphi = std::sqrt(coshphi * coshphi - 1.0);
  double t1 = shoulder ? -d1 : d1;
  double p1x = 0.0, p1t = t1;
  double p2x = d2 * sphi, p2t = d2 * coshphi;
  double dt = std::fabs(p2t - p1t), dx = std::fabs(p2x - p1x);
  if (shoulder) dt = p2t - p1t;  // future separation by construction
  double sq = dt * dt - dx * dx;
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

// Intersection of the two hyperbolas tau(x, y) = a and tau(y, z) = b for
// x = (0,0), z = (0,c) in the flat plane: bisection on the time coordinate.
inline lorcomp::Point flat_apex_vertex(double a, double b, double c) {
  // f(t) = tau(y,z)^2 - b^2 along the branch t^2 - x^2 = a^2, x >= 0.
  auto f = [&](double t) {
    double x2 = t * t - a * a;
    return (c - t) * (c - t) - x2 - b * b;
  };
  double lo = a, hi = c;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  double t = 0.5 * (lo + hi);
  return lorcomp::Point{std::sqrt(std::max(0.0, t * t - a * a)), t};
}

inline double minkowski_tau(const lorcomp::Point& p, const lorcomp::Point& q) {
  double dt = q.t - p.t, dx = q.x - p.x;
  double sq = dt * dt - dx * dx;
  return (dt > 0.0 && sq > 0.0) ? std::sqrt(sq) : 0.0;
}

inline double taxicab_tau(const lorcomp::Point& p, const lorcomp::Point& q) {
  double dt = q.t - p.t, dx = std::fabs(q.x - p.x);
  return dt > dx ? dt - dx : 0.0;
}

}  // namespace oracle
