#pragma once

// Round disks on the Riemann sphere, handled as spherical caps.
//
// The sphere is the unit sphere seen from the model origin: z maps to
// (2 Re z, 2 Im z, |z|^2 - 1) / (|z|^2 + 1), so 0 is the south pole and inf
// the north pole. A disk in C (interior or exterior of a circle) is a cap,
// including caps containing inf, so no case splits are needed downstream.

#include <array>
#include <vector>

#include "orbitzeta/moebius.hpp"

namespace orbitzeta {

using Vec3 = std::array<double, 3>;

Vec3 sphere_point(const BoundaryPoint& p);
BoundaryPoint boundary_point(const Vec3& p);

// Unsigned angle between two unit vectors, accurate near 0 and pi.
double angle_between(const Vec3& u, const Vec3& v);

// Points p with angle(p, center) < alpha.
struct Cap {
  Vec3 center{0.0, 0.0, 1.0};
  double alpha = 0.0;

  bool contains(const Vec3& p, double tol = 0.0) const;
  Cap complement() const;
};

// The region {A|z|^2 + B conj(z) + conj(B) z + C < 0}.
struct HermitianForm {
  double A = 0.0;
  Complex B{};
  double C = 0.0;
};

Cap cap_from_form(const HermitianForm& h);
HermitianForm form_from_cap(const Cap& c);

// {|z - center| < radius}, or its outside when exterior is set.
Cap disk_cap(Complex center, double radius, bool exterior);

// Exact image of a cap under a Moebius transform.
Cap image(const Moebius& m, const Cap& c);

Vec3 apply(const Moebius& m, const Vec3& p);

// True when inner lies inside outer (closed, up to tol radians).
bool cap_within(const Cap& inner, const Cap& outer, double tol = 1e-9);

// Angular distance between two caps; negative when they overlap.
double cap_gap(const Cap& x, const Cap& y);

// Point of maximal spherical expansion of m.
Vec3 max_expansion_point(const Moebius& m);

// sup over the closed cap of the spherical derivative of m.
double sup_spherical_derivative(const Moebius& m, const Cap& c);

// Evenly spaced points on the boundary circle of a cap.
std::vector<Vec3> cap_boundary_samples(const Cap& c, int count);

}  // namespace orbitzeta
