#include "orbitzeta/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

namespace {

using Homog = std::array<Complex, 2>;

Vec3 from_homog(const Homog& v) {
  double n1 = std::norm(v[0]);
  double n2 = std::norm(v[1]);
  Complex w = v[0] * std::conj(v[1]);
  double s = n1 + n2;
  return {2.0 * w.real() / s, 2.0 * w.imag() / s, (n1 - n2) / s};
}

Homog to_homog(const Vec3& p) {
  if (p[2] <= 0.0) return {Complex(p[0], p[1]), Complex(1.0 - p[2], 0.0)};
  return {Complex(1.0 + p[2], 0.0), Complex(p[0], -p[1])};
}

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

double norm3(const Vec3& u) { return std::sqrt(dot(u, u)); }

}  // namespace

Vec3 sphere_point(const BoundaryPoint& p) {
  if (p.infinite) return {0.0, 0.0, 1.0};
  return from_homog({p.z, Complex(1.0, 0.0)});
}

BoundaryPoint boundary_point(const Vec3& p) {
  Homog v = to_homog(p);
  if (v[1] == Complex{}) return BoundaryPoint::at_infinity();
  return {v[0] / v[1], false};
}

double angle_between(const Vec3& u, const Vec3& v) { return std::atan2(norm3(cross(u, v)), dot(u, v)); }

bool Cap::contains(const Vec3& p, double tol) const { return angle_between(center, p) < alpha + tol; }

Cap Cap::complement() const {
  return {{-center[0], -center[1], -center[2]}, std::numbers::pi - alpha};
}

Cap cap_from_form(const HermitianForm& h) {
  Vec3 v{2.0 * h.B.real(), 2.0 * h.B.imag(), h.A - h.C};
  double len = norm3(v);
  if (!(len > 0.0)) fail(ErrorCode::degenerate_disks, "Hermitian form does not describe a disk");
  double c = (h.A + h.C) / len;
  if (!(c > -1.0 && c < 1.0)) fail(ErrorCode::degenerate_disks, "disk is empty or the whole sphere");
  return {{-v[0] / len, -v[1] / len, -v[2] / len}, std::acos(c)};
}

HermitianForm form_from_cap(const Cap& c) {
  double ca = std::cos(c.alpha);
  return {ca - c.center[2], -Complex(c.center[0], c.center[1]), ca + c.center[2]};
}

Cap disk_cap(Complex center, double radius, bool exterior) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::degenerate_disks, "disk radius must be positive and finite");
  double s = exterior ? -1.0 : 1.0;
  return cap_from_form({s, -s * center, s * (std::norm(center) - radius * radius)});
}

Cap image(const Moebius& m, const Cap& c) {
  HermitianForm h = form_from_cap(c);
  // H' = N^* H N with N = m^{-1}.
  Complex n11 = m.d(), n12 = -m.b(), n21 = -m.c(), n22 = m.a();
  // H N
  Complex hn11 = h.A * n11 + h.B * n21;
  Complex hn12 = h.A * n12 + h.B * n22;
  Complex hn21 = std::conj(h.B) * n11 + h.C * n21;
  Complex hn22 = std::conj(h.B) * n12 + h.C * n22;
  Complex a = std::conj(n11) * hn11 + std::conj(n21) * hn21;
  Complex b = std::conj(n11) * hn12 + std::conj(n21) * hn22;
  Complex d = std::conj(n12) * hn12 + std::conj(n22) * hn22;
  return cap_from_form({a.real(), b, d.real()});
}

Vec3 apply(const Moebius& m, const Vec3& p) {
  Homog v = to_homog(p);
  return from_homog({m.a() * v[0] + m.b() * v[1], m.c() * v[0] + m.d() * v[1]});
}

bool cap_within(const Cap& inner, const Cap& outer, double tol) {
  return angle_between(inner.center, outer.center) + inner.alpha <= outer.alpha + tol;
}

double cap_gap(const Cap& x, const Cap& y) { return angle_between(x.center, y.center) - x.alpha - y.alpha; }

Vec3 max_expansion_point(const Moebius& m) {
  // Smallest eigenvector of m^* m; its eigenvalues multiply to 1.
  double p = std::norm(m.a()) + std::norm(m.c());
  double r = std::norm(m.b()) + std::norm(m.d());
  Complex q = std::conj(m.a()) * m.b() + std::conj(m.c()) * m.d();
  double half = 0.5 * (p - r);
  double big = 0.5 * (p + r) + std::sqrt(half * half + std::norm(q));
  double mu = 1.0 / big;
  Homog u{q, Complex(mu - p, 0.0)};
  Homog v{Complex(mu - r, 0.0), std::conj(q)};
  double nu = std::norm(u[0]) + std::norm(u[1]);
  double nv = std::norm(v[0]) + std::norm(v[1]);
  if (std::max(nu, nv) == 0.0) return {0.0, 0.0, -1.0};
  return from_homog(nu >= nv ? u : v);
}

double sup_spherical_derivative(const Moebius& m, const Cap& c) {
  double d = displacement(m);
  if (d == 0.0) return 1.0;
  double beta = std::max(0.0, angle_between(c.center, max_expansion_point(m)) - c.alpha);
  return 1.0 / (std::cosh(d) - std::sinh(d) * std::cos(beta));
}

std::vector<Vec3> cap_boundary_samples(const Cap& c, int count) {
  // Orthonormal frame (e1, e2) perpendicular to the center.
  Vec3 n = c.center;
  Vec3 t = std::abs(n[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = cross(n, t);
  double l1 = norm3(e1);
  for (double& x : e1) x /= l1;
  Vec3 e2 = cross(n, e1);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(count));
  double ca = std::cos(c.alpha), sa = std::sin(c.alpha);
  for (int i = 0; i < count; ++i) {
    double phi = 2.0 * std::numbers::pi * i / count;
    double cp = std::cos(phi), sp = std::sin(phi);
    out.push_back({ca * n[0] + sa * (cp * e1[0] + sp * e2[0]), ca * n[1] + sa * (cp * e1[1] + sp * e2[1]),
                   ca * n[2] + sa * (cp * e1[2] + sp * e2[2])});
  }
  return out;
}

}  // namespace orbitzeta
