#include "orbitzeta/moebius.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double normalize_angle(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

// |1 - x| in log form, accurate when x is small.
double log_abs_one_minus(Complex x) {
  return 0.5 * std::log1p(std::norm(x) - 2.0 * x.real());
}

// Eigenvector of m for eigenvalue lambda, from whichever row of (m - lambda I)
// is better conditioned.
std::array<Complex, 2> eigenvector(const Moebius& m, Complex lambda) {
  std::array<Complex, 2> u{m.b(), lambda - m.a()};
  std::array<Complex, 2> v{lambda - m.d(), m.c()};
  auto n_u = std::norm(u[0]) + std::norm(u[1]);
  auto n_v = std::norm(v[0]) + std::norm(v[1]);
  return n_u >= n_v ? u : v;
}

BoundaryPoint projectivize(const std::array<Complex, 2>& v) {
  if (v[1] == Complex{}) return BoundaryPoint::at_infinity();
  return {v[0] / v[1], false};
}

}  // namespace

double hyperbolic_distance(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  double dz = std::norm(p.z - q.z);
  double dh = p.height - q.height;
  return 2.0 * std::asinh(std::sqrt(dz + dh * dh) / (2.0 * std::sqrt(p.height * q.height)));
}

Moebius::Moebius(Model model) : a_(1.0), b_(0.0), c_(0.0), d_(1.0), model_(model) {}

Moebius::Moebius(Complex a, Complex b, Complex c, Complex d, Model model)
    : a_(a), b_(b), c_(c), d_(d), model_(model) {
  for (Complex* e : {&a_, &b_, &c_, &d_}) {
    if (!std::isfinite(e->real()) || !std::isfinite(e->imag()))
      fail(ErrorCode::invalid_argument, "non-finite matrix entry");
    if (model_ == Model::plane) {
      if (std::abs(e->imag()) > 1e-14 * std::max(1.0, std::abs(*e)))
        fail(ErrorCode::invalid_argument, "complex entry in a plane-model transform");
      *e = Complex(e->real(), 0.0);
    }
  }
  Complex det = determinant();
  if (std::abs(det) < 1e-300) fail(ErrorCode::invalid_argument, "singular matrix");
  if (model_ == Model::plane && det.real() <= 0.0)
    fail(ErrorCode::invalid_argument, "plane-model transform with non-positive determinant");
  renormalize();
}

Moebius Moebius::diagonal(Complex lambda, Model model) {
  return Moebius(lambda, 0.0, 0.0, 1.0 / lambda, model);
}

Complex Moebius::determinant() const noexcept { return a_ * d_ - b_ * c_; }

double Moebius::frobenius_norm_sq() const noexcept {
  return std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
}

Moebius Moebius::inverse() const noexcept { return Moebius(d_, -b_, -c_, a_, model_, unchecked_tag{}); }

BoundaryPoint Moebius::apply(const BoundaryPoint& p) const noexcept {
  if (p.infinite) {
    if (c_ == Complex{}) return BoundaryPoint::at_infinity();
    return {a_ / c_, false};
  }
  Complex den = c_ * p.z + d_;
  if (den == Complex{}) return BoundaryPoint::at_infinity();
  return {(a_ * p.z + b_) / den, false};
}

HyperbolicPoint Moebius::apply(const HyperbolicPoint& p) const noexcept {
  Complex num = a_ * p.z + b_;
  Complex den = c_ * p.z + d_;
  double r2 = p.height * p.height;
  double q = std::norm(den) + std::norm(c_) * r2;
  return {(num * std::conj(den) + a_ * std::conj(c_) * r2) / q, p.height / q};
}

Complex Moebius::derivative(Complex z) const noexcept {
  Complex den = c_ * z + d_;
  return 1.0 / (den * den);
}

bool Moebius::approx_equal(const Moebius& other, double tol) const noexcept {
  auto close = [tol](const Moebius& x, const Moebius& y, double sign) {
    return std::abs(x.a_ - sign * y.a_) <= tol && std::abs(x.b_ - sign * y.b_) <= tol &&
           std::abs(x.c_ - sign * y.c_) <= tol && std::abs(x.d_ - sign * y.d_) <= tol;
  };
  return close(*this, other, 1.0) || close(*this, other, -1.0);
}

void Moebius::renormalize() {
  Complex det = determinant();
  double scale = std::abs(a_) * std::abs(d_) + std::abs(b_) * std::abs(c_);
  if (det == Complex(1.0, 0.0)) return;
  // Within the rounding floor the computed determinant is noise; dividing by
  // it would perturb the entries instead of repairing them, and would make
  // renormalization non-idempotent.
  double floor = scale > 1e3 ? 64.0 * kEps * scale : 4.0 * kEps * std::max(scale, 1.0);
  if (std::abs(det - 1.0) <= floor) return;
  if (std::abs(det) < 1e-300) return;
  Complex s = model_ == Model::plane && det.real() > 0.0 ? Complex(std::sqrt(det.real()), 0.0)
                                                         : std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
}

Moebius compose(const Moebius& m, const Moebius& n) {
  if (m.model_ != n.model_) fail(ErrorCode::invalid_argument, "composing transforms of different models");
  Moebius r(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_, m.c_ * n.a_ + m.d_ * n.c_,
            m.c_ * n.b_ + m.d_ * n.d_, m.model_, Moebius::unchecked_tag{});
  r.renormalize();
  return r;
}

Moebius power(const Moebius& m, int k) {
  if (k < 0) return power(m.inverse(), -k);
  Moebius result = Moebius::identity(m.model());
  for (int i = 0; i < k; ++i) result = compose(result, m);
  return result;
}

std::ostream& operator<<(std::ostream& os, const Moebius& m) {
  return os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
}

IsometryClass classify(const Moebius& m) {
  Complex tr = m.trace();
  Complex tr2 = tr * tr;
  if (std::abs(tr2 - 4.0) <= 4e-12) {
    return m.approx_equal(Moebius::identity(m.model()), 1e-12) ? IsometryClass::identity
                                                                : IsometryClass::parabolic;
  }
  bool real = std::abs(tr2.imag()) <= 1e-12 * std::max(1.0, std::abs(tr2));
  if (real && tr2.real() >= 0.0 && tr2.real() < 4.0) return IsometryClass::elliptic;
  return IsometryClass::hyperbolic_or_loxodromic;
}

ComplexLength translation_length(const Moebius& m) {
  if (classify(m) != IsometryClass::hyperbolic_or_loxodromic)
    fail(ErrorCode::not_hyperbolic, "translation length of a non-loxodromic element");
  Complex tr = m.trace();
  if (m.model() == Model::plane) return {2.0 * std::acosh(std::abs(tr.real()) / 2.0), 0.0};
  Complex root = std::sqrt(tr * tr - 4.0);
  Complex l1 = 0.5 * (tr + root);
  Complex l2 = 0.5 * (tr - root);
  Complex lambda = std::abs(l1) >= std::abs(l2) ? l1 : l2;
  return {2.0 * std::log(std::abs(lambda)), normalize_angle(2.0 * std::arg(lambda))};
}

double displacement(const Moebius& m) noexcept {
  double q = std::norm(m.a() - std::conj(m.d())) + std::norm(m.b() + std::conj(m.c()));
  return 2.0 * std::asinh(0.5 * std::sqrt(q));
}

HyperbolicPoint Axis::at(double t) const { return frame.apply(HyperbolicPoint{Complex{}, std::exp(t)}); }

double Axis::foot_of_origin() const {
  HyperbolicPoint q = frame.inverse().apply(model_origin());
  return 0.5 * std::log(std::norm(q.z) + q.height * q.height);
}

Axis axis(const Moebius& m) {
  ComplexLength cl = translation_length(m);
  Complex tr = m.trace();
  Complex root = std::sqrt(tr * tr - 4.0);
  Complex l1 = 0.5 * (tr + root);
  Complex l2 = 0.5 * (tr - root);
  Complex lambda = std::abs(l1) >= std::abs(l2) ? l1 : l2;
  auto v_plus = eigenvector(m, lambda);
  auto v_minus = eigenvector(m, 1.0 / lambda);
  Complex det = v_plus[0] * v_minus[1] - v_minus[0] * v_plus[1];
  if (m.model() == Model::plane && det.real() < 0.0) {
    v_minus[0] = -v_minus[0];
    v_minus[1] = -v_minus[1];
  }
  Moebius frame(v_plus[0], v_minus[0], v_plus[1], v_minus[1], m.model());
  return Axis{projectivize(v_minus), projectivize(v_plus), cl, frame};
}

std::vector<Complex> poincare_multipliers(const ComplexLength& cl, Model model) {
  if (model == Model::plane) return {std::exp(cl.ell), std::exp(-cl.ell)};
  return {std::exp(Complex(cl.ell, cl.theta)), std::exp(Complex(cl.ell, -cl.theta)),
          std::exp(Complex(-cl.ell, cl.theta)), std::exp(Complex(-cl.ell, -cl.theta))};
}

std::vector<Complex> poincare_multipliers(const Moebius& m) {
  return poincare_multipliers(translation_length(m), m.model());
}

namespace {

// Multipliers raised to the k-th power and folded into the unit disk.
std::vector<Complex> contracting_powers(const ComplexLength& cl, Model model, int k) {
  double kl = k * cl.ell;
  double kt = k * cl.theta;
  if (model == Model::plane) return {std::exp(Complex(-kl, 0.0)), std::exp(Complex(-kl, 0.0))};
  // e^{l +- i t} inverts to e^{-l -+ i t}; the contracting pair keeps its sign.
  return {std::exp(Complex(-kl, -kt)), std::exp(Complex(-kl, kt)), std::exp(Complex(-kl, kt)),
          std::exp(Complex(-kl, -kt))};
}

void require_positive_power(int k) {
  if (k < 1) fail(ErrorCode::invalid_argument, "power k must be >= 1");
}

}  // namespace

double log_det_I_minus_Pk(const ComplexLength& cl, Model model, int k) {
  require_positive_power(k);
  if (!(cl.ell > 0.0)) fail(ErrorCode::not_hyperbolic, "non-positive translation length");
  double sum = boundary_dimension(model) * k * cl.ell;
  for (Complex nu : contracting_powers(cl, model, k)) sum += log_abs_one_minus(nu);
  return sum;
}

double det_I_minus_Pk(const ComplexLength& cl, Model model, int k) {
  require_positive_power(k);
  if (!(cl.ell > 0.0)) fail(ErrorCode::not_hyperbolic, "non-positive translation length");
  if (boundary_dimension(model) * k * cl.ell > 600.0) return std::exp(log_det_I_minus_Pk(cl, model, k));
  Complex prod = 1.0;
  for (Complex mu : poincare_multipliers(cl, model)) prod *= 1.0 - std::exp(double(k) * std::log(mu));
  return std::abs(prod);
}

double det_I_minus_Pk(const Moebius& m, int k) {
  return det_I_minus_Pk(translation_length(m), m.model(), k);
}

double log_weight_ratio(const ComplexLength& cl, Model model, int k) {
  require_positive_power(k);
  double sum = 0.0;
  for (Complex nu : contracting_powers(cl, model, k)) sum += log_abs_one_minus(nu);
  return -0.5 * sum;
}

}  // namespace orbitzeta
