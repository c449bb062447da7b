#pragma once

// Linear-fractional isometries of hyperbolic 2- and 3-space.
//
// A transform z -> (az + b)/(cz + d) with ad - bc = 1 acts on the upper
// half-plane (real entries) or on upper half-space (complex entries, via the
// Poincare extension). M and -M are the same isometry; nothing below depends on
// the sign of the representative.

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

namespace orbitzeta {

using Complex = std::complex<double>;

enum class Model : int {
  plane = 2,  // upper half-plane, real entries, boundary = R u {inf}
  space = 3,  // upper half-space, complex entries, boundary = C u {inf}
};

// n in "hyperbolic (n+1)-space".
constexpr int boundary_dimension(Model m) noexcept { return static_cast<int>(m) - 1; }

// A point of the Riemann sphere C u {inf}.
struct BoundaryPoint {
  Complex z{};
  bool infinite = false;

  static BoundaryPoint at_infinity() { return {Complex{}, true}; }
};

// A point (z, height) of upper half-space; the plane uses z real.
struct HyperbolicPoint {
  Complex z{};
  double height = 1.0;
};

double hyperbolic_distance(const HyperbolicPoint& p, const HyperbolicPoint& q);

// Model origin: i for the plane, j for space. Both are (0, 1).
inline HyperbolicPoint model_origin() { return {Complex{}, 1.0}; }

struct ComplexLength {
  double ell = 0.0;    // translation length, > 0 for loxodromic elements
  double theta = 0.0;  // holonomy angle in (-pi, pi]; 0 in the plane

  friend bool operator==(const ComplexLength&, const ComplexLength&) = default;
};

enum class IsometryClass { identity, elliptic, parabolic, hyperbolic_or_loxodromic };

class Moebius {
 public:
  // Identity in the given model.
  explicit Moebius(Model model = Model::plane);

  // Builds and normalizes to unit determinant. Throws invalid_argument on a
  // singular matrix, or on non-real entries in the plane model.
  Moebius(Complex a, Complex b, Complex c, Complex d, Model model);

  static Moebius identity(Model model) { return Moebius(model); }
  static Moebius diagonal(Complex lambda, Model model);

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }
  Model model() const noexcept { return model_; }

  Complex trace() const noexcept { return a_ + d_; }
  Complex determinant() const noexcept;
  double frobenius_norm_sq() const noexcept;

  Moebius inverse() const noexcept;

  BoundaryPoint apply(const BoundaryPoint& p) const noexcept;
  Complex apply(Complex z) const noexcept { return (a_ * z + b_) / (c_ * z + d_); }
  HyperbolicPoint apply(const HyperbolicPoint& p) const noexcept;

  // Derivative of the boundary map at a finite point.
  Complex derivative(Complex z) const noexcept;

  // Entrywise comparison up to overall sign.
  bool approx_equal(const Moebius& other, double tol) const noexcept;

  friend Moebius compose(const Moebius& m, const Moebius& n);
  friend Moebius operator*(const Moebius& m, const Moebius& n) { return compose(m, n); }

 private:
  struct unchecked_tag {};
  Moebius(Complex a, Complex b, Complex c, Complex d, Model model, unchecked_tag) noexcept
      : a_(a), b_(b), c_(c), d_(d), model_(model) {}
  void renormalize();

  Complex a_, b_, c_, d_;
  Model model_;
};

// Matrix product m*n. The determinant is restored to 1 when it has drifted
// beyond the rounding floor of the entries.
Moebius compose(const Moebius& m, const Moebius& n);

Moebius power(const Moebius& m, int k);

std::ostream& operator<<(std::ostream& os, const Moebius& m);

IsometryClass classify(const Moebius& m);

// Throws not_hyperbolic unless classify(m) is hyperbolic_or_loxodromic.
ComplexLength translation_length(const Moebius& m);

// d(o, m o) for the model origin o.
double displacement(const Moebius& m) noexcept;

struct Axis {
  BoundaryPoint repelling;   // fixed_minus
  BoundaryPoint attracting;  // fixed_plus
  ComplexLength length;
  Moebius frame;  // sends 0 -> repelling and inf -> attracting

  // Unit-speed parametrization with m(at(t)) = at(t + ell).
  HyperbolicPoint at(double t) const;

  // Parameter of the point of the axis nearest to the model origin.
  double foot_of_origin() const;
};

Axis axis(const Moebius& m);

// Eigenvalues of the linearized return map of the geodesic flow about the
// closed orbit of m, expanding ones first.
std::vector<Complex> poincare_multipliers(const ComplexLength& cl, Model model);
std::vector<Complex> poincare_multipliers(const Moebius& m);

// |det(I - P^k)| and its logarithm. The log form stays finite where the
// plain value would overflow.
double log_det_I_minus_Pk(const ComplexLength& cl, Model model, int k);
double det_I_minus_Pk(const ComplexLength& cl, Model model, int k);
double det_I_minus_Pk(const Moebius& m, int k);

// log( |det(I - P^k)|^{-1/2} / e^{-n k ell / 2} ), computed without the
// cancellation of the two exponentially large factors.
double log_weight_ratio(const ComplexLength& cl, Model model, int k);

}  // namespace orbitzeta
