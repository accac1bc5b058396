#pragma once

// Univariate polynomials and binary forms over exact rationals and complex
// doubles, projective points on P^1 and divisors made of them.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torelli_lab/error.hpp"
#include "torelli_lab/scalar_series.hpp"

namespace torelli {

using Complex = std::complex<double>;

// Dense univariate polynomial over Q, ascending coefficients, no trailing
// zeros. The zero polynomial is the empty vector.
using RationalPoly = std::vector<ExactRational>;

namespace upoly {

void trim(RationalPoly& p);
int degree(const RationalPoly& p);  // -1 for the zero polynomial
bool is_zero(const RationalPoly& p);
bool is_constant(const RationalPoly& p);  // nonzero constant
RationalPoly derivative(const RationalPoly& p);
RationalPoly add(const RationalPoly& a, const RationalPoly& b);
RationalPoly sub(const RationalPoly& a, const RationalPoly& b);
RationalPoly mul(const RationalPoly& a, const RationalPoly& b);
RationalPoly scale(const RationalPoly& a, const ExactRational& s);
// a = quot*b + rem; b must be nonzero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a,
                                             const RationalPoly& b);
RationalPoly monic(const RationalPoly& a);
// Monic gcd; gcd(0, 0) = 0.
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
ExactRational eval(const RationalPoly& p, const ExactRational& x);
// Order of vanishing at x (0 if p(x) != 0). p must be nonzero.
int valuation_at(const RationalPoly& p, const ExactRational& x);
// Squarefree decomposition p = c * prod f_i^i (Yun). Returns (f_i, i) for
// the nonconstant factors.
std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(
    const RationalPoly& p);
// Exact decisions, backed by a modular certificate with an exact rational
// fallback.
bool is_squarefree(const RationalPoly& p);
bool are_coprime(const RationalPoly& a, const RationalPoly& b);

}  // namespace upoly

// Homogeneous form of the given degree in (Z0, Z1). coeffs[k] multiplies
// Z0^{degree-k} Z1^k, so on the chart Z0 = 1, z = Z1 the affine polynomial
// has the same ascending coefficient list.
template <class T>
class BinaryForm {
 public:
  explicit BinaryForm(int degree = 0)
      : degree_(degree), coeffs_(static_cast<std::size_t>(degree + 1), T(0)) {
    if (degree < 0) throw DomainError("negative form degree");
  }
  explicit BinaryForm(std::vector<T> coeffs)
      : degree_(static_cast<int>(coeffs.size()) - 1), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("form needs degree+1 coefficients");
  }
  // Homogenize an ascending affine coefficient list to the given degree.
  static BinaryForm from_affine(std::vector<T> affine, int degree) {
    if (static_cast<int>(affine.size()) > degree + 1) {
      while (static_cast<int>(affine.size()) > degree + 1 && affine.back() == T(0)) {
        affine.pop_back();
      }
      if (static_cast<int>(affine.size()) > degree + 1) {
        throw DomainError("affine polynomial exceeds form degree");
      }
    }
    affine.resize(static_cast<std::size_t>(degree + 1), T(0));
    return BinaryForm(std::move(affine));
  }

  int degree() const { return degree_; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!(c == T(0))) return false;
    }
    return true;
  }
  // Largest k with a nonzero coefficient; -1 for the zero form.
  int affine_degree() const {
    for (int k = degree_; k >= 0; --k) {
      if (!(coeffs_[static_cast<std::size_t>(k)] == T(0))) return k;
    }
    return -1;
  }
  // Multiplicity of the root at infinity (0, 1).
  int multiplicity_at_infinity() const {
    return is_zero() ? degree_ : degree_ - affine_degree();
  }

  // d/dZ0 and d/dZ1, forms of degree-1 (degree 0 forms differentiate to 0).
  BinaryForm d_z0() const {
    BinaryForm r(degree_ > 0 ? degree_ - 1 : 0);
    for (int k = 0; k < degree_; ++k) r[k] = (*this)[k] * T(degree_ - k);
    return r;
  }
  BinaryForm d_z1() const {
    BinaryForm r(degree_ > 0 ? degree_ - 1 : 0);
    for (int k = 1; k <= degree_; ++k) r[k - 1] = (*this)[k] * T(k);
    return r;
  }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm r(a.degree_ + b.degree_);
    for (int i = 0; i <= a.degree_; ++i) {
      if (a[i] == T(0)) continue;
      for (int j = 0; j <= b.degree_; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    require_same_degree(a, b);
    BinaryForm r = a;
    for (int k = 0; k <= a.degree_; ++k) r[k] += b[k];
    return r;
  }
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
    require_same_degree(a, b);
    BinaryForm r = a;
    for (int k = 0; k <= a.degree_; ++k) r[k] -= b[k];
    return r;
  }
  friend BinaryForm operator*(const T& s, const BinaryForm& a) {
    BinaryForm r = a;
    for (auto& c : r.coeffs_) c = s * c;
    return r;
  }
  bool operator==(const BinaryForm& other) const {
    return degree_ == other.degree_ && coeffs_ == other.coeffs_;
  }

 private:
  static void require_same_degree(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree_ != b.degree_) throw DomainError("form degree mismatch");
  }

  int degree_;
  std::vector<T> coeffs_;
};

using RationalForm = BinaryForm<ExactRational>;
using ComplexForm = BinaryForm<Complex>;

ComplexForm to_complex(const RationalForm& f);
// Affine part as an exact polynomial (trimmed).
RationalPoly affine_poly(const RationalForm& f);

// f^k as a form of degree k*deg f.
template <class T>
BinaryForm<T> power(const BinaryForm<T>& f, int k) {
  BinaryForm<T> r(0);
  r[0] = T(1);
  for (int i = 0; i < k; ++i) r = r * f;
  return r;
}

// Jacobian determinant f_{Z0} g_{Z1} - f_{Z1} g_{Z0}, degree m+n-2. On the
// chart Z0 = 1 it equals m f g' - n g f' = hcf(m,n) (m' f g' - n' g f').
template <class T>
BinaryForm<T> transvectant_first(const BinaryForm<T>& f, const BinaryForm<T>& g) {
  if (f.degree() < 1 || g.degree() < 1) {
    throw DomainError("transvectant needs forms of degree >= 1");
  }
  return f.d_z0() * g.d_z1() - f.d_z1() * g.d_z0();
}

// Point of P^1 with unit-norm coordinates, first nonzero coordinate real
// and positive.
class ProjectivePointP1 {
 public:
  ProjectivePointP1() : z0_(1.0), z1_(0.0) {}
  ProjectivePointP1(Complex z0, Complex z1);

  static ProjectivePointP1 affine(Complex a) { return {Complex(1.0), a}; }
  static ProjectivePointP1 infinity() { return {Complex(0.0), Complex(1.0)}; }

  Complex z0() const { return z0_; }
  Complex z1() const { return z1_; }
  bool is_infinity() const { return z0_ == Complex(0.0); }
  // Affine coordinate Z1/Z0; throws at infinity.
  Complex affine_coordinate() const;

 private:
  Complex z0_, z1_;
};

// sin of the angle between the two lines; |p0 q1 - p1 q0| for unit vectors.
double chordal_distance(const ProjectivePointP1& p, const ProjectivePointP1& q);

struct DivisorPoint {
  ProjectivePointP1 point;
  int multiplicity = 1;
};

struct DivisorP1 {
  std::vector<DivisorPoint> points;
  int degree() const;
};

Complex eval(const ComplexForm& f, const ProjectivePointP1& p);
Complex eval(const RationalForm& f, const ProjectivePointP1& p);

inline constexpr double kClusterTol = 1e-7;

// Roots of a nonconstant-or-constant nonzero form on P^1 with multiplicities
// summing to its degree. Rational input: multiplicities come from an exact
// squarefree decomposition. Complex input: roots closer than cluster_tol
// (chordal) are merged and the cluster size is the multiplicity.
DivisorP1 roots_projective(const RationalForm& f);
DivisorP1 roots_projective(const ComplexForm& f, double cluster_tol = kClusterTol);

// (squarefree(f), coprime(f, g)) for forms on P^1, decided exactly; both
// account for the point at infinity.
std::pair<bool, bool> squarefree_and_coprime(const RationalForm& f,
                                             const RationalForm& g);
bool form_is_squarefree(const RationalForm& f);
bool forms_are_coprime(const RationalForm& f, const RationalForm& g);

// Simultaneous (Aberth-Ehrlich) iteration for all roots of a polynomial with
// ascending complex coefficients and nonzero leading coefficient.
struct AberthOptions {
  int max_iterations = 200;
  double step_tol = 1e-13;
};
std::vector<Complex> aberth_roots(std::span<const Complex> ascending,
                                  const AberthOptions& opts = {});

}  // namespace torelli
