// Truncated multivariate Taylor jets in three variables.
//
// A Jet of order n carries every Taylor coefficient c[i,j,k] with
// i + j + k <= n of a smooth function around a fixed expansion point.
// Coefficients are stored in Taylor form (derivative divided by i! j! k!),
// so multiplication is a truncated convolution. Arithmetic between jets of
// different orders truncates to the smaller order; taking a partial
// derivative lowers the order by one.
//
// The default order is 3. Jets up to order 4 are supported so that a map
// can be lifted one order above the metric it is paired with: its
// differential then still carries three orders of information.
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>

namespace biharm {

inline constexpr int kDefaultJetOrder = 3;
inline constexpr int kMaxJetOrder = 4;
inline constexpr std::size_t kMaxJetCoefficients = 35;  // C(4 + 3, 3)

struct MultiIndex {
  int i = 0;
  int j = 0;
  int k = 0;

  constexpr int degree() const { return i + j + k; }
  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

std::ostream& operator<<(std::ostream& os, const Point3& p);

/// Number of coefficients of a jet of the given order, C(order + 3, 3).
constexpr std::size_t coefficient_count(int order) {
  return static_cast<std::size_t>((order + 1) * (order + 2) * (order + 3) / 6);
}

class Jet {
 public:
  /// The zero jet of the default order.
  Jet() : Jet(0.0, kDefaultJetOrder) {}

  /// Constant lift: value `value`, every other coefficient exactly 0.
  Jet(double value, int order);

  static Jet constant(double value, int order = kDefaultJetOrder) { return Jet(value, order); }

  /// Coordinate function `axis` expanded at `p`: value p[axis], unit slope along axis.
  static Jet variable(int axis, const Point3& p, int order = kDefaultJetOrder);

  int order() const { return order_; }
  std::size_t size() const { return coefficient_count(order_); }
  double value() const { return c_[0]; }

  /// Raw Taylor coefficient (derivative over the multi-index factorial).
  double coefficient(const MultiIndex& alpha) const;
  /// Partial derivative d^{|alpha|} / dx^i dy^j dz^k at the expansion point.
  double derivative(const MultiIndex& alpha) const;
  /// Gradient (first partials) at the expansion point.
  std::array<double, 3> gradient() const;

  /// Jet of the partial derivative along `axis`; its order is one less.
  Jet partial(int axis) const;
  /// Copy truncated to `order` (which must not exceed the current order).
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(double a, const Jet& b);

  // Coefficient access by linear (graded) index.
  double& operator[](std::size_t n) { return c_[n]; }
  double operator[](std::size_t n) const { return c_[n]; }

  /// Throws NonFinite if any coefficient is NaN or infinite.
  void require_finite(const char* op) const;

 private:
  int order_;
  std::array<double, kMaxJetCoefficients> c_{};
};

std::ostream& operator<<(std::ostream& os, const Jet& a);

/// Linear index of a multi-index in graded order; requires degree <= kMaxJetOrder.
std::size_t jet_index(const MultiIndex& alpha);
/// Inverse of jet_index.
MultiIndex jet_multi_index(std::size_t n);

Jet lift_coordinate(int axis, const Point3& p, int order = kDefaultJetOrder);
double extract(const Jet& a, const MultiIndex& alpha);

Jet recip(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet powi(const Jet& a, int n);

}  // namespace biharm
