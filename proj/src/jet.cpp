#include "biharm/jet.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "biharm/error.hpp"

namespace biharm {
namespace {

struct Triple {
  std::uint8_t a;
  std::uint8_t b;
  std::uint8_t c;
};

// Index tables for the graded monomial ordering plus the product schedule.
struct Tables {
  std::array<MultiIndex, kMaxJetCoefficients> monomials{};
  std::array<std::array<std::array<int, kMaxJetOrder + 1>, kMaxJetOrder + 1>, kMaxJetOrder + 1>
      index{};
  // Pairs (a, b) with deg a + deg b <= kMaxJetOrder, sorted by deg(a + b).
  std::vector<Triple> products;
  // products_upto[n] = number of schedule entries whose result degree is <= n.
  std::array<std::size_t, kMaxJetOrder + 1> products_upto{};

  Tables() {
    std::size_t n = 0;
    for (auto& plane : index)
      for (auto& row : plane) row.fill(-1);
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (int i = d; i >= 0; --i) {
        for (int j = d - i; j >= 0; --j) {
          const int k = d - i - j;
          monomials[n] = {i, j, k};
          index[i][j][k] = static_cast<int>(n);
          ++n;
        }
      }
    }
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (std::size_t c = 0; c < kMaxJetCoefficients; ++c) {
        const MultiIndex gamma = monomials[c];
        if (gamma.degree() != d) continue;
        for (std::size_t a = 0; a < kMaxJetCoefficients; ++a) {
          const MultiIndex alpha = monomials[a];
          if (alpha.i > gamma.i || alpha.j > gamma.j || alpha.k > gamma.k) continue;
          const int b = index[gamma.i - alpha.i][gamma.j - alpha.j][gamma.k - alpha.k];
          products.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                              static_cast<std::uint8_t>(c)});
        }
      }
      products_upto[d] = products.size();
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorKind::IndexOutOfOrder,
                "jet order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxJetOrder) + "]");
  }
}

// f(a) for a univariate f given its scaled derivatives d[k] = f^(k)(a0) / k!.
Jet compose(const Jet& a, const std::array<double, kMaxJetOrder + 1>& d, const char* op) {
  Jet h = a;
  h[0] = 0.0;
  Jet result(d[static_cast<std::size_t>(a.order())], a.order());
  for (int k = a.order() - 1; k >= 0; --k) {
    result = result * h;
    result[0] += d[static_cast<std::size_t>(k)];
  }
  result.require_finite(op);
  return result;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Point3& p) {
  return os << '(' << p.x << ", " << p.y << ", " << p.z << ')';
}

std::size_t jet_index(const MultiIndex& alpha) {
  if (alpha.i < 0 || alpha.j < 0 || alpha.k < 0 || alpha.degree() > kMaxJetOrder) {
    throw Error(ErrorKind::IndexOutOfOrder, "multi-index degree exceeds the maximum jet order");
  }
  return static_cast<std::size_t>(tables().index[alpha.i][alpha.j][alpha.k]);
}

MultiIndex jet_multi_index(std::size_t n) { return tables().monomials.at(n); }

Jet::Jet(double value, int order) : order_(order) {
  require_order(order);
  c_[0] = value;
  require_finite("constant");
}

Jet Jet::variable(int axis, const Point3& p, int order) {
  if (order < 1) throw Error(ErrorKind::IndexOutOfOrder, "coordinate lift needs order >= 1");
  if (axis < 0 || axis > 2) throw Error(ErrorKind::IndexOutOfOrder, "axis must be 0, 1 or 2");
  Jet j(p[axis], order);
  j.c_[static_cast<std::size_t>(1 + axis)] = 1.0;
  return j;
}

void Jet::require_finite(const char* op) const {
  for (std::size_t n = 0; n < size(); ++n) {
    if (!std::isfinite(c_[n])) {
      throw Error(ErrorKind::NonFinite, std::string("non-finite coefficient after ") + op);
    }
  }
}

double Jet::coefficient(const MultiIndex& alpha) const {
  if (alpha.degree() > order_) {
    throw Error(ErrorKind::IndexOutOfOrder, "multi-index degree " +
                                                std::to_string(alpha.degree()) +
                                                " exceeds jet order " + std::to_string(order_));
  }
  return c_[jet_index(alpha)];
}

double Jet::derivative(const MultiIndex& alpha) const {
  return coefficient(alpha) * factorial(alpha.i) * factorial(alpha.j) * factorial(alpha.k);
}

std::array<double, 3> Jet::gradient() const {
  if (order_ < 1) throw Error(ErrorKind::IndexOutOfOrder, "gradient of an order-0 jet");
  return {c_[1], c_[2], c_[3]};
}

Jet Jet::partial(int axis) const {
  if (order_ < 1) throw Error(ErrorKind::IndexOutOfOrder, "partial derivative of an order-0 jet");
  const auto& t = tables();
  Jet d(0.0, order_ - 1);
  for (std::size_t n = 0; n < d.size(); ++n) {
    MultiIndex alpha = t.monomials[n];
    int* slot = axis == 0 ? &alpha.i : (axis == 1 ? &alpha.j : &alpha.k);
    const int power = *slot + 1;
    *slot = power;
    d.c_[n] = power * c_[static_cast<std::size_t>(t.index[alpha.i][alpha.j][alpha.k])];
  }
  return d;
}

Jet Jet::truncated(int order) const {
  if (order > order_) {
    throw Error(ErrorKind::IndexOutOfOrder, "cannot raise jet order by truncation");
  }
  Jet t(0.0, order);
  std::copy_n(c_.begin(), t.size(), t.c_.begin());
  return t;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (std::size_t n = 0; n < size(); ++n) r.c_[n] = -c_[n];
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (std::size_t n = 0; n < size(); ++n) c_[n] += rhs.c_[n];
  require_finite("add");
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (std::size_t n = 0; n < size(); ++n) c_[n] -= rhs.c_[n];
  require_finite("sub");
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) {
  c_[0] += rhs;
  require_finite("add");
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  c_[0] -= rhs;
  require_finite("sub");
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (std::size_t n = 0; n < size(); ++n) c_[n] *= rhs;
  require_finite("mul");
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) throw Error(ErrorKind::DivisionByZeroAtPoint, "division by the constant 0");
  for (std::size_t n = 0; n < size(); ++n) c_[n] /= rhs;
  require_finite("div");
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const auto& t = tables();
  Jet r(0.0, std::min(a.order_, b.order_));
  const std::size_t count = t.products_upto[static_cast<std::size_t>(r.order_)];
  for (std::size_t n = 0; n < count; ++n) {
    const Triple& p = t.products[n];
    r.c_[p.c] += a.c_[p.a] * b.c_[p.b];
  }
  r.require_finite("mul");
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet operator/(double a, const Jet& b) { return recip(b) * a; }

std::ostream& operator<<(std::ostream& os, const Jet& a) {
  os << "Jet(order=" << a.order() << "; ";
  for (std::size_t n = 0; n < a.size(); ++n) os << (n ? ", " : "") << a[n];
  return os << ')';
}

Jet lift_coordinate(int axis, const Point3& p, int order) { return Jet::variable(axis, p, order); }

double extract(const Jet& a, const MultiIndex& alpha) { return a.derivative(alpha); }

Jet recip(const Jet& a) {
  const double v = a.value();
  if (v == 0.0) throw Error(ErrorKind::DivisionByZeroAtPoint, "reciprocal of a jet with value 0");
  std::array<double, kMaxJetOrder + 1> d{};
  double p = 1.0 / v;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    d[static_cast<std::size_t>(k)] = (k % 2 == 0 ? p : -p);
    p /= v;
  }
  return compose(a, d, "recip");
}

Jet sqrt(const Jet& a) {
  const double v = a.value();
  if (!(v > 0.0)) {
    throw Error(ErrorKind::DomainError, "sqrt of nonpositive value " + format_number(v));
  }
  // binomial(1/2, k) v^(1/2 - k)
  std::array<double, kMaxJetOrder + 1> d{};
  double binom = 1.0;
  double power = std::sqrt(v);
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    d[static_cast<std::size_t>(k)] = binom * power;
    binom *= (0.5 - k) / (k + 1);
    power /= v;
  }
  return compose(a, d, "sqrt");
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  std::array<double, kMaxJetOrder + 1> d{};
  for (int k = 0; k <= kMaxJetOrder; ++k) d[static_cast<std::size_t>(k)] = e / factorial(k);
  return compose(a, d, "exp");
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 4> cycle{s, c, -s, -c};
  std::array<double, kMaxJetOrder + 1> d{};
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    d[static_cast<std::size_t>(k)] = cycle[static_cast<std::size_t>(k % 4)] / factorial(k);
  }
  return compose(a, d, "sin");
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 4> cycle{c, -s, -c, s};
  std::array<double, kMaxJetOrder + 1> d{};
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    d[static_cast<std::size_t>(k)] = cycle[static_cast<std::size_t>(k % 4)] / factorial(k);
  }
  return compose(a, d, "cos");
}

Jet powi(const Jet& a, int n) {
  if (n < 0) return recip(powi(a, -n));
  Jet result(1.0, a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace biharm
