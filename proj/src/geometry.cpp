#include "biharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "biharm/error.hpp"

namespace biharm {
namespace {

void require_in_domain(const ChartDomain& domain, const Point3& p) {
  if (!domain.contains(p)) {
    std::string where = "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                        std::to_string(p.z) + ")";
    throw Error(ErrorKind::OutOfDomain, "point " + where + " outside " + domain.description);
  }
}

std::array<Jet, 3> lift_point(const Point3& p, int order) {
  return {Jet::variable(0, p, order), Jet::variable(1, p, order), Jet::variable(2, p, order)};
}

}  // namespace

ChartDomain ChartDomain::everywhere() {
  return {"R^3", [](const Point3&) { return std::numeric_limits<double>::infinity(); }};
}

ChartDomain ChartDomain::half_space(int axis) {
  static const char* names[] = {"x > 0", "y > 0", "z > 0"};
  return {names[axis], [axis](const Point3& p) { return p[axis]; }};
}

ChartDomain ChartDomain::cylinder(double radius) {
  return {"x^2 + y^2 < " + format_number(radius * radius),
          [r2 = radius * radius](const Point3& p) { return r2 - (p.x * p.x + p.y * p.y); }};
}

ScalarField ScalarField::from_coordinates(CoordinateFunction f) {
  return ScalarField([f = std::move(f)](const Point3& p, int order) {
    const auto x = lift_point(p, std::max(order, 1));
    Jet r = f(x[0], x[1], x[2]);
    return r.order() > order ? r.truncated(order) : r;
  });
}

ScalarField ScalarField::constant(double c) {
  return ScalarField([c](const Point3&, int order) { return Jet(c, order); });
}

ScalarField ScalarField::coordinate(int axis) {
  return ScalarField([axis](const Point3& p, int order) {
    if (order == 0) return Jet(p[axis], 0);
    return Jet::variable(axis, p, order);
  });
}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : eval_([x = std::move(x), y = std::move(y), z = std::move(z)](const Point3& p, int order) {
        return JetVector{x(p, order), y(p, order), z(p, order)};
      }) {}

VectorField VectorField::coordinate_basis(int axis) {
  return VectorField([axis](const Point3&, int order) {
    Vector3 v{0.0, 0.0, 0.0};
    v[static_cast<std::size_t>(axis)] = 1.0;
    return local::constant_vector(v, order);
  });
}

Vector3 VectorField::value(const Point3& p) const {
  const JetVector v = eval_(p, 0);
  return {v[0].value(), v[1].value(), v[2].value()};
}

MetricField::MetricField(Evaluator eval, ChartDomain domain)
    : eval_(std::move(eval)), domain_(std::move(domain)) {}

MetricField MetricField::from_components(std::array<CoordinateFunction, 6> upper,
                                         ChartDomain domain) {
  return MetricField(
      [upper = std::move(upper)](const Point3& p, int order) {
        const auto x = lift_point(p, std::max(order, 1));
        JetMatrix g;
        const int slots[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        for (int i = 0; i < 3; ++i) {
          for (int j = i; j < 3; ++j) {
            Jet c = upper[static_cast<std::size_t>(slots[i][j])](x[0], x[1], x[2]);
            if (c.order() > order) c = c.truncated(order);
            g[i][j] = c;
            g[j][i] = c;
          }
        }
        return g;
      },
      std::move(domain));
}

MetricField MetricField::euclidean() {
  const CoordinateFunction one = [](const Jet& x, const Jet&, const Jet&) {
    return Jet(1.0, x.order());
  };
  const CoordinateFunction zero = [](const Jet& x, const Jet&, const Jet&) {
    return Jet(0.0, x.order());
  };
  return from_components({one, zero, zero, one, zero, one}, ChartDomain::everywhere());
}

MetricField::MetricField() : MetricField(euclidean()) {}

JetMatrix MetricField::operator()(const Point3& p, int order) const {
  require_in_domain(domain_, p);
  return eval_(p, order);
}

Matrix3 MetricField::value(const Point3& p) const {
  const JetMatrix g = (*this)(p, 0);
  Matrix3 v{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[i][j] = g[i][j].value();
  return v;
}

bool MetricField::positive_definite_at(const Point3& p, double margin) const {
  const Matrix3 g = value(p);
  const double m1 = g[0][0];
  const double m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  const double m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                    g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                    g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  return m1 > margin && m2 > margin && m3 > margin;
}

MetricField product_with_line(const PlaneMetric& h) {
  return MetricField(
      [h](const Point3& p, int order) {
        const auto x = lift_point(p, std::max(order, 1));
        const Jet zero(0.0, order);
        auto cut = [order](Jet c) { return c.order() > order ? c.truncated(order) : c; };
        const Jet h11 = cut(h.h11(x[0], x[1]));
        const Jet h12 = cut(h.h12(x[0], x[1]));
        const Jet h22 = cut(h.h22(x[0], x[1]));
        return JetMatrix{{{h11, h12, zero}, {h12, h22, zero}, {zero, zero, Jet(1.0, order)}}};
      },
      h.domain);
}

FrameTriple FrameTriple::from_fields(VectorField e1, VectorField e2, VectorField e3,
                                     FrameKind kind) {
  return FrameTriple(
      [e1 = std::move(e1), e2 = std::move(e2), e3 = std::move(e3)](const Point3& p, int order) {
        return Jets{e1(p, order), e2(p, order), e3(p, order)};
      },
      kind);
}

VectorField FrameTriple::field(int i) const {
  return VectorField([eval = eval_, i](const Point3& p, int order) {
    return eval(p, order)[static_cast<std::size_t>(i)];
  });
}

FrameTriple FrameTriple::with_flipped_vertical() const {
  return FrameTriple(
      [eval = eval_](const Point3& p, int order) {
        Jets e = eval(p, order);
        for (auto& c : e[2]) c = -c;
        return e;
      },
      kind_);
}

FrameTriple FrameTriple::with_rotated_horizontal() const {
  return FrameTriple(
      [eval = eval_](const Point3& p, int order) {
        Jets e = eval(p, order);
        JetVector first = e[1];
        JetVector second = e[0];
        for (auto& c : second) c = -c;
        e[0] = first;
        e[1] = second;
        return e;
      },
      kind_);
}

namespace local {

JetVector constant_vector(const Vector3& v, int order) {
  return {Jet(v[0], order), Jet(v[1], order), Jet(v[2], order)};
}

Jet apply(const JetVector& X, const Jet& u) {
  Jet r = X[0] * u.partial(0);
  r += X[1] * u.partial(1);
  r += X[2] * u.partial(2);
  return r;
}

JetVector bracket(const JetVector& X, const JetVector& Y) {
  JetVector r;
  for (int k = 0; k < 3; ++k) r[k] = local::apply(X, Y[k]) - local::apply(Y, X[k]);
  return r;
}

Jet inner(const JetMatrix& g, const JetVector& X, const JetVector& Y) {
  Jet r(0.0, std::min({g[0][0].order(), X[0].order(), Y[0].order()}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r += g[i][j] * X[i] * Y[j];
  return r;
}

Jet determinant(const JetMatrix& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

JetMatrix inverse(const JetMatrix& g) {
  const Jet det = determinant(g);
  double scale = 0.0;
  for (const auto& row : g)
    for (const auto& c : row) scale = std::max(scale, std::abs(c.value()));
  if (!(std::abs(det.value()) > 1e-14 * scale * scale * scale)) {
    throw Error(ErrorKind::SingularMetric,
                "metric determinant " + format_number(det.value()) + " is numerically zero");
  }
  const Jet inv_det = recip(det);
  JetMatrix r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // cofactor of g[j][i]
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r[i][j] = (g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0]) * inv_det;
    }
  }
  return r;
}

JetVector multiply(const JetMatrix& a, const JetVector& v) {
  JetVector r;
  for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

JetVector covariant(const JetMatrix& g, const JetMatrix& ginv, const JetVector& X,
                    const JetVector& Y) {
  const int order = std::min({g[0][0].order(), X[0].order(), Y[0].order()});
  const Jet xy = inner(g, X, Y);
  const JetVector xy_bracket = bracket(X, Y);
  // 2<nabla_X Y, d_k> = X<Y,d_k> + Y<X,d_k> - d_k<X,Y>
  //                     + <[X,Y],d_k> - <[Y,d_k],X> - <[X,d_k],Y>
  JetVector lowered;
  for (int k = 0; k < 3; ++k) {
    Vector3 unit{0.0, 0.0, 0.0};
    unit[static_cast<std::size_t>(k)] = 1.0;
    const JetVector basis = constant_vector(unit, order);
    Jet term = local::apply(X, inner(g, Y, basis));
    term += local::apply(Y, inner(g, X, basis));
    term -= xy.partial(k);
    term += inner(g, xy_bracket, basis);
    term -= inner(g, bracket(Y, basis), X);
    term -= inner(g, bracket(X, basis), Y);
    lowered[k] = term * 0.5;
  }
  return multiply(ginv, lowered);
}

JetVector curvature(const JetMatrix& g, const JetMatrix& ginv, const JetVector& X,
                    const JetVector& Y, const JetVector& Z) {
  const JetVector yz = covariant(g, ginv, Y, Z);
  const JetVector xz = covariant(g, ginv, X, Z);
  const JetVector xyz = covariant(g, ginv, X, yz);
  const JetVector yxz = covariant(g, ginv, Y, xz);
  const JetVector bz = covariant(g, ginv, bracket(X, Y), Z);
  JetVector r;
  for (int k = 0; k < 3; ++k) r[k] = xyz[k] - yxz[k] - bz[k];
  return r;
}

Jet curvature_tensor(const JetMatrix& g, const JetMatrix& ginv, const JetVector& X,
                     const JetVector& Y, const JetVector& Z, const JetVector& W) {
  return inner(g, curvature(g, ginv, Z, W, Y), X);
}

Matrix3 gram(const JetMatrix& g, const FrameTriple::Jets& e) {
  Matrix3 r{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r[a][b] = inner(g, e[a], e[b]).value();
  return r;
}

double laplacian(const JetMatrix& g, const JetMatrix& ginv, const FrameTriple::Jets& e,
                 const Jet& u) {
  double total = 0.0;
  for (const JetVector& ei : e) {
    total += local::apply(ei, local::apply(ei, u)).value();
    const JetVector nabla = covariant(g, ginv, ei, ei);
    const Vector3 grad = u.gradient();
    for (int k = 0; k < 3; ++k) total -= nabla[k].value() * grad[static_cast<std::size_t>(k)];
  }
  return total;
}

}  // namespace local

Jet inner(const MetricField& g, const VectorField& X, const VectorField& Y, const Point3& p,
          int order) {
  return local::inner(g(p, order), X(p, order), Y(p, order));
}

VectorField lie_bracket(VectorField X, VectorField Y) {
  return VectorField([X = std::move(X), Y = std::move(Y)](const Point3& p, int order) {
    return local::bracket(X(p, order + 1), Y(p, order + 1));
  });
}

Vector3 levi_civita(const MetricField& g, const VectorField& X, const VectorField& Y,
                    const Point3& p) {
  const JetMatrix gj = g(p, 1);
  const JetVector r = local::covariant(gj, local::inverse(gj), X(p, 1), Y(p, 1));
  return {r[0].value(), r[1].value(), r[2].value()};
}

VectorField covariant_derivative(MetricField g, VectorField X, VectorField Y) {
  return VectorField(
      [g = std::move(g), X = std::move(X), Y = std::move(Y)](const Point3& p, int order) {
        const JetMatrix gj = g(p, order + 1);
        return local::covariant(gj, local::inverse(gj), X(p, order + 1), Y(p, order + 1));
      });
}

Vector3 curvature(const MetricField& g, const VectorField& X, const VectorField& Y,
                  const VectorField& Z, const Point3& p) {
  const JetMatrix gj = g(p, 2);
  const JetVector r = local::curvature(gj, local::inverse(gj), X(p, 2), Y(p, 2), Z(p, 2));
  return {r[0].value(), r[1].value(), r[2].value()};
}

double curvature_scalar(const MetricField& g, const VectorField& X, const VectorField& Y,
                        const VectorField& Z, const VectorField& W, const Point3& p) {
  const JetMatrix gj = g(p, 2);
  return local::curvature_tensor(gj, local::inverse(gj), X(p, 2), Y(p, 2), Z(p, 2), W(p, 2))
      .value();
}

double orthonormality_defect(const MetricField& g, const FrameTriple& frame, const Point3& p) {
  const Matrix3 G = local::gram(g(p, 0), frame(p, 0));
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) worst = std::max(worst, std::abs(G[a][b] - (a == b ? 1.0 : 0.0)));
  return worst;
}

double laplacian_frame(const MetricField& g, const FrameTriple& frame, const ScalarField& u,
                       const Point3& p) {
  const JetMatrix gj = g(p, 1);
  const FrameTriple::Jets e = frame(p, 1);
  const double defect = [&] {
    const Matrix3 G = local::gram(gj, e);
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        worst = std::max(worst, std::abs(G[a][b] - (a == b ? 1.0 : 0.0)));
    return worst;
  }();
  if (defect > 1e-9) {
    throw Error(ErrorKind::FrameNotOrthonormal,
                "Gram matrix deviates from identity by " + format_number(defect));
  }
  return local::laplacian(gj, local::inverse(gj), e, u(p, 2));
}

}  // namespace biharm
