// Metric-agnostic differential geometry on a 3-dimensional chart.
//
// Fields are evaluation maps p -> Jet. Every geometric quantity is computed
// from jets expanded at a single point: brackets and directional
// derivatives differentiate the jets, the Levi-Civita connection comes from
// the Koszul formula, and curvature from the connection. Each derivative
// lowers the available order by one, so callers request fields at the
// order the final quantity needs.
//
// Curvature convention: R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y] Z and the
// 4-tensor R(X,Y,Z,W) = g(R(Z,W)Y, X), so R(E1,E2,E1,E2) is the sectional
// curvature of the plane spanned by orthonormal E1, E2.
#pragma once

#include <array>
#include <functional>
#include <string>

#include "biharm/jet.hpp"

namespace biharm {

using Vector3 = std::array<double, 3>;
using JetVector = std::array<Jet, 3>;
using JetMatrix = std::array<std::array<Jet, 3>, 3>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Functions of jet-valued coordinates; composable with other jets.
using CoordinateFunction = std::function<Jet(const Jet& x, const Jet& y, const Jet& z)>;
using PlaneFunction = std::function<Jet(const Jet& u, const Jet& v)>;

/// An open chart region described by a margin function that is positive
/// exactly inside the region.
struct ChartDomain {
  std::string description;
  std::function<double(const Point3&)> margin;

  bool contains(const Point3& p) const { return margin(p) > 0.0; }

  static ChartDomain everywhere();
  /// {p : p[axis] > 0}
  static ChartDomain half_space(int axis);
  /// {p : x^2 + y^2 < radius^2}
  static ChartDomain cylinder(double radius);
};

class ScalarField {
 public:
  using Evaluator = std::function<Jet(const Point3&, int order)>;

  explicit ScalarField(Evaluator eval) : eval_(std::move(eval)) {}

  /// Field given by a closed form in the chart coordinates.
  static ScalarField from_coordinates(CoordinateFunction f);
  static ScalarField constant(double c);
  static ScalarField coordinate(int axis);

  Jet operator()(const Point3& p, int order = kDefaultJetOrder) const { return eval_(p, order); }

 private:
  Evaluator eval_;
};

class VectorField {
 public:
  using Evaluator = std::function<JetVector(const Point3&, int order)>;

  explicit VectorField(Evaluator eval) : eval_(std::move(eval)) {}
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  /// The coordinate field d/dx, d/dy or d/dz.
  static VectorField coordinate_basis(int axis);

  JetVector operator()(const Point3& p, int order = kDefaultJetOrder) const {
    return eval_(p, order);
  }
  Vector3 value(const Point3& p) const;

 private:
  Evaluator eval_;
};

class MetricField {
 public:
  using Evaluator = std::function<JetMatrix(const Point3&, int order)>;

  /// Euclidean.
  MetricField();
  MetricField(Evaluator eval, ChartDomain domain);

  /// Symmetric metric from the six upper-triangle closed forms
  /// (g11, g12, g13, g22, g23, g33).
  static MetricField from_components(std::array<CoordinateFunction, 6> upper, ChartDomain domain);
  static MetricField euclidean();

  /// Components at p; throws OutOfDomain outside the chart domain.
  JetMatrix operator()(const Point3& p, int order = kDefaultJetOrder) const;
  Matrix3 value(const Point3& p) const;
  const ChartDomain& domain() const { return domain_; }

  /// True when every leading principal minor exceeds `margin`.
  bool positive_definite_at(const Point3& p, double margin = 1e-12) const;

 private:
  Evaluator eval_;
  ChartDomain domain_;
};

/// A 2-dimensional metric h = h11 du^2 + 2 h12 du dv + h22 dv^2 on the plane.
struct PlaneMetric {
  PlaneFunction h11;
  PlaneFunction h12;
  PlaneFunction h22;
  ChartDomain domain;  // evaluated on (u, v, 0)
};

/// The 3-dimensional product h + dw^2, whose (u,v)-plane sectional curvature
/// is the Gauss curvature of h.
MetricField product_with_line(const PlaneMetric& h);

enum class FrameKind { Generic, Natural, Adapted };

/// Ordered triple of vector fields evaluated together.
class FrameTriple {
 public:
  using Jets = std::array<JetVector, 3>;
  using Evaluator = std::function<Jets(const Point3&, int order)>;

  FrameTriple(Evaluator eval, FrameKind kind) : eval_(std::move(eval)), kind_(kind) {}
  static FrameTriple from_fields(VectorField e1, VectorField e2, VectorField e3,
                                 FrameKind kind = FrameKind::Generic);

  Jets operator()(const Point3& p, int order = kDefaultJetOrder) const { return eval_(p, order); }
  VectorField field(int i) const;
  FrameKind kind() const { return kind_; }

  /// e3 -> -e3.
  FrameTriple with_flipped_vertical() const;
  /// (e1, e2) -> (e2, -e1).
  FrameTriple with_rotated_horizontal() const;

 private:
  Evaluator eval_;
  FrameKind kind_;
};

// Point-local kernels on jets expanded at a common point.
namespace local {

JetVector constant_vector(const Vector3& v, int order);
/// X(u) = sum_i X^i d_i u.
Jet apply(const JetVector& X, const Jet& u);
JetVector bracket(const JetVector& X, const JetVector& Y);
Jet inner(const JetMatrix& g, const JetVector& X, const JetVector& Y);
Jet determinant(const JetMatrix& g);
/// Throws SingularMetric when |det g| is not safely positive.
JetMatrix inverse(const JetMatrix& g);
JetVector multiply(const JetMatrix& a, const JetVector& v);
/// nabla_X Y from the Koszul formula against the coordinate basis.
JetVector covariant(const JetMatrix& g, const JetMatrix& ginv, const JetVector& X,
                    const JetVector& Y);
/// R(X,Y)Z.
JetVector curvature(const JetMatrix& g, const JetMatrix& ginv, const JetVector& X,
                    const JetVector& Y, const JetVector& Z);
/// R(X,Y,Z,W) = g(R(Z,W)Y, X).
Jet curvature_tensor(const JetMatrix& g, const JetMatrix& ginv, const JetVector& X,
                     const JetVector& Y, const JetVector& Z, const JetVector& W);
/// Gram matrix values g(e_a, e_b).
Matrix3 gram(const JetMatrix& g, const FrameTriple::Jets& e);
/// Laplacian sum_i e_i(e_i(u)) - (nabla_{e_i} e_i)(u) for an orthonormal frame.
double laplacian(const JetMatrix& g, const JetMatrix& ginv, const FrameTriple::Jets& e,
                 const Jet& u);

}  // namespace local

Jet inner(const MetricField& g, const VectorField& X, const VectorField& Y, const Point3& p,
          int order = kDefaultJetOrder);
VectorField lie_bracket(VectorField X, VectorField Y);
Vector3 levi_civita(const MetricField& g, const VectorField& X, const VectorField& Y,
                    const Point3& p);
/// nabla_X Y as a field; one order is consumed by the connection.
VectorField covariant_derivative(MetricField g, VectorField X, VectorField Y);
Vector3 curvature(const MetricField& g, const VectorField& X, const VectorField& Y,
                  const VectorField& Z, const Point3& p);
/// g(R(Z,W)Y, X); for a frame this is R_ijkl with (X,Y,Z,W) = (E_i,E_j,E_k,E_l).
double curvature_scalar(const MetricField& g, const VectorField& X, const VectorField& Y,
                        const VectorField& Z, const VectorField& W, const Point3& p);
/// Throws FrameNotOrthonormal when the Gram matrix deviates from I by more than 1e-9.
double laplacian_frame(const MetricField& g, const FrameTriple& frame, const ScalarField& u,
                       const Point3& p);

/// Largest |g(e_a, e_b) - delta_ab| at p.
double orthonormality_defect(const MetricField& g, const FrameTriple& frame, const Point3& p);

}  // namespace biharm
