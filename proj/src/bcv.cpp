#include "biharm/bcv.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace biharm {
namespace {

constexpr double kParamTolerance = 1e-12;

bool is_zero(double v) { return std::abs(v) <= kParamTolerance; }

void require_frame_index(int i) {
  if (i < 1 || i > 3) throw std::out_of_range("BCV frame indices run over 1..3");
}

}  // namespace

ChartDomain BCVParams::domain() const {
  if (m >= 0.0) return ChartDomain::everywhere();
  return ChartDomain::cylinder(std::sqrt(-1.0 / m));
}

std::string to_string(ModelName model) {
  switch (model) {
    case ModelName::Euclidean3: return "Euclidean3";
    case ModelName::Sphere3: return "Sphere3";
    case ModelName::S2xR: return "S2xR";
    case ModelName::H2xR: return "H2xR";
    case ModelName::SL2R: return "SL2R~";
    case ModelName::Nil: return "Nil";
    case ModelName::SU2: return "SU2";
  }
  return "unknown";
}

MetricField bcv_metric(const BCVParams& params) {
  const double m = params.m;
  const double l = params.l;
  auto F = [m](const Jet& x, const Jet& y) { return 1.0 + m * (x * x + y * y); };
  // The twist one-form is dz + A_x dx + A_y dy with A = (l/2)(y, -x)/F.
  const CoordinateFunction g11 = [=](const Jet& x, const Jet& y, const Jet&) {
    const Jet inv = recip(F(x, y));
    const Jet ax = 0.5 * l * y * inv;
    return inv * inv + ax * ax;
  };
  const CoordinateFunction g12 = [=](const Jet& x, const Jet& y, const Jet&) {
    const Jet inv = recip(F(x, y));
    return -(0.25 * l * l) * x * y * inv * inv;
  };
  const CoordinateFunction g13 = [=](const Jet& x, const Jet& y, const Jet&) {
    return 0.5 * l * y * recip(F(x, y));
  };
  const CoordinateFunction g22 = [=](const Jet& x, const Jet& y, const Jet&) {
    const Jet inv = recip(F(x, y));
    const Jet ay = -0.5 * l * x * inv;
    return inv * inv + ay * ay;
  };
  const CoordinateFunction g23 = [=](const Jet& x, const Jet& y, const Jet&) {
    return -0.5 * l * x * recip(F(x, y));
  };
  const CoordinateFunction g33 = [](const Jet& x, const Jet&, const Jet&) {
    return Jet(1.0, x.order());
  };
  return MetricField::from_components({g11, g12, g13, g22, g23, g33}, params.domain());
}

FrameTriple bcv_frame(const BCVParams& params) {
  const double m = params.m;
  const double l = params.l;
  auto F = [m](const Jet& x, const Jet& y) { return 1.0 + m * (x * x + y * y); };
  const VectorField e1(ScalarField::from_coordinates([=](const Jet& x, const Jet& y, const Jet&) {
                         return F(x, y);
                       }),
                       ScalarField::constant(0.0),
                       ScalarField::from_coordinates([=](const Jet&, const Jet& y, const Jet&) {
                         return -0.5 * l * y;
                       }));
  const VectorField e2(ScalarField::constant(0.0),
                       ScalarField::from_coordinates([=](const Jet& x, const Jet& y, const Jet&) {
                         return F(x, y);
                       }),
                       ScalarField::from_coordinates([=](const Jet& x, const Jet&, const Jet&) {
                         return 0.5 * l * x;
                       }));
  return FrameTriple::from_fields(e1, e2, VectorField::coordinate_basis(2));
}

Vector3 bcv_connection_oracle(const BCVParams& params, int i, int j, double x, double y) {
  require_frame_index(i);
  require_frame_index(j);
  const double m = params.m;
  const double h = 0.5 * params.l;
  switch (i * 10 + j) {
    case 11: return {0.0, 2.0 * m * y, 0.0};
    case 22: return {2.0 * m * x, 0.0, 0.0};
    case 12: return {-2.0 * m * y, 0.0, h};
    case 21: return {0.0, -2.0 * m * x, -h};
    case 31:
    case 13: return {0.0, -h, 0.0};
    case 32:
    case 23: return {h, 0.0, 0.0};
    default: return {0.0, 0.0, 0.0};
  }
}

double bcv_curvature_oracle(const BCVParams& params, int i, int j, int k, int l) {
  require_frame_index(i);
  require_frame_index(j);
  require_frame_index(k);
  require_frame_index(l);
  if (i == j || k == l) return 0.0;
  // Antisymmetry in each pair reduces to i < j, k < l.
  double sign = 1.0;
  if (i > j) {
    std::swap(i, j);
    sign = -sign;
  }
  if (k > l) {
    std::swap(k, l);
    sign = -sign;
  }
  if (i != k || j != l) return 0.0;
  const double twist = params.l * params.l / 4.0;
  if (i == 1 && j == 2) return sign * (4.0 * params.m - 3.0 * twist);
  return sign * twist;
}

ModelName classify_bcv(const BCVParams& params) {
  const bool m0 = is_zero(params.m);
  const bool l0 = is_zero(params.l);
  if (m0 && l0) return ModelName::Euclidean3;
  if (!l0 && is_zero(params.scalar_invariant())) return ModelName::Sphere3;
  if (l0) return params.m > 0.0 ? ModelName::S2xR : ModelName::H2xR;
  if (m0) return ModelName::Nil;
  return params.m < 0.0 ? ModelName::SL2R : ModelName::SU2;
}

}  // namespace biharm
