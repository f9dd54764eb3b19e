// The two-parameter BCV family of homogeneous 3-metrics
//
//   g = (dx^2 + dy^2) / F^2 + (dz + (l/2)(y dx - x dy) / F)^2,  F = 1 + m(x^2 + y^2),
//
// its global orthonormal frame E1 = F d_x - (l y/2) d_z, E2 = F d_y + (l x/2) d_z,
// E3 = d_z, closed-form connection and curvature tables in that frame, and
// the model-geometry classification by (m, l).
#pragma once

#include <string>

#include "biharm/geometry.hpp"

namespace biharm {

struct BCVParams {
  double m = 0.0;
  double l = 0.0;

  /// 4m - l^2; zero exactly for the space forms.
  double scalar_invariant() const { return 4.0 * m - l * l; }
  double F(double x, double y) const { return 1.0 + m * (x * x + y * y); }
  Jet F(const Jet& x, const Jet& y) const { return 1.0 + m * (x * x + y * y); }
  /// R^3 when m >= 0, else the open disk x^2 + y^2 < -1/m (times R).
  ChartDomain domain() const;
};

enum class ModelName { Euclidean3, Sphere3, S2xR, H2xR, SL2R, Nil, SU2 };

std::string to_string(ModelName model);

MetricField bcv_metric(const BCVParams& params);
FrameTriple bcv_frame(const BCVParams& params);

/// nabla_{E_i} E_j at (x, y), as coefficients in the E basis; indices 1..3.
Vector3 bcv_connection_oracle(const BCVParams& params, int i, int j, double x, double y);
/// R_ijkl = g(R(E_k, E_l) E_j, E_i); indices 1..3.
double bcv_curvature_oracle(const BCVParams& params, int i, int j, int k, int l);

/// Exact comparisons use a 1e-12 tolerance on the parameters.
ModelName classify_bcv(const BCVParams& params);

}  // namespace biharm
