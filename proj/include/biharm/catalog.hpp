// Named submersions with closed-form integrability data.
//
//   pr1(a, b)    M = (y > 0, a^2 (dx^2 + dy^2)/y^2 + (dz + (b a / y) dx)^2),
//                N = (u > 0, a^2 du^2/u^2 + dv^2/(1 + b^2)), pi = (y, z).
//                f1 = f2 = kappa2 = 0, kappa1 = 1/a, sigma = b/(2a). Proper biharmonic.
//   h2r-exp(m)   M = (R^3, e^{2 sqrt(-4m) y} dx^2 + dy^2 + dz^2), N = Euclidean plane,
//                pi = (y, z). kappa1 = -sqrt(-4m), the rest 0. Proper biharmonic.
//   nil          M = Nil (BCV with m = 0, l = 1), N = (R^2, du^2 + dv^2/(1 + u^2)),
//                pi = (x, z + xy/2). f2 = x/(1+x^2), kappa1 = -x/(1+x^2),
//                sigma = (1-x^2)/(2(1+x^2)), f1 = kappa2 = 0. Not biharmonic.
//   flat         Euclidean R^3 -> R^2, pi = (x, y). Harmonic.
//   bcv-z(m, l)  BCV metric, pi = (x, y), N = (dx^2 + dy^2)/F^2. The fibers are the
//                E3 geodesics, so the map is harmonic for every (m, l).
//
// sigma is compared up to sign: it flips with the orientation of e3.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biharm/bcv.hpp"
#include "biharm/biharmonic.hpp"

namespace biharm {

struct CatalogParams {
  double m = -0.25;
  double l = 0.0;
  double a = 1.0;
  double b = 0.0;
};

struct CatalogEntry {
  std::string name;
  CatalogParams params;
  std::vector<std::string> parameter_names;  // the subset of (m, l, a, b) the entry uses
  SubmersionSpec spec;
  std::optional<IntegrabilityData> oracle;
  std::function<double(const Point3&)> base_curvature;  // closed-form K^N
  Verdict expected = Verdict::Inconclusive;
  std::optional<BCVParams> bcv;  // the BCV space isometric to M, when known
  Point3 sample_lo{-1.0, -1.0, -1.0};
  Point3 sample_hi{1.0, 1.0, 1.0};
  ChartDomain sample_region = ChartDomain::everywhere();

  SamplePlan plan(std::size_t count = 50, std::uint64_t seed = 1) const;
};

/// Throws DomainError for a <= 0.
CatalogEntry pr1_family(double a, double b);
/// Throws DomainError for m >= 0.
CatalogEntry h2r_exp_family(double m);
CatalogEntry nil_example();
CatalogEntry flat_projection();
CatalogEntry bcv_z_projection(const BCVParams& params);

/// "pr1", "h2r-exp", "nil", "flat", "bcv-z".
const std::vector<std::string>& catalog_names();
/// Throws ConfigError for unknown names.
CatalogEntry catalog_entry(const std::string& name, const CatalogParams& params = {});

/// Default parameter grids used by sweeps and the identity suites.
std::vector<CatalogParams> default_grid(const std::string& name);

/// m, l in {-1, -0.25, 0, 0.25, 1} x {0, 1, 2}: every BCV model class.
std::vector<BCVParams> bcv_model_grid();

}  // namespace biharm
