#include "biharm/catalog.hpp"

#include <cmath>

#include "biharm/error.hpp"

namespace biharm {
namespace {

CoordinateFunction constant_fn(double c) {
  return [c](const Jet& x, const Jet&, const Jet&) { return Jet(c, x.order()); };
}

PlaneFunction plane_constant(double c) {
  return [c](const Jet& u, const Jet&) { return Jet(c, u.order()); };
}

// Components in the order of DataComponent: f1, f2, f3, kappa1, kappa2, sigma.
IntegrabilityData closed_form_data(std::array<CoordinateFunction, 6> forms) {
  std::array<ScalarField, 6> fields = {
      ScalarField::from_coordinates(forms[0]), ScalarField::from_coordinates(forms[1]),
      ScalarField::from_coordinates(forms[2]), ScalarField::from_coordinates(forms[3]),
      ScalarField::from_coordinates(forms[4]), ScalarField::from_coordinates(forms[5])};
  return IntegrabilityData([fields](const Point3& p, int order) {
    IntegrabilityData::Jets d;
    for (std::size_t i = 0; i < 6; ++i) d[i] = fields[i](p, order);
    return d;
  });
}

PlaneMetric euclidean_plane() {
  return {plane_constant(1.0), plane_constant(0.0), plane_constant(1.0),
          ChartDomain::everywhere()};
}

PlaneFrame coordinate_plane_frame() {
  PlaneFrame f;
  f[0] = {plane_constant(1.0), plane_constant(0.0)};
  f[1] = {plane_constant(0.0), plane_constant(1.0)};
  return f;
}

std::array<CoordinateFunction, 2> project(int first, int second) {
  auto coord = [](int axis) -> CoordinateFunction {
    return [axis](const Jet& x, const Jet& y, const Jet& z) {
      return axis == 0 ? x : (axis == 1 ? y : z);
    };
  };
  return {coord(first), coord(second)};
}

}  // namespace

SamplePlan CatalogEntry::plan(std::size_t count, std::uint64_t seed) const {
  SamplePlan p;
  p.count = count;
  p.seed = seed;
  p.lo = sample_lo;
  p.hi = sample_hi;
  p.region = sample_region;
  return p;
}

CatalogEntry pr1_family(double a, double b) {
  if (!(a > 0.0)) throw Error(ErrorKind::DomainError, "pr1 requires a > 0");
  CatalogEntry e;
  e.name = "pr1";
  e.params = {0.0, 0.0, a, b};
  e.parameter_names = {"a", "b"};

  const double a2 = a * a;
  auto g11 = [a2, b](const Jet&, const Jet& y, const Jet&) { return a2 * (1.0 + b * b) / (y * y); };
  auto g13 = [a, b](const Jet&, const Jet& y, const Jet&) { return b * a / y; };
  auto g22 = [a2](const Jet&, const Jet& y, const Jet&) { return a2 / (y * y); };
  e.spec.name = "pr1";
  e.spec.metric = MetricField::from_components(
      {g11, constant_fn(0.0), g13, g22, constant_fn(0.0), constant_fn(1.0)},
      ChartDomain::half_space(1));
  e.spec.map = project(1, 2);
  const double c = 1.0 / (1.0 + b * b);
  e.spec.base_metric = {[a2](const Jet& u, const Jet&) { return a2 / (u * u); },
                        plane_constant(0.0), plane_constant(c), ChartDomain::half_space(0)};
  const double root = std::sqrt(1.0 + b * b);
  e.spec.base_frame[0] = {[a](const Jet& u, const Jet&) { return u / a; }, plane_constant(0.0)};
  e.spec.base_frame[1] = {plane_constant(0.0), plane_constant(root)};

  e.oracle = closed_form_data({constant_fn(0.0), constant_fn(0.0), constant_fn(0.0),
                               constant_fn(1.0 / a), constant_fn(0.0), constant_fn(b / (2.0 * a))});
  e.base_curvature = [](const Point3&) { return 0.0; };
  e.expected = Verdict::ProperBiharmonicCandidate;
  e.bcv = BCVParams{-1.0 / (4.0 * a2), b / a};
  e.sample_lo = {-1.0, 0.5, -1.0};
  e.sample_hi = {1.0, 2.0, 1.0};
  return e;
}

CatalogEntry h2r_exp_family(double m) {
  if (!(m < 0.0)) throw Error(ErrorKind::DomainError, "h2r-exp requires m < 0");
  CatalogEntry e;
  e.name = "h2r-exp";
  e.params = {m, 0.0, 1.0, 0.0};
  e.parameter_names = {"m"};

  const double k = std::sqrt(-4.0 * m);
  auto g11 = [k](const Jet&, const Jet& y, const Jet&) { return exp(2.0 * k * y); };
  e.spec.name = "h2r-exp";
  e.spec.metric = MetricField::from_components(
      {g11, constant_fn(0.0), constant_fn(0.0), constant_fn(1.0), constant_fn(0.0),
       constant_fn(1.0)},
      ChartDomain::everywhere());
  e.spec.map = project(1, 2);
  e.spec.base_metric = euclidean_plane();
  e.spec.base_frame = coordinate_plane_frame();

  e.oracle = closed_form_data({constant_fn(0.0), constant_fn(0.0), constant_fn(0.0),
                               constant_fn(-k), constant_fn(0.0), constant_fn(0.0)});
  e.base_curvature = [](const Point3&) { return 0.0; };
  e.expected = Verdict::ProperBiharmonicCandidate;
  e.bcv = BCVParams{m, 0.0};
  return e;
}

CatalogEntry nil_example() {
  CatalogEntry e;
  e.name = "nil";
  e.params = {0.0, 1.0, 1.0, 0.0};

  e.spec.name = "nil";
  e.spec.metric = bcv_metric({0.0, 1.0});
  e.spec.map = {[](const Jet& x, const Jet&, const Jet&) { return x; },
                [](const Jet& x, const Jet& y, const Jet& z) { return z + 0.5 * x * y; }};
  e.spec.base_metric = {plane_constant(1.0), plane_constant(0.0),
                        [](const Jet& u, const Jet&) { return recip(1.0 + u * u); },
                        ChartDomain::everywhere()};
  e.spec.base_frame[0] = {plane_constant(1.0), plane_constant(0.0)};
  e.spec.base_frame[1] = {plane_constant(0.0),
                          [](const Jet& u, const Jet&) { return -sqrt(1.0 + u * u); }};

  auto f2 = [](const Jet& x, const Jet&, const Jet&) { return x / (1.0 + x * x); };
  auto k1 = [](const Jet& x, const Jet&, const Jet&) { return -x / (1.0 + x * x); };
  auto s = [](const Jet& x, const Jet&, const Jet&) {
    return (1.0 - x * x) / (2.0 * (1.0 + x * x));
  };
  e.oracle = closed_form_data(
      {constant_fn(0.0), f2, constant_fn(0.0), k1, constant_fn(0.0), s});
  e.base_curvature = [](const Point3& p) {
    const double q = 1.0 + p.x * p.x;
    return (1.0 - 2.0 * p.x * p.x) / (q * q);
  };
  e.expected = Verdict::NotBiharmonic;
  e.bcv = BCVParams{0.0, 1.0};
  e.sample_lo = {-2.0, -1.0, -1.0};
  e.sample_hi = {2.0, 1.0, 1.0};
  return e;
}

CatalogEntry flat_projection() {
  CatalogEntry e;
  e.name = "flat";
  e.params = {0.0, 0.0, 1.0, 0.0};
  e.spec.name = "flat";
  e.spec.metric = MetricField::euclidean();
  e.spec.map = project(0, 1);
  e.spec.base_metric = euclidean_plane();
  e.spec.base_frame = coordinate_plane_frame();
  const CoordinateFunction z = constant_fn(0.0);
  e.oracle = closed_form_data({z, z, z, z, z, z});
  e.base_curvature = [](const Point3&) { return 0.0; };
  e.expected = Verdict::Harmonic;
  e.bcv = BCVParams{0.0, 0.0};
  return e;
}

CatalogEntry bcv_z_projection(const BCVParams& params) {
  CatalogEntry e;
  e.name = "bcv-z";
  e.params = {params.m, params.l, 1.0, 0.0};
  e.parameter_names = {"m", "l"};
  const double m = params.m, l = params.l;

  e.spec.name = "bcv-z";
  e.spec.metric = bcv_metric(params);
  e.spec.map = project(0, 1);
  auto inv_F2 = [params](const Jet& u, const Jet& v) {
    const Jet F = params.F(u, v);
    return recip(F * F);
  };
  auto F = [params](const Jet& u, const Jet& v) { return params.F(u, v); };
  e.spec.base_metric = {inv_F2, plane_constant(0.0), inv_F2,
                        m < 0.0 ? ChartDomain::cylinder(std::sqrt(-1.0 / m))
                                : ChartDomain::everywhere()};
  e.spec.base_frame[0] = {F, plane_constant(0.0)};
  e.spec.base_frame[1] = {plane_constant(0.0), F};

  e.oracle = closed_form_data(
      {[m](const Jet&, const Jet& y, const Jet&) { return -2.0 * m * y; },
       [m](const Jet& x, const Jet&, const Jet&) { return 2.0 * m * x; }, constant_fn(0.0),
       constant_fn(0.0), constant_fn(0.0), constant_fn(-l / 2.0)});
  e.base_curvature = [m](const Point3&) { return 4.0 * m; };
  e.expected = Verdict::Harmonic;
  e.bcv = params;
  if (m < 0.0) {
    const double r = std::sqrt(-0.9 / m);
    e.sample_lo = {-r, -r, -1.0};
    e.sample_hi = {r, r, 1.0};
    e.sample_region = ChartDomain::cylinder(r);
  }
  return e;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"pr1", "h2r-exp", "nil", "flat", "bcv-z"};
  return names;
}

CatalogEntry catalog_entry(const std::string& name, const CatalogParams& p) {
  if (name == "pr1") return pr1_family(p.a, p.b);
  if (name == "h2r-exp") return h2r_exp_family(p.m);
  if (name == "nil") return nil_example();
  if (name == "flat") return flat_projection();
  if (name == "bcv-z") return bcv_z_projection({p.m, p.l});
  throw Error(ErrorKind::ConfigError, "unknown catalog entry '" + name + "'");
}

std::vector<CatalogParams> default_grid(const std::string& name) {
  std::vector<CatalogParams> grid;
  if (name == "pr1") {
    for (double a : {0.5, 1.0, 2.0})
      for (double b : {0.0, 1.0, 3.0}) grid.push_back({0.0, 0.0, a, b});
  } else if (name == "h2r-exp") {
    for (double m : {-1.0, -0.25, -0.01}) grid.push_back({m, 0.0, 1.0, 0.0});
  } else if (name == "bcv-z") {
    for (const BCVParams& q : bcv_model_grid()) grid.push_back({q.m, q.l, 1.0, 0.0});
  } else if (name == "nil" || name == "flat") {
    grid.push_back(catalog_entry(name).params);
  } else {
    throw Error(ErrorKind::ConfigError, "unknown catalog entry '" + name + "'");
  }
  return grid;
}

std::vector<BCVParams> bcv_model_grid() {
  std::vector<BCVParams> grid;
  for (double m : {-1.0, -0.25, 0.0, 0.25, 1.0})
    for (double l : {0.0, 1.0, 2.0}) grid.push_back({m, l});
  return grid;
}

}  // namespace biharm
