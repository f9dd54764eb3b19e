#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biharm/bcv.hpp"
#include "biharm/error.hpp"
#include "biharm/geometry.hpp"

using namespace biharm;

namespace {

Vector3 combine(const BCVParams& q, const Point3& p, double c1, double c2, double c3) {
  const Vector3 E1{q.F(p.x, p.y), 0.0, -q.l * p.y / 2.0};
  const Vector3 E2{0.0, q.F(p.x, p.y), q.l * p.x / 2.0};
  return {c1 * E1[0] + c2 * E2[0], c1 * E1[1] + c2 * E2[1], c1 * E1[2] + c2 * E2[2] + c3};
}

void check_vec(const Vector3& got, const Vector3& want, double tol) {
  for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

// A non-homogeneous metric with all six components nonconstant.
MetricField wavy_metric() {
  return MetricField::from_components(
      {[](const Jet& x, const Jet& y, const Jet&) { return 2.0 + sin(x * y); },
       [](const Jet& x, const Jet&, const Jet& z) { return 0.2 * cos(x + z); },
       [](const Jet&, const Jet& y, const Jet&) { return 0.1 * y; },
       [](const Jet& x, const Jet&, const Jet& z) { return 1.5 + 0.3 * x * x + 0.1 * z; },
       [](const Jet& x, const Jet& y, const Jet&) { return 0.1 * sin(x - y); },
       [](const Jet&, const Jet& y, const Jet& z) { return exp(0.2 * (y + z)); }},
      ChartDomain::everywhere());
}

std::vector<VectorField> test_fields() {
  return {
      VectorField(ScalarField::from_coordinates([](const Jet& x, const Jet& y, const Jet&) { return 1.0 + x * y; }),
                  ScalarField::from_coordinates([](const Jet&, const Jet&, const Jet& z) { return sin(z); }),
                  ScalarField::from_coordinates([](const Jet& x, const Jet&, const Jet&) { return x * x; })),
      VectorField(ScalarField::from_coordinates([](const Jet&, const Jet& y, const Jet&) { return cos(y); }),
                  ScalarField::from_coordinates([](const Jet& x, const Jet&, const Jet& z) { return 0.5 + x * z; }),
                  ScalarField::from_coordinates([](const Jet&, const Jet& y, const Jet&) { return exp(0.3 * y); })),
      VectorField(ScalarField::from_coordinates([](const Jet&, const Jet&, const Jet& z) { return z; }),
                  ScalarField::constant(1.0),
                  ScalarField::from_coordinates([](const Jet& x, const Jet& y, const Jet&) { return x - y; })),
      VectorField::coordinate_basis(1),
  };
}

std::vector<Point3> random_points(int n, std::uint64_t seed, double r = 0.8) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) pts.push_back({u(gen), u(gen), u(gen)});
  return pts;
}

}  // namespace

TEST_CASE("inner products") {
  const Point3 p{0.3, -0.7, 2.0};
  const auto dx = VectorField::coordinate_basis(0), dz = VectorField::coordinate_basis(2);
  CHECK(inner(MetricField::euclidean(), dx, dx, p).value() == 1.0);
  CHECK(inner(bcv_metric({0.0, 1.0}), dz, dz, p).value() == doctest::Approx(1.0).epsilon(1e-15));

  const MetricField g = wavy_metric();
  const auto fields = test_fields();
  for (const Point3& q : random_points(20, 5)) {
    CHECK(inner(g, fields[0], fields[1], q).value() ==
          doctest::Approx(inner(g, fields[1], fields[0], q).value()).epsilon(1e-14));
  }
}

TEST_CASE("Lie brackets") {
  const Point3 p{0.2, 0.4, -0.1};
  const auto bxy = lie_bracket(VectorField::coordinate_basis(0), VectorField::coordinate_basis(1));
  check_vec(bxy.value(p), {0, 0, 0}, 0.0);

  for (const BCVParams q : {BCVParams{-0.25, 1.0}, BCVParams{1.0, 2.0}, BCVParams{0.0, 1.0}}) {
    const FrameTriple E = bcv_frame(q);
    for (const Point3& r : random_points(10, 9, 0.6)) {
      const Vector3 b12 = lie_bracket(E.field(0), E.field(1)).value(r);
      check_vec(b12, combine(q, r, -2 * q.m * r.y, 2 * q.m * r.x, q.l), 1e-12);
      check_vec(lie_bracket(E.field(0), E.field(2)).value(r), {0, 0, 0}, 1e-14);
      check_vec(lie_bracket(E.field(1), E.field(2)).value(r), {0, 0, 0}, 1e-14);
    }
  }
}

TEST_CASE("Levi-Civita connection examples") {
  const auto fields = test_fields();
  const Point3 p{0.1, 0.2, 0.3};
  const auto dx = VectorField::coordinate_basis(0), dy = VectorField::coordinate_basis(1);
  check_vec(levi_civita(MetricField::euclidean(), dx, dy, p), {0, 0, 0}, 0.0);

  const BCVParams q{-0.25, 1.0};
  const MetricField g = bcv_metric(q);
  const FrameTriple E = bcv_frame(q);
  for (const Point3& r : random_points(10, 13, 0.6)) {
    check_vec(levi_civita(g, E.field(0), E.field(1), r),
              combine(q, r, -2 * q.m * r.y, 0.0, q.l / 2.0), 1e-12);
    check_vec(levi_civita(g, E.field(2), E.field(2), r), {0, 0, 0}, 1e-12);
  }
}

TEST_CASE("curvature examples") {
  const auto fields = test_fields();
  const Point3 p{0.5, -0.2, 0.3};
  const MetricField flat = MetricField::euclidean();
  check_vec(curvature(flat, fields[0], fields[1], fields[2], p), {0, 0, 0}, 1e-13);
  CHECK(std::abs(curvature_scalar(flat, fields[0], fields[1], fields[2], fields[3], p)) < 1e-13);

  {
    const BCVParams q{1.0, 2.0};
    const FrameTriple E = bcv_frame(q);
    for (const Point3& r : random_points(5, 17)) {
      CHECK(curvature_scalar(bcv_metric(q), E.field(0), E.field(1), E.field(0), E.field(1), r) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  {
    const BCVParams q{-0.25, 0.0};
    const MetricField g = bcv_metric(q);
    const FrameTriple E = bcv_frame(q);
    const Point3 r{0.5, 0.5, 0.0};
    CHECK(curvature_scalar(g, E.field(0), E.field(1), E.field(0), E.field(1), r) ==
          doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(curvature_scalar(g, E.field(0), E.field(2), E.field(0), E.field(2), r)) < 1e-12);
    CHECK(std::abs(curvature_scalar(g, E.field(1), E.field(2), E.field(1), E.field(2), r)) < 1e-12);
  }
}

TEST_CASE("frame Laplacian") {
  const FrameTriple coord = FrameTriple::from_fields(
      VectorField::coordinate_basis(0), VectorField::coordinate_basis(1),
      VectorField::coordinate_basis(2));
  const auto r2 = ScalarField::from_coordinates(
      [](const Jet& x, const Jet& y, const Jet& z) { return x * x + y * y + z * z; });
  CHECK(laplacian_frame(MetricField::euclidean(), coord, r2, {0.3, 1.2, -0.4}) ==
        doctest::Approx(6.0).epsilon(1e-14));

  const BCVParams q{-0.25, 1.0};
  CHECK(laplacian_frame(bcv_metric(q), bcv_frame(q), ScalarField::constant(3.0), {0.2, 0.1, 0.0}) ==
        0.0);

  // kappa1 = -x/(1+x^2) on Nil. Values from tests/oracles/nil_oracle.py.
  const BCVParams nil{0.0, 1.0};
  const auto kappa1 = ScalarField::from_coordinates(
      [](const Jet& x, const Jet&, const Jet&) { return -x / (1.0 + x * x); });
  const std::pair<double, double> oracle[] = {
      {0.25, 6016.0 / 4913.0}, {0.5, 176.0 / 125.0}, {1.0, 0.5}, {2.0, -4.0 / 125.0}};
  for (const auto& [x, lap] : oracle) {
    for (const double y : {-0.7, 0.0, 1.3}) {
      CHECK(laplacian_frame(bcv_metric(nil), bcv_frame(nil), kappa1, {x, y, 0.4}) ==
            doctest::Approx(lap).epsilon(1e-12));
    }
  }

  try {
    laplacian_frame(bcv_metric(nil), coord, kappa1, {1.0, 1.0, 0.0});
    FAIL("expected FrameNotOrthonormal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FrameNotOrthonormal);
  }
}

TEST_CASE("domain and singular metric errors") {
  const MetricField g = bcv_metric({-1.0, 0.0});
  try {
    g({1.0, 0.5, 0.0}, 1);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfDomain);
  }

  const auto one = [](const Jet& x, const Jet&, const Jet&) { return Jet(1.0, x.order()); };
  const auto zero = [](const Jet& x, const Jet&, const Jet&) { return Jet(0.0, x.order()); };
  const MetricField degenerate =
      MetricField::from_components({one, one, zero, one, zero, one}, ChartDomain::everywhere());
  CHECK_FALSE(degenerate.positive_definite_at({0, 0, 0}));
  const auto dx = VectorField::coordinate_basis(0);
  try {
    levi_civita(degenerate, dx, dx, {0, 0, 0});
    FAIL("expected SingularMetric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMetric);
  }
}

TEST_CASE("property: metric compatibility and torsion freeness") {
  const MetricField g = wavy_metric();
  const auto fields = test_fields();
  for (const Point3& p : random_points(15, 21)) {
    const JetMatrix gj = g(p, 1);
    const JetMatrix ginv = local::inverse(gj);
    for (std::size_t a = 0; a < fields.size(); ++a) {
      for (std::size_t b = 0; b < fields.size(); ++b) {
        const JetVector X = fields[a](p, 1), Y = fields[b](p, 1);
        const JetVector Z = fields[(a + b + 1) % fields.size()](p, 1);
        const double lhs = local::apply(X, local::inner(gj, Y, Z)).value();
        const double rhs = local::inner(gj, local::covariant(gj, ginv, X, Y), Z).value() +
                           local::inner(gj, Y, local::covariant(gj, ginv, X, Z)).value();
        CHECK(std::abs(lhs - rhs) < 1e-8);

        const JetVector xy = local::covariant(gj, ginv, X, Y);
        const JetVector yx = local::covariant(gj, ginv, Y, X);
        const JetVector br = local::bracket(X, Y);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(xy[k].value() - yx[k].value() - br[k].value()) < 1e-8);
      }
    }
  }
}

TEST_CASE("property: curvature symmetries and first Bianchi identity") {
  const MetricField g = wavy_metric();
  const auto f = test_fields();
  for (const Point3& p : random_points(5, 33)) {
    const double R = curvature_scalar(g, f[0], f[1], f[2], f[3], p);
    CHECK(std::abs(R + curvature_scalar(g, f[1], f[0], f[2], f[3], p)) < 1e-8);
    CHECK(std::abs(R + curvature_scalar(g, f[0], f[1], f[3], f[2], p)) < 1e-8);
    CHECK(std::abs(R - curvature_scalar(g, f[2], f[3], f[0], f[1], p)) < 1e-8);

    const Vector3 a = curvature(g, f[0], f[1], f[2], p);
    const Vector3 b = curvature(g, f[1], f[2], f[0], p);
    const Vector3 c = curvature(g, f[2], f[0], f[1], p);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] + b[k] + c[k]) < 1e-8);
  }
}
