#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biharm/error.hpp"
#include "biharm/jet.hpp"
#include "support/finite_difference.hpp"

using namespace biharm;
using biharm::testing::richardson_derivative;

namespace {

std::vector<MultiIndex> indices_up_to(int order) {
  std::vector<MultiIndex> out;
  for (std::size_t n = 0; n < coefficient_count(order); ++n) out.push_back(jet_multi_index(n));
  return out;
}

Jet random_jet(std::mt19937_64& gen, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet a(0.0, order);
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = u(gen);
  return a;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

TEST_CASE("lift_coordinate seeds one unit slope") {
  const Jet x = lift_coordinate(0, {2, 5, 7}, 3);
  CHECK(x.value() == 2.0);
  CHECK(extract(x, {1, 0, 0}) == 1.0);
  for (const auto& a : indices_up_to(3)) {
    if (a.degree() == 0 || a == MultiIndex{1, 0, 0}) continue;
    CHECK(extract(x, a) == 0.0);
  }

  const Jet z = lift_coordinate(2, {0, 0, 0}, 1);
  CHECK(z.order() == 1);
  CHECK(z.value() == 0.0);
  CHECK(extract(z, {0, 0, 1}) == 1.0);

  const Point3 p{1, 2, 3};
  const Jet s = lift_coordinate(0, p) + lift_coordinate(1, p) + lift_coordinate(2, p);
  CHECK(s.value() == 6.0);
  CHECK(s.gradient() == std::array<double, 3>{1.0, 1.0, 1.0});
}

TEST_CASE("arithmetic examples") {
  const Jet x = Jet::variable(0, {3, 0, 0});
  const Jet sq = x * x;
  CHECK(sq.value() == 9.0);
  CHECK(extract(sq, {1, 0, 0}) == 6.0);
  CHECK(extract(sq, {2, 0, 0}) == 2.0);
  CHECK(sq.coefficient({2, 0, 0}) == 1.0);

  const Jet r = recip(Jet::variable(1, {0, 2, 0}));
  CHECK(r.value() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(extract(r, {0, 1, 0}) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(r.coefficient({0, 2, 0}) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(extract(r, {0, 2, 0}) == doctest::Approx(0.25).epsilon(1e-15));

  const Point3 p{2, 3, 0};
  const Jet xy = Jet::variable(0, p) * Jet::variable(1, p);
  CHECK(extract(xy, {1, 1, 0}) == 1.0);

  CHECK(extract(Jet::constant(5.0), {0, 0, 0}) == 5.0);

  const Point3 q{0.5, 0.5, 0};
  const Jet X = Jet::variable(0, q), Y = Jet::variable(1, q);
  const Jet F = 1.0 + -1.0 * (X * X + Y * Y);
  CHECK(extract(F, {2, 0, 0}) == -2.0);
}

TEST_CASE("exp matches Richardson central differences") {
  const Point3 p{0.0, 0.3, 0.0};
  const Jet e = exp(2.0 * Jet::variable(1, p));
  const auto f = [](double, double y, double) { return std::exp(2.0 * y); };
  for (int n = 1; n <= 3; ++n) {
    const MultiIndex a{0, n, 0};
    const double fd = richardson_derivative(f, p, a);
    CHECK(std::abs(extract(e, a) - fd) <= 1e-6 * std::abs(fd));
  }
}

TEST_CASE("elementary functions agree with their closed-form derivatives") {
  const Point3 p{0.4, -0.2, 0.7};
  const Jet x = Jet::variable(0, p);
  CHECK(extract(sin(x), {3, 0, 0}) == doctest::Approx(-std::cos(0.4)).epsilon(1e-14));
  CHECK(extract(cos(x), {2, 0, 0}) == doctest::Approx(-std::cos(0.4)).epsilon(1e-14));
  CHECK(extract(sqrt(x), {2, 0, 0}) == doctest::Approx(-0.25 * std::pow(0.4, -1.5)).epsilon(1e-13));
  CHECK(extract(powi(x, 3), {3, 0, 0}) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(extract(powi(x, -1), {1, 0, 0}) == doctest::Approx(-1.0 / 0.16).epsilon(1e-14));
}

TEST_CASE("errors") {
  const Jet zero = Jet::variable(0, {0, 1, 1});
  CHECK_THROWS_AS(recip(zero), Error);
  try {
    recip(zero);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZeroAtPoint);
  }
  try {
    sqrt(Jet::variable(0, {-1, 0, 0}));
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
  try {
    extract(Jet::variable(0, {1, 1, 1}, 2), {2, 1, 0});
    FAIL("expected IndexOutOfOrder");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfOrder);
  }
  try {
    exp(Jet::variable(0, {800, 0, 0}));
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("constant lift and order handling") {
  const Jet c = Jet::constant(2.5, 4);
  CHECK(c.order() == 4);
  CHECK(c.size() == 35);
  for (std::size_t n = 1; n < c.size(); ++n) CHECK(c[n] == 0.0);

  const Point3 p{1, 2, 3};
  const Jet a = Jet::variable(0, p, 3), b = Jet::variable(1, p, 2);
  CHECK((a * b).order() == 2);
  CHECK((a + b).order() == 2);
  CHECK(a.partial(0).order() == 2);
  CHECK(a.truncated(1).order() == 1);
}

TEST_CASE("graded index round trip") {
  for (std::size_t n = 0; n < kMaxJetCoefficients; ++n) CHECK(jet_index(jet_multi_index(n)) == n);
}

TEST_CASE("property: product rule on random jets") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Jet a = random_jet(gen, 3), b = random_jet(gen, 3);
    const Jet ab = a * b;
    for (const MultiIndex d : {MultiIndex{1, 0, 0}, MultiIndex{0, 1, 0}, MultiIndex{0, 0, 1}}) {
      const double expected = extract(a, d) * b.value() + a.value() * extract(b, d);
      CHECK(close_rel(extract(ab, d), expected, 1e-12));
    }
  }
}

TEST_CASE("property: add and mul are associative and commutative") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Jet a = random_jet(gen, 3), b = random_jet(gen, 3), c = random_jet(gen, 3);
    const Jet s1 = (a + b) + c, s2 = a + (b + c), s3 = b + a + c;
    const Jet m1 = (a * b) * c, m2 = a * (b * c), m3 = c * b * a;
    for (std::size_t n = 0; n < a.size(); ++n) {
      CHECK(std::abs(s1[n] - s2[n]) <= 1e-14 * 4);
      CHECK(std::abs(s1[n] - s3[n]) <= 1e-14 * 4);
      CHECK(std::abs(m1[n] - m2[n]) <= 1e-14 * 16);
      CHECK(std::abs(m1[n] - m3[n]) <= 1e-14 * 16);
    }
  }
}

TEST_CASE("property: chain rule against finite differences on random points") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto field = [](const auto& x, const auto& y, const auto& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    return exp(0.5 * x * y) * sin(z + 0.3) + sqrt(2.0 + x * x) / (1.5 + cos(y));
  };
  const auto f = [&](double x, double y, double z) { return field(x, y, z); };
  for (int trial = 0; trial < 10; ++trial) {
    const Point3 p{u(gen), u(gen), u(gen)};
    const Jet j = field(Jet::variable(0, p), Jet::variable(1, p), Jet::variable(2, p));
    for (const auto& a : indices_up_to(3)) {
      const double fd = richardson_derivative(f, p, a);
      CHECK(std::abs(extract(j, a) - fd) <= 1e-4 * std::max(std::abs(fd), 1e-3));
    }
  }
}
