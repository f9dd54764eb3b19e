#include "biharm/submersion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biharm/error.hpp"

namespace biharm {
namespace {

constexpr double kStructureTolerance = 1e-8;

std::array<Jet, 3> lift_point(const Point3& p, int order) {
  return {Jet::variable(0, p, order), Jet::variable(1, p, order), Jet::variable(2, p, order)};
}

Jet cut(const Jet& a, int order) { return a.order() > order ? a.truncated(order) : a; }

JetVector cross(const JetVector& a, const JetVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double value_norm(const JetVector& v) {
  return std::sqrt(v[0].value() * v[0].value() + v[1].value() * v[1].value() +
                   v[2].value() * v[2].value());
}

std::string describe(const Point3& p) {
  return "(" + format_number(p.x) + ", " + format_number(p.y) + ", " + format_number(p.z) +
         ")";
}

// Map components and their differentials at p, at the given differential order.
struct MapJets {
  std::array<Jet, 2> value;       // order + 1, used for composing base fields
  std::array<JetVector, 2> rows;  // d pi^a as covectors, at `order`
};

MapJets map_jets(const SubmersionSpec& spec, const Point3& p, int order) {
  if (order + 1 > kMaxJetOrder) {
    throw Error(ErrorKind::IndexOutOfOrder,
                "frame order " + std::to_string(order) + " exceeds the jet budget");
  }
  const auto x = lift_point(p, order + 1);
  MapJets m;
  for (int a = 0; a < 2; ++a) {
    m.value[a] = spec.map[static_cast<std::size_t>(a)](x[0], x[1], x[2]);
    for (int i = 0; i < 3; ++i) m.rows[a][i] = m.value[a].partial(i);
  }
  return m;
}

JetVector vertical_jets(const JetMatrix& g, const MapJets& m, const Point3& p) {
  JetVector v = cross(m.rows[0], m.rows[1]);
  const double scale = value_norm(m.rows[0]) * value_norm(m.rows[1]);
  if (!(value_norm(v) > 1e-10 * scale) || scale == 0.0) {
    throw Error(ErrorKind::RankDeficient, "d pi has rank < 2 at " + describe(p));
  }
  const Jet inv_norm = recip(sqrt(local::inner(g, v, v)));
  std::size_t lead = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(v[i].value()) > std::abs(v[lead].value())) lead = i;
  }
  const Jet s = v[lead].value() < 0.0 ? -inv_norm : inv_norm;
  for (auto& c : v) c = c * s;
  return v;
}

// g^-1 d pi^a for a = 1, 2: a basis of the horizontal space.
std::array<JetVector, 2> horizontal_basis(const JetMatrix& ginv, const MapJets& m) {
  return {local::multiply(ginv, m.rows[0]), local::multiply(ginv, m.rows[1])};
}

Jet dot(const JetVector& a, const JetVector& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void require_base_domain(const SubmersionSpec& spec, double u, double v) {
  const Point3 q{u, v, 0.0};
  if (!spec.base_metric.domain.contains(q)) {
    throw Error(ErrorKind::OutOfDomain,
                "image point (" + format_number(u) + ", " + format_number(v) + ") outside " +
                    spec.base_metric.domain.description);
  }
}

}  // namespace

PlaneFrame gram_schmidt_frame(const PlaneMetric& h) {
  const PlaneFunction h11 = h.h11, h12 = h.h12, h22 = h.h22;
  PlaneFrame f;
  f[0][0] = [h11](const Jet& u, const Jet& v) { return recip(sqrt(h11(u, v))); };
  f[0][1] = [](const Jet& u, const Jet&) { return Jet(0.0, u.order()); };
  // eta2 = (d_v - (h12/h11) d_u) / sqrt(h22 - h12^2/h11)
  f[1][0] = [=](const Jet& u, const Jet& v) {
    const Jet a = h11(u, v), b = h12(u, v), c = h22(u, v);
    return -(b / a) * recip(sqrt(c - b * b / a));
  };
  f[1][1] = [=](const Jet& u, const Jet& v) {
    const Jet a = h11(u, v), b = h12(u, v), c = h22(u, v);
    return recip(sqrt(c - b * b / a));
  };
  return f;
}

Matrix23 differential(const SubmersionSpec& spec, const Point3& p) {
  if (!spec.metric.domain().contains(p)) {
    throw Error(ErrorKind::OutOfDomain, "point " + describe(p) + " outside " +
                                            spec.metric.domain().description);
  }
  const MapJets m = map_jets(spec, p, 0);
  Matrix23 d{};
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 3; ++i) d[a][i] = m.rows[a][i].value();
  return d;
}

Vector3 vertical_direction(const SubmersionSpec& spec, const Point3& p) {
  const JetMatrix g = spec.metric(p, 0);
  const JetVector v = vertical_jets(g, map_jets(spec, p, 0), p);
  return {v[0].value(), v[1].value(), v[2].value()};
}

SubmersionCheck is_riemannian_submersion(const SubmersionSpec& spec, const Point3& p, double tol) {
  const JetMatrix g = spec.metric(p, 0);
  const MapJets m = map_jets(spec, p, 0);
  vertical_jets(g, m, p);  // rank check
  auto W = horizontal_basis(local::inverse(g), m);
  // Gram-Schmidt in g.
  const Jet n0 = sqrt(local::inner(g, W[0], W[0]));
  for (auto& c : W[0]) c = c / n0;
  const Jet proj = local::inner(g, W[1], W[0]);
  for (int i = 0; i < 3; ++i) W[1][i] = W[1][i] - proj * W[0][i];
  const Jet n1 = sqrt(local::inner(g, W[1], W[1]));
  for (auto& c : W[1]) c = c / n1;

  require_base_domain(spec, m.value[0].value(), m.value[1].value());
  const Jet u = cut(m.value[0], 0), v = cut(m.value[1], 0);
  const Jet h11 = spec.base_metric.h11(u, v), h12 = spec.base_metric.h12(u, v),
            h22 = spec.base_metric.h22(u, v);
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pa0 = dot(m.rows[0], W[a]).value(), pa1 = dot(m.rows[1], W[a]).value();
      const double pb0 = dot(m.rows[0], W[b]).value(), pb1 = dot(m.rows[1], W[b]).value();
      const double h = h11.value() * pa0 * pb0 + h12.value() * (pa0 * pb1 + pa1 * pb0) +
                       h22.value() * pa1 * pb1;
      const double gab = local::inner(g, W[a], W[b]).value();
      worst = std::max(worst, std::abs(h - gab));
    }
  }
  return {worst <= tol, worst};
}

FrameTriple build_frame(const SubmersionSpec& spec) {
  return FrameTriple(
      [spec](const Point3& p, int order) {
        const MapJets m = map_jets(spec, p, order);
        const JetMatrix g = spec.metric(p, order);
        const JetMatrix ginv = local::inverse(g);
        const JetVector e3 = vertical_jets(g, m, p);
        const auto W = horizontal_basis(ginv, m);

        require_base_domain(spec, m.value[0].value(), m.value[1].value());
        const Jet u = cut(m.value[0], order), v = cut(m.value[1], order);

        // G = d pi g^-1 d pi^T, symmetric 2x2.
        const Jet G00 = dot(m.rows[0], W[0]);
        const Jet G01 = dot(m.rows[0], W[1]);
        const Jet G11 = dot(m.rows[1], W[1]);
        const Jet inv_det = recip(G00 * G11 - G01 * G01);

        FrameTriple::Jets e;
        for (int a = 0; a < 2; ++a) {
          const Jet eta_u = cut(spec.base_frame[a][0](u, v), order);
          const Jet eta_v = cut(spec.base_frame[a][1](u, v), order);
          const Jet c0 = (G11 * eta_u - G01 * eta_v) * inv_det;
          const Jet c1 = (G00 * eta_v - G01 * eta_u) * inv_det;
          for (int i = 0; i < 3; ++i) e[a][i] = W[0][i] * c0 + W[1][i] * c1;
        }
        e[2] = e3;
        return e;
      },
      FrameKind::Adapted);
}

IntegrabilityValues IntegrabilityData::values(const Point3& p) const {
  const Jets d = eval_(p, 0);
  return {d[0].value(), d[1].value(), d[2].value(), d[3].value(), d[4].value(), d[5].value()};
}

ScalarField IntegrabilityData::field(DataComponent c) const {
  return ScalarField([eval = eval_, c](const Point3& p, int order) {
    return eval(p, order)[static_cast<std::size_t>(c)];
  });
}

IntegrabilityData IntegrabilityData::perturbed(DataComponent c, ScalarField delta) const {
  return IntegrabilityData([eval = eval_, c, delta = std::move(delta)](const Point3& p, int order) {
    Jets d = eval(p, order);
    auto& slot = d[static_cast<std::size_t>(c)];
    slot = slot + delta(p, order);
    return d;
  });
}

IntegrabilityData integrability_data(FrameTriple frame, MetricField g) {
  return IntegrabilityData([frame = std::move(frame), g = std::move(g)](const Point3& p,
                                                                         int order) {
    const FrameTriple::Jets e = frame(p, order + 1);
    const JetMatrix gj = g(p, order);
    const JetVector b12 = local::bracket(e[0], e[1]);
    const JetVector b13 = local::bracket(e[0], e[2]);
    const JetVector b23 = local::bracket(e[1], e[2]);
    auto ip = [&](const JetVector& a, const JetVector& b) { return local::inner(gj, a, b); };

    IntegrabilityData::Jets d;
    d[0] = ip(b12, e[0]);
    d[1] = ip(b12, e[1]);
    d[2] = ip(b13, e[1]);
    d[3] = ip(b13, e[2]);
    d[4] = ip(b23, e[2]);
    d[5] = ip(b12, e[2]) * -0.5;

    const double r13 = ip(b13, e[0]).value();
    const double r23 = ip(b23, e[1]).value();
    const double r231 = ip(b23, e[0]).value() + d[2].value();
    const double worst = std::max({std::abs(r13), std::abs(r23), std::abs(r231)});
    if (worst > kStructureTolerance) {
      throw Error(ErrorKind::StructureViolation,
                  "bracket decomposition residual " + format_number(worst) + " at " +
                      describe(p));
    }
    return d;
  });
}

Tension tension(const SubmersionSpec& spec, const FrameTriple& frame, const Point3& p) {
  const JetMatrix g = spec.metric(p, 1);
  const FrameTriple::Jets e = frame(p, 1);
  const JetVector nabla = local::covariant(g, local::inverse(g), e[2], e[2]);
  const MapJets m = map_jets(spec, p, 0);
  // d pi(-nabla_{e3} e3) in base coordinates.
  std::array<double, 2> w{};
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 3; ++i) w[a] -= m.rows[a][i].value() * nabla[i].value();
  }
  require_base_domain(spec, m.value[0].value(), m.value[1].value());
  const Jet u = cut(m.value[0], 0), v = cut(m.value[1], 0);
  const double h11 = spec.base_metric.h11(u, v).value();
  const double h12 = spec.base_metric.h12(u, v).value();
  const double h22 = spec.base_metric.h22(u, v).value();
  std::array<std::array<double, 2>, 2> eta{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) eta[a][b] = spec.base_frame[a][b](u, v).value();
  auto h = [&](const std::array<double, 2>& x, const std::array<double, 2>& y) {
    return h11 * x[0] * y[0] + h12 * (x[0] * y[1] + x[1] * y[0]) + h22 * x[1] * y[1];
  };
  Tension t;
  t.components = {h(w, eta[0]), h(w, eta[1])};
  t.norm = std::sqrt(std::max(0.0, h(w, w)));
  return t;
}

Jet base_gauss_curvature_jet(const IntegrabilityData& data, const FrameTriple& frame,
                             const Point3& p, int order) {
  const IntegrabilityData::Jets d = data(p, order + 1);
  const FrameTriple::Jets e = frame(p, order + 1);
  const Jet& f1 = d[0];
  const Jet& f2 = d[1];
  const Jet& f3 = d[2];
  const Jet& sigma = d[5];
  Jet k = local::apply(e[0], f2) - local::apply(e[1], f1);
  k -= f1 * f1 + f2 * f2 - 2.0 * f3 * sigma;
  return k;
}

double base_gauss_curvature(const IntegrabilityData& data, const FrameTriple& frame,
                            const Point3& p) {
  return base_gauss_curvature_jet(data, frame, p, 0).value();
}

double base_curvature_direct(const SubmersionSpec& spec, const Point3& p) {
  const MapJets m = map_jets(spec, p, 0);
  const Point3 q{m.value[0].value(), m.value[1].value(), 0.0};
  const MetricField h = product_with_line(spec.base_metric);
  const PlaneFrame eta = spec.base_frame;
  auto lifted = [&eta](int a) {
    return VectorField([eta, a](const Point3& at, int order) {
      const Jet u = Jet::variable(0, at, std::max(order, 1));
      const Jet v = Jet::variable(1, at, std::max(order, 1));
      return JetVector{cut(eta[a][0](u, v), order), cut(eta[a][1](u, v), order),
                       Jet(0.0, order)};
    });
  };
  const VectorField e1 = lifted(0), e2 = lifted(1);
  return curvature_scalar(h, e1, e2, e1, e2, q);
}

}  // namespace biharm
