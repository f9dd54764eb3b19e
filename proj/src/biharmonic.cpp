#include "biharm/biharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "biharm/error.hpp"

namespace biharm {
namespace {

// Everything at a point that the residuals and identities need: the frame
// and data at order 2 and the metric at order 2.
struct PointJets {
  FrameTriple::Jets e;
  IntegrabilityData::Jets d;
  JetMatrix g;
  JetMatrix ginv;
};

PointJets expand(const FrameTriple& frame, const IntegrabilityData& data, const MetricField& g,
                 const Point3& p) {
  PointJets j{frame(p, 2), data(p, 2), g(p, 2), {}};
  j.ginv = local::inverse(j.g);
  return j;
}

const Jet& component(const PointJets& j, DataComponent c) { return j.d[static_cast<std::size_t>(c)]; }

double along(const PointJets& j, int i, DataComponent c) {
  return local::apply(j.e[static_cast<std::size_t>(i)], component(j, c)).value();
}

Jet gauss_jet(const PointJets& j) {
  const Jet& f1 = component(j, DataComponent::F1);
  const Jet& f2 = component(j, DataComponent::F2);
  const Jet& f3 = component(j, DataComponent::F3);
  const Jet& sigma = component(j, DataComponent::Sigma);
  Jet k = local::apply(j.e[0], f2) - local::apply(j.e[1], f1);
  k -= f1 * f1 + f2 * f2 - 2.0 * f3 * sigma;
  return k;
}

Residuals residuals(const PointJets& j, double adapted_tol) {
  const double f3 = component(j, DataComponent::F3).value();
  if (std::abs(f3) > adapted_tol) {
    throw Error(ErrorKind::NotAdapted, "|f3| = " + format_number(std::abs(f3)) +
                                           " exceeds " + format_number(adapted_tol));
  }
  const double f[2] = {component(j, DataComponent::F1).value(),
                       component(j, DataComponent::F2).value()};
  const DataComponent fc[2] = {DataComponent::F1, DataComponent::F2};
  const double k[2] = {component(j, DataComponent::Kappa1).value(),
                       component(j, DataComponent::Kappa2).value()};
  const double K = gauss_jet(j).value();

  const double lap1 = local::laplacian(j.g, j.ginv, j.e, component(j, DataComponent::Kappa1));
  const double lap2 = local::laplacian(j.g, j.ginv, j.e, component(j, DataComponent::Kappa2));

  double f_dk1 = 0.0, f_dk2 = 0.0, div = 0.0, fsq = 0.0;
  for (int i = 0; i < 2; ++i) {
    f_dk1 += f[i] * along(j, i, DataComponent::Kappa1);
    f_dk2 += f[i] * along(j, i, DataComponent::Kappa2);
    div += along(j, i, fc[i]) - k[i] * f[i];
    fsq += f[i] * f[i];
  }
  Residuals r;
  r.r1 = -lap1 - 2.0 * f_dk2 - k[1] * div + k[0] * (fsq - K);
  r.r2 = -lap2 + 2.0 * f_dk1 + k[0] * div + k[1] * (fsq - K);
  return r;
}

std::array<double, 3> jacobi(const PointJets& j) {
  using C = DataComponent;
  const double f1 = component(j, C::F1).value(), f2 = component(j, C::F2).value();
  const double f3 = component(j, C::F3).value();
  const double k1 = component(j, C::Kappa1).value(), k2 = component(j, C::Kappa2).value();
  return {
      along(j, 2, C::F1) + (k1 + f2) * f3 - along(j, 0, C::F3),
      along(j, 2, C::F2) + (k2 - f1) * f3 - along(j, 1, C::F3),
      2.0 * along(j, 2, C::Sigma) + k1 * f1 + k2 * f2 + along(j, 1, C::Kappa1) -
          along(j, 0, C::Kappa2),
  };
}

CurvatureSides sides(const PointJets& j) {
  using C = DataComponent;
  const double f1 = component(j, C::F1).value(), f2 = component(j, C::F2).value();
  const double f3 = component(j, C::F3).value(), s = component(j, C::Sigma).value();
  const double k1 = component(j, C::Kappa1).value(), k2 = component(j, C::Kappa2).value();

  CurvatureSides out;
  out.from_data = {
      -along(j, 0, C::Sigma) + 2.0 * k1 * s,
      along(j, 0, C::Kappa1) + s * s - k1 * k1 + k2 * f1,
      along(j, 0, C::Kappa2) - along(j, 2, C::Sigma) - k1 * f1 - k1 * k2,
      along(j, 0, C::F2) - along(j, 1, C::F1) - f1 * f1 - f2 * f2 + 2.0 * f3 * s - 3.0 * s * s,
      -along(j, 1, C::Sigma) + 2.0 * k2 * s,
      along(j, 1, C::Kappa1) + along(j, 2, C::Sigma) + k2 * f2 - k1 * k2,
      s * s + along(j, 1, C::Kappa2) - k1 * f2 - k2 * k2,
  };
  constexpr int slots[7][4] = {{0, 2, 0, 1}, {0, 2, 0, 2}, {0, 2, 1, 2}, {0, 1, 0, 1},
                               {0, 1, 1, 2}, {1, 2, 0, 2}, {1, 2, 1, 2}};
  for (std::size_t n = 0; n < 7; ++n) {
    const auto& s4 = slots[n];
    out.from_metric[n] = local::curvature_tensor(j.g, j.ginv, j.e[s4[0]], j.e[s4[1]], j.e[s4[2]],
                                                 j.e[s4[3]])
                             .value();
  }
  return out;
}

std::array<double, 7> difference(const CurvatureSides& s) {
  std::array<double, 7> r{};
  for (std::size_t n = 0; n < 7; ++n) r[n] = s.from_data[n] - s.from_metric[n];
  return r;
}

double fiber(const PointJets& j) { return local::apply(j.e[2], gauss_jet(j)).value(); }

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double scale = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= static_cast<double>(base);
  }
  return result;
}

double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double max_abs(const auto& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Harmonic: return "harmonic";
    case Verdict::ProperBiharmonicCandidate: return "proper_biharmonic_candidate";
    case Verdict::NotBiharmonic: return "not_biharmonic";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Harmonic, Verdict::ProperBiharmonicCandidate, Verdict::NotBiharmonic,
                    Verdict::Inconclusive}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorKind::ParseError, "unknown verdict '" + s + "'");
}

Residuals biharmonic_residual(const SubmersionSpec& spec, const FrameTriple& frame,
                              const IntegrabilityData& data, const Point3& p, double adapted_tol) {
  return residuals(expand(frame, data, spec.metric, p), adapted_tol);
}

std::array<double, 3> jacobi_residuals(const FrameTriple& frame, const IntegrabilityData& data,
                                       const MetricField& g, const Point3& p) {
  return jacobi(expand(frame, data, g, p));
}

CurvatureSides curvature_sides(const FrameTriple& frame, const IntegrabilityData& data,
                               const MetricField& g, const Point3& p) {
  return sides(expand(frame, data, g, p));
}

std::array<double, 7> rc_residuals(const FrameTriple& frame, const IntegrabilityData& data,
                                   const MetricField& g, const Point3& p) {
  return difference(curvature_sides(frame, data, g, p));
}

double fiber_constancy_residual(const FrameTriple& frame, const IntegrabilityData& data,
                                const Point3& p) {
  const IntegrabilityData::Jets d = data(p, 2);
  const FrameTriple::Jets e = frame(p, 2);
  PointJets j{e, d, {}, {}};
  return fiber(j);
}

std::vector<Point3> sample_points(const SamplePlan& plan, const ChartDomain& domain) {
  std::mt19937_64 gen(plan.seed);
  const double shift[3] = {unit_double(gen), unit_double(gen), unit_double(gen)};
  constexpr std::uint64_t bases[3] = {2, 3, 5};
  const std::size_t max_attempts = 1000 * std::max<std::size_t>(plan.count, 1);

  std::vector<Point3> points;
  points.reserve(plan.count);
  for (std::uint64_t n = 1; points.size() < plan.count; ++n) {
    if (n > max_attempts) {
      throw Error(ErrorKind::OutOfDomain,
                  "sample region misses the domain: " + std::to_string(points.size()) + " of " +
                      std::to_string(plan.count) + " points accepted");
    }
    Point3 p;
    for (int k = 0; k < 3; ++k) {
      double t = radical_inverse(n, bases[k]) + shift[k];
      t -= std::floor(t);
      const double lo = plan.lo[k], hi = plan.hi[k];
      const double c = lo + t * (hi - lo);
      if (k == 0) p.x = c;
      if (k == 1) p.y = c;
      if (k == 2) p.z = c;
    }
    if (plan.region.margin(p) >= plan.margin && domain.margin(p) >= plan.margin) {
      points.push_back(p);
    }
  }
  return points;
}

Verdict decide_verdict(double max_tension, double max_abs_residual, const Tolerances& tol) {
  if (max_tension < tol.harmonic) return Verdict::Harmonic;
  if (max_abs_residual < tol.biharmonic) return Verdict::ProperBiharmonicCandidate;
  if (max_abs_residual >= tol.margin_factor * tol.biharmonic) return Verdict::NotBiharmonic;
  return Verdict::Inconclusive;
}

PointRecord analyze_point(const SubmersionSpec& spec, const FrameTriple& frame,
                          const IntegrabilityData& data, const Point3& p, const Tolerances& tol) {
  const PointJets j = expand(frame, data, spec.metric, p);
  PointRecord rec;
  rec.point = p;
  const Residuals r = residuals(j, tol.adapted);
  rec.r1 = r.r1;
  rec.r2 = r.r2;
  rec.tension = tension(spec, frame, p).norm;
  rec.K_N = gauss_jet(j).value();
  rec.jacobi = jacobi(j);
  rec.rc = difference(sides(j));
  rec.fiber = fiber(j);
  return rec;
}

BiharmonicReport classify_map(const SubmersionSpec& spec, const SamplePlan& plan,
                              const Tolerances& tol) {
  return classify_map(spec, build_frame(spec), plan, tol);
}

BiharmonicReport classify_map(const SubmersionSpec& spec, const FrameTriple& frame,
                              const SamplePlan& plan, const Tolerances& tol) {
  const std::vector<Point3> points = sample_points(plan, spec.metric.domain());

  double worst_deviation = 0.0;
  for (const Point3& p : points) {
    worst_deviation = std::max(worst_deviation, is_riemannian_submersion(spec, p).deviation);
  }
  if (worst_deviation > tol.submersion) {
    throw Error(ErrorKind::InvalidSubmersion,
                "horizontal isometry deviation " + format_number(worst_deviation) +
                    " exceeds " + format_number(tol.submersion));
  }

  const IntegrabilityData data = integrability_data(frame, spec.metric);
  BiharmonicReport report;
  report.points.reserve(points.size());
  std::vector<double> abs_r, tensions;
  Aggregate& agg = report.aggregate;
  agg.max_submersion_deviation = worst_deviation;
  for (const Point3& p : points) {
    PointRecord rec = analyze_point(spec, frame, data, p, tol);
    agg.max_abs_r1 = std::max(agg.max_abs_r1, std::abs(rec.r1));
    agg.max_abs_r2 = std::max(agg.max_abs_r2, std::abs(rec.r2));
    agg.max_tension = std::max(agg.max_tension, rec.tension);
    agg.max_jacobi = std::max(agg.max_jacobi, max_abs(rec.jacobi));
    agg.max_rc = std::max(agg.max_rc, max_abs(rec.rc));
    agg.max_fiber = std::max(agg.max_fiber, std::abs(rec.fiber));
    abs_r.push_back(std::max(std::abs(rec.r1), std::abs(rec.r2)));
    tensions.push_back(rec.tension);
    report.points.push_back(rec);
  }
  agg.median_abs_r = median(abs_r);
  agg.median_tension = median(tensions);
  agg.verdict =
      decide_verdict(agg.max_tension, std::max(agg.max_abs_r1, agg.max_abs_r2), tol);
  return report;
}

}  // namespace biharm
