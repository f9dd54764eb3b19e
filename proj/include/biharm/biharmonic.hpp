// Pointwise biharmonicity test for Riemannian submersions with
// one-dimensional fibers, plus the structural identities satisfied by the
// integrability data of any frame with vertical e3.
//
// With an adapted frame and data (f1, f2, kappa1, kappa2, sigma) the map is
// biharmonic iff r1 = r2 = 0, where (sums over i = 1, 2)
//
//   r1 = -Lap kappa1 - 2 sum f_i e_i(kappa2) - kappa2 sum (e_i(f_i) - kappa_i f_i)
//        + kappa1 (-K^N + sum f_i^2)
//   r2 = -Lap kappa2 + 2 sum f_i e_i(kappa1) + kappa1 sum (e_i(f_i) - kappa_i f_i)
//        + kappa2 (-K^N + sum f_i^2)
//
// and K^N = e1(f2) - e2(f1) - f1^2 - f2^2 is the Gauss curvature of the base.
// Verdicts are certificates over a finite sample, not proofs.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "biharm/submersion.hpp"

namespace biharm {

enum class Verdict { Harmonic, ProperBiharmonicCandidate, NotBiharmonic, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Tolerances {
  double harmonic = 1e-7;    // tol_h on the tension norm
  double biharmonic = 1e-6;  // tol_b on max(|r1|, |r2|)
  double margin_factor = 10.0;
  double submersion = 1e-9;
  double adapted = 1e-8;  // bound on |f3| for the residual formula
};

struct Residuals {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Throws NotAdapted when |f3| exceeds `adapted_tol`.
Residuals biharmonic_residual(const SubmersionSpec& spec, const FrameTriple& frame,
                              const IntegrabilityData& data, const Point3& p,
                              double adapted_tol = 1e-8);

std::array<double, 3> jacobi_residuals(const FrameTriple& frame, const IntegrabilityData& data,
                                       const MetricField& g, const Point3& p);

/// The seven curvature components written in integrability data, next to
/// the same components computed from the metric, in the order
/// R(e1,e3,e1,e2), R(e1,e3,e1,e3), R(e1,e3,e2,e3), R(e1,e2,e1,e2),
/// R(e1,e2,e2,e3), R(e2,e3,e1,e3), R(e2,e3,e2,e3).
struct CurvatureSides {
  std::array<double, 7> from_data{};
  std::array<double, 7> from_metric{};
};

CurvatureSides curvature_sides(const FrameTriple& frame, const IntegrabilityData& data,
                               const MetricField& g, const Point3& p);
std::array<double, 7> rc_residuals(const FrameTriple& frame, const IntegrabilityData& data,
                                   const MetricField& g, const Point3& p);

/// e3(K^N): the base curvature must be constant along the fibers.
double fiber_constancy_residual(const FrameTriple& frame, const IntegrabilityData& data,
                                const Point3& p);

/// Deterministic low-discrepancy sample: a Halton sequence in `lo`..`hi`
/// with a seeded random shift, keeping only points at least `margin`
/// inside both `region` and the metric's chart domain.
struct SamplePlan {
  std::size_t count = 50;
  std::uint64_t seed = 1;
  Point3 lo{-1.0, -1.0, -1.0};
  Point3 hi{1.0, 1.0, 1.0};
  ChartDomain region = ChartDomain::everywhere();
  double margin = 1e-3;
};

std::vector<Point3> sample_points(const SamplePlan& plan, const ChartDomain& domain);

struct PointRecord {
  Point3 point;
  double r1 = 0.0;
  double r2 = 0.0;
  double tension = 0.0;
  double K_N = 0.0;
  std::array<double, 3> jacobi{};
  std::array<double, 7> rc{};
  double fiber = 0.0;
};

struct Aggregate {
  double max_abs_r1 = 0.0;
  double max_abs_r2 = 0.0;
  double median_abs_r = 0.0;
  double max_tension = 0.0;
  double median_tension = 0.0;
  double max_jacobi = 0.0;
  double max_rc = 0.0;
  double max_fiber = 0.0;
  double max_submersion_deviation = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct BiharmonicReport {
  std::vector<PointRecord> points;
  Aggregate aggregate;
};

Verdict decide_verdict(double max_tension, double max_abs_residual, const Tolerances& tol);

PointRecord analyze_point(const SubmersionSpec& spec, const FrameTriple& frame,
                          const IntegrabilityData& data, const Point3& p,
                          const Tolerances& tol = {});

/// Throws InvalidSubmersion (with the worst deviation) if the map fails the
/// horizontal isometry test at a sampled point.
BiharmonicReport classify_map(const SubmersionSpec& spec, const SamplePlan& plan,
                              const Tolerances& tol = {});
/// Same, with a caller-supplied frame in place of build_frame(spec).
BiharmonicReport classify_map(const SubmersionSpec& spec, const FrameTriple& frame,
                              const SamplePlan& plan, const Tolerances& tol = {});

}  // namespace biharm
