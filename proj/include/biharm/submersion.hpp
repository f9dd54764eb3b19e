// Candidate Riemannian submersions pi: (M^3, g) -> (N^2, h) and their
// adapted frames.
//
// The frame at a point is built from jets of the map: e3 spans ker(d pi)
// (the cross product of the two component differentials, normalized in g),
// and e1, e2 are the horizontal lifts of a base orthonormal frame
// (eta1, eta2), obtained by solving the 2x2 system
//   (d pi g^-1 d pi^T) c = eta,   X = g^-1 d pi^T c.
// Lifts of basic fields are basic, so the frame is adapted by construction.
//
// Integrability data of an orthonormal frame with vertical e3:
//   [e1, e3] = f3 e2 + kappa1 e3,
//   [e2, e3] = -f3 e1 + kappa2 e3,
//   [e1, e2] = f1 e1 + f2 e2 - 2 sigma e3.
// For adapted frames f3 = 0; (f1, f2, kappa1, kappa2) then play the role of
// (h1, h2, tau1, tau2) in the adapted-frame bracket relations.
//
// Orientation: e3 is chosen so that its largest-magnitude coordinate
// component is positive. Flipping e3 flips f3 and sigma and leaves f1, f2,
// kappa1, kappa2 unchanged.
#pragma once

#include <array>
#include <functional>
#include <string>

#include "biharm/geometry.hpp"

namespace biharm {

/// Components of a frame on the base, in the (u, v) coordinate basis.
using PlaneFrame = std::array<std::array<PlaneFunction, 2>, 2>;

struct SubmersionSpec {
  std::string name;
  MetricField metric;                       // g on M
  std::array<CoordinateFunction, 2> map;    // (pi^1, pi^2) = base coordinates (u, v)
  PlaneMetric base_metric;                  // h on N
  PlaneFrame base_frame;                    // (eta1, eta2), orthonormal for h
};

/// Gram-Schmidt of (d_u, d_v) against h.
PlaneFrame gram_schmidt_frame(const PlaneMetric& h);

using Matrix23 = std::array<std::array<double, 3>, 2>;

/// Jacobian of (pi^1, pi^2) at p.
Matrix23 differential(const SubmersionSpec& spec, const Point3& p);

/// Unit g-normal vector spanning ker(d pi) at p; throws RankDeficient.
Vector3 vertical_direction(const SubmersionSpec& spec, const Point3& p);

struct SubmersionCheck {
  bool ok = false;
  double deviation = 0.0;  // max |h(d pi X, d pi Y) - g(X, Y)| over an orthonormal horizontal pair
};

SubmersionCheck is_riemannian_submersion(const SubmersionSpec& spec, const Point3& p,
                                         double tol = 1e-9);

/// Adapted frame {lift(eta1), lift(eta2), e3}. Requests of order n evaluate
/// the map at order n + 1, so n <= 3.
FrameTriple build_frame(const SubmersionSpec& spec);

enum class DataComponent { F1 = 0, F2, F3, Kappa1, Kappa2, Sigma };

struct IntegrabilityValues {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double sigma = 0.0;
};

class IntegrabilityData {
 public:
  using Jets = std::array<Jet, 6>;  // indexed by DataComponent
  using Evaluator = std::function<Jets(const Point3&, int order)>;

  explicit IntegrabilityData(Evaluator eval) : eval_(std::move(eval)) {}

  Jets operator()(const Point3& p, int order = 0) const { return eval_(p, order); }
  IntegrabilityValues values(const Point3& p) const;
  ScalarField field(DataComponent c) const;

  /// Copy with `delta` added to one component (used for negative controls).
  IntegrabilityData perturbed(DataComponent c, ScalarField delta) const;

 private:
  Evaluator eval_;
};

/// Bracket decomposition of `frame`. Each evaluation asserts the bracket
/// structure above to 1e-8 and throws StructureViolation otherwise.
IntegrabilityData integrability_data(FrameTriple frame, MetricField g);

struct Tension {
  std::array<double, 2> components{};  // in (eta1, eta2)
  double norm = 0.0;
};

/// tau(pi) = -d pi(nabla_{e3} e3), with the connection taken from the metric.
Tension tension(const SubmersionSpec& spec, const FrameTriple& frame, const Point3& p);

/// K^N = e1(f2) - e2(f1) - f1^2 - f2^2 + 2 f3 sigma, as a jet of the given order (<= 1).
Jet base_gauss_curvature_jet(const IntegrabilityData& data, const FrameTriple& frame,
                             const Point3& p, int order);
double base_gauss_curvature(const IntegrabilityData& data, const FrameTriple& frame,
                            const Point3& p);

/// Gauss curvature of (N, h) at pi(p), computed from h alone.
double base_curvature_direct(const SubmersionSpec& spec, const Point3& p);

}  // namespace biharm
