#pragma once

#include <limits>
#include <optional>
#include <string_view>

#include "sparsify/edge_set.hpp"
#include "sparsify/geometry.hpp"
#include "sparsify/instance.hpp"

namespace sparsify {

/// Default strictness margin for every floating-point inequality that licenses an elimination.
inline constexpr double kDefaultMargin = 1e-6;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Where the far endpoint s of an edge rs falls relative to the two cones
/// around r defined by the edge pq.
enum class ConeMembership { neither, p_only, q_only, both };

/// Cone data for one (pq, r). Angles are in radians.
struct ConeCover {
  double l_p = 0.0;
  double l_q = 0.0;
  double alpha_p = 0.0;
  double alpha_q = 0.0;
  double gamma_r = 0.0;
  double max_px = kInfinity;  ///< upper bound on |p x_r| over x in R_p
  double max_qy = kInfinity;  ///< upper bound on |q y_r| over y in R_q
  bool circle_intersection_ok = false;
  bool tilde_ok = false;
  bool angle_sum_ok = false;
  bool strongly_potential = false;
};

/// A vertex r certified potential for pq, with lower bounds on
///   min_{x in R_p} l(rx) - l(px)   (bound_p)
///   min_{y in R_q} l(ry) - l(qy)   (bound_q)
struct PotentialPoint {
  Vertex vertex = 0;
  ConeCover cover;
  double bound_p = kInfinity;
  double bound_q = kInfinity;
};

enum class RejectReason {
  none,
  no_circle_intersection,
  gamma_too_small,
  tilde_failed,
  angle_sum_failed,
  same_cone_pair,
  uncovered_neighbor,
};

std::string_view to_string(RejectReason reason);

struct Certificate {
  std::optional<PotentialPoint> point;
  RejectReason reason = RejectReason::none;
  ConeCover cover;  ///< filled as far as evaluation got, also on rejection

  explicit operator bool() const { return point.has_value(); }
};

/// Classifies s by the point s_r at distance delta_r from r on segment rs:
/// s in R_p iff |q s_r| >= l_q, s in R_q iff |p s_r| >= l_p.
/// `neither` implies pq and rs are incompatible.
ConeMembership in_cone(const Instance& inst, const DeltaRadii& deltas, Edge pq, Vertex r, Vertex s);

/// l_p + l_q >= l(pq) - 1/2, with l(pq) measured after the rounding shift.
bool circle_intersection_ok(double l_p, double l_q, double l_pq);

/// Lower bound on the angle at r between r's two tour edges in any optimum
/// tour through pq: acos(1 - (l_p + l_q - l(pq) + 1/2)^2 / (2 delta^2)).
double gamma_r(double l_p, double l_q, double l_pq, double delta_r);

/// Constant-time strong potentiality check with arc-endpoint bounds.
Certificate certify_strong(const Instance& inst, const DeltaRadii& deltas, Edge pq, Vertex r,
                           double margin = kDefaultMargin);

/// Exhaustive potentiality check over R = {x : rx in E, pq ~ rx}; on
/// success the bounds are the exact minima over the enumerated cone members.
Certificate certify_quadratic(const Instance& inst, const DeltaRadii& deltas, const SparseEdgeSet& edges, Edge pq,
                              Vertex r);

}  // namespace sparsify
