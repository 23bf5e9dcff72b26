#pragma once

#include <stdexcept>
#include <vector>

#include "sparsify/instance.hpp"
#include "sparsify/kd_tree.hpp"

namespace sparsify {

class DuplicatePoint : public std::runtime_error {
 public:
  DuplicatePoint(Vertex a, Vertex b);
  Vertex first() const { return a_; }
  Vertex second() const { return b_; }

 private:
  Vertex a_, b_;
};

/// Per-vertex clearance radius: no other vertex lies strictly inside the
/// circle of radius delta(r) around r.
///
/// For EUC_2D this is min_s l(rs) - 1/2. For CEIL_2D lengths overestimate by
/// up to one unit, so the radius is taken one half-unit smaller
/// (min_s l(rs) - 1); in both cases delta(r) = min_s (l(rs) - c) - 1/2 with
/// c the instance rounding shift.
class DeltaRadii {
 public:
  DeltaRadii() = default;
  explicit DeltaRadii(std::vector<double> values, Length min_length)
      : values_(std::move(values)), min_length_(min_length) {}

  double operator[](Vertex r) const { return values_[r]; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  /// Smallest rounded length over all pairs; instances with a value of 1 sit
  /// at the edge of the certification geometry and are flagged in stats.
  Length min_length() const { return min_length_; }

 private:
  std::vector<double> values_;
  Length min_length_ = 0;
};

/// O(n log n) via nearest-neighbor queries. Throws DuplicatePoint if some pair has l = 0.
DeltaRadii compute_deltas(const Instance& instance, const NeighborIndex& index);

/// cos of the angle opposite side c in a triangle with sides a, b, c, clamped to [-1, 1].
double triangle_angle_cos(double a, double b, double c);

double clamp_unit(double x);
double clamped_acos(double x);

/// Opening angles (radians) of the cones R_p and R_q around r for edge pq.
struct ConeAngles {
  double alpha_p = 0.0;
  double alpha_q = 0.0;
};

/// alpha_p = 2 acos((l_q^2 - delta^2 - |rq|^2) / (2 delta |rq|)), alpha_q symmetric in p.
ConeAngles cone_half_angles(double delta_r, double rp, double rq, double l_p, double l_q);

/// Cosines of the triangle angles used to locate the far arc endpoints.
///   eps_p, eps_q: angles of triangle pqr at p and q
///   theta_p: angle at p in triangle p r t with |rt| = delta, |pt| = l_p
///   theta_q: angle at q in triangle q r t with |rt| = delta, |qt| = l_q
struct EpsThetaCosines {
  double cos_eps_p = 0.0;
  double cos_eps_q = 0.0;
  double cos_theta_p = 0.0;
  double cos_theta_q = 0.0;
};

EpsThetaCosines eps_theta_cosines(double pq, double pr, double qr, double l_p, double l_q, double delta_r);

/// Radii of the circles around p and q bounding the cones for (pq, r):
///   l_p = delta_r + l(pq) - l(qr) - 1,  l_q = delta_r + l(pq) - l(pr) - 1.
struct ConeLengths {
  double l_p = 0.0;
  double l_q = 0.0;
};

ConeLengths cone_lengths(const Instance& instance, const DeltaRadii& deltas, Edge pq, Vertex r);

ConeAngles cone_half_angles(const Instance& instance, const DeltaRadii& deltas, Edge pq, Vertex r);

}  // namespace sparsify
