#include "sparsify/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparsify {

DuplicatePoint::DuplicatePoint(Vertex a, Vertex b)
    : std::runtime_error("vertices " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                         " are at rounded distance 0"),
      a_(a),
      b_(b) {}

DeltaRadii compute_deltas(const Instance& instance, const NeighborIndex& index) {
  const std::size_t n = instance.size();
  std::vector<double> values(n);
  Length global_min = std::numeric_limits<Length>::max();
  const double shift = instance.rounding_shift();
  for (Vertex r = 0; r < n; ++r) {
    // Both roundings are monotone in |rs|, so the Euclidean nearest neighbor
    // also minimizes l(rs).
    const Vertex s = index.nearest_other(r);
    const Length l = instance.dist(r, s);
    if (l == 0) throw DuplicatePoint(std::min(r, s), std::max(r, s));
    global_min = std::min(global_min, l);
    values[r] = static_cast<double>(l) - shift - 0.5;
  }
  return DeltaRadii(std::move(values), global_min);
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double clamped_acos(double x) { return std::acos(clamp_unit(x)); }

double triangle_angle_cos(double a, double b, double c) { return clamp_unit((a * a + b * b - c * c) / (2.0 * a * b)); }

ConeAngles cone_half_angles(double delta_r, double rp, double rq, double l_p, double l_q) {
  ConeAngles out;
  out.alpha_p = 2.0 * clamped_acos((l_q * l_q - delta_r * delta_r - rq * rq) / (2.0 * delta_r * rq));
  out.alpha_q = 2.0 * clamped_acos((l_p * l_p - delta_r * delta_r - rp * rp) / (2.0 * delta_r * rp));
  return out;
}

EpsThetaCosines eps_theta_cosines(double pq, double pr, double qr, double l_p, double l_q, double delta_r) {
  EpsThetaCosines out;
  out.cos_eps_p = triangle_angle_cos(pq, pr, qr);
  out.cos_eps_q = triangle_angle_cos(pq, qr, pr);
  out.cos_theta_p = triangle_angle_cos(l_p, pr, delta_r);
  out.cos_theta_q = triangle_angle_cos(l_q, qr, delta_r);
  return out;
}

ConeLengths cone_lengths(const Instance& instance, const DeltaRadii& deltas, Edge pq, Vertex r) {
  const double delta = deltas[r];
  const auto lpq = static_cast<double>(instance.dist(pq.u, pq.v));
  return {delta + lpq - static_cast<double>(instance.dist(pq.v, r)) - 1.0,
          delta + lpq - static_cast<double>(instance.dist(pq.u, r)) - 1.0};
}

ConeAngles cone_half_angles(const Instance& instance, const DeltaRadii& deltas, Edge pq, Vertex r) {
  const auto [l_p, l_q] = cone_lengths(instance, deltas, pq, r);
  return cone_half_angles(deltas[r], instance.euclid(r, pq.u), instance.euclid(r, pq.v), l_p, l_q);
}

}  // namespace sparsify
