#include "sparsify/certify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sparsify/compat.hpp"

namespace sparsify {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::none: return "none";
    case RejectReason::no_circle_intersection: return "no_circle_intersection";
    case RejectReason::gamma_too_small: return "gamma_too_small";
    case RejectReason::tilde_failed: return "tilde_failed";
    case RejectReason::angle_sum_failed: return "angle_sum_failed";
    case RejectReason::same_cone_pair: return "same_cone_pair";
    case RejectReason::uncovered_neighbor: return "uncovered_neighbor";
  }
  return "unknown";
}

ConeMembership in_cone(const Instance& inst, const DeltaRadii& deltas, Edge pq, Vertex r, Vertex s) {
  const auto [l_p, l_q] = cone_lengths(inst, deltas, pq, r);
  const Point& rp = inst.point(r);
  const Point& sp = inst.point(s);
  const double len = inst.euclid(r, s);
  const double t = deltas[r] / len;
  const Point sr{rp.x + t * (sp.x - rp.x), rp.y + t * (sp.y - rp.y)};
  auto dist_to = [&](Vertex v) {
    const Point& a = inst.point(v);
    return std::hypot(a.x - sr.x, a.y - sr.y);
  };
  const bool in_p = dist_to(pq.v) >= l_q;
  const bool in_q = dist_to(pq.u) >= l_p;
  if (in_p && in_q) return ConeMembership::both;
  if (in_p) return ConeMembership::p_only;
  if (in_q) return ConeMembership::q_only;
  return ConeMembership::neither;
}

bool circle_intersection_ok(double l_p, double l_q, double l_pq) { return l_p + l_q >= l_pq - 0.5; }

double gamma_r(double l_p, double l_q, double l_pq, double delta_r) {
  const double chord = l_p + l_q - l_pq + 0.5;
  return clamped_acos(1.0 - chord * chord / (2.0 * delta_r * delta_r));
}

namespace {

/// |p t| for the far endpoint t of an arc, via the law of cosines at q with
/// angle eps + theta (given as cosines of angles in [0, pi]).
double far_endpoint_distance(double pq, double l, double cos_eps, double cos_theta) {
  const double sin_eps = std::sqrt(std::max(0.0, 1.0 - cos_eps * cos_eps));
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double cos_sum = cos_eps * cos_theta - sin_eps * sin_theta;
  return std::sqrt(std::max(0.0, pq * pq + l * l - 2.0 * pq * l * cos_sum));
}

}  // namespace

Certificate certify_strong(const Instance& inst, const DeltaRadii& deltas, Edge pq, Vertex r, double margin) {
  Certificate out;
  ConeCover& c = out.cover;
  const Vertex p = pq.u;
  const Vertex q = pq.v;
  const double delta = deltas[r];
  const auto lengths = cone_lengths(inst, deltas, pq, r);
  c.l_p = lengths.l_p;
  c.l_q = lengths.l_q;
  const double l_pq = static_cast<double>(inst.dist(p, q)) - inst.rounding_shift();

  c.circle_intersection_ok = delta > 0.0 && c.l_p > 0.0 && c.l_q > 0.0 && circle_intersection_ok(c.l_p, c.l_q, l_pq);
  if (!c.circle_intersection_ok) {
    out.reason = RejectReason::no_circle_intersection;
    return out;
  }

  const double pq_e = inst.euclid(p, q);
  const double pr_e = inst.euclid(p, r);
  const double qr_e = inst.euclid(q, r);

  c.gamma_r = gamma_r(c.l_p, c.l_q, l_pq, delta);
  const auto angles = cone_half_angles(delta, pr_e, qr_e, c.l_p, c.l_q);
  c.alpha_p = angles.alpha_p;
  c.alpha_q = angles.alpha_q;
  c.strongly_potential = c.gamma_r > std::max(c.alpha_p, c.alpha_q) + margin;
  if (!c.strongly_potential) {
    out.reason = RejectReason::gamma_too_small;
    return out;
  }

  const auto cosines = eps_theta_cosines(pq_e, pr_e, qr_e, c.l_p, c.l_q, delta);
  // |p q~| <= l_p and |q p~| <= l_q, where p~ / q~ are the points of the
  // circle around r farthest from p / q.
  const double far_q = qr_e + delta;
  const double far_p = pr_e + delta;
  const bool tilde_q = (far_q * far_q + pq_e * pq_e - c.l_p * c.l_p) / (2.0 * far_q * pq_e) <= cosines.cos_eps_q;
  const bool tilde_p = (far_p * far_p + pq_e * pq_e - c.l_q * c.l_q) / (2.0 * far_p * pq_e) <= cosines.cos_eps_p;
  c.tilde_ok = tilde_q && tilde_p;
  if (!c.tilde_ok) {
    out.reason = RejectReason::tilde_failed;
    return out;
  }

  c.angle_sum_ok = cosines.cos_eps_p + cosines.cos_theta_p >= 0.0 && cosines.cos_eps_q + cosines.cos_theta_q >= 0.0;
  if (!c.angle_sum_ok) {
    out.reason = RejectReason::angle_sum_failed;
    return out;
  }

  c.max_px = far_endpoint_distance(pq_e, c.l_q, cosines.cos_eps_q, cosines.cos_theta_q);
  c.max_qy = far_endpoint_distance(pq_e, c.l_p, cosines.cos_eps_p, cosines.cos_theta_p);

  PotentialPoint point;
  point.vertex = r;
  point.cover = c;
  point.bound_p = delta - 1.0 - c.max_px;
  point.bound_q = delta - 1.0 - c.max_qy;
  out.point = point;
  return out;
}

Certificate certify_quadratic(const Instance& inst, const DeltaRadii& deltas, const SparseEdgeSet& edges, Edge pq,
                              Vertex r) {
  Certificate out;
  const Vertex p = pq.u;
  const Vertex q = pq.v;
  const auto lengths = cone_lengths(inst, deltas, pq, r);
  out.cover.l_p = lengths.l_p;
  out.cover.l_q = lengths.l_q;

  std::vector<Vertex> in_p;
  std::vector<Vertex> in_q;
  for (Vertex x : edges.neighbors(r)) {
    if (!compatible(inst, p, q, r, x)) continue;
    switch (in_cone(inst, deltas, pq, r, x)) {
      case ConeMembership::both:
        in_p.push_back(x);
        in_q.push_back(x);
        break;
      case ConeMembership::p_only: in_p.push_back(x); break;
      case ConeMembership::q_only: in_q.push_back(x); break;
      case ConeMembership::neither: out.reason = RejectReason::uncovered_neighbor; return out;
    }
  }

  const Length base = inst.dist(p, q) - inst.dist(p, r) - inst.dist(r, q);
  auto same_cone_ok = [&](const std::vector<Vertex>& cone) {
    for (std::size_t i = 0; i < cone.size(); ++i) {
      for (std::size_t j = i + 1; j < cone.size(); ++j) {
        const Vertex x = cone[i];
        const Vertex y = cone[j];
        if ((x == p && y == q) || (x == q && y == p)) continue;
        if (!(base + inst.dist(r, x) + inst.dist(r, y) > inst.dist(x, y))) return false;
      }
    }
    return true;
  };
  if (!same_cone_ok(in_p) || !same_cone_ok(in_q)) {
    out.reason = RejectReason::same_cone_pair;
    return out;
  }

  PotentialPoint point;
  point.vertex = r;
  point.cover = out.cover;
  for (Vertex x : in_p)
    point.bound_p = std::min(point.bound_p, static_cast<double>(inst.dist(r, x) - (x == p ? 0 : inst.dist(p, x))));
  for (Vertex y : in_q)
    point.bound_q = std::min(point.bound_q, static_cast<double>(inst.dist(r, y) - (y == q ? 0 : inst.dist(q, y))));
  out.point = point;
  return out;
}

}  // namespace sparsify
