#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sparsify/certify.hpp"
#include "sparsify/compat.hpp"
#include "sparsify/kd_tree.hpp"
#include "sparsify/oracle.hpp"
#include "support.hpp"

using namespace sparsify;

namespace {

struct Setup {
  Instance inst;
  NeighborIndex index;
  DeltaRadii deltas;
  explicit Setup(Instance i) : inst(std::move(i)), index(inst.points()), deltas(compute_deltas(inst, index)) {}
};

bool in_p(ConeMembership m) { return m == ConeMembership::p_only || m == ConeMembership::both; }
bool in_q(ConeMembership m) { return m == ConeMembership::q_only || m == ConeMembership::both; }

// Exact minima of l(rx) - l(px) over x in R_p and l(ry) - l(qy) over y in R_q, complete graph.
std::pair<double, double> enumerated_minima(const Setup& s, Edge pq, Vertex r) {
  double mp = kInfinity;
  double mq = kInfinity;
  for (Vertex x = 0; x < s.inst.size(); ++x) {
    if (x == r || !compatible(s.inst, pq.u, pq.v, r, x)) continue;
    const auto m = in_cone(s.inst, s.deltas, pq, r, x);
    if (in_p(m)) mp = std::min(mp, static_cast<double>(s.inst.dist(r, x) - s.inst.dist(pq.u, x)));
    if (in_q(m)) mq = std::min(mq, static_cast<double>(s.inst.dist(r, x) - s.inst.dist(pq.v, x)));
  }
  return {mp, mq};
}

double tour_angle(const Instance& inst, Vertex r, Vertex a, Vertex b) {
  const Point& c = inst.point(r);
  const double a1 = std::atan2(inst.point(a).y - c.y, inst.point(a).x - c.x);
  const double a2 = std::atan2(inst.point(b).y - c.y, inst.point(b).x - c.x);
  double d = std::fabs(a1 - a2);
  return d > std::numbers::pi ? 2 * std::numbers::pi - d : d;
}

std::pair<Vertex, Vertex> tour_neighbors(const oracle::Tour& t, Vertex r) {
  const std::size_t n = t.order.size();
  for (std::size_t i = 0; i < n; ++i)
    if (t.order[i] == r) return {t.order[(i + n - 1) % n], t.order[(i + 1) % n]};
  return {r, r};
}

bool tour_has(const oracle::Tour& t, Edge e) {
  for (const Edge& f : t.edges())
    if (f == e) return true;
  return false;
}

}  // namespace

TEST_CASE("circle intersection boundary") {
  CHECK(circle_intersection_ok(4.0, 5.5, 10.0));
  CHECK_FALSE(circle_intersection_ok(4.0, 5.0, 10.0));
}

TEST_CASE("gamma at its closed-form points") {
  CHECK(gamma_r(5.0, 4.5, 10.0, 3.0) == 0.0);
  // chord^2 = 2 delta^2
  const double delta = 3.0;
  const double chord = std::sqrt(2.0) * delta;
  CHECK(gamma_r(chord, 9.5, 10.0, delta) == doctest::Approx(std::numbers::pi / 2));
  CHECK(gamma_r(20.0, 9.5, 10.0, delta) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("far vertex has no circle intersection") {
  const Setup s(Instance("far", DistanceMode::euc_2d, {{0, 0}, {10, 0}, {5, 500}, {6, 501}, {200, 200}}));
  const auto cert = certify_strong(s.inst, s.deltas, Edge(0, 1), 2);
  CHECK_FALSE(cert);
  CHECK(cert.reason == RejectReason::no_circle_intersection);
}

TEST_CASE("dense cluster near a long edge certifies") {
  const Setup s(Instance("cluster", DistanceMode::euc_2d,
                         {{0, 0}, {1000, 0}, {500, 40}, {540, 70}, {470, 80}, {505, 110}, {500, -300}, {100, 600}}));
  const Edge pq(0, 1);
  const auto cert = certify_strong(s.inst, s.deltas, pq, 2);
  REQUIRE(cert);
  CHECK(cert.point->cover.strongly_potential);
  CHECK(cert.point->cover.gamma_r > std::max(cert.point->cover.alpha_p, cert.point->cover.alpha_q));
  const auto [mp, mq] = enumerated_minima(s, pq, 2);
  CHECK(cert.point->bound_p <= mp);
  CHECK(cert.point->bound_q <= mq);
}

TEST_CASE("neither cone implies incompatibility") {
  std::mt19937_64 rng(61);
  std::size_t neither = 0;
  for (int round = 0; round < 40; ++round) {
    const Setup s(testing::random_instance(rng, 40));
    for (int k = 0; k < 300; ++k) {
      const Vertex p = rng() % 40, q = rng() % 40, r = rng() % 40, x = rng() % 40;
      if (p == q || r == p || r == q || x == r) continue;
      if (in_cone(s.inst, s.deltas, Edge(p, q), r, x) != ConeMembership::neither) continue;
      ++neither;
      CHECK_FALSE(compatible(s.inst, p, q, r, x));
    }
  }
  CHECK(neither > 0);
}

TEST_CASE("certified bounds never exceed enumerated minima") {
  std::mt19937_64 rng(67);
  std::size_t accepted = 0;
  for (int round = 0; round < 30; ++round) {
    const Setup s(testing::random_instance(rng, 200));
    for (int k = 0; k < 300; ++k) {
      const Vertex a = rng() % 200, b = rng() % 200;
      if (a == b) continue;
      const Edge pq(a, b);
      const Point& pa = s.inst.point(pq.u);
      const Point& pb = s.inst.point(pq.v);
      for (Vertex r : s.index.nearest({(pa.x + pb.x) / 2, (pa.y + pb.y) / 2}, 10, pq.u, pq.v)) {
        const auto cert = certify_strong(s.inst, s.deltas, pq, r);
        if (!cert) continue;
        ++accepted;
        const auto [mp, mq] = enumerated_minima(s, pq, r);
        CHECK(cert.point->bound_p <= mp);
        CHECK(cert.point->bound_q <= mq);
        const auto quad = certify_quadratic(s.inst, s.deltas, SparseEdgeSet::complete(200), pq, r);
        if (quad) {
          CHECK(cert.point->bound_p <= quad.point->bound_p);
          CHECK(cert.point->bound_q <= quad.point->bound_q);
        }
      }
    }
  }
  CHECK(accepted > 1000);
}

TEST_CASE("larger margins never create certificates") {
  std::mt19937_64 rng(71);
  const Setup s(testing::random_instance(rng, 150));
  for (int k = 0; k < 3000; ++k) {
    const Vertex p = rng() % 150, q = rng() % 150, r = rng() % 150;
    if (p == q || r == p || r == q) continue;
    const bool loose = static_cast<bool>(certify_strong(s.inst, s.deltas, Edge(p, q), r, 1e-6));
    const bool tight = static_cast<bool>(certify_strong(s.inst, s.deltas, Edge(p, q), r, 1e-2));
    CHECK((loose || !tight));
  }
}

TEST_CASE("quadratic check on the square diagonal") {
  const Setup s(testing::unit_square());
  const Edge pq(0, 2);
  CHECK(in_cone(s.inst, s.deltas, pq, 1, 0) == ConeMembership::p_only);
  CHECK(in_cone(s.inst, s.deltas, pq, 1, 2) == ConeMembership::q_only);
  const auto cert = certify_quadratic(s.inst, s.deltas, SparseEdgeSet::complete(4), pq, 1);
  REQUIRE(cert);
  // R = {0, 2}; vertex 3 closes the other diagonal, which is incompatible.
  CHECK(cert.point->bound_p == 10.0);
  CHECK(cert.point->bound_q == 10.0);
}

TEST_CASE("quadratic check with no usable neighbor") {
  const Setup s(testing::unit_square());
  const Edge only[] = {{0, 1}, {1, 2}, {2, 0}};
  const auto cert = certify_quadratic(s.inst, s.deltas, SparseEdgeSet::from_edges(4, only), Edge(0, 2), 3);
  REQUIRE(cert);
  CHECK(cert.point->bound_p == kInfinity);
  CHECK(cert.point->bound_q == kInfinity);
}

TEST_CASE("certificates agree with every optimum tour") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 80; ++round) {
    const Setup s(testing::random_instance(rng, 6 + rng() % 4, round % 2 ? 1000 : 60));
    const std::size_t n = s.inst.size();
    const auto tours = oracle::enumerate_optimum_tours(s.inst);
    const auto all = SparseEdgeSet::complete(n);
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        const Edge pq(a, b);
        for (Vertex r = 0; r < n; ++r) {
          if (r == a || r == b) continue;
          const auto lens = cone_lengths(s.inst, s.deltas, pq, r);
          const double lpq = static_cast<double>(s.inst.dist(a, b)) - s.inst.rounding_shift();
          const bool basic = circle_intersection_ok(lens.l_p, lens.l_q, lpq) && lens.l_p > 0 && lens.l_q > 0;
          const auto strong = certify_strong(s.inst, s.deltas, pq, r);
          const auto quad = certify_quadratic(s.inst, s.deltas, all, pq, r);
          for (const auto& t : tours) {
            if (!tour_has(t, pq)) continue;
            const auto [x, y] = tour_neighbors(t, r);
            if (basic)
              CHECK(tour_angle(s.inst, r, x, y) >= gamma_r(lens.l_p, lens.l_q, lpq, s.deltas[r]) - 1e-9);
            if (!strong && !quad) continue;
            const auto mx = in_cone(s.inst, s.deltas, pq, r, x);
            const auto my = in_cone(s.inst, s.deltas, pq, r, y);
            CHECK_FALSE((in_p(mx) && in_p(my)));
            CHECK_FALSE((in_q(mx) && in_q(my)));
          }
        }
      }
    }
  }
}
