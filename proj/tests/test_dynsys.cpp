#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "opnet/entropy.hpp"
#include "opnet/error.hpp"
#include "opnet/lorenz.hpp"
#include "opnet/network.hpp"
#include "opnet/ordinal.hpp"
#include "opnet/time_series.hpp"
#include "support/reference_ode.hpp"

using namespace opnet;
using doctest::Approx;

namespace {

double dist3(const Vec3& a, const Vec3& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

TEST_CASE("one integrator step matches the frozen reference value") {
  LorenzParams p;  // sigma 10, rho 28, beta 8/3, dt 0.025
  Vec3 next = lorenz_rk4_step(p, {1.0, 1.0, 1.0});
  CHECK(next[0] == Approx(1.075450532023112).epsilon(1e-12));
  CHECK(next[1] == Approx(1.6593081252041169).epsilon(1e-12));
  CHECK(next[2] == Approx(0.9686116362706064).epsilon(1e-12));
}

TEST_CASE("integrator agrees with an independent implementation") {
  LorenzParams p;
  p.dt = 0.01;
  p.sigma = 12.0;
  p.rho = 24.0;
  p.beta = 2.0;
  Vec3 mine{0.5, -0.25, 10.0};
  naive::State3 ref{0.5, -0.25, 10.0};
  for (int step = 0; step < 50; ++step) {
    mine = lorenz_rk4_step(p, mine);
    ref = naive::lorenz_rk4_step(ref, p.dt, p.sigma, p.rho, p.beta);
    CAPTURE(step);
    for (int i = 0; i < 3; ++i)
      CHECK(mine[static_cast<std::size_t>(i)] ==
            Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-13));
  }
}

TEST_CASE("the origin is a fixed point") {
  LorenzParams p;
  Vec3 s{0.0, 0.0, 0.0};
  for (int i = 0; i < 10; ++i) {
    s = lorenz_rk4_step(p, s);
    CHECK(s == Vec3{0.0, 0.0, 0.0});
  }
}

TEST_CASE("fourth-order convergence: halving dt shrinks the error ~16x") {
  // Error against a much finer reference after integrating to t = 0.5;
  // longer horizons let chaotic error growth distort the asymptotic ratio.
  const double t_final = 0.5;
  auto endpoint = [&](double dt) {
    LorenzParams p;
    p.dt = dt;
    Vec3 s{1.0, 1.0, 1.0};
    int steps = static_cast<int>(std::llround(t_final / dt));
    for (int i = 0; i < steps; ++i) s = lorenz_rk4_step(p, s);
    return s;
  };
  Vec3 ref = endpoint(0.000625);  // 8x finer than the finest probe
  double e1 = dist3(endpoint(0.01), ref);
  double e2 = dist3(endpoint(0.005), ref);
  double ratio = e1 / e2;
  CHECK(ratio > 10.0);
  CHECK(ratio < 24.0);
}

TEST_CASE("trajectories discard the transient and stay on the attractor") {
  LorenzParams p;
  p.n_transient = 500;
  auto traj = integrate_lorenz(p, {1.0, 1.0, 1.0}, 20000);
  REQUIRE(traj.size() == 20000);
  for (const auto& s : traj) {
    CHECK(std::abs(s[0]) < 25.0);
    CHECK(std::abs(s[1]) < 30.0);
    CHECK(s[2] > 0.0);
    CHECK(s[2] < 55.0);
  }

  // The first returned state is the transient'th step, not the IC.
  LorenzParams q = p;
  q.n_transient = 0;
  auto full = integrate_lorenz(q, {1.0, 1.0, 1.0}, 501);
  CHECK(traj[0] == full[500]);

  // Determinism.
  auto again = integrate_lorenz(p, {1.0, 1.0, 1.0}, 100);
  auto first = integrate_lorenz(p, {1.0, 1.0, 1.0}, 100);
  CHECK(again == first);
}

TEST_CASE("a diverging trajectory reports the offending step") {
  LorenzParams p;
  p.dt = 10.0;  // wildly unstable step size
  p.n_transient = 0;
  CHECK_THROWS_AS(integrate_lorenz(p, {1.0, 1.0, 1.0}, 1000), Error);
}

TEST_CASE("peak extraction on hand-checked signals") {
  using V = std::vector<double>;
  CHECK(extract_peaks(V{0, 1, 0}) == V{1});
  CHECK(extract_peaks(V{0, 1, 1, 0}) == V{1});     // plateau peaks once
  CHECK(extract_peaks(V{1, 1, 0}) == V{});         // never rose
  CHECK(extract_peaks(V{0, 1, 1}) == V{});         // never fell
  CHECK(extract_peaks(V{0, 1, 1, 2, 0}) == V{2});  // plateau then higher peak
  CHECK(extract_peaks(V{2, 1, 1, 0}) == V{});
  CHECK(extract_peaks(V{2, 0, 3, 3, 1}) == V{3});
  CHECK(extract_peaks(V{5, 1, 5}) == V{});         // endpoints never qualify
  CHECK(extract_peaks(V{0, 2, 1, 3, 0, 4, 2}) == V{2, 3, 4});
  CHECK(extract_peaks(V{}) == V{});
  CHECK(extract_peaks(V{1, 2}) == V{});
}

TEST_CASE("requesting a fixed number of peaks") {
  std::vector<double> sig{0, 2, 1, 3, 0, 4, 2};
  CHECK(extract_peaks(sig, 2) == std::vector<double>{2, 3});
  CHECK(extract_peaks(sig, 3) == std::vector<double>{2, 3, 4});
  try {
    extract_peaks(sig, 4);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);  // found count
  }
}

TEST_CASE("streaming peak scan matches batch extraction") {
  LorenzParams p;
  p.seed = 0;
  Vec3 x0{0.3, 0.4, 0.5};
  auto traj = integrate_lorenz(p, x0, 40000);
  std::vector<double> xs(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) xs[i] = traj[i][0];
  auto batch = extract_peaks(xs);
  REQUIRE(batch.size() >= 300);

  auto streamed = lorenz_x_peaks(p, x0, 300);
  REQUIRE(streamed.size() == 300);
  for (std::size_t i = 0; i < 300; ++i)
    CHECK(streamed[i] == batch[i]);  // bitwise: same trajectory, same scan
}

TEST_CASE("peak quota failure names the shortfall") {
  LorenzParams p;
  CHECK_THROWS_AS(lorenz_x_peaks(p, {1.0, 1.0, 1.0}, 1000, 2000), Error);
}

TEST_CASE("peak ensembles are deterministic and well-formed") {
  LorenzParams p;
  p.seed = 11;
  auto ens1 = make_lorenz_peak_ensemble(p, 4, 120, 1);
  auto ens3 = make_lorenz_peak_ensemble(p, 4, 120, 3);
  REQUIRE(ens1.size() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(ens1[r].id == "lorenz-" + std::to_string(r));
    REQUIRE(ens1[r].values.size() == 120);
    CHECK(ens1[r].values == ens3[r].values);  // thread-count independent
    // x stays inside the attractor's bounding box; its local maxima occur
    // on both wings, so only the magnitude is constrained.
    for (double v : ens1[r].values) CHECK(std::abs(v) < 25.0);
  }
  // Different initial conditions produce different series.
  CHECK(ens1[0].values != ens1[1].values);

  LorenzParams q = p;
  q.seed = 12;
  auto other = make_lorenz_peak_ensemble(q, 1, 120, 1);
  CHECK(other[0].values != ens1[0].values);
}

TEST_CASE("peak series carry deterministic ordinal structure") {
  LorenzParams p;
  p.seed = 3;
  auto series = make_lorenz_peak_ensemble(p, 1, 400, 1)[0];
  auto seq = extract_patterns(series, {3, 1});
  auto net = build_network(seq);

  // Deterministic chaos biases the pattern census far from uniform (rare
  // orderings appear only around lobe switches), yet the dynamics are not
  // trivial: entropy sits strictly inside (0, ln 6).
  CHECK(net.node_count() <= 6);
  CHECK(net.node_count() >= 2);
  double h = permutation_entropy(seq);
  CHECK(h > 0.0);
  CHECK(h < std::log(6.0) - 0.05);
}
