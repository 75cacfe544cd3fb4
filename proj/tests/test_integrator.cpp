#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>

#include "hawkdove/error.hpp"
#include "hawkdove/integrator.hpp"
#include "oracles.hpp"

using namespace hawkdove;

namespace {

struct Scenario {
  double v, c;
};

constexpr Scenario kPortraits[] = {{0.1, 0.2}, {0.2, 0.3}, {0.2, 0.1}, {-0.1, 0.2}, {-0.2, -0.1}};

bool same_samples(const Trajectory& a, const Trajectory& b) {
  return a.samples.size() == b.samples.size() &&
         std::memcmp(a.samples.data(), b.samples.data(), a.samples.size() * sizeof(Sample)) == 0 &&
         a.terminal == b.terminal && a.equilibrium == b.equilibrium;
}

double distance(const ReducedState& a, const ReducedState& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace

TEST_CASE("configuration checks") {
  IntegrationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rtol = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.t_end = -1;
  CHECK_THROWS_AS(integrate({0.1, 0.2}, {0.2, 0.2, 0.2}, cfg), Error);
}

TEST_CASE("starting on an equilibrium converges immediately") {
  oracle::Rng rng(81);
  for (int k = 0; k < 20; ++k) {
    const Params p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto t = integrate(p, {0.0, 0.5, 0.5});
    CHECK(t.terminal == Terminal::ConvergedToEquilibrium);
    CHECK(t.samples.size() == 1);
    CHECK(t.accepted_steps == 0);
    CHECK(t.equilibrium.has_value());
  }
}

TEST_CASE("off-simplex starts are rejected") {
  for (ReducedState s : {ReducedState{-0.1, 0.5, 0.5}, ReducedState{0.5, 0.5, 0.5}, ReducedState{0.2, std::nan(""), 0.1}}) {
    try {
      integrate({0.1, 0.2}, s);
      FAIL("expected InvalidStart");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidStart);
    }
  }
}

TEST_CASE("portrait scenarios end at the stable catalog points") {
  const auto starts = random_interior_starts(kDefaultSeed, 20);
  for (const auto& sc : kPortraits) {
    const Params p{sc.v, sc.c};
    CAPTURE(sc.v);
    CAPTURE(sc.c);
    std::vector<EquilibriumId> stable;
    for (const auto& r : catalog(p))
      if (r.defined && r.in_simplex && r.classification == Classification::StableNode) stable.push_back(r.id);
    int hits_p1 = 0, hits_p4 = 0;
    for (const auto& item : batch_integrate(p, starts)) {
      REQUIRE(item.trajectory);
      const auto& t = *item.trajectory;
      REQUIRE(t.terminal == Terminal::ConvergedToEquilibrium);
      REQUIRE(t.equilibrium);
      REQUIRE(std::find(stable.begin(), stable.end(), *t.equilibrium) != stable.end());
      REQUIRE(distance(t.final_state(), *equilibrium_coords(p, *t.equilibrium)) < 1e-3);
      hits_p1 += *t.equilibrium == EquilibriumId::P1;
      hits_p4 += *t.equilibrium == EquilibriumId::P4;
    }
    if (sc.v > 0 && sc.c > sc.v) {
      CHECK(hits_p1 > 0);
      CHECK(hits_p4 > 0);
    } else {
      CHECK(hits_p1 == 0);
    }
  }
}

TEST_CASE("trajectories stay on the simplex") {
  oracle::Rng rng(82);
  IntegrationConfig cfg;
  cfg.t_end = 300;
  for (int k = 0; k < 60; ++k) {
    const Params p{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const auto s = rng.simplex();
    const auto t = integrate(p, {s[0], s[1], s[2]}, cfg);
    REQUIRE(t.min_component >= -1e-7);
    REQUIRE(t.max_sum_error < 1e-7);
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      const auto& q = t.samples[i];
      if (i > 0) REQUIRE(q.t > t.samples[i - 1].t);
      REQUIRE(std::min({q.x, q.y, q.z, q.w}) >= -kTolSimplex);
      REQUIRE(std::abs(q.x + q.y + q.z + q.w - 1.0) <= kTolSimplex);
      REQUIRE(q.w == 1.0 - q.x - q.y - q.z);
    }
  }
}

TEST_CASE("faces are invariant") {
  oracle::Rng rng(83);
  IntegrationConfig cfg;
  cfg.t_end = 500;
  for (int k = 0; k < 30; ++k) {
    const Params p{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const auto s = rng.simplex();
    const auto t = integrate(p, {s[0], 0.0, s[2]}, cfg);
    for (const auto& q : t.samples) REQUIRE(q.y == 0.0);
    const auto u = integrate(p, {0.0, s[1], s[2]}, cfg);
    for (const auto& q : u.samples) REQUIRE(q.x == 0.0);
  }
}

TEST_CASE("terminal states are insensitive to halving the tolerances") {
  const auto starts = random_interior_starts(kDefaultSeed, 20);
  IntegrationConfig fine;
  fine.rtol /= 2;
  fine.atol /= 2;
  for (int f = 0; f < 4; ++f) {
    const Params p{kPortraits[f].v, kPortraits[f].c};
    const auto a = batch_integrate(p, starts);
    const auto b = batch_integrate(p, starts, fine);
    for (std::size_t i = 0; i < starts.size(); ++i) {
      REQUIRE(a[i].trajectory->equilibrium == b[i].trajectory->equilibrium);
      REQUIRE(distance(a[i].trajectory->final_state(), b[i].trajectory->final_state()) < 1e-5);
    }
  }
}

TEST_CASE("runs are deterministic and batches match single runs") {
  const Params p{0.1, 0.2};
  auto starts = random_interior_starts(11, 8);
  starts.push_back(starts.front());
  starts.push_back({0.3, 0.3, 0.5});  // off the simplex
  const auto seq = batch_integrate(p, starts, {}, 1);
  const auto par = batch_integrate(p, starts, {}, 4);
  REQUIRE(seq.size() == starts.size());
  for (std::size_t i = 0; i + 1 < starts.size(); ++i) {
    const auto single = integrate(p, starts[i]);
    REQUIRE(seq[i].error.empty());
    CHECK(same_samples(*seq[i].trajectory, single));
    CHECK(same_samples(*par[i].trajectory, single));
  }
  CHECK(same_samples(*seq[0].trajectory, *seq[starts.size() - 2].trajectory));
  CHECK_FALSE(seq.back().trajectory.has_value());
  CHECK_FALSE(seq.back().error.empty());
  CHECK(batch_integrate(p, {}).empty());
}

TEST_CASE("record stride thins the samples") {
  IntegrationConfig cfg;
  cfg.record_stride = 50.0;
  const auto sparse = integrate({0.1, 0.2}, {0.2, 0.3, 0.1}, cfg);
  const auto dense = integrate({0.1, 0.2}, {0.2, 0.3, 0.1});
  CHECK(sparse.samples.size() < dense.samples.size());
  CHECK(sparse.final_sample().t == dense.final_sample().t);
  CHECK(sparse.final_sample().z == dense.final_sample().z);
}

TEST_CASE("a tiny horizon ends at the time limit") {
  IntegrationConfig cfg;
  cfg.t_end = 1.0;
  const auto t = integrate({0.1, 0.2}, {0.2, 0.3, 0.1}, cfg);
  CHECK(t.terminal == Terminal::TimeLimit);
  CHECK(t.final_sample().t == doctest::Approx(1.0));
  CHECK_FALSE(t.equilibrium.has_value());
}

TEST_CASE("random interior starts") {
  const auto a = random_interior_starts(kDefaultSeed, 200);
  const auto b = random_interior_starts(kDefaultSeed, 200);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    REQUIRE(a[i].x > 0);
    REQUIRE(a[i].y > 0);
    REQUIRE(a[i].z > 0);
    REQUIRE(a[i].w() > 0);
  }
  CHECK(random_interior_starts(8, 1)[0].x != a[0].x);
}

TEST_CASE("nearest catalog point") {
  const Params p{0.1, 0.2};
  CHECK(nearest_equilibrium(p, {0.0, 0.0, 0.9995}) == EquilibriumId::P1);
  CHECK_FALSE(nearest_equilibrium(p, {0.0, 0.0, 0.99}).has_value());
  // P3 sits on P2 when c = 2v; the lower id wins
  CHECK(nearest_equilibrium(p, {0.0, 0.5, 0.5}) == EquilibriumId::P2);
}
