// Exercises the shared library through the C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hawkdove/hawkdove.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name) {
  const auto dir = fs::temp_directory_path() / "hawkdove_capi_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string first_line(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

}  // namespace

TEST_CASE("names and version") {
  CHECK(std::string(hd_version()) == "1.0.0");
  CHECK(std::string(hd_class_name(HD_STABLE_NODE)) == "StableNode");
  CHECK(std::string(hd_class_name(HD_UNDEFINED)) == "Undefined");
  CHECK(std::string(hd_line_name(HD_LINE_C_EQ_2V)) == "Ceq2V");
  CHECK(std::string(hd_terminal_name(HD_TERMINAL_TIME_LIMIT)) == "TimeLimit");
  CHECK(hd_equilibrium_from_name("P6") == 6);
  CHECK(hd_equilibrium_from_name("P8") == 0);
}

TEST_CASE("payoffs and fields") {
  const hd_params p{0.1, 0.2};
  double m[16];
  REQUIRE(hd_payoff_matrix(p, m) == HD_OK);
  CHECK(m[0] == doctest::Approx(-0.05));
  CHECK(m[3] == doctest::Approx(0.1));
  CHECK(m[12] == 0.0);

  const double s4[4] = {0.5, 0.5, 0.0, 0.0};
  double f4[4];
  REQUIRE(hd_field_4d(p, s4, f4) == HD_OK);
  CHECK(f4[0] == doctest::Approx(-0.00625));
  CHECK(f4[1] == doctest::Approx(0.00625));

  double avg;
  REQUIRE(hd_average_payoff(p, s4, &avg) == HD_OK);
  CHECK(std::isfinite(avg));

  const double s3[3] = {0.2, 0.3, 0.1};
  double f3[3], res;
  REQUIRE(hd_field_3d(p, s3, f3) == HD_OK);
  REQUIRE(hd_consistency_residual(p, s3, &res) == HD_OK);
  CHECK(res < 1e-15);

  CHECK(hd_field_3d(hd_params{NAN, 0.2}, s3, f3) == HD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(hd_last_error()).size() > 0);
  CHECK(hd_field_3d(p, nullptr, f3) == HD_ERR_INVALID_ARGUMENT);
  CHECK(hd_field_4d(hd_params{0.1, INFINITY}, s4, f4) == HD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("linear analysis") {
  const hd_params p{0.1, 0.2};
  const double origin[3] = {0, 0, 0};
  double j[9];
  REQUIRE(hd_jacobian(p, origin, j) == HD_OK);
  CHECK(j[0] == doctest::Approx(0.05));
  CHECK(j[4] == doctest::Approx(0.025));
  CHECK(j[1] == 0.0);
  hd_eigenvalue e[3];
  REQUIRE(hd_eigenvalues(j, e) == HD_OK);
  CHECK(e[0].re == doctest::Approx(0.05));
  int cls = -5;
  REQUIRE(hd_classify(e, &cls) == HD_OK);
  CHECK(cls == HD_UNSTABLE_NODE);
}

TEST_CASE("catalog and refinement") {
  hd_catalog* cat = nullptr;
  REQUIRE(hd_catalog_create(hd_params{0.1, 0.2}, &cat) == HD_OK);
  hd_equilibrium e;
  REQUIRE(hd_catalog_get(cat, 1, &e) == HD_OK);
  CHECK(e.id == 1);
  CHECK(e.coords[2] == 1.0);
  CHECK(e.classification == HD_STABLE_NODE);
  CHECK(e.predicate_class == HD_STABLE_NODE);
  CHECK(e.agrees == 1);
  REQUIRE(hd_catalog_get(cat, 3, &e) == HD_OK);
  CHECK(e.coincides_mask == (1u << 1));  // P3 on P2 when c = 2v
  CHECK(hd_catalog_get(cat, 8, &e) == HD_ERR_OUT_OF_RANGE);
  hd_catalog_destroy(cat);

  REQUIRE(hd_catalog_create(hd_params{0.1, 0.0}, &cat) == HD_OK);
  REQUIRE(hd_catalog_get(cat, 6, &e) == HD_OK);
  CHECK(e.defined == 0);
  CHECK(e.classification == HD_UNDEFINED);
  hd_catalog_destroy(cat);
  hd_catalog_destroy(nullptr);

  const double guess[3] = {0.01, 0.02, 0.95};
  double root[3];
  int iters = 0, pinv = -1;
  REQUIRE(hd_refine(hd_params{0.1, 0.2}, guess, root, &iters, &pinv) == HD_OK);
  CHECK(root[2] == doctest::Approx(1.0));
  CHECK(iters > 0);
  CHECK(pinv == 0);
  const double far[3] = {1e6, -1e6, 3};
  CHECK(hd_refine(hd_params{0.1, 0.2}, far, root, &iters, &pinv) == HD_ERR_NO_CONVERGENCE);
}

TEST_CASE("scan, transitions and linear systems") {
  hd_grid g;
  hd_grid_default(&g);
  CHECK(g.n_v == 201);
  g.n_v = g.n_c = 7;
  hd_region_map* map = nullptr;
  REQUIRE(hd_scan(&g, 2, &map) == HD_OK);
  hd_grid back;
  REQUIRE(hd_region_map_grid(map, &back) == HD_OK);
  CHECK(back.n_c == 7);
  double v, c;
  REQUIRE(hd_region_map_node(map, 4, 5, &v, &c) == HD_OK);
  CHECK(v == doctest::Approx(0.1));
  CHECK(c == doctest::Approx(0.2));
  int cls;
  REQUIRE(hd_region_map_tag(map, 4, 5, 1, &cls) == HD_OK);
  CHECK(cls == HD_STABLE_NODE);
  CHECK(hd_region_map_tag(map, 7, 0, 1, &cls) == HD_ERR_OUT_OF_RANGE);
  CHECK(hd_region_map_tag(map, 0, 0, 0, &cls) == HD_ERR_OUT_OF_RANGE);

  const auto csv = scratch("map.csv");
  REQUIRE(hd_region_map_write_csv(map, csv.c_str()) == HD_OK);
  CHECK(first_line(csv) == "v,c,P1,P2,P3,P4,P5,P6,P7");
  CHECK(hd_region_map_write_csv(map, "/nonexistent-dir/x.csv") == HD_ERR_IO);

  hd_transitions* tr = nullptr;
  REQUIRE(hd_detect_transitions(map, &tr) == HD_OK);
  std::size_t n = 0;
  REQUIRE(hd_transitions_count(tr, HD_LINE_V_EQ_C, &n) == HD_OK);
  CHECK(n > 0);
  hd_transition t;
  REQUIRE(hd_transitions_get(tr, HD_LINE_V_EQ_C, 0, &t) == HD_OK);
  CHECK(t.equilibrium >= 1);
  CHECK(t.equilibrium <= 7);
  CHECK(hd_transitions_get(tr, HD_LINE_V_EQ_C, n, &t) == HD_ERR_OUT_OF_RANGE);
  CHECK(hd_transitions_count(tr, HD_LINE_COUNT, &n) == HD_ERR_OUT_OF_RANGE);
  hd_transitions_destroy(tr);
  hd_region_map_destroy(map);

  hd_grid bad = g;
  bad.v_min = 1.0;
  CHECK(hd_scan(&bad, 1, &map) == HD_ERR_INVALID_ARGUMENT);
  CHECK(map == nullptr);

  double a[9], b[3];
  REQUIRE(hd_linearized_field(hd_params{0.1, 0.2}, 7, a, b) == HD_OK);
  CHECK(a[0] == doctest::Approx(0.05));
  CHECK(b[0] == 0.0);
  CHECK(hd_linearized_field(hd_params{0.1, 0.0}, 3, a, b) == HD_ERR_UNDEFINED_POINT);
}

TEST_CASE("Nash") {
  hd_nash_list* list = nullptr;
  REQUIRE(hd_nash_via_stability(hd_params{0.1, 0.2}, &list) == HD_OK);
  std::size_t n = 0;
  REQUIRE(hd_nash_list_size(list, &n) == HD_OK);
  CHECK(n == 2);
  hd_nash_report r;
  REQUIRE(hd_nash_list_get(list, 0, &r) == HD_OK);
  CHECK(r.source == 1);
  CHECK(r.via_stability == 1);
  CHECK(r.via_best_response == 1);
  CHECK(r.support_mask == (1u << 2));
  CHECK(hd_nash_list_get(list, 2, &r) == HD_ERR_OUT_OF_RANGE);
  const auto json = scratch("nash.json");
  REQUIRE(hd_nash_list_write_json(list, json.c_str()) == HD_OK);
  CHECK(fs::file_size(json) > 0);
  hd_nash_list_destroy(list);

  const double dd[4] = {0, 0, 0, 1};
  REQUIRE(hd_best_response_check(hd_params{0.1, 0.2}, dd, &r) == HD_OK);
  CHECK(r.via_best_response == 0);
  CHECK(r.margin == doctest::Approx(-0.05));
  CHECK(r.source == 0);
  CHECK(hd_nash_tolerance(hd_params{0.0, 0.0}) == 1e-10);
}

TEST_CASE("two-strategy game") {
  const hd_params p{0.1, 0.2};
  double y;
  REQUIRE(hd_two_f(p, 0.25, 0, &y) == HD_OK);
  CHECK(y == doctest::Approx(0.0046875));
  CHECK(hd_two_f(hd_params{0.1, 0.0}, 0.25, 1, &y) == HD_ERR_INVALID_ARGUMENT);
  REQUIRE(hd_two_f(hd_params{0.1, 0.0}, 0.25, 2, &y) == HD_OK);
  CHECK(hd_two_f(p, 0.25, 7, &y) == HD_ERR_INVALID_ARGUMENT);
  REQUIRE(hd_two_f_prime(p, 0.0, &y) == HD_OK);
  CHECK(y == doctest::Approx(0.05));

  hd_rest_point pts[3];
  std::size_t count = 0;
  REQUIRE(hd_two_classify(p, pts, &count) == HD_OK);
  CHECK(count == 3);
  CHECK(pts[2].stability == 0);

  unsigned mask = 99;
  REQUIRE(hd_two_correspondence(0, &mask) == HD_OK);
  CHECK(mask == (1u << 6));
  REQUIRE(hd_two_correspondence(1, &mask) == HD_OK);
  CHECK(mask == 0u);
  REQUIRE(hd_two_correspondence(2, &mask) == HD_OK);
  CHECK(mask == ((1u << 0) | (1u << 3)));
  CHECK(hd_two_correspondence(3, &mask) == HD_ERR_OUT_OF_RANGE);

  hd_trajectory* t = nullptr;
  REQUIRE(hd_two_integrate(p, 0.9, nullptr, &t) == HD_OK);
  CHECK(hd_trajectory_dimension(t) == 1);
  double last[2];
  REQUIRE(hd_trajectory_sample(t, hd_trajectory_size(t) - 1, last) == HD_OK);
  CHECK(std::abs(last[1] - 0.5) < 1e-6);
  const auto csv = scratch("two.csv");
  REQUIRE(hd_trajectory_write_csv(t, csv.c_str()) == HD_OK);
  CHECK(first_line(csv) == "t,z");
  CHECK(hd_trajectory_write_sidecar(t, scratch("two.json").c_str()) == HD_ERR_INVALID_ARGUMENT);
  hd_trajectory_destroy(t);
  CHECK(hd_two_integrate(p, 1.5, nullptr, &t) == HD_ERR_INVALID_START);
}

TEST_CASE("integration") {
  hd_integration_config cfg;
  hd_integration_config_default(&cfg);
  CHECK(cfg.rtol == 1e-6);
  CHECK(cfg.t_end == 2000.0);

  const hd_params p{-0.1, 0.2};
  const double s0[3] = {0.2, 0.3, 0.1};
  hd_trajectory* t = nullptr;
  REQUIRE(hd_integrate(p, s0, &cfg, &t) == HD_OK);
  CHECK(hd_trajectory_dimension(t) == 3);
  int terminal = -1, eq = -1;
  REQUIRE(hd_trajectory_terminal(t, &terminal, &eq) == HD_OK);
  CHECK(terminal == HD_TERMINAL_CONVERGED);
  CHECK(eq == 7);
  double first[5];
  REQUIRE(hd_trajectory_sample(t, 0, first) == HD_OK);
  CHECK(first[1] == 0.2);
  CHECK(first[4] == 1.0 - 0.2 - 0.3 - 0.1);
  CHECK(hd_trajectory_sample(t, hd_trajectory_size(t), first) == HD_ERR_OUT_OF_RANGE);
  CHECK(hd_trajectory_clamp_count(t) == 0);
  const auto csv = scratch("traj.csv");
  REQUIRE(hd_trajectory_write_csv(t, csv.c_str()) == HD_OK);
  CHECK(first_line(csv) == "t,x,y,z,w");
  REQUIRE(hd_trajectory_write_sidecar(t, scratch("traj.json").c_str()) == HD_OK);
  hd_trajectory_destroy(t);

  const double off[3] = {0.6, 0.6, 0.0};
  CHECK(hd_integrate(p, off, &cfg, &t) == HD_ERR_INVALID_START);
  CHECK(t == nullptr);

  hd_integration_config bad = cfg;
  bad.rtol = -1;
  CHECK(hd_integrate(p, s0, &bad, &t) == HD_ERR_INVALID_ARGUMENT);

  std::vector<double> starts(3 * 4);
  REQUIRE(hd_random_interior_starts(7, 3, starts.data()) == HD_OK);
  starts[9] = 0.9, starts[10] = 0.9, starts[11] = 0.9;
  hd_trajectory* out[4];
  hd_status st[4];
  // the call reports the first failing item; the others still run
  REQUIRE(hd_batch_integrate(p, starts.data(), 4, &cfg, 2, out, st) == HD_ERR_INVALID_START);
  for (int i = 0; i < 3; ++i) {
    CHECK(st[i] == HD_OK);
    REQUIRE(out[i] != nullptr);
    hd_trajectory_destroy(out[i]);
  }
  CHECK(st[3] == HD_ERR_INVALID_START);
  CHECK(out[3] == nullptr);
  CHECK(hd_batch_integrate(p, nullptr, 0, &cfg, 1, nullptr, nullptr) == HD_OK);
}
