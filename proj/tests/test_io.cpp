#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "hawkdove/error.hpp"
#include "hawkdove/io.hpp"
#include "json.hpp"

using namespace hawkdove;
using nlohmann::json;

TEST_CASE("doubles print exactly") {
  for (double x : {0.1, -0.3, 1.0 / 3.0, 0.0, 1e-300, 6.02e23}) CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("region map round trip") {
  GridSpec g{-0.3, 0.3, -0.2, 0.25, 7, 5};
  const auto m = scan(g);
  std::stringstream ss;
  io::write_region_map_csv(ss, m);
  std::string header;
  std::getline(std::istringstream(ss.str()) >> std::ws, header);
  CHECK(header == "v,c,P1,P2,P3,P4,P5,P6,P7");
  const auto back = io::read_region_map_csv(ss);
  CHECK(back == m);
  CHECK(back.grid().n_v == 7);
  CHECK(back.grid().n_c == 5);
  CHECK(back.grid().v_min == -0.3);
  CHECK(back.grid().c_max == 0.25);
}

TEST_CASE("region map rows are ordered v then c") {
  GridSpec g{0.0, 0.1, 0.0, 0.2, 2, 3};
  std::stringstream ss;
  io::write_region_map_csv(ss, scan(g));
  std::string line;
  std::getline(ss, line);
  std::vector<std::string> rows;
  while (std::getline(ss, line)) rows.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
  CHECK(rows == std::vector<std::string>{"0,0", "0,0.10000000000000001", "0,0.20000000000000001", "0.10000000000000001,0",
                                         "0.10000000000000001,0.10000000000000001",
                                         "0.10000000000000001,0.20000000000000001"});
}

TEST_CASE("malformed region maps are rejected") {
  for (const char* text : {"", "v,c\n", "v,c,P1,P2,P3,P4,P5,P6,P7\n0,0,Saddle\n",
                           "v,c,P1,P2,P3,P4,P5,P6,P7\n0,0,Saddle,Saddle,Saddle,Saddle,Saddle,Saddle,Spiral\n",
                           "v,c,P1,P2,P3,P4,P5,P6,P7\n0,x,Saddle,Saddle,Saddle,Saddle,Saddle,Saddle,Saddle\n"}) {
    std::istringstream is(text);
    try {
      io::read_region_map_csv(is);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Io);
    }
  }
}

TEST_CASE("trajectory CSV round trip and sidecar") {
  const Params p{0.1, 0.2};
  const auto t = integrate(p, {0.2, 0.3, 0.1});
  std::stringstream ss;
  io::write_trajectory_csv(ss, t);
  CHECK(ss.str().rfind("t,x,y,z,w\n", 0) == 0);
  const auto back = io::read_trajectory_csv(ss);
  REQUIRE(back.size() == t.samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    REQUIRE(back[i].t == t.samples[i].t);
    REQUIRE(back[i].x == t.samples[i].x);
    REQUIRE(back[i].w == t.samples[i].w);
  }

  std::stringstream side;
  io::write_trajectory_sidecar(side, p, t);
  const auto j = json::parse(side.str());
  CHECK(j["v"] == 0.1);
  CHECK(j["terminal"] == "ConvergedToEquilibrium");
  CHECK(j["equilibrium"] == std::string(equilibrium_name(*t.equilibrium)));
  CHECK(j["start"].size() == 4);
  CHECK(j["final"].size() == 4);
  CHECK(j["accepted_steps"] == t.accepted_steps);
  CHECK(j["clamp_count"] == t.clamp_count);

  IntegrationConfig shortrun;
  shortrun.t_end = 1;
  std::stringstream side2;
  io::write_trajectory_sidecar(side2, p, integrate(p, {0.2, 0.3, 0.1}, shortrun));
  CHECK(json::parse(side2.str())["equilibrium"].is_null());
}

TEST_CASE("one-dimensional trajectory CSV") {
  std::stringstream ss;
  io::write_trajectory1d_csv(ss, two::integrate({0.1, 0.2}, {0.9}));
  std::string line;
  std::getline(ss, line);
  CHECK(line == "t,z");
  std::getline(ss, line);
  CHECK(line == "0,0.90000000000000002");
}

TEST_CASE("Nash JSON") {
  std::stringstream ss;
  io::write_nash_json(ss, nash_via_stability({0.1, 0.2}));
  const auto j = json::parse(ss.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  for (const auto& r : j) {
    CHECK(r["candidate"].size() == 4);
    CHECK(r["via_stability"] == true);
    CHECK(r["via_best_response"] == true);
    CHECK(r["margin"].is_number());
    CHECK(r["support"].size() == 1);
  }
  CHECK(j[0]["support"][0] == "DH");
  CHECK(j[1]["support"][0] == "HD");
}
