#include "hawkdove/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "hawkdove/error.hpp"

namespace hawkdove::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Io, "bad number '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::Io, "bad number '" + s + "'");
  return v;
}

constexpr const char* kRegionHeader = "v,c,P1,P2,P3,P4,P5,P6,P7";
constexpr const char* kTrajectoryHeader = "t,x,y,z,w";

}  // namespace

void write_region_map_csv(std::ostream& os, const RegionMap& m) {
  const GridSpec& g = m.grid();
  os << kRegionHeader << '\n';
  for (std::size_t iv = 0; iv < g.n_v; ++iv) {
    for (std::size_t ic = 0; ic < g.n_c; ++ic) {
      os << format_double(g.v_at(iv)) << ',' << format_double(g.c_at(ic));
      for (NodeTag t : m.cell(iv, ic)) os << ',' << node_tag_name(t);
      os << '\n';
    }
  }
}

RegionMap read_region_map_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kRegionHeader) throw Error(ErrorCode::Io, "missing region map header");
  std::vector<double> vs, cs;
  std::vector<RegionMap::Cell> cells;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 2 + kNumEquilibria) throw Error(ErrorCode::Io, "region map row has wrong width");
    vs.push_back(parse_double(f[0]));
    cs.push_back(parse_double(f[1]));
    RegionMap::Cell cell;
    for (std::size_t k = 0; k < kNumEquilibria; ++k) {
      if (!parse_node_tag(f[2 + k], cell[k])) throw Error(ErrorCode::Io, "unknown tag '" + f[2 + k] + "'");
    }
    cells.push_back(cell);
  }
  if (cells.empty()) throw Error(ErrorCode::Io, "empty region map");

  // Rows are v-major, so n_c is the length of the first run of equal v.
  std::size_t n_c = 1;
  while (n_c < vs.size() && vs[n_c] == vs[0]) ++n_c;
  if (cells.size() % n_c != 0) throw Error(ErrorCode::Io, "region map is not rectangular");
  GridSpec g;
  g.n_c = n_c;
  g.n_v = cells.size() / n_c;
  g.v_min = vs.front();
  g.v_max = vs.back();
  g.c_min = cs.front();
  g.c_max = cs[n_c - 1];
  return RegionMap(g, std::move(cells));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << kTrajectoryHeader << '\n';
  for (const auto& s : t.samples) {
    os << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
       << format_double(s.z) << ',' << format_double(s.w) << '\n';
  }
}

std::vector<Sample> read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTrajectoryHeader) throw Error(ErrorCode::Io, "missing trajectory header");
  std::vector<Sample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw Error(ErrorCode::Io, "trajectory row has wrong width");
    out.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                   parse_double(f[4])});
  }
  return out;
}

void write_trajectory_sidecar(std::ostream& os, const Params& p, const Trajectory& t) {
  json j;
  j["v"] = p.v;
  j["c"] = p.c;
  j["terminal"] = std::string(terminal_name(t.terminal));
  j["equilibrium"] = t.equilibrium ? json(std::string(equilibrium_name(*t.equilibrium))) : json(nullptr);
  const Sample& first = t.samples.front();
  const Sample& last = t.samples.back();
  j["start"] = {first.x, first.y, first.z, first.w};
  j["final"] = {last.x, last.y, last.z, last.w};
  j["t_final"] = last.t;
  j["accepted_steps"] = t.accepted_steps;
  j["rejected_steps"] = t.rejected_steps;
  j["clamp_count"] = t.clamp_count;
  os << j.dump(2) << '\n';
}

void write_trajectory1d_csv(std::ostream& os, const two::Trajectory1D& t) {
  os << "t,z\n";
  for (const auto& s : t.samples) os << format_double(s.t) << ',' << format_double(s.z) << '\n';
}

namespace {

json strategy_list(const std::vector<Strategy>& ss) {
  json out = json::array();
  for (auto s : ss) out.push_back(std::string(strategy_name(s)));
  return out;
}

}  // namespace

void write_nash_json(std::ostream& os, const std::vector<NashReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json j;
    j["candidate"] = r.candidate.as_array();
    j["via_stability"] = r.via_stability;
    j["via_best_response"] = r.via_best_response;
    j["margin"] = r.margin;
    j["support"] = strategy_list(r.support);
    if (r.source) j["equilibrium"] = std::string(equilibrium_name(*r.source));
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace hawkdove::io
