// hawkdove-cli: command-line front end over the C interface.
//
// Exit codes: 0 success, 2 usage error (bad flags, bad input, unwritable
// output), 3 numerical failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hawkdove/hawkdove.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

constexpr const char* kStrategyNames[4] = {"HH", "HD", "DH", "DD"};

// Thrown to unwind with a specific exit code and message.
struct Exit {
  int code;
  std::string message;
};

int exit_code_for(hd_status s) {
  switch (s) {
    case HD_OK: return kExitOk;
    case HD_ERR_SINGULAR_JACOBIAN:
    case HD_ERR_NO_CONVERGENCE:
    case HD_ERR_STEP_FAILURE:
    case HD_ERR_INTERNAL: return kExitNumeric;
    default: return kExitUsage;
  }
}

void check(hd_status s, const std::string& what) {
  if (s != HD_OK) throw Exit{exit_code_for(s), what + ": " + hd_last_error()};
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt6(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0 in human-readable output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string eq_name(int id) { return "P" + std::to_string(id); }

fs::path default_out_dir() {
  if (const char* env = std::getenv("HAWKDOVE_OUT_DIR"); env && *env) return env;
  return ".";
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p = dir.empty() ? default_out_dir() : fs::path(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw Exit{kExitUsage, "cannot create output directory " + p.string()};
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  os << text;
  if (!os) throw Exit{kExitUsage, "cannot write " + path.string()};
}

// RAII wrappers over the opaque handles.
struct CatalogDeleter {
  void operator()(hd_catalog* p) const { hd_catalog_destroy(p); }
};
struct MapDeleter {
  void operator()(hd_region_map* p) const { hd_region_map_destroy(p); }
};
struct TransitionsDeleter {
  void operator()(hd_transitions* p) const { hd_transitions_destroy(p); }
};
struct NashDeleter {
  void operator()(hd_nash_list* p) const { hd_nash_list_destroy(p); }
};
struct TrajectoryDeleter {
  void operator()(hd_trajectory* p) const { hd_trajectory_destroy(p); }
};
using CatalogPtr = std::unique_ptr<hd_catalog, CatalogDeleter>;
using MapPtr = std::unique_ptr<hd_region_map, MapDeleter>;
using TransitionsPtr = std::unique_ptr<hd_transitions, TransitionsDeleter>;
using NashPtr = std::unique_ptr<hd_nash_list, NashDeleter>;
using TrajectoryPtr = std::unique_ptr<hd_trajectory, TrajectoryDeleter>;

std::vector<hd_equilibrium> load_catalog(hd_params p) {
  hd_catalog* raw = nullptr;
  check(hd_catalog_create(p, &raw), "catalog");
  CatalogPtr cat(raw);
  std::vector<hd_equilibrium> out(7);
  for (int id = 1; id <= 7; ++id) check(hd_catalog_get(cat.get(), id, &out[id - 1]), "catalog");
  return out;
}

std::string class_or_dash(int cls) { return cls == HD_NO_CLASS ? "-" : hd_class_name(cls); }

std::string eigen_text(const hd_eigenvalue& e) {
  if (e.im == 0.0) return fmt6(e.re);
  return fmt6(e.re) + (e.im < 0 ? "-" : "+") + fmt6(std::abs(e.im)) + "i";
}

std::string mask_names(unsigned mask) {
  std::string s;
  for (int k = 0; k < 7; ++k)
    if (mask & (1u << k)) s += (s.empty() ? "" : " ") + eq_name(k + 1);
  return s;
}

// ---------------------------------------------------------------- equilibria

struct EquilibriaArgs {
  double v = 0, c = 0;
  std::string format = "text";
  std::string output;
};

int cmd_equilibria(const EquilibriaArgs& a) {
  const hd_params p{a.v, a.c};
  const auto records = load_catalog(p);
  std::ostringstream os;
  if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& e : records) {
      ordered_json j;
      j["id"] = eq_name(e.id);
      j["defined"] = e.defined != 0;
      j["coords"] = e.defined ? ordered_json{e.coords[0], e.coords[1], e.coords[2]} : ordered_json(nullptr);
      j["in_simplex"] = e.in_simplex != 0;
      ordered_json eig = ordered_json::array();
      if (e.defined)
        for (const auto& l : e.eigenvalues) eig.push_back({{"re", l.re}, {"im", l.im}});
      j["eigenvalues"] = eig;
      j["classification"] = hd_class_name(e.classification);
      j["predicate_class"] = e.predicate_class == HD_NO_CLASS ? ordered_json(nullptr) : ordered_json(hd_class_name(e.predicate_class));
      j["agrees"] = e.agrees != 0;
      ordered_json co = ordered_json::array();
      for (int k = 0; k < 7; ++k)
        if (e.coincides_mask & (1u << k)) co.push_back(eq_name(k + 1));
      j["coincides_with"] = co;
      arr.push_back(j);
    }
    os << ordered_json{{"v", a.v}, {"c", a.c}, {"equilibria", arr}}.dump(2) << "\n";
  } else if (a.format == "csv") {
    os << "id,defined,x,y,z,in_simplex,l1_re,l1_im,l2_re,l2_im,l3_re,l3_im,classification,predicate_class,agrees\n";
    for (const auto& e : records) {
      os << eq_name(e.id) << ',' << e.defined;
      for (double x : e.coords) os << ',' << (e.defined ? fmt17(x) : "");
      os << ',' << e.in_simplex;
      for (const auto& l : e.eigenvalues) os << ',' << (e.defined ? fmt17(l.re) : "") << ',' << (e.defined ? fmt17(l.im) : "");
      os << ',' << hd_class_name(e.classification) << ',' << class_or_dash(e.predicate_class) << ',' << e.agrees << '\n';
    }
  } else {
    char line[512];
    std::snprintf(line, sizeof line, "v = %s, c = %s\n", fmt6(a.v).c_str(), fmt6(a.c).c_str());
    os << line;
    std::snprintf(line, sizeof line, "%-3s %-26s %-7s %-38s %-27s %-27s %s\n", "id", "coords", "simplex", "eigenvalues",
                  "classification", "predicate", "agrees");
    os << line;
    for (const auto& e : records) {
      std::string coords = "-", eig = "-";
      if (e.defined) {
        coords = "(" + fmt6(e.coords[0]) + ", " + fmt6(e.coords[1]) + ", " + fmt6(e.coords[2]) + ")";
        eig = eigen_text(e.eigenvalues[0]) + ", " + eigen_text(e.eigenvalues[1]) + ", " + eigen_text(e.eigenvalues[2]);
      }
      std::string cls = hd_class_name(e.classification);
      if (e.coincides_mask) cls += " [=" + mask_names(e.coincides_mask) + "]";
      std::snprintf(line, sizeof line, "%-3s %-26s %-7s %-38s %-27s %-27s %s\n", eq_name(e.id).c_str(), coords.c_str(),
                    e.defined ? (e.in_simplex ? "yes" : "no") : "-", eig.c_str(), cls.c_str(),
                    class_or_dash(e.predicate_class).c_str(), e.agrees ? "yes" : (e.predicate_class == HD_NO_CLASS ? "-" : "NO"));
      os << line;
    }
  }
  if (a.output.empty()) {
    std::cout << os.str();
  } else {
    write_text(a.output, os.str());
  }
  return kExitOk;
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
  double v = 0, c = 0;
  std::vector<std::string> starts;
  std::string starts_file;
  std::size_t random_starts = 0;
  std::uint64_t seed = 7;
  hd_integration_config cfg{};
  unsigned threads = 0;
  std::string out;
  bool svg = false;
};

std::vector<double> parse_triple(const std::string& text, const std::string& where) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
  std::istringstream is(s);
  std::vector<double> xs;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Exit{kExitUsage, where + ": '" + tok + "' is not a number"};
    }
  }
  if (xs.size() != 3) throw Exit{kExitUsage, where + ": expected three shares x,y,z"};
  return xs;
}

std::vector<double> collect_starts(const SimulateArgs& a) {
  std::vector<double> flat;
  for (const auto& s : a.starts) {
    const auto t = parse_triple(s, "--start " + s);
    flat.insert(flat.end(), t.begin(), t.end());
  }
  if (!a.starts_file.empty()) {
    std::ifstream is(a.starts_file);
    if (!is) throw Exit{kExitUsage, "cannot read " + a.starts_file};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto t = parse_triple(line, a.starts_file + ":" + std::to_string(lineno));
      flat.insert(flat.end(), t.begin(), t.end());
    }
  }
  if (a.random_starts > 0) {
    std::vector<double> r(3 * a.random_starts);
    check(hd_random_interior_starts(a.seed, a.random_starts, r.data()), "random starts");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

struct Path2 {
  std::vector<std::array<double, 3>> points;  // x, y, z
};

std::string portrait_svg(const std::vector<Path2>& paths, const std::vector<hd_equilibrium>& eq, double v, double c) {
  constexpr double panel = 260, pad = 40, gap = 30;
  const double width = 3 * panel + 2 * gap + 2 * pad;
  const double height = panel + 2 * pad + 20;
  const std::pair<int, int> axes[3] = {{0, 1}, {0, 2}, {1, 2}};
  const char* labels = "xyz";
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"20\">v = " << fmt6(v) << ", c = " << fmt6(c) << "</text>\n";
  for (int k = 0; k < 3; ++k) {
    const double ox = pad + k * (panel + gap);
    const double oy = pad + panel;
    auto X = [&](double a) { return ox + a * panel; };
    auto Y = [&](double b) { return oy - b * panel; };
    const auto [ia, ib] = axes[k];
    os << "<g>\n";
    os << "<polygon points=\"" << X(0) << ',' << Y(0) << ' ' << X(1) << ',' << Y(0) << ' ' << X(0) << ',' << Y(1)
       << "\" fill=\"none\" stroke=\"#999\"/>\n";
    os << "<text x=\"" << X(0.5) << "\" y=\"" << oy + 28 << "\" text-anchor=\"middle\">" << labels[ia] << "</text>\n";
    os << "<text x=\"" << ox - 18 << "\" y=\"" << Y(0.5) << "\">" << labels[ib] << "</text>\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& pts = paths[i].points;
      if (pts.empty()) continue;
      const char* color = palette[i % 10];
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
      for (const auto& q : pts) os << fmt6(X(q[ia])) << ',' << fmt6(Y(q[ib])) << ' ';
      os << "\"/>\n";
      const double sx = X(pts.front()[ia]), sy = Y(pts.front()[ib]);
      // start marker: asterisk
      os << "<path d=\"M" << sx - 4 << ',' << sy << "h8M" << sx << ',' << sy - 4 << "v8M" << sx - 3 << ',' << sy - 3
         << "l6,6M" << sx - 3 << ',' << sy + 3 << "l6,-6\" stroke=\"" << color << "\"/>\n";
    }
    for (const auto& e : eq) {
      if (!e.defined || !e.in_simplex) continue;
      const double ex = X(e.coords[ia]), ey = Y(e.coords[ib]);
      os << "<path d=\"M" << ex - 5 << ',' << ey - 5 << "l10,10M" << ex - 5 << ',' << ey + 5
         << "l10,-10\" stroke=\"red\" stroke-width=\"2\"><title>" << eq_name(e.id) << ' '
         << hd_class_name(e.classification) << "</title></path>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_simulate(const SimulateArgs& a) {
  const hd_params p{a.v, a.c};
  const auto flat = collect_starts(a);
  const std::size_t n = flat.size() / 3;
  std::vector<hd_trajectory*> raw(n, nullptr);
  std::vector<hd_status> status(n, HD_OK);
  const hd_status overall = hd_batch_integrate(p, flat.data(), n, &a.cfg, a.threads, raw.data(), status.data());
  std::vector<TrajectoryPtr> trajs;
  for (auto* t : raw) trajs.emplace_back(t);
  if (overall != HD_OK && overall != HD_ERR_STEP_FAILURE && overall != HD_ERR_INVALID_START) check(overall, "simulate");
  // Starts are validated as a whole: nothing is written if any is off the simplex.
  for (std::size_t i = 0; i < n; ++i) {
    if (trajs[i]) continue;
    throw Exit{kExitUsage, "start " + std::to_string(i) + " (" + fmt6(flat[3 * i]) + ", " + fmt6(flat[3 * i + 1]) +
                               ", " + fmt6(flat[3 * i + 2]) + ") is off the simplex"};
  }
  const fs::path dir = prepare_dir(a.out);

  std::map<std::string, int> histogram;
  ordered_json items = ordered_json::array();
  std::vector<Path2> paths;
  bool step_failure = false;
  for (std::size_t i = 0; i < n; ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "trajectory_%03zu", i);
    ordered_json item;
    item["index"] = i;
    item["start"] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
    const hd_trajectory* t = trajs[i].get();
    check(hd_trajectory_write_csv(t, (dir / (std::string(stem) + ".csv")).c_str()), "write trajectory");
    check(hd_trajectory_write_sidecar(t, (dir / (std::string(stem) + ".json")).c_str()), "write sidecar");
    int terminal = 0, eq = 0;
    check(hd_trajectory_terminal(t, &terminal, &eq), "trajectory");
    std::string key;
    if (terminal == HD_TERMINAL_CONVERGED) key = eq ? eq_name(eq) : "unidentified";
    else key = hd_terminal_name(terminal);
    step_failure = step_failure || terminal == HD_TERMINAL_STEP_FAILURE;
    ++histogram[key];
    item["file"] = std::string(stem) + ".csv";
    item["terminal"] = hd_terminal_name(terminal);
    item["equilibrium"] = eq ? ordered_json(eq_name(eq)) : ordered_json(nullptr);
    items.push_back(item);

    if (a.svg) {
      Path2 path;
      const std::size_t m = hd_trajectory_size(t);
      double s[5];
      for (std::size_t k = 0; k < m; ++k) {
        check(hd_trajectory_sample(t, k, s), "trajectory");
        path.points.push_back({s[1], s[2], s[3]});
      }
      paths.push_back(std::move(path));
    }
  }
  ordered_json summary;
  summary["v"] = a.v;
  summary["c"] = a.c;
  summary["seed"] = a.random_starts > 0 ? ordered_json(a.seed) : ordered_json(nullptr);
  summary["count"] = n;
  summary["config"] = {{"rtol", a.cfg.rtol},         {"atol", a.cfg.atol},
                       {"t_end", a.cfg.t_end},       {"max_step", a.cfg.max_step},
                       {"convergence_eps", a.cfg.convergence_eps}, {"record_stride", a.cfg.record_stride}};
  ordered_json hist = ordered_json::object();
  for (const auto& [k, cnt] : histogram) hist[k] = cnt;
  summary["histogram"] = hist;
  summary["trajectories"] = items;
  write_text(dir / "summary.json", summary.dump(2) + "\n");

  if (a.svg) write_text(dir / "portrait.svg", portrait_svg(paths, load_catalog(p), a.v, a.c));

  std::cout << n << " trajectories written to " << dir.string() << "\n";
  for (const auto& [k, cnt] : histogram) std::cout << "  " << k << ": " << cnt << "\n";
  if (step_failure) throw Exit{kExitNumeric, "integration step size underflow (partial outputs kept)"};
  return kExitOk;
}

// --------------------------------------------------------------- bifurcation

struct BifurcationArgs {
  hd_grid grid{};
  unsigned threads = 0;
  std::string out;
  std::string point;
};

const char* tag_color(int cls) {
  switch (cls) {
    case HD_STABLE_NODE: return "#2b8cbe";
    case HD_UNSTABLE_NODE: return "#e34a33";
    case HD_SADDLE: return "#fdbb84";
    case HD_NH_STABLE: return "#a6bddb";
    case HD_NH_UNSTABLE: return "#fc9272";
    case HD_NH_SADDLE: return "#fee8c8";
    case HD_NON_HYPERBOLIC: return "#bdbdbd";
    case HD_DEGENERATE: return "#000000";
    default: return "#ffffff";
  }
}

std::string heatmap_svg(const hd_region_map* map, const hd_grid& g, int id) {
  constexpr double size = 480, pad = 50;
  const double legend_w = 220;
  const double vspan = g.v_max - g.v_min, cspan = g.c_max - g.c_min;
  const double cw = size / static_cast<double>(g.n_v), ch = size / static_cast<double>(g.n_c);
  // Node (i, j) is drawn as a cell centred on its coordinates.
  auto X = [&](double v) { return pad + (vspan > 0 ? (v - g.v_min) / vspan * (size - cw) + cw / 2 : size / 2); };
  auto Y = [&](double c) { return pad + size - (cspan > 0 ? (c - g.c_min) / cspan * (size - ch) + ch / 2 : size / 2); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad + legend_w << "\" height=\""
     << size + 2 * pad << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"" << pad - 20 << "\">" << eq_name(id) << " classification over (v, c)</text>\n";
  std::map<int, int> seen;
  for (std::size_t i = 0; i < g.n_v; ++i) {
    for (std::size_t j = 0; j < g.n_c; ++j) {
      double v, c;
      int cls;
      check(hd_region_map_node(map, i, j, &v, &c), "region map");
      check(hd_region_map_tag(map, i, j, id, &cls), "region map");
      ++seen[cls];
      os << "<rect x=\"" << fmt6(X(v) - cw / 2) << "\" y=\"" << fmt6(Y(c) - ch / 2) << "\" width=\"" << fmt6(cw + 0.02)
         << "\" height=\"" << fmt6(ch + 0.02) << "\" fill=\"" << tag_color(cls) << "\"/>\n";
    }
  }
  // The four boundary lines, clipped to the plot box by the clip path.
  os << "<clipPath id=\"box\"><rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << size << "\" height=\"" << size
     << "\"/></clipPath>\n<g clip-path=\"url(#box)\" stroke-width=\"1.5\" fill=\"none\">\n";
  const double big = 10 * std::max({std::abs(g.v_min), std::abs(g.v_max), std::abs(g.c_min), std::abs(g.c_max), 1.0});
  auto line = [&](double v0, double c0, double v1, double c1, const char* color, const char* label) {
    os << "<line x1=\"" << fmt6(X(v0)) << "\" y1=\"" << fmt6(Y(c0)) << "\" x2=\"" << fmt6(X(v1)) << "\" y2=\""
       << fmt6(Y(c1)) << "\" stroke=\"" << color << "\"><title>" << label << "</title></line>\n";
  };
  line(-big, -big, big, big, "#333", "v = c");
  line(-big, 0, big, 0, "#666", "c = 0");
  line(0, -big, 0, big, "#666", "v = 0");
  line(-big, -2 * big, big, 2 * big, "#333", "c = 2v");
  os << "</g>\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << size << "\" height=\"" << size
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << pad + size / 2 << "\" y=\"" << pad + size + 35 << "\" text-anchor=\"middle\">v  ["
     << fmt6(g.v_min) << ", " << fmt6(g.v_max) << "]</text>\n";
  os << "<text x=\"" << 12 << "\" y=\"" << pad + size / 2 << "\" transform=\"rotate(-90 12 " << pad + size / 2
     << ")\" text-anchor=\"middle\">c  [" << fmt6(g.c_min) << ", " << fmt6(g.c_max) << "]</text>\n";
  double ly = pad;
  for (const auto& [cls, cnt] : seen) {
    os << "<rect x=\"" << pad + size + 20 << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\"" << tag_color(cls)
       << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << pad + size + 40 << "\" y=\"" << ly + 12 << "\">" << hd_class_name(cls) << " (" << cnt
       << ")</text>\n";
    ly += 20;
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_bifurcation(const BifurcationArgs& a) {
  int point = 0;
  if (!a.point.empty()) {
    point = hd_equilibrium_from_name(a.point.c_str());
    if (point == 0) throw Exit{kExitUsage, "--point expects P1..P7, got " + a.point};
  }
  hd_region_map* raw = nullptr;
  check(hd_scan(&a.grid, a.threads, &raw), "scan");
  MapPtr map(raw);
  const fs::path dir = prepare_dir(a.out);
  check(hd_region_map_write_csv(map.get(), (dir / "regions.csv").c_str()), "write region map");

  hd_transitions* traw = nullptr;
  check(hd_detect_transitions(map.get(), &traw), "transitions");
  TransitionsPtr tr(traw);
  ordered_json lines = ordered_json::object();
  std::cout << a.grid.n_v << "x" << a.grid.n_c << " nodes written to " << (dir / "regions.csv").string() << "\n";
  for (int l = 0; l < HD_LINE_COUNT; ++l) {
    std::size_t count = 0;
    check(hd_transitions_count(tr.get(), l, &count), "transitions");
    std::map<std::string, int> per_point;
    ordered_json list = ordered_json::array();
    for (std::size_t k = 0; k < count; ++k) {
      hd_transition t;
      check(hd_transitions_get(tr.get(), l, k, &t), "transitions");
      ++per_point[eq_name(t.equilibrium)];
      list.push_back({{"point", eq_name(t.equilibrium)},
                      {"from", hd_class_name(t.from)},
                      {"to", hd_class_name(t.to)},
                      {"between", {{t.v0, t.c0}, {t.v1, t.c1}}}});
    }
    lines[hd_line_name(l)] = list;
    if (count == 0) continue;
    std::cout << "  " << hd_line_name(l) << ": " << count << " transitions (";
    bool first = true;
    for (const auto& [id, cnt] : per_point) {
      std::cout << (first ? "" : ", ") << id << " " << cnt;
      first = false;
    }
    std::cout << ")\n";
  }
  write_text(dir / "transitions.json", lines.dump(1) + "\n");

  if (point) {
    const auto svg = dir / ("regions_" + a.point + ".svg");
    write_text(svg, heatmap_svg(map.get(), a.grid, point));
    std::cout << "heat map written to " << svg.string() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------- nash

struct NashArgs {
  double v = 0, c = 0;
  std::string output;
};

ordered_json support_names(unsigned mask) {
  ordered_json s = ordered_json::array();
  for (int k = 0; k < 4; ++k)
    if (mask & (1u << k)) s.push_back(kStrategyNames[k]);
  return s;
}

int cmd_nash(const NashArgs& a) {
  const hd_params p{a.v, a.c};
  hd_nash_list* raw = nullptr;
  check(hd_nash_via_stability(p, &raw), "nash");
  NashPtr list(raw);
  std::size_t n = 0;
  check(hd_nash_list_size(list.get(), &n), "nash");

  ordered_json reports = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    hd_nash_report r;
    check(hd_nash_list_get(list.get(), i, &r), "nash");
    reports.push_back({{"equilibrium", eq_name(r.source)},
                       {"candidate", {r.candidate[0], r.candidate[1], r.candidate[2], r.candidate[3]}},
                       {"via_stability", r.via_stability != 0},
                       {"via_best_response", r.via_best_response != 0},
                       {"margin", r.margin},
                       {"support", support_names(r.support_mask)}});
  }

  // Best-response probes at every pure strategy, independent of stability.
  ordered_json probes = ordered_json::array();
  bool all_zero = true;
  for (int k = 0; k < 4; ++k) {
    double sigma[4] = {0, 0, 0, 0};
    sigma[k] = 1.0;
    hd_nash_report r;
    check(hd_best_response_check(p, sigma, &r), "best response");
    all_zero = all_zero && r.margin == 0.0;
    probes.push_back({{"strategy", kStrategyNames[k]}, {"nash", r.via_best_response != 0}, {"margin", r.margin}});
  }
  double m[16];
  check(hd_payoff_matrix(p, m), "payoff");
  bool zero_game = true;
  for (double x : m) zero_game = zero_game && x == 0.0;

  ordered_json doc;
  doc["v"] = a.v;
  doc["c"] = a.c;
  doc["tolerance"] = hd_nash_tolerance(p);
  doc["degenerate"] = zero_game;
  doc["reports"] = reports;
  doc["pure_strategy_probes"] = probes;
  ordered_json notes = ordered_json::array();
  if (zero_game) notes.push_back("all payoffs vanish: every population is a Nash equilibrium with margin 0");
  if (a.v > 0 && a.c > 0 && a.c < a.v) {
    notes.push_back(
        "HD and DH are not Nash here although v > 0 and c > 0; the best-response test requires c >= v");
  }
  doc["notes"] = notes;

  const std::string text = doc.dump(2) + "\n";
  if (a.output.empty()) std::cout << text;
  else write_text(a.output, text);
  return kExitOk;
}

// -------------------------------------------------------------- two-strategy

struct TwoArgs {
  double v = 0, c = 0;
  std::string form = "auto";
  std::string format = "text";
  std::optional<double> z0;
  hd_integration_config cfg{};
  std::string out;
};

int cmd_two_strategy(const TwoArgs& a) {
  const hd_params p{a.v, a.c};
  const int form = a.form == "factored" ? 1 : a.form == "limit" ? 2 : 0;
  if (form == 1 && a.c == 0.0) {
    throw Exit{kExitUsage, "the factored form divides by c = 0; use --form limit (or auto) for the polynomial form"};
  }
  const bool limit_used = form == 2 || (form == 0 && a.c == 0.0);

  hd_rest_point pts[3];
  std::size_t count = 0;
  check(hd_two_classify(p, pts, &count), "classify");
  static const char* stability[] = {"stable", "unstable", "degenerate"};
  static const char* which_label[] = {"0", "1", "v/c"};

  ordered_json doc;
  doc["v"] = a.v;
  doc["c"] = a.c;
  doc["form"] = limit_used ? "limit" : "factored";
  ordered_json notes = ordered_json::array();
  if (limit_used && a.c == 0.0) notes.push_back("c = 0: using the limit form (v/2) z (1 - z)");
  doc["notes"] = notes;

  std::ostringstream text;
  text << "two-strategy game, v = " << fmt6(a.v) << ", c = " << fmt6(a.c) << " ("
       << (limit_used ? "polynomial" : "factored") << " form)\n";
  for (const auto& n : notes) text << "  note: " << n.get<std::string>() << "\n";
  ordered_json rest = ordered_json::array();
  for (std::size_t i = 0; i < count; ++i) {
    unsigned mask = 0;
    check(hd_two_correspondence(static_cast<int>(i), &mask), "correspondence");
    ordered_json corr = ordered_json::array();
    for (int k = 0; k < 7; ++k)
      if (mask & (1u << k)) corr.push_back(eq_name(k + 1));
    rest.push_back({{"rest_point", which_label[i]},
                    {"z", pts[i].z},
                    {"slope", pts[i].slope},
                    {"stability", stability[pts[i].stability]},
                    {"corresponds_to", corr}});
    std::string label = std::string("z = ") + which_label[i];
    if (i == 2) label += " = " + fmt6(pts[i].z);
    text << "  " << label << ": " << stability[pts[i].stability] << ", f'(z) = " << fmt6(pts[i].slope)
         << ", four-strategy points: " << (mask ? mask_names(mask) : std::string("none")) << "\n";
  }
  doc["rest_points"] = rest;

  ordered_json field = ordered_json::array();
  for (int k = 0; k <= 10; ++k) {
    const double z = k / 10.0;
    double fz;
    check(hd_two_f(p, z, form, &fz), "field");
    field.push_back({z, fz});
  }
  doc["field"] = field;

  int terminal = -1;
  if (a.z0) {
    hd_trajectory* raw = nullptr;
    const hd_status st = hd_two_integrate(p, *a.z0, &a.cfg, &raw);
    TrajectoryPtr t(raw);
    if (st != HD_OK && !t) check(st, "integrate");
    const fs::path dir = prepare_dir(a.out);
    const auto csv = dir / "two_strategy.csv";
    check(hd_trajectory_write_csv(t.get(), csv.c_str()), "write trajectory");
    int eq = 0;
    check(hd_trajectory_terminal(t.get(), &terminal, &eq), "trajectory");
    double last[2];
    check(hd_trajectory_sample(t.get(), hd_trajectory_size(t.get()) - 1, last), "trajectory");
    doc["trajectory"] = {{"z0", *a.z0}, {"file", "two_strategy.csv"}, {"terminal", hd_terminal_name(terminal)},
                         {"t_final", last[0]}, {"z_final", last[1]}};
    write_text(dir / "two_strategy.json", doc.dump(2) + "\n");
    text << "  run from z0 = " << fmt6(*a.z0) << ": " << hd_terminal_name(terminal) << " at z = " << fmt17(last[1])
         << " (t = " << fmt6(last[0]) << "), written to " << csv.string() << "\n";
  }
  std::cout << (a.format == "json" ? doc.dump(2) + "\n" : text.str());
  if (terminal == HD_TERMINAL_STEP_FAILURE) throw Exit{kExitNumeric, "integration step size underflow"};
  return kExitOk;
}

// -------------------------------------------------------------------- wiring

void add_params(CLI::App* cmd, double& v, double& c) {
  cmd->add_option("--v", v, "resource value v")->required();
  cmd->add_option("--c", c, "contest cost c")->required();
}

void add_integration(CLI::App* cmd, hd_integration_config& cfg) {
  cmd->add_option("--rtol", cfg.rtol, "relative tolerance")->capture_default_str();
  cmd->add_option("--atol", cfg.atol, "absolute tolerance")->capture_default_str();
  cmd->add_option("--t-end", cfg.t_end, "integration horizon")->capture_default_str();
  cmd->add_option("--max-step", cfg.max_step, "largest step size")->capture_default_str();
  cmd->add_option("--eps", cfg.convergence_eps, "convergence threshold on the field norm")->capture_default_str();
  cmd->add_option("--stride", cfg.record_stride, "record a sample at most every this many time units (0: every step)")
      ->capture_default_str();
}

void require_finite(double x, const char* flag) {
  if (!std::isfinite(x)) throw Exit{kExitUsage, std::string(flag) + " must be finite"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replicator dynamics of the four-strategy asymmetric Hawk-Dove game"};
  app.set_version_flag("--version", std::string(hd_version()));
  app.require_subcommand(1);

  EquilibriaArgs eq;
  auto* sub_eq = app.add_subcommand("equilibria", "classify the seven equilibria at (v, c)");
  add_params(sub_eq, eq.v, eq.c);
  sub_eq->add_option("--format", eq.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  sub_eq->add_option("-o,--output", eq.output, "write to this file instead of stdout");

  SimulateArgs sim;
  hd_integration_config_default(&sim.cfg);
  auto* sub_sim = app.add_subcommand("simulate", "integrate trajectories and write CSV, JSON and SVG output");
  add_params(sub_sim, sim.v, sim.c);
  sub_sim->add_option("--start", sim.starts, "initial shares x,y,z (repeatable)");
  sub_sim->add_option("--starts-file", sim.starts_file, "file with one x,y,z triple per line")->check(CLI::ExistingFile);
  sub_sim->add_option("--random-starts", sim.random_starts, "number of uniform interior starts");
  sub_sim->add_option("--seed", sim.seed, "seed for random starts")->capture_default_str();
  sub_sim->add_option("--threads", sim.threads, "worker threads (0: all cores)")->capture_default_str();
  sub_sim->add_option("--out", sim.out, "output directory (default $HAWKDOVE_OUT_DIR or .)");
  sub_sim->add_flag("--svg", sim.svg, "also write portrait.svg with x-y, x-z and y-z projections");
  add_integration(sub_sim, sim.cfg);

  BifurcationArgs bif;
  hd_grid_default(&bif.grid);
  auto* sub_bif = app.add_subcommand("bifurcation", "scan the (v, c) plane and locate stability changes");
  sub_bif->add_option("--v-min", bif.grid.v_min, "smallest v")->capture_default_str();
  sub_bif->add_option("--v-max", bif.grid.v_max, "largest v")->capture_default_str();
  sub_bif->add_option("--c-min", bif.grid.c_min, "smallest c")->capture_default_str();
  sub_bif->add_option("--c-max", bif.grid.c_max, "largest c")->capture_default_str();
  sub_bif->add_option("--n-v", bif.grid.n_v, "nodes along v")->check(CLI::PositiveNumber)->capture_default_str();
  sub_bif->add_option("--n-c", bif.grid.n_c, "nodes along c")->check(CLI::PositiveNumber)->capture_default_str();
  sub_bif->add_option("--threads", bif.threads, "worker threads (0: all cores)")->capture_default_str();
  sub_bif->add_option("--out", bif.out, "output directory (default $HAWKDOVE_OUT_DIR or .)");
  sub_bif->add_option("--point", bif.point, "write an SVG heat map for this equilibrium (P1..P7)");

  NashArgs nash;
  auto* sub_nash = app.add_subcommand("nash", "symmetric Nash equilibria from stability and best responses");
  add_params(sub_nash, nash.v, nash.c);
  sub_nash->add_option("-o,--output", nash.output, "write JSON to this file instead of stdout");

  TwoArgs two;
  hd_integration_config_default(&two.cfg);
  auto* sub_two = app.add_subcommand("two-strategy", "the classic Hawk-Dove game as a one-dimensional oracle");
  add_params(sub_two, two.v, two.c);
  sub_two->add_option("--form", two.form, "auto, factored or limit")
      ->check(CLI::IsMember({"auto", "factored", "limit"}))
      ->capture_default_str();
  sub_two->add_option("--format", two.format, "text or json on stdout")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub_two->add_option("--z0", two.z0, "integrate from this Hawk share and write two_strategy.csv");
  sub_two->add_option("--out", two.out, "output directory (default $HAWKDOVE_OUT_DIR or .)");
  add_integration(sub_two, two.cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sub_eq->parsed()) {
      require_finite(eq.v, "--v");
      require_finite(eq.c, "--c");
      return cmd_equilibria(eq);
    }
    if (sub_sim->parsed()) {
      require_finite(sim.v, "--v");
      require_finite(sim.c, "--c");
      return cmd_simulate(sim);
    }
    if (sub_bif->parsed()) return cmd_bifurcation(bif);
    if (sub_nash->parsed()) {
      require_finite(nash.v, "--v");
      require_finite(nash.c, "--c");
      return cmd_nash(nash);
    }
    if (sub_two->parsed()) {
      require_finite(two.v, "--v");
      require_finite(two.c, "--c");
      return cmd_two_strategy(two);
    }
  } catch (const Exit& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return kExitUsage;
}
