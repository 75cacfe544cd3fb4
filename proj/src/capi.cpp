#include "hawkdove/hawkdove.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include "hawkdove/bifurcation.hpp"
#include "hawkdove/catalog.hpp"
#include "hawkdove/error.hpp"
#include "hawkdove/integrator.hpp"
#include "hawkdove/io.hpp"
#include "hawkdove/nash.hpp"
#include "hawkdove/two_strategy.hpp"

using namespace hawkdove;

struct hd_catalog {
  std::vector<EquilibriumRecord> records;
};

struct hd_region_map {
  RegionMap map;
};

struct hd_transitions {
  std::array<std::vector<Transition>, HD_LINE_COUNT> by_line;
};

struct hd_nash_list {
  std::vector<NashReport> reports;
};

struct hd_trajectory {
  Params params;
  std::variant<Trajectory, two::Trajectory1D> run;
};

namespace {

thread_local std::string g_last_error;

hd_status fail(hd_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

hd_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return HD_ERR_INVALID_ARGUMENT;
    case ErrorCode::UndefinedPoint: return HD_ERR_UNDEFINED_POINT;
    case ErrorCode::SingularJacobian: return HD_ERR_SINGULAR_JACOBIAN;
    case ErrorCode::NoConvergence: return HD_ERR_NO_CONVERGENCE;
    case ErrorCode::InvalidStart: return HD_ERR_INVALID_START;
    case ErrorCode::StepFailure: return HD_ERR_STEP_FAILURE;
    case ErrorCode::Io: return HD_ERR_IO;
  }
  return HD_ERR_INTERNAL;
}

template <class F>
hd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HD_ERR_INTERNAL, e.what());
  }
}

Params to_params(hd_params p) { return {p.v, p.c}; }

hd_status check_params(hd_params p) {
  if (!to_params(p).finite()) return fail(HD_ERR_INVALID_ARGUMENT, "v and c must be finite");
  return HD_OK;
}

#define HD_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(HD_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

int class_code(Classification c) { return static_cast<int>(c); }

bool valid_id(int id) { return id >= 1 && id <= static_cast<int>(kNumEquilibria); }
EquilibriumId to_id(int id) { return static_cast<EquilibriumId>(id - 1); }
int from_id(EquilibriumId id) { return static_cast<int>(index_of(id)) + 1; }

unsigned id_mask(const std::vector<EquilibriumId>& ids) {
  unsigned m = 0;
  for (auto id : ids) m |= 1u << index_of(id);
  return m;
}

IntegrationConfig to_config(const hd_integration_config* cfg) {
  IntegrationConfig c;
  if (cfg) {
    c.rtol = cfg->rtol;
    c.atol = cfg->atol;
    c.t_end = cfg->t_end;
    c.max_step = cfg->max_step;
    c.convergence_eps = cfg->convergence_eps;
    c.record_stride = cfg->record_stride;
  }
  return c;
}

void fill_report(const NashReport& r, hd_nash_report* out) {
  const auto a = r.candidate.as_array();
  for (int i = 0; i < 4; ++i) out->candidate[i] = a[i];
  out->source = r.source ? from_id(*r.source) : 0;
  out->via_stability = r.via_stability;
  out->via_best_response = r.via_best_response;
  out->margin = r.margin;
  out->support_mask = 0;
  for (auto s : r.support) out->support_mask |= 1u << static_cast<unsigned>(s);
}

template <class Writer>
hd_status write_file(const char* path, Writer&& w) {
  HD_REQUIRE(path, "path is NULL");
  std::ofstream os(path);
  if (!os) return fail(HD_ERR_IO, std::string("cannot open ") + path);
  w(os);
  if (!os) return fail(HD_ERR_IO, std::string("write failed for ") + path);
  return HD_OK;
}

}  // namespace

extern "C" {

const char* hd_version(void) { return "1.0.0"; }
const char* hd_last_error(void) { return g_last_error.c_str(); }

const char* hd_class_name(int cls) {
  static const char* names[] = {"StableNode",
                                "UnstableNode",
                                "Saddle",
                                "NormallyHyperbolicStable",
                                "NormallyHyperbolicUnstable",
                                "NormallyHyperbolicSaddle",
                                "NonHyperbolic",
                                "Degenerate",
                                "Undefined"};
  if (cls < 0 || cls > HD_UNDEFINED) return "None";
  return names[cls];
}

const char* hd_line_name(int line) {
  static const char* names[] = {"VeqC", "Ceq0", "Veq0", "Ceq2V", "Unexplained"};
  if (line < 0 || line >= HD_LINE_COUNT) return "?";
  return names[line];
}

const char* hd_terminal_name(int terminal) {
  static const char* names[] = {"ConvergedToEquilibrium", "TimeLimit", "StepFailure"};
  if (terminal < 0 || terminal > HD_TERMINAL_STEP_FAILURE) return "?";
  return names[terminal];
}

int hd_equilibrium_from_name(const char* name) {
  EquilibriumId id;
  if (!name || !parse_equilibrium(name, id)) return 0;
  return from_id(id);
}

hd_status hd_payoff_matrix(hd_params p, double out[16]) {
  HD_REQUIRE(out, "output is NULL");
  if (auto s = check_params(p)) return s;
  const auto m = build_payoff_matrix(to_params(p));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[4 * i + j] = m.at(i, j);
  return HD_OK;
}

hd_status hd_average_payoff(hd_params p, const double s[4], double* out) {
  HD_REQUIRE(s && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  *out = average_payoff(to_params(p), {s[0], s[1], s[2], s[3]});
  return HD_OK;
}

hd_status hd_field_4d(hd_params p, const double s[4], double out[4]) {
  HD_REQUIRE(s && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  const auto f = field_4d(to_params(p), {s[0], s[1], s[2], s[3]});
  for (int i = 0; i < 4; ++i) out[i] = f[i];
  return HD_OK;
}

hd_status hd_field_3d(hd_params p, const double s[3], double out[3]) {
  HD_REQUIRE(s && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  const auto f = field_3d(to_params(p), {s[0], s[1], s[2]});
  for (int i = 0; i < 3; ++i) out[i] = f[i];
  return HD_OK;
}

hd_status hd_consistency_residual(hd_params p, const double s[3], double* out) {
  HD_REQUIRE(s && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  *out = consistency_residual(to_params(p), {s[0], s[1], s[2]});
  return HD_OK;
}

hd_status hd_jacobian(hd_params p, const double s[3], double out[9]) {
  HD_REQUIRE(s && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  const auto j = jacobian(to_params(p), {s[0], s[1], s[2]});
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out[3 * i + k] = j[i][k];
  return HD_OK;
}

hd_status hd_eigenvalues(const double jac[9], hd_eigenvalue out[3]) {
  HD_REQUIRE(jac && out, "argument is NULL");
  Jacobian3 j;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      HD_REQUIRE(std::isfinite(jac[3 * i + k]), "Jacobian entries must be finite");
      j[i][k] = jac[3 * i + k];
    }
  const auto e = eigenvalues(j);
  for (int i = 0; i < 3; ++i) out[i] = {e[i].real(), e[i].imag()};
  return HD_OK;
}

hd_status hd_classify(const hd_eigenvalue eig[3], int* cls) {
  HD_REQUIRE(eig && cls, "argument is NULL");
  EigenTriple e;
  for (int i = 0; i < 3; ++i) e.values[i] = {eig[i].re, eig[i].im};
  *cls = class_code(classify(e));
  return HD_OK;
}

hd_status hd_catalog_create(hd_params p, hd_catalog** out) {
  HD_REQUIRE(out, "output is NULL");
  *out = nullptr;
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    *out = new hd_catalog{catalog(to_params(p))};
    return HD_OK;
  });
}

hd_status hd_catalog_get(const hd_catalog* cat, int id, hd_equilibrium* out) {
  HD_REQUIRE(cat && out, "argument is NULL");
  if (!valid_id(id)) return fail(HD_ERR_OUT_OF_RANGE, "equilibrium id must be 1..7");
  const auto& r = cat->records[static_cast<std::size_t>(id - 1)];
  out->id = id;
  out->coords[0] = r.coords.x;
  out->coords[1] = r.coords.y;
  out->coords[2] = r.coords.z;
  out->defined = r.defined;
  out->in_simplex = r.in_simplex;
  for (int i = 0; i < 3; ++i) out->eigenvalues[i] = {r.eigenvalues[i].real(), r.eigenvalues[i].imag()};
  out->classification = r.defined ? class_code(r.classification) : HD_UNDEFINED;
  out->predicate_class = r.predicate_class ? class_code(*r.predicate_class) : HD_NO_CLASS;
  out->agrees = r.agrees_with_predicate();
  out->coincides_mask = id_mask(r.coincides_with);
  return HD_OK;
}

void hd_catalog_destroy(hd_catalog* cat) { delete cat; }

hd_status hd_refine(hd_params p, const double guess[3], double out[3], int* iterations, int* used_pseudo_inverse) {
  HD_REQUIRE(guess && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    const auto r = refine(to_params(p), {guess[0], guess[1], guess[2]});
    out[0] = r.point.x;
    out[1] = r.point.y;
    out[2] = r.point.z;
    if (iterations) *iterations = r.iterations;
    if (used_pseudo_inverse) *used_pseudo_inverse = r.used_pseudo_inverse;
    return HD_OK;
  });
}

void hd_grid_default(hd_grid* out) {
  if (!out) return;
  const GridSpec g;
  *out = {g.v_min, g.v_max, g.c_min, g.c_max, g.n_v, g.n_c};
}

hd_status hd_scan(const hd_grid* grid, unsigned threads, hd_region_map** out) {
  HD_REQUIRE(grid && out, "argument is NULL");
  *out = nullptr;
  return guarded([&] {
    const GridSpec g{grid->v_min, grid->v_max, grid->c_min, grid->c_max, grid->n_v, grid->n_c};
    *out = new hd_region_map{scan(g, threads)};
    return HD_OK;
  });
}

hd_status hd_region_map_grid(const hd_region_map* map, hd_grid* out) {
  HD_REQUIRE(map && out, "argument is NULL");
  const GridSpec& g = map->map.grid();
  *out = {g.v_min, g.v_max, g.c_min, g.c_max, g.n_v, g.n_c};
  return HD_OK;
}

hd_status hd_region_map_node(const hd_region_map* map, size_t iv, size_t ic, double* v, double* c) {
  HD_REQUIRE(map && v && c, "argument is NULL");
  const GridSpec& g = map->map.grid();
  if (iv >= g.n_v || ic >= g.n_c) return fail(HD_ERR_OUT_OF_RANGE, "grid index out of range");
  *v = g.v_at(iv);
  *c = g.c_at(ic);
  return HD_OK;
}

hd_status hd_region_map_tag(const hd_region_map* map, size_t iv, size_t ic, int id, int* cls) {
  HD_REQUIRE(map && cls, "argument is NULL");
  const GridSpec& g = map->map.grid();
  if (iv >= g.n_v || ic >= g.n_c || !valid_id(id)) return fail(HD_ERR_OUT_OF_RANGE, "index out of range");
  *cls = static_cast<int>(map->map.tag(iv, ic, to_id(id)));
  return HD_OK;
}

hd_status hd_region_map_write_csv(const hd_region_map* map, const char* path) {
  HD_REQUIRE(map, "map is NULL");
  return guarded([&] { return write_file(path, [&](std::ostream& os) { io::write_region_map_csv(os, map->map); }); });
}

void hd_region_map_destroy(hd_region_map* map) { delete map; }

hd_status hd_detect_transitions(const hd_region_map* map, hd_transitions** out) {
  HD_REQUIRE(map && out, "argument is NULL");
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<hd_transitions>();
    for (auto& line : detect_transitions(map->map)) {
      t->by_line[static_cast<std::size_t>(line.id)] = std::move(line.affected);
    }
    *out = t.release();
    return HD_OK;
  });
}

hd_status hd_transitions_count(const hd_transitions* t, int line, size_t* count) {
  HD_REQUIRE(t && count, "argument is NULL");
  if (line < 0 || line >= HD_LINE_COUNT) return fail(HD_ERR_OUT_OF_RANGE, "unknown line");
  *count = t->by_line[static_cast<std::size_t>(line)].size();
  return HD_OK;
}

hd_status hd_transitions_get(const hd_transitions* t, int line, size_t index, hd_transition* out) {
  HD_REQUIRE(t && out, "argument is NULL");
  if (line < 0 || line >= HD_LINE_COUNT) return fail(HD_ERR_OUT_OF_RANGE, "unknown line");
  const auto& list = t->by_line[static_cast<std::size_t>(line)];
  if (index >= list.size()) return fail(HD_ERR_OUT_OF_RANGE, "transition index out of range");
  const Transition& tr = list[index];
  *out = {from_id(tr.point), static_cast<int>(tr.from), static_cast<int>(tr.to), tr.v0, tr.c0, tr.v1, tr.c1};
  return HD_OK;
}

void hd_transitions_destroy(hd_transitions* t) { delete t; }

hd_status hd_linearized_field(hd_params p, int id, double matrix[9], double affine[3]) {
  HD_REQUIRE(matrix, "matrix is NULL");
  if (!valid_id(id)) return fail(HD_ERR_OUT_OF_RANGE, "equilibrium id must be 1..7");
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    const auto s = linearized_field(to_params(p), to_id(id));
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) matrix[3 * i + k] = s.matrix[i][k];
      if (affine) affine[i] = s.affine[i];
    }
    return HD_OK;
  });
}

hd_status hd_nash_via_stability(hd_params p, hd_nash_list** out) {
  HD_REQUIRE(out, "output is NULL");
  *out = nullptr;
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    *out = new hd_nash_list{nash_via_stability(to_params(p))};
    return HD_OK;
  });
}

hd_status hd_nash_list_size(const hd_nash_list* list, size_t* size) {
  HD_REQUIRE(list && size, "argument is NULL");
  *size = list->reports.size();
  return HD_OK;
}

hd_status hd_nash_list_get(const hd_nash_list* list, size_t index, hd_nash_report* out) {
  HD_REQUIRE(list && out, "argument is NULL");
  if (index >= list->reports.size()) return fail(HD_ERR_OUT_OF_RANGE, "report index out of range");
  fill_report(list->reports[index], out);
  return HD_OK;
}

hd_status hd_nash_list_write_json(const hd_nash_list* list, const char* path) {
  HD_REQUIRE(list, "list is NULL");
  return guarded([&] { return write_file(path, [&](std::ostream& os) { io::write_nash_json(os, list->reports); }); });
}

void hd_nash_list_destroy(hd_nash_list* list) { delete list; }

hd_status hd_best_response_check(hd_params p, const double sigma[4], hd_nash_report* out) {
  HD_REQUIRE(sigma && out, "argument is NULL");
  if (auto st = check_params(p)) return st;
  const SimplexState s{sigma[0], sigma[1], sigma[2], sigma[3]};
  HD_REQUIRE(s.on_simplex(), "sigma must lie on the simplex");
  fill_report(best_response_check(to_params(p), s), out);
  return HD_OK;
}

double hd_nash_tolerance(hd_params p) { return nash_tolerance(to_params(p)); }

hd_status hd_two_f(hd_params p, double z, int form, double* out) {
  HD_REQUIRE(out, "output is NULL");
  HD_REQUIRE(form >= 0 && form <= 2, "form must be 0 (auto), 1 (factored) or 2 (limit)");
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    *out = two::f(to_params(p), {z}, static_cast<two::Form>(form));
    return HD_OK;
  });
}

hd_status hd_two_f_prime(hd_params p, double z, double* out) {
  HD_REQUIRE(out, "output is NULL");
  if (auto st = check_params(p)) return st;
  *out = two::f_prime(to_params(p), {z});
  return HD_OK;
}

hd_status hd_two_classify(hd_params p, hd_rest_point out[3], size_t* count) {
  HD_REQUIRE(out && count, "argument is NULL");
  if (auto st = check_params(p)) return st;
  const auto pts = two::classify_1d(to_params(p));
  *count = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i].z, pts[i].slope, static_cast<int>(pts[i].stability)};
  return HD_OK;
}

hd_status hd_two_correspondence(int which, unsigned* mask) {
  HD_REQUIRE(mask, "output is NULL");
  if (which < 0 || which > 2) return fail(HD_ERR_OUT_OF_RANGE, "rest point must be 0, 1 or 2");
  static constexpr two::RestPoint order[] = {two::RestPoint::Zero, two::RestPoint::One, two::RestPoint::Interior};
  *mask = id_mask(two::correspondence(order[which]));
  return HD_OK;
}

hd_status hd_two_integrate(hd_params p, double z0, const hd_integration_config* cfg, hd_trajectory** out) {
  HD_REQUIRE(out, "output is NULL");
  *out = nullptr;
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    *out = new hd_trajectory{to_params(p), two::integrate(to_params(p), {z0}, to_config(cfg))};
    return HD_OK;
  });
}

void hd_integration_config_default(hd_integration_config* out) {
  if (!out) return;
  const IntegrationConfig c;
  *out = {c.rtol, c.atol, c.t_end, c.max_step, c.convergence_eps, c.record_stride};
}

hd_status hd_integrate(hd_params p, const double s0[3], const hd_integration_config* cfg, hd_trajectory** out) {
  HD_REQUIRE(s0 && out, "argument is NULL");
  *out = nullptr;
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    auto t = integrate(to_params(p), {s0[0], s0[1], s0[2]}, to_config(cfg));
    const bool failed = t.terminal == Terminal::StepFailure;
    *out = new hd_trajectory{to_params(p), std::move(t)};
    return failed ? fail(HD_ERR_STEP_FAILURE, "step size underflow") : HD_OK;
  });
}

hd_status hd_batch_integrate(hd_params p, const double* starts, size_t n, const hd_integration_config* cfg,
                             unsigned threads, hd_trajectory** out, hd_status* status) {
  HD_REQUIRE((starts && out && status) || n == 0, "argument is NULL");
  if (auto st = check_params(p)) return st;
  return guarded([&] {
    std::vector<ReducedState> s;
    s.reserve(n);
    for (size_t i = 0; i < n; ++i) s.push_back({starts[3 * i], starts[3 * i + 1], starts[3 * i + 2]});
    auto items = batch_integrate(to_params(p), s, to_config(cfg), threads);
    hd_status worst = HD_OK;
    for (size_t i = 0; i < n; ++i) {
      if (items[i].trajectory) {
        const bool failed = items[i].trajectory->terminal == Terminal::StepFailure;
        status[i] = failed ? HD_ERR_STEP_FAILURE : HD_OK;
        out[i] = new hd_trajectory{to_params(p), std::move(*items[i].trajectory)};
      } else {
        status[i] = HD_ERR_INVALID_START;
        out[i] = nullptr;
        g_last_error = items[i].error;
      }
      if (status[i] != HD_OK && worst == HD_OK) worst = status[i];
    }
    return worst;
  });
}

hd_status hd_random_interior_starts(uint64_t seed, size_t n, double* out) {
  HD_REQUIRE(out || n == 0, "output is NULL");
  const auto starts = random_interior_starts(seed, n);
  for (size_t i = 0; i < n; ++i) {
    out[3 * i] = starts[i].x;
    out[3 * i + 1] = starts[i].y;
    out[3 * i + 2] = starts[i].z;
  }
  return HD_OK;
}

size_t hd_trajectory_dimension(const hd_trajectory* t) {
  if (!t) return 0;
  return std::holds_alternative<Trajectory>(t->run) ? 3 : 1;
}

size_t hd_trajectory_size(const hd_trajectory* t) {
  if (!t) return 0;
  return std::visit([](const auto& r) { return r.samples.size(); }, t->run);
}

hd_status hd_trajectory_sample(const hd_trajectory* t, size_t index, double* out) {
  HD_REQUIRE(t && out, "argument is NULL");
  if (index >= hd_trajectory_size(t)) return fail(HD_ERR_OUT_OF_RANGE, "sample index out of range");
  if (const auto* tr = std::get_if<Trajectory>(&t->run)) {
    const Sample& s = tr->samples[index];
    out[0] = s.t, out[1] = s.x, out[2] = s.y, out[3] = s.z, out[4] = s.w;
  } else {
    const auto& s = std::get<two::Trajectory1D>(t->run).samples[index];
    out[0] = s.t, out[1] = s.z;
  }
  return HD_OK;
}

hd_status hd_trajectory_terminal(const hd_trajectory* t, int* terminal, int* equilibrium) {
  HD_REQUIRE(t && terminal, "argument is NULL");
  std::visit([&](const auto& r) { *terminal = static_cast<int>(r.terminal); }, t->run);
  if (equilibrium) {
    *equilibrium = 0;
    if (const auto* tr = std::get_if<Trajectory>(&t->run); tr && tr->equilibrium) *equilibrium = from_id(*tr->equilibrium);
  }
  return HD_OK;
}

size_t hd_trajectory_clamp_count(const hd_trajectory* t) {
  if (const auto* tr = t ? std::get_if<Trajectory>(&t->run) : nullptr) return tr->clamp_count;
  return 0;
}

hd_status hd_trajectory_write_csv(const hd_trajectory* t, const char* path) {
  HD_REQUIRE(t, "trajectory is NULL");
  return guarded([&] {
    return write_file(path, [&](std::ostream& os) {
      if (const auto* tr = std::get_if<Trajectory>(&t->run)) io::write_trajectory_csv(os, *tr);
      else io::write_trajectory1d_csv(os, std::get<two::Trajectory1D>(t->run));
    });
  });
}

hd_status hd_trajectory_write_sidecar(const hd_trajectory* t, const char* path) {
  HD_REQUIRE(t, "trajectory is NULL");
  const auto* tr = std::get_if<Trajectory>(&t->run);
  HD_REQUIRE(tr, "sidecar is only defined for four-strategy trajectories");
  return guarded([&] { return write_file(path, [&](std::ostream& os) { io::write_trajectory_sidecar(os, t->params, *tr); }); });
}

void hd_trajectory_destroy(hd_trajectory* t) { delete t; }

}  // extern "C"
