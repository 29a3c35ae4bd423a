#include "lorlim/lorlim.h"

#include <cmath>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "lorlim/errors.hpp"
#include "lorlim/experiments.hpp"
#include "lorlim/io.hpp"

using namespace lorlim;

struct lorlim_spacetime {
  SpacetimeConfig config;
  MetricField field;
  std::shared_ptr<const CausalLattice> lattice;
};

struct lorlim_time_field {
  ScalarTimeField field;
};

struct lorlim_zigzag {
  ZigzagGraph graph;
};

struct lorlim_result {
  std::vector<experiments::Result> results;
  std::vector<std::string> names;  // flattened "command/check"
  std::vector<const experiments::Check*> checks;
};

namespace {

thread_local std::string g_last_error;

lorlim_status fail(lorlim_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

/// Runs fn, mapping library exceptions to status codes.
template <class F>
lorlim_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return LORLIM_OK;
  } catch (const ConfigError& e) {
    return fail(LORLIM_ERR_CONFIG, e.what());
  } catch (const SignatureError& e) {
    return fail(LORLIM_ERR_SIGNATURE, e.what());
  } catch (const ExcludedPointError& e) {
    return fail(LORLIM_ERR_EXCLUDED_POINT, e.what());
  } catch (const CausalityError& e) {
    return fail(LORLIM_ERR_CAUSALITY, e.what());
  } catch (const DivergenceError& e) {
    return fail(LORLIM_ERR_DIVERGENCE, e.what());
  } catch (const MonotonicityError& e) {
    return fail(LORLIM_ERR_MONOTONICITY, e.what());
  } catch (const AcausalityError& e) {
    return fail(LORLIM_ERR_ACAUSALITY, e.what());
  } catch (const RegularityError& e) {
    return fail(LORLIM_ERR_REGULARITY, e.what());
  } catch (const MarginError& e) {
    return fail(LORLIM_ERR_MARGIN, e.what());
  } catch (const DisconnectedError& e) {
    return fail(LORLIM_ERR_DISCONNECTED, e.what());
  } catch (const StartPointError& e) {
    return fail(LORLIM_ERR_START_POINT, e.what());
  } catch (const ExtractionFailure& e) {
    return fail(LORLIM_ERR_EXTRACTION, e.what());
  } catch (const DomainError& e) {
    return fail(LORLIM_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LORLIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LORLIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LORLIM_ERR_INTERNAL, "unknown error");
  }
}

lorlim_result* wrap(std::vector<experiments::Result> results) {
  auto* r = new lorlim_result{std::move(results), {}, {}};
  for (const auto& res : r->results)
    for (const auto& c : res.checks) {
      r->names.push_back(res.name + "/" + c.name);
      r->checks.push_back(&c);
    }
  return r;
}

lorlim_spacetime* make_spacetime(SpacetimeConfig cfg) {
  MetricField field = build_metric_field(cfg);
  auto lat = experiments::build_config_lattice(cfg, field);
  return new lorlim_spacetime{std::move(cfg), std::move(field), std::move(lat)};
}

}  // namespace

#define LORLIM_REQUIRE(cond)                                                        \
  do {                                                                              \
    if (!(cond)) return fail(LORLIM_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

extern "C" {

const char* lorlim_version(void) { return "0.1.0"; }

const char* lorlim_last_error(void) { return g_last_error.c_str(); }

const char* lorlim_status_name(lorlim_status s) {
  switch (s) {
    case LORLIM_OK: return "ok";
    case LORLIM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LORLIM_ERR_CONFIG: return "config_error";
    case LORLIM_ERR_SIGNATURE: return "signature_error";
    case LORLIM_ERR_DOMAIN: return "domain_error";
    case LORLIM_ERR_EXCLUDED_POINT: return "excluded_point_error";
    case LORLIM_ERR_CAUSALITY: return "causality_error";
    case LORLIM_ERR_DIVERGENCE: return "divergence_error";
    case LORLIM_ERR_MONOTONICITY: return "monotonicity_error";
    case LORLIM_ERR_ACAUSALITY: return "acausality_error";
    case LORLIM_ERR_REGULARITY: return "regularity_error";
    case LORLIM_ERR_MARGIN: return "margin_error";
    case LORLIM_ERR_DISCONNECTED: return "disconnected_error";
    case LORLIM_ERR_START_POINT: return "start_point_error";
    case LORLIM_ERR_EXTRACTION: return "extraction_failure";
    case LORLIM_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case LORLIM_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

lorlim_status lorlim_spacetime_load(const char* path, lorlim_spacetime** out) {
  LORLIM_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] { *out = make_spacetime(load_config(path)); });
}

lorlim_status lorlim_spacetime_parse(const char* yaml_text, lorlim_spacetime** out) {
  LORLIM_REQUIRE(yaml_text && out);
  *out = nullptr;
  return guarded([&] { *out = make_spacetime(parse_config(yaml_text)); });
}

void lorlim_spacetime_free(lorlim_spacetime* st) { delete st; }

lorlim_status lorlim_spacetime_info(const lorlim_spacetime* st, size_t* nodes, size_t* edges, double* spacing) {
  LORLIM_REQUIRE(st);
  if (nodes) *nodes = st->lattice->node_count();
  if (edges) *edges = st->lattice->edge_count();
  if (spacing) *spacing = st->lattice->spacing();
  return LORLIM_OK;
}

lorlim_status lorlim_spacetime_domain(const lorlim_spacetime* st, double domain[4]) {
  LORLIM_REQUIRE(st && domain);
  const Rect& d = st->field.domain();
  domain[0] = d.x_min;
  domain[1] = d.x_max;
  domain[2] = d.y_min;
  domain[3] = d.y_max;
  return LORLIM_OK;
}

lorlim_status lorlim_classify_vector(const lorlim_spacetime* st, double px, double py, double vx, double vy,
                                     double tol, int* kind, int* direction) {
  LORLIM_REQUIRE(st && kind && direction);
  return guarded([&] {
    const VectorClass c = classify_vector(st->field, {px, py}, {vx, vy}, tol);
    *kind = c.kind == CausalKind::Timelike ? LORLIM_TIMELIKE : c.kind == CausalKind::Null ? LORLIM_NULL : LORLIM_SPACELIKE;
    *direction = c.direction == TimeDirection::Future ? LORLIM_FUTURE
                 : c.direction == TimeDirection::Past ? LORLIM_PAST
                                                      : LORLIM_NO_DIRECTION;
  });
}

lorlim_status lorlim_lorentzian_length(const lorlim_spacetime* st, const double* xy, size_t n, double* value) {
  LORLIM_REQUIRE(st && xy && value && n >= 2);
  return guarded([&] {
    std::vector<Point> pts;
    for (size_t k = 0; k < n; ++k) pts.push_back({xy[2 * k], xy[2 * k + 1]});
    *value = lorentzian_length(st->field, make_polyline(st->field, std::move(pts))).value;
  });
}

lorlim_status lorlim_time_field_build(const lorlim_spacetime* st, lorlim_time_field** out) {
  LORLIM_REQUIRE(st && out);
  *out = nullptr;
  return guarded([&] { *out = new lorlim_time_field{experiments::build_time_field(st->config, st->lattice)}; });
}

void lorlim_time_field_free(lorlim_time_field* tf) { delete tf; }

lorlim_status lorlim_time_field_eval(const lorlim_time_field* tf, double x, double y, double* value) {
  LORLIM_REQUIRE(tf && value);
  return guarded([&] { *value = tf->field({x, y}); });
}

lorlim_status lorlim_time_field_violations(const lorlim_time_field* tf, size_t* count) {
  LORLIM_REQUIRE(tf && count);
  *count = monotonicity_violations(tf->field, true);
  return LORLIM_OK;
}

lorlim_status lorlim_time_field_warnings(const lorlim_time_field* tf, size_t* count) {
  LORLIM_REQUIRE(tf && count);
  *count = tf->field.warnings().size();
  return LORLIM_OK;
}

lorlim_status lorlim_time_field_write(const lorlim_time_field* tf, const char* csv_path, const char* plot_path) {
  LORLIM_REQUIRE(tf);
  return guarded([&] {
    if (csv_path) io::write_file(csv_path, io::time_field_csv(tf->field));
    if (plot_path) io::write_file(plot_path, io::time_field_plot(tf->field));
  });
}

lorlim_status lorlim_gradient_report(const lorlim_time_field* tf, double x_min, double x_max, double y_min,
                                     double y_max, double* worst_gnorm, double* b, const char* csv_path) {
  LORLIM_REQUIRE(tf);
  return guarded([&] {
    const GradientReport g = gradient_report(tf->field, Rect{x_min, x_max, y_min, y_max});
    if (worst_gnorm) *worst_gnorm = g.worst_gnorm;
    if (b) *b = g.b;
    if (csv_path) io::write_file(csv_path, io::gradient_csv(g));
  });
}

lorlim_status lorlim_zigzag_build(const lorlim_time_field* tf, lorlim_zigzag** out) {
  LORLIM_REQUIRE(tf && out);
  *out = nullptr;
  return guarded([&] { *out = new lorlim_zigzag{ZigzagGraph(tf->field)}; });
}

void lorlim_zigzag_free(lorlim_zigzag* zz) { delete zz; }

lorlim_status lorlim_null_distance(const lorlim_zigzag* zz, double x0, double y0, double x1, double y1, double* value,
                                   double* path_xy, size_t path_capacity, size_t* path_len) {
  LORLIM_REQUIRE(zz && value);
  NullDistanceResult r;
  const lorlim_status s = guarded([&] {
    const CausalLattice& lat = zz->graph.lattice();
    const NodeId a = lat.nearest_node({x0, y0}), b = lat.nearest_node({x1, y1});
    if (a == kNoNode || b == kNoNode) throw ExcludedPointError("query point has no lattice node");
    r = null_distance(zz->graph, a, b);
  });
  if (s != LORLIM_OK) return s;
  *value = r.value;
  if (path_len) *path_len = r.witness_path.size();
  if (!path_xy) return LORLIM_OK;
  if (path_capacity < r.witness_path.size())
    return fail(LORLIM_ERR_BUFFER_TOO_SMALL, "witness path needs " + std::to_string(r.witness_path.size()) + " points");
  for (size_t k = 0; k < r.witness_path.size(); ++k) {
    const Point p = zz->graph.lattice().position(r.witness_path[k]);
    path_xy[2 * k] = p.x;
    path_xy[2 * k + 1] = p.y;
  }
  return LORLIM_OK;
}

lorlim_status lorlim_reproduce_example(const char* which, lorlim_result** out) {
  LORLIM_REQUIRE(which && out);
  *out = nullptr;
  const std::string w = which;
  if (w != "ex31" && w != "ex32") return fail(LORLIM_ERR_INVALID_ARGUMENT, "unknown example '" + w + "' (ex31, ex32)");
  return guarded([&] {
    *out = wrap({w == "ex31" ? experiments::reproduce_ex31() : experiments::reproduce_ex32()});
  });
}

lorlim_status lorlim_run_suite(const char* suite, const lorlim_run_options* options, lorlim_result** out) {
  LORLIM_REQUIRE(suite && out);
  *out = nullptr;
  experiments::Options opt;
  if (options) {
    opt.seed = options->seed;
    if (options->ladder) opt.ladder.assign(options->ladder, options->ladder + options->ladder_len);
    if (options->tol > 0) opt.tol = options->tol;
    if (options->config) opt.config = options->config->config;
  }
  return guarded([&] { *out = wrap(experiments::run_suite(suite, opt)); });
}

lorlim_status lorlim_extract(const lorlim_spacetime* st, lorlim_result** out) {
  LORLIM_REQUIRE(st && out);
  *out = nullptr;
  return guarded([&] { *out = wrap({experiments::run_extract(st->config)}); });
}

void lorlim_result_free(lorlim_result* r) { delete r; }

int lorlim_result_pass(const lorlim_result* r) {
  if (!r) return 0;
  for (const auto& res : r->results)
    if (!res.pass()) return 0;
  return 1;
}

size_t lorlim_result_check_count(const lorlim_result* r) { return r ? r->checks.size() : 0; }

lorlim_status lorlim_result_check(const lorlim_result* r, size_t index, const char** name, double* value,
                                  const char** threshold, int* pass) {
  LORLIM_REQUIRE(r && index < r->checks.size());
  const auto* c = r->checks[index];
  if (name) *name = r->names[index].c_str();
  if (value) *value = c->value;
  if (threshold) *threshold = c->threshold.c_str();
  if (pass) *pass = c->pass ? 1 : 0;
  return LORLIM_OK;
}

lorlim_status lorlim_result_write(const lorlim_result* r, const char* out_dir) {
  LORLIM_REQUIRE(r && out_dir);
  return guarded([&] {
    for (const auto& res : r->results) experiments::write_result(res, out_dir);
  });
}

}  // extern "C"
