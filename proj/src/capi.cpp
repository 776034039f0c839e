#include "denmet/denmet.h"

#include <cstring>
#include <new>
#include <string>

#include "algebra.hpp"
#include "experiments.hpp"
#include "hermitian.hpp"
#include "metrics.hpp"
#include "piecewise.hpp"
#include "serialize.hpp"

using namespace denmet;

struct dm_algebra {
  AlgebraShape shape;
  Trace trace;
};

struct dm_element {
  Element value;
};

struct dm_seminorm {
  Seminorm value;
};

struct dm_pwfunc {
  PiecewiseFunction value;
};

namespace {

thread_local std::string g_last_error;

dm_status map_code(errc code) {
  switch (code) {
    case errc::bad_argument: return DM_ERR_BAD_ARGUMENT;
    case errc::shape_mismatch: return DM_ERR_SHAPE_MISMATCH;
    case errc::not_hermitian: return DM_ERR_NOT_HERMITIAN;
    case errc::not_positive: return DM_ERR_NOT_POSITIVE;
    case errc::degenerate_input: return DM_ERR_DEGENERATE;
    case errc::domain: return DM_ERR_DOMAIN;
    case errc::seminorm_rank: return DM_ERR_SEMINORM_RANK;
    case errc::no_convergence: return DM_ERR_NO_CONVERGENCE;
    case errc::numeric: return DM_ERR_NUMERIC;
    case errc::resample: return DM_ERR_RESAMPLE;
    case errc::parse: return DM_ERR_PARSE;
    case errc::io: return DM_ERR_IO;
  }
  return DM_ERR_INTERNAL;
}

template <typename Fn>
dm_status guarded(Fn&& fn) {
  try {
    fn();
    return DM_OK;
  } catch (const error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DM_ERR_INTERNAL;
  }
}

dm_status require(bool ok, const char* msg) {
  if (ok) return DM_OK;
  g_last_error = msg;
  return DM_ERR_BAD_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

DensityElement as_density(const dm_algebra* alg, const dm_element* e, const char* who) {
  const PositivityCertificate cert = check_positive(e->value);
  if (!cert.positive)
    fail(errc::not_positive, std::string(who) + ": element is not positive (min eigenvalue " +
                                 format_sig(cert.min_eigenvalue) + ")");
  const double t = trace_eval(alg->trace, e->value).real();
  if (std::abs(t - 1.0) > 1e-9)
    fail(errc::domain, std::string(who) + ": trace is " + format_sig(t) +
                           ", normalize the element first");
  return normalize_to_density(alg->trace, e->value);
}

}  // namespace

extern "C" {

const char* dm_version(void) { return "0.1.0"; }

const char* dm_last_error(void) { return g_last_error.c_str(); }

void dm_string_free(char* s) { delete[] s; }

dm_status dm_algebra_create(const int32_t* block_dims, size_t block_count,
                            const double* weights, dm_algebra** out) {
  if (dm_status st = require(block_dims && weights && out && block_count > 0,
                             "dm_algebra_create: NULL argument or empty shape"))
    return st;
  return guarded([&] {
    std::vector<int> dims(block_dims, block_dims + block_count);
    std::vector<double> w(weights, weights + block_count);
    AlgebraShape shape(std::move(dims));
    Trace trace(shape, std::move(w));
    *out = new dm_algebra{std::move(shape), std::move(trace)};
  });
}

void dm_algebra_free(dm_algebra* a) { delete a; }

size_t dm_algebra_block_count(const dm_algebra* a) {
  return a ? static_cast<size_t>(a->shape.block_count()) : 0;
}

dm_status dm_element_identity(const dm_algebra* a, dm_element** out) {
  if (dm_status st = require(a && out, "dm_element_identity: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{Element::identity(a->shape)}; });
}

dm_status dm_element_diagonal(const dm_algebra* a, const double* entries, size_t count,
                              dm_element** out) {
  if (dm_status st = require(a && entries && out, "dm_element_diagonal: NULL argument"))
    return st;
  return guarded([&] {
    std::vector<double> e(entries, entries + count);
    *out = new dm_element{Element::diagonal(a->shape, e)};
  });
}

dm_status dm_element_from_json(const dm_algebra* a, const char* json_text, dm_element** out) {
  if (dm_status st = require(a && json_text && out, "dm_element_from_json: NULL argument"))
    return st;
  return guarded([&] {
    const auto j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse, "dm_element_from_json: malformed JSON");
    Element e = element_from_json(j);
    if (e.shape() != a->shape)
      fail(errc::shape_mismatch, "dm_element_from_json: element shape " +
                                     e.shape().describe() + " does not match algebra " +
                                     a->shape.describe());
    *out = new dm_element{std::move(e)};
  });
}

dm_status dm_element_to_json(const dm_element* e, char** out_json) {
  if (dm_status st = require(e && out_json, "dm_element_to_json: NULL argument")) return st;
  return guarded([&] { *out_json = dup_string(element_to_json(e->value).dump()); });
}

void dm_element_free(dm_element* e) { delete e; }

dm_status dm_element_add(const dm_element* a, const dm_element* b, dm_element** out) {
  if (dm_status st = require(a && b && out, "dm_element_add: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{a->value + b->value}; });
}

dm_status dm_element_scale(const dm_element* a, double re, double im, dm_element** out) {
  if (dm_status st = require(a && out, "dm_element_scale: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{a->value.scaled(cplx(re, im))}; });
}

dm_status dm_element_mul(const dm_element* a, const dm_element* b, dm_element** out) {
  if (dm_status st = require(a && b && out, "dm_element_mul: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{a->value * b->value}; });
}

dm_status dm_element_adjoint(const dm_element* a, dm_element** out) {
  if (dm_status st = require(a && out, "dm_element_adjoint: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{a->value.adjoint()}; });
}

dm_status dm_cstar_norm(const dm_element* a, double* out) {
  if (dm_status st = require(a && out, "dm_cstar_norm: NULL argument")) return st;
  return guarded([&] { *out = cstar_norm(a->value); });
}

dm_status dm_cstar_distance(const dm_element* a, const dm_element* b, double* out) {
  if (dm_status st = require(a && b && out, "dm_cstar_distance: NULL argument")) return st;
  return guarded([&] { *out = cstar_distance(a->value, b->value); });
}

dm_status dm_trace_eval(const dm_algebra* alg, const dm_element* a, double* out_re,
                        double* out_im) {
  if (dm_status st = require(alg && a && out_re, "dm_trace_eval: NULL argument")) return st;
  return guarded([&] {
    const cplx v = trace_eval(alg->trace, a->value);
    *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

dm_status dm_tau_norm(const dm_algebra* alg, const dm_element* a, double* out) {
  if (dm_status st = require(alg && a && out, "dm_tau_norm: NULL argument")) return st;
  return guarded([&] { *out = tau_norm(alg->trace, a->value); });
}

dm_status dm_check_positive(const dm_element* a, double tolerance, int* is_positive,
                            double* min_eig) {
  if (dm_status st = require(a && is_positive, "dm_check_positive: NULL argument")) return st;
  return guarded([&] {
    const PositivityCertificate cert =
        check_positive(a->value, tolerance > 0 ? tolerance : tol::positivity);
    *is_positive = cert.positive ? 1 : 0;
    if (min_eig) *min_eig = cert.min_eigenvalue;
  });
}

dm_status dm_matrix_sqrt(const dm_element* a, dm_element** out) {
  if (dm_status st = require(a && out, "dm_matrix_sqrt: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{matrix_sqrt(a->value)}; });
}

dm_status dm_matrix_abs(const dm_element* a, dm_element** out) {
  if (dm_status st = require(a && out, "dm_matrix_abs: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{matrix_abs(a->value)}; });
}

dm_status dm_normalize_to_density(const dm_algebra* alg, const dm_element* a,
                                  dm_element** out) {
  if (dm_status st = require(alg && a && out, "dm_normalize_to_density: NULL argument"))
    return st;
  return guarded([&] {
    *out = new dm_element{normalize_to_density(alg->trace, a->value).element()};
  });
}

dm_status dm_sample_density(const dm_algebra* alg, uint64_t seed, dm_element** out) {
  if (dm_status st = require(alg && out, "dm_sample_density: NULL argument")) return st;
  return guarded([&] { *out = new dm_element{sample_density(alg->trace, seed).element()}; });
}

dm_status dm_bures_distance(const dm_algebra* alg, const dm_element* x, const dm_element* y,
                            double* out) {
  if (dm_status st = require(alg && x && y && out, "dm_bures_distance: NULL argument"))
    return st;
  return guarded([&] {
    *out = bures_distance(alg->trace, as_density(alg, x, "dm_bures_distance"),
                          as_density(alg, y, "dm_bures_distance"));
  });
}

dm_status dm_bures_commutative_closed_form(const dm_algebra* alg, const dm_element* x,
                                           const dm_element* y, double* out) {
  if (dm_status st =
          require(alg && x && y && out, "dm_bures_commutative_closed_form: NULL argument"))
    return st;
  return guarded([&] {
    *out = bures_commutative_closed_form(
        alg->trace, as_density(alg, x, "dm_bures_commutative_closed_form"),
        as_density(alg, y, "dm_bures_commutative_closed_form"));
  });
}

dm_status dm_seminorm_create(const dm_algebra* alg, const double* functionals, size_t count,
                             dm_seminorm** out) {
  if (dm_status st = require(alg && functionals && out && count > 0,
                             "dm_seminorm_create: NULL argument or empty functional list"))
    return st;
  return guarded([&] {
    const size_t n = static_cast<size_t>(alg->shape.block_count());
    std::vector<std::vector<double>> rows(count, std::vector<double>(n));
    for (size_t r = 0; r < count; ++r)
      for (size_t c = 0; c < n; ++c) rows[r][c] = functionals[r * n + c];
    *out = new dm_seminorm{Seminorm(alg->shape, std::move(rows))};
  });
}

dm_status dm_seminorm_difference_c2(dm_seminorm** out) {
  if (dm_status st = require(out != nullptr, "dm_seminorm_difference_c2: NULL argument"))
    return st;
  return guarded([&] { *out = new dm_seminorm{Seminorm::difference_c2()}; });
}

void dm_seminorm_free(dm_seminorm* s) { delete s; }

dm_status dm_seminorm_eval(const dm_seminorm* s, const dm_element* a, double* out) {
  if (dm_status st = require(s && a && out, "dm_seminorm_eval: NULL argument")) return st;
  return guarded([&] { *out = s->value.eval(a->value); });
}

dm_status dm_mk_distance(const dm_algebra* alg, const dm_seminorm* s, const dm_element* x,
                         const dm_element* y, double* out) {
  if (dm_status st = require(alg && s && x && y && out, "dm_mk_distance: NULL argument"))
    return st;
  return guarded([&] {
    *out = mk_distance_lp(alg->trace, s->value, as_density(alg, x, "dm_mk_distance"),
                          as_density(alg, y, "dm_mk_distance"));
  });
}

dm_status dm_pwfunc_constant(double value, dm_pwfunc** out) {
  if (dm_status st = require(out != nullptr, "dm_pwfunc_constant: NULL argument")) return st;
  return guarded([&] { *out = new dm_pwfunc{PiecewiseFunction::constant(value)}; });
}

dm_status dm_pwfunc_ramp(int32_t n, dm_pwfunc** out) {
  if (dm_status st = require(out != nullptr, "dm_pwfunc_ramp: NULL argument")) return st;
  return guarded([&] { *out = new dm_pwfunc{ramp_family(n)}; });
}

void dm_pwfunc_free(dm_pwfunc* f) { delete f; }

dm_status dm_pwfunc_eval(const dm_pwfunc* f, double x, double* out) {
  if (dm_status st = require(f && out, "dm_pwfunc_eval: NULL argument")) return st;
  return guarded([&] { *out = f->value.eval(x); });
}

dm_status dm_pwfunc_lebesgue_trace(const dm_pwfunc* f, double* out) {
  if (dm_status st = require(f && out, "dm_pwfunc_lebesgue_trace: NULL argument")) return st;
  return guarded([&] { *out = lebesgue_trace(f->value); });
}

dm_status dm_pwfunc_uniform_distance(const dm_pwfunc* f, const dm_pwfunc* g, double* out) {
  if (dm_status st = require(f && g && out, "dm_pwfunc_uniform_distance: NULL argument"))
    return st;
  return guarded([&] { *out = uniform_norm_distance(f->value, g->value); });
}

dm_status dm_pwfunc_bures_distance(const dm_pwfunc* f, const dm_pwfunc* g,
                                   double target_abs_error, double* out) {
  if (dm_status st = require(f && g && out, "dm_pwfunc_bures_distance: NULL argument"))
    return st;
  return guarded([&] {
    QuadratureSpec quad;
    if (target_abs_error > 0) quad.target_abs_error = target_abs_error;
    *out = bures_distance_functions(f->value, g->value, quad);
  });
}

dm_status dm_experiment_run(const char* config_json, char** out_result_json) {
  if (dm_status st =
          require(config_json && out_result_json, "dm_experiment_run: NULL argument"))
    return st;
  return guarded([&] {
    const auto j = nlohmann::json::parse(config_json, nullptr, false);
    if (j.is_discarded()) fail(errc::parse, "dm_experiment_run: malformed config JSON");

    ExperimentResult result;
    try {
      const ExperimentConfig cfg = ExperimentConfig::from_json(j);
      result = run_experiment(cfg);
    } catch (const error& e) {
      result.status = RunStatus::usage_error;
      result.messages.push_back(e.what());
    }

    const char* status_name = result.status == RunStatus::ok              ? "ok"
                              : result.status == RunStatus::usage_error   ? "usage_error"
                              : result.status == RunStatus::io_error      ? "io_error"
                                                                          : "assertion_failed";
    nlohmann::json out{{"status", status_name},
                       {"exit_code", static_cast<int>(result.status)},
                       {"format", result.format},
                       {"artifact", result.artifact},
                       {"messages", result.messages}};
    *out_result_json = dup_string(out.dump());
  });
}

}  // extern "C"
