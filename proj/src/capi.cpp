#include "mverify/mverify.h"

#include "checks.hpp"
#include "newform_io.hpp"

#include <memory>
#include <string>
#include <vector>

struct mv_context {
  mverify::checks::Settings settings;
};

struct mv_report {
  mverify::checks::Report report;
  std::string json;
};

struct mv_newform {
  mverify::modforms::Eigenform form;
  std::string scratch;
};

namespace {

thread_local std::string last_error;

mv_status fail(mv_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
mv_status guarded(F&& f) {
  try {
    return f();
  } catch (const mverify::checks::UsageError& e) {
    return fail(MV_ERR_USAGE, e.what());
  } catch (const mverify::checks::DataError& e) {
    return fail(MV_ERR_DATA, e.what());
  } catch (const mverify::newform_io::IngestError& e) {
    return fail(MV_ERR_DATA, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MV_ERR_USAGE, std::string("bad JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return fail(MV_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(MV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MV_ERR_INTERNAL, "unknown error");
  }
}

const std::vector<std::string>& defaults_text() {
  static const std::vector<std::string> text = [] {
    std::vector<std::string> out;
    for (const auto& c : mverify::checks::registry()) out.push_back(c.defaults.dump());
    return out;
  }();
  return text;
}

}  // namespace

extern "C" {

const char* mv_version(void) { return "1.0.0"; }

const char* mv_last_error(void) { return last_error.c_str(); }

mv_status mv_context_new(mv_context** out) {
  if (!out) return fail(MV_ERR_USAGE, "null output pointer");
  return guarded([&] {
    auto ctx = std::make_unique<mv_context>();
    ctx->settings.data_dir = mverify::checks::default_data_dir();
    *out = ctx.release();
    return MV_OK;
  });
}

void mv_context_free(mv_context* ctx) { delete ctx; }

mv_status mv_context_set_data_dir(mv_context* ctx, const char* dir) {
  if (!ctx || !dir) return fail(MV_ERR_USAGE, "null argument");
  ctx->settings.data_dir = dir;
  return MV_OK;
}

const char* mv_context_data_dir(const mv_context* ctx) {
  return ctx ? ctx->settings.data_dir.c_str() : nullptr;
}

mv_status mv_context_set_order(mv_context* ctx, int order) {
  if (!ctx) return fail(MV_ERR_USAGE, "null context");
  if (order < 1) return fail(MV_ERR_USAGE, "order must be positive");
  ctx->settings.order = order;
  return MV_OK;
}

mv_status mv_context_set_tol(mv_context* ctx, double tol) {
  if (!ctx) return fail(MV_ERR_USAGE, "null context");
  if (!(tol > 0)) return fail(MV_ERR_USAGE, "tolerance must be positive");
  ctx->settings.tol = tol;
  return MV_OK;
}

size_t mv_check_count(void) { return mverify::checks::registry().size(); }

const char* mv_check_name(size_t i) {
  const auto& r = mverify::checks::registry();
  return i < r.size() ? r[i].name.c_str() : nullptr;
}

const char* mv_check_summary(size_t i) {
  const auto& r = mverify::checks::registry();
  return i < r.size() ? r[i].summary.c_str() : nullptr;
}

const char* mv_check_defaults(size_t i) {
  const auto& d = defaults_text();
  return i < d.size() ? d[i].c_str() : nullptr;
}

mv_status mv_run_check(const mv_context* ctx, const char* name, const char* params_json,
                       mv_report** out) {
  if (!ctx || !name || !out) return fail(MV_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto params = params_json && *params_json ? nlohmann::json::parse(params_json)
                                                    : nlohmann::json::object();
    auto rep = std::make_unique<mv_report>();
    rep->report = mverify::checks::run_check(name, params, ctx->settings);
    rep->json = rep->report.to_json().dump();
    const bool pass = rep->report.pass;
    *out = rep.release();
    if (!pass) return fail(MV_CHECK_FAILED, std::string("check ") + name + " failed");
    return MV_OK;
  });
}

void mv_report_free(mv_report* r) { delete r; }
int mv_report_pass(const mv_report* r) { return r && r->report.pass ? 1 : 0; }
const char* mv_report_name(const mv_report* r) { return r ? r->report.check_name.c_str() : nullptr; }
const char* mv_report_value(const mv_report* r) { return r ? r->report.value.c_str() : nullptr; }
double mv_report_error_bound(const mv_report* r) { return r ? r->report.error_bound : 0; }
double mv_report_runtime_ms(const mv_report* r) { return r ? r->report.runtime_ms : 0; }
const char* mv_report_json(const mv_report* r) { return r ? r->json.c_str() : nullptr; }

mv_status mv_newform_read(const char* path, mv_newform** out) {
  if (!path || !out) return fail(MV_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new mv_newform{mverify::newform_io::ingest_newform(path), {}};
    return MV_OK;
  });
}

mv_status mv_newform_level2(int weight, int order, mv_newform** out) {
  if (!out) return fail(MV_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new mv_newform{mverify::modforms::level2_newform(weight, order), {}};
    return MV_OK;
  });
}

mv_status mv_newform_write(const mv_newform* f, const char* path) {
  if (!f || !path) return fail(MV_ERR_USAGE, "null argument");
  return guarded([&] {
    try {
      mverify::newform_io::write_newform(path, f->form);
    } catch (const std::runtime_error& e) {
      return fail(MV_ERR_DATA, e.what());
    }
    return MV_OK;
  });
}

void mv_newform_free(mv_newform* f) { delete f; }
int mv_newform_weight(const mv_newform* f) { return f ? f->form.weight() : 0; }
int mv_newform_level(const mv_newform* f) { return f ? f->form.level() : 0; }
int mv_newform_order(const mv_newform* f) { return f ? f->form.order() : 0; }
int mv_newform_is_exact(const mv_newform* f) { return f && f->form.is_exact() ? 1 : 0; }
const char* mv_newform_label(const mv_newform* f) { return f ? f->form.label().c_str() : nullptr; }

const char* mv_newform_coeff(const mv_newform* f, int n) {
  if (!f || n < 0 || n > f->form.order()) return nullptr;
  auto* self = const_cast<mv_newform*>(f);
  if (f->form.field() == mverify::modforms::Eigenform::Field::Rational) {
    self->scratch = f->form.rational_series().coeff(n).get_str();
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", f->form.coeff(n));
    self->scratch = buf;
  }
  return self->scratch.c_str();
}

}  // extern "C"
