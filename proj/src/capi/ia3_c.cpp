// Copyright 2026 The ia3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ia3/ia3.h"

#include "ia3/certify.hpp"
#include "ia3/error.hpp"
#include "ia3/pipeline.hpp"
#include "ia3/serialize.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct ia3_channel {
  ia3::ChannelSet value;
};

struct ia3_scheme {
  ia3::Scheme value;
};

struct ia3_certificate {
  ia3::DofCertificate value;
};

namespace {

thread_local std::string g_last_error;

ia3_status status_of(ia3::ErrorKind kind) {
  switch (kind) {
    case ia3::ErrorKind::invalid_input: return IA3_ERR_INVALID_INPUT;
    case ia3::ErrorKind::regime: return IA3_ERR_REGIME;
    case ia3::ErrorKind::infeasible: return IA3_ERR_INFEASIBLE;
    case ia3::ErrorKind::not_certifiable: return IA3_ERR_NOT_CERTIFIABLE;
  }
  return IA3_ERR_INTERNAL;
}

template <class F>
ia3_status guard(F&& f) noexcept {
  try {
    g_last_error.clear();
    f();
    return IA3_OK;
  } catch (const ia3::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return IA3_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) ia3::fail(ia3::ErrorKind::invalid_input, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ia3::Tolerance to_tolerance(const ia3_tolerance* tol) {
  ia3::Tolerance out;
  if (tol != nullptr) {
    if (tol->rel_rank > 0.0) out.rel_rank = tol->rel_rank;
    out.leakage = tol->leakage;
  }
  out.validate();
  return out;
}

}  // namespace

extern "C" {

const char* ia3_version(void) { return ia3::kToolVersion; }

const char* ia3_last_error(void) { return g_last_error.c_str(); }

const char* ia3_status_name(ia3_status status) {
  switch (status) {
    case IA3_OK: return "ok";
    case IA3_ERR_INVALID_INPUT: return "invalid-input";
    case IA3_ERR_REGIME: return "regime-error";
    case IA3_ERR_INFEASIBLE: return "infeasible";
    case IA3_ERR_NOT_CERTIFIABLE: return "not-certifiable";
    case IA3_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

void ia3_string_free(char* s) { std::free(s); }

ia3_tolerance ia3_default_tolerance(void) { return ia3_tolerance{0.0, ia3::Tolerance{}.leakage}; }

ia3_synth_options ia3_default_synth_options(void) { return ia3_synth_options{-1, 0, 0, 0}; }

ia3_status ia3_channel_generate(int m, int n, uint64_t seed, ia3_field field, ia3_channel** out) {
  return guard([&] {
    require(out, "out");
    const auto mode = field == IA3_FIELD_REAL ? ia3::FieldMode::real : ia3::FieldMode::complex;
    *out = new ia3_channel{ia3::generate(m, n, seed, mode)};
  });
}

ia3_status ia3_channel_extend(const ia3_channel* ch, int t, ia3_channel** out) {
  return guard([&] {
    require(ch, "channel");
    require(out, "out");
    *out = new ia3_channel{ia3::extend(ch->value, t)};
  });
}

ia3_status ia3_channel_reciprocal(const ia3_channel* ch, ia3_channel** out) {
  return guard([&] {
    require(ch, "channel");
    require(out, "out");
    *out = new ia3_channel{ia3::reciprocal(ch->value)};
  });
}

ia3_status ia3_channel_from_json(const char* json, ia3_channel** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new ia3_channel{ia3::channel_from_json(ia3::parse_json(json))};
  });
}

ia3_status ia3_channel_to_json(const ia3_channel* ch, char** out) {
  return guard([&] {
    require(ch, "channel");
    require(out, "out");
    *out = dup_string(ia3::channel_to_json(ch->value).dump());
  });
}

ia3_status ia3_channel_dims(const ia3_channel* ch, int* m, int* n, int* t) {
  return guard([&] {
    require(ch, "channel");
    if (m) *m = ch->value.m();
    if (n) *n = ch->value.n();
    if (t) *t = ch->value.t();
  });
}

void ia3_channel_free(ia3_channel* ch) { delete ch; }

ia3_status ia3_synthesize(const ia3_channel* base, const ia3_synth_options* opts,
                          const ia3_tolerance* tol, ia3_scheme** out) {
  return guard([&] {
    require(base, "channel");
    require(out, "out");
    const ia3_synth_options o = opts ? *opts : ia3_default_synth_options();
    ia3::PlanRequest req;
    if (o.l >= 0) req.l = o.l;
    if (o.dtilde > 0) req.dtilde = o.dtilde;
    if (o.t > 0) req.t = o.t;
    if (o.t_max > 0) req.t_max = o.t_max;
    const ia3::SchemePlan plan = ia3::plan_scheme(base->value.m(), base->value.n(), req);
    *out = new ia3_scheme{ia3::synthesize(base->value, plan, to_tolerance(tol))};
  });
}

ia3_status ia3_scheme_from_json(const char* channel_json, const char* precoders_json, ia3_scheme** out) {
  return guard([&] {
    require(channel_json, "channel json");
    require(precoders_json, "precoders json");
    require(out, "out");
    ia3::ChannelSet ch = ia3::channel_from_json(ia3::parse_json(channel_json));
    ia3::PrecoderSet v = ia3::precoders_from_json(ia3::parse_json(precoders_json));
    ia3::validate_precoders(ch, v);
    *out = new ia3_scheme{ia3::Scheme{std::move(ch), std::move(v)}};
  });
}

ia3_status ia3_scheme_channel_json(const ia3_scheme* s, char** out) {
  return guard([&] {
    require(s, "scheme");
    require(out, "out");
    *out = dup_string(ia3::channel_to_json(s->value.channel).dump());
  });
}

ia3_status ia3_scheme_precoders_json(const ia3_scheme* s, char** out) {
  return guard([&] {
    require(s, "scheme");
    require(out, "out");
    *out = dup_string(ia3::precoders_to_json(s->value.channel, s->value.precoders).dump());
  });
}

ia3_status ia3_scheme_streams(const ia3_scheme* s, int per_user[3], int* t) {
  return guard([&] {
    require(s, "scheme");
    if (per_user)
      for (int u = 0; u < ia3::kUsers; ++u) per_user[u] = static_cast<int>(s->value.precoders.streams(u));
    if (t) *t = s->value.channel.t();
  });
}

void ia3_scheme_free(ia3_scheme* s) { delete s; }

ia3_status ia3_certify(const ia3_scheme* s, const ia3_tolerance* tol, ia3_certificate** out) {
  return guard([&] {
    require(s, "scheme");
    require(out, "out");
    *out = new ia3_certificate{ia3::certify(s->value.channel, s->value.precoders, to_tolerance(tol))};
  });
}

int ia3_certificate_pass(const ia3_certificate* c) { return c != nullptr && c->value.pass ? 1 : 0; }

ia3_status ia3_certificate_total_dof(const ia3_certificate* c, int64_t* num, int64_t* den) {
  return guard([&] {
    require(c, "certificate");
    if (num) *num = c->value.per_slot_dof_total.numerator();
    if (den) *den = c->value.per_slot_dof_total.denominator();
  });
}

double ia3_certificate_max_leakage(const ia3_certificate* c) {
  return c ? c->value.max_leakage() : std::nan("");
}

ia3_status ia3_certificate_to_json(const ia3_certificate* c, char** out) {
  return guard([&] {
    require(c, "certificate");
    require(out, "out");
    *out = dup_string(ia3::certificate_to_json(c->value).dump());
  });
}

ia3_status ia3_certificate_to_text(const ia3_certificate* c, char** out) {
  return guard([&] {
    require(c, "certificate");
    require(out, "out");
    *out = dup_string(ia3::certificate_table(c->value));
  });
}

void ia3_certificate_free(ia3_certificate* c) { delete c; }

ia3_status ia3_estimate_slope(const ia3_scheme* s, const ia3_tolerance* tol, double snr_lo_db,
                              double snr_hi_db, double snr_step_db, double noise_variance,
                              double* slope, char** curve_json) {
  return guard([&] {
    require(s, "scheme");
    if (!(snr_step_db > 0.0) || !(snr_hi_db > snr_lo_db))
      ia3::fail(ia3::ErrorKind::invalid_input, "SNR grid needs lo < hi and a positive step");
    const ia3::Tolerance t = to_tolerance(tol);
    std::vector<double> grid;
    const auto count = static_cast<int>(std::floor((snr_hi_db - snr_lo_db) / snr_step_db + 1e-9));
    for (int k = 0; k <= count; ++k) grid.push_back(snr_lo_db + k * snr_step_db);
    const ia3::DecoderSet dec = ia3::build_decoders(s->value.channel, s->value.precoders, t);
    const ia3::RateCurve curve = ia3::estimate_dof_slope(s->value.channel, s->value.precoders, dec,
                                                         ia3::NoiseModel{noise_variance}, grid, t);
    if (slope) *slope = curve.fitted_slope;
    if (curve_json) *curve_json = dup_string(ia3::rate_curve_to_json(curve).dump());
  });
}

ia3_status ia3_bounds_json(int m, int n, int t_max, char** out) {
  return guard([&] {
    require(out, "out");
    ia3::AchievableOptions opts;
    if (t_max > 0) opts.t_max = t_max;
    *out = dup_string(ia3::bounds_to_json(ia3::achievable(m, n, opts)).dump());
  });
}

ia3_status ia3_sweep_fig2(int n, int m_lo, int m_hi, int t_max, ia3_table_format format, char** out) {
  return guard([&] {
    require(out, "out");
    const auto rows = ia3::sweep_fig2(n, m_lo, m_hi, t_max > 0 ? t_max : ia3::kDefaultTMax);
    *out = dup_string(format == IA3_FORMAT_JSON ? ia3::fig2_to_json(rows).dump() : ia3::fig2_csv(rows));
  });
}

ia3_status ia3_sweep_fig1(int l_lo, int l_hi, int ratio_steps, ia3_table_format format, char** out) {
  return guard([&] {
    require(out, "out");
    if (l_lo < 1 || l_hi < l_lo) ia3::fail(ia3::ErrorKind::invalid_input, "invalid L range");
    std::vector<int> ls;
    for (int l = l_lo; l <= l_hi; ++l) ls.push_back(l);
    const auto ratios = ia3::ratio_grid(ratio_steps);
    const auto rows = ia3::sweep_fig1(ls, ratios);
    *out = dup_string(format == IA3_FORMAT_JSON ? ia3::fig1_to_json(ls, rows).dump() : ia3::fig1_csv(ls, rows));
  });
}

}  // extern "C"
