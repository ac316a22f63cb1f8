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

// ia3: command-line front end over the C API in ia3/ia3.h.

#include "ia3/ia3.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCertification = 4;

struct RunConfig {
  std::string command;
  std::optional<int> m, n, l, dtilde, t;
  int t_max = 24;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_rank;
  double tol_leak = 1e-8;
  std::string format;
  std::string out;
  std::string field = "complex";
  std::string in, channel_path, precoders_path;
  std::string m_range = "1:16";
  std::string l_range = "1:4";
  int ratio_steps = 60;
  std::string snr = "40:60";
  double snr_step = 2.0;
  double noise = 1.0;
};

// Thrown to unwind with a specific exit code after printing a message.
struct Exit {
  int code;
};

int exit_code(ia3_status s) {
  switch (s) {
    case IA3_OK: return kExitOk;
    case IA3_ERR_INVALID_INPUT: return kExitUsage;
    case IA3_ERR_REGIME:
    case IA3_ERR_INFEASIBLE: return kExitInfeasible;
    case IA3_ERR_NOT_CERTIFIABLE: return kExitCertification;
    case IA3_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(ia3_status s) {
  if (s == IA3_OK) return;
  std::cerr << "ia3: " << ia3_status_name(s) << ": " << ia3_last_error() << '\n';
  throw Exit{exit_code(s)};
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "ia3: " << msg << '\n';
  throw Exit{kExitUsage};
}

struct Free {
  void operator()(ia3_channel* p) const { ia3_channel_free(p); }
  void operator()(ia3_scheme* p) const { ia3_scheme_free(p); }
  void operator()(ia3_certificate* p) const { ia3_certificate_free(p); }
  void operator()(char* p) const { ia3_string_free(p); }
};
using ChannelPtr = std::unique_ptr<ia3_channel, Free>;
using SchemePtr = std::unique_ptr<ia3_scheme, Free>;
using CertPtr = std::unique_ptr<ia3_certificate, Free>;
using StrPtr = std::unique_ptr<char, Free>;

template <class F>
std::string take_string(F&& call) {
  char* raw = nullptr;
  check(call(&raw));
  StrPtr owned(raw);
  return std::string(owned.get());
}

std::pair<int, int> parse_range(const std::string& s, const char* flag) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    usage_error(std::string("malformed range for ") + flag + ": '" + s + "' (expected lo:hi)");
  }
}

std::pair<double, double> parse_real_range(const std::string& s, const char* flag) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) usage_error(std::string(flag) + " expects lo:hi");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    usage_error(std::string("malformed range for ") + flag + ": '" + s + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) usage_error("cannot write '" + cfg.out + "'");
  f << text;
}

Json parse(const std::string& s) { return Json::parse(s); }

ia3_tolerance tolerance(const RunConfig& cfg) {
  ia3_tolerance tol = ia3_default_tolerance();
  tol.rel_rank = cfg.tol_rank.value_or(0.0);
  tol.leakage = cfg.tol_leak;
  return tol;
}

Json tolerance_json(const RunConfig& cfg) {
  Json j;
  if (cfg.tol_rank)
    j["rel_rank"] = *cfg.tol_rank;
  else
    j["rel_rank"] = "auto";
  j["leakage"] = cfg.tol_leak;
  return j;
}

std::uint64_t seed_of(const RunConfig& cfg) { return cfg.seed.value_or(0); }

// Metadata every artifact carries.
Json envelope(const RunConfig& cfg, std::optional<int> m, std::optional<int> n, std::optional<int> t) {
  Json j;
  j["tool"] = "ia3";
  j["tool_version"] = ia3_version();
  j["command"] = cfg.command;
  j["m"] = m ? Json(*m) : Json(nullptr);
  j["n"] = n ? Json(*n) : Json(nullptr);
  j["t"] = t ? Json(*t) : Json(nullptr);
  j["seed"] = seed_of(cfg);
  j["tolerances"] = tolerance_json(cfg);
  return j;
}

std::string csv_comment(const RunConfig& cfg, const std::string& extra) {
  std::ostringstream ss;
  ss << "# ia3 " << ia3_version() << " command=" << cfg.command << ' ' << extra << " seed=" << seed_of(cfg)
     << " tol_rank=";
  if (cfg.tol_rank)
    ss << *cfg.tol_rank;
  else
    ss << "auto";
  ss << " tol_leak=" << cfg.tol_leak << '\n';
  return ss.str();
}

std::string dumped(const Json& j) { return j.dump() + "\n"; }

void require_mn(const RunConfig& cfg) {
  if (!cfg.m || !cfg.n) usage_error(cfg.command + " requires --m and --n");
}

ia3_field field_of(const RunConfig& cfg) {
  if (cfg.field == "complex") return IA3_FIELD_COMPLEX;
  if (cfg.field == "real") return IA3_FIELD_REAL;
  usage_error("--field must be 'complex' or 'real'");
}

ChannelPtr make_channel(const RunConfig& cfg) {
  ia3_channel* raw = nullptr;
  check(ia3_channel_generate(*cfg.m, *cfg.n, seed_of(cfg), field_of(cfg), &raw));
  return ChannelPtr(raw);
}

SchemePtr make_scheme(const RunConfig& cfg) {
  ChannelPtr ch = make_channel(cfg);
  ia3_synth_options opts = ia3_default_synth_options();
  if (cfg.l) opts.l = *cfg.l;
  if (cfg.dtilde) opts.dtilde = *cfg.dtilde;
  if (cfg.t) opts.t = *cfg.t;
  opts.t_max = cfg.t_max;
  const ia3_tolerance tol = tolerance(cfg);
  ia3_scheme* raw = nullptr;
  check(ia3_synthesize(ch.get(), &opts, &tol, &raw));
  return SchemePtr(raw);
}

CertPtr certify(const RunConfig& cfg, const ia3_scheme* s) {
  const ia3_tolerance tol = tolerance(cfg);
  ia3_certificate* raw = nullptr;
  check(ia3_certify(s, &tol, &raw));
  return CertPtr(raw);
}

int run_gen(const RunConfig& cfg) {
  require_mn(cfg);
  ChannelPtr ch = make_channel(cfg);
  if (cfg.t && *cfg.t > 1) {
    ia3_channel* raw = nullptr;
    check(ia3_channel_extend(ch.get(), *cfg.t, &raw));
    ch.reset(raw);
  }
  Json doc = parse(take_string([&](char** o) { return ia3_channel_to_json(ch.get(), o); }));
  doc["command"] = cfg.command;
  doc["tolerances"] = tolerance_json(cfg);
  emit(cfg, dumped(doc));
  return kExitOk;
}

int run_synth(const RunConfig& cfg) {
  require_mn(cfg);
  SchemePtr scheme = make_scheme(cfg);
  CertPtr cert = certify(cfg, scheme.get());
  int t = 1;
  check(ia3_scheme_streams(scheme.get(), nullptr, &t));
  const Json precoders = parse(take_string([&](char** o) { return ia3_scheme_precoders_json(scheme.get(), o); }));
  const Json certificate = parse(take_string([&](char** o) { return ia3_certificate_to_json(cert.get(), o); }));
  if (cfg.format == "text") {
    emit(cfg, take_string([&](char** o) { return ia3_certificate_to_text(cert.get(), o); }));
  } else {
    Json doc = envelope(cfg, cfg.m, cfg.n, t);
    doc["plan"] = precoders["plan"];
    doc["channel"] = parse(take_string([&](char** o) { return ia3_scheme_channel_json(scheme.get(), o); }));
    doc["precoders"] = precoders;
    doc["certificate"] = certificate;
    emit(cfg, dumped(doc));
  }
  return ia3_certificate_pass(cert.get()) ? kExitOk : kExitCertification;
}

int run_certify(const RunConfig& cfg) {
  std::string channel_text, precoders_text;
  if (!cfg.in.empty()) {
    Json bundle = Json::parse(read_file(cfg.in));
    if (!bundle.contains("channel") || !bundle.contains("precoders"))
      usage_error("--in expects a bundle with 'channel' and 'precoders'");
    channel_text = bundle["channel"].dump();
    precoders_text = bundle["precoders"].dump();
  } else if (!cfg.channel_path.empty() && !cfg.precoders_path.empty()) {
    channel_text = read_file(cfg.channel_path);
    Json pre = Json::parse(read_file(cfg.precoders_path));
    precoders_text = pre.contains("precoders") ? pre["precoders"].dump() : pre.dump();
  } else {
    usage_error("certify requires --in BUNDLE or both --channel and --precoders");
  }
  ia3_scheme* raw = nullptr;
  check(ia3_scheme_from_json(channel_text.c_str(), precoders_text.c_str(), &raw));
  SchemePtr scheme(raw);
  CertPtr cert = certify(cfg, scheme.get());
  if (cfg.format == "text") {
    emit(cfg, take_string([&](char** o) { return ia3_certificate_to_text(cert.get(), o); }));
  } else {
    const Json certificate = parse(take_string([&](char** o) { return ia3_certificate_to_json(cert.get(), o); }));
    RunConfig meta = cfg;
    meta.seed = certificate["seed"].get<std::uint64_t>();
    Json doc = envelope(meta, certificate["m"].get<int>(), certificate["n"].get<int>(), certificate["t"].get<int>());
    doc["certificate"] = certificate;
    emit(cfg, dumped(doc));
  }
  return ia3_certificate_pass(cert.get()) ? kExitOk : kExitCertification;
}

int run_bounds(const RunConfig& cfg) {
  require_mn(cfg);
  const Json report = parse(take_string([&](char** o) { return ia3_bounds_json(*cfg.m, *cfg.n, cfg.t_max, o); }));
  const auto value = [&](const char* key) { return report[key]["value"].get<std::string>(); };
  if (cfg.format == "text") {
    std::ostringstream ss;
    ss << "M=" << *cfg.m << " N=" << *cfg.n << '\n'
       << "general upperbound      " << value("general_ub") << '\n'
       << "beamforming upperbound  " << value("beamforming_ub") << '\n'
       << "baseline 3MN/(M+N)      " << value("baseline") << '\n'
       << "achievable              " << value("achievable") << "  (" << report["plan"]["regime"].get<std::string>()
       << ", t=" << report["plan"]["t"].get<int>() << ")\n";
    emit(cfg, ss.str());
  } else if (cfg.format == "csv") {
    std::ostringstream ss;
    ss << csv_comment(cfg, "m=" + std::to_string(*cfg.m) + " n=" + std::to_string(*cfg.n) +
                               " t_max=" + std::to_string(cfg.t_max));
    ss << "m,n,t,regime,general_ub,beamforming_ub,baseline,achievable,meets_general,meets_beamforming\n";
    ss << *cfg.m << ',' << *cfg.n << ',' << report["plan"]["t"].get<int>() << ','
       << report["plan"]["regime"].get<std::string>() << ',' << value("general_ub") << ','
       << value("beamforming_ub") << ',' << value("baseline") << ',' << value("achievable") << ','
       << (report["meets_general"].get<bool>() ? "true" : "false") << ','
       << (report["meets_beamforming"].get<bool>() ? "true" : "false") << '\n';
    emit(cfg, ss.str());
  } else {
    Json doc = envelope(cfg, cfg.m, cfg.n, report["plan"]["t"].get<int>());
    doc["t_max"] = cfg.t_max;
    doc["bounds"] = report;
    emit(cfg, dumped(doc));
  }
  return kExitOk;
}

int run_sweep_fig2(const RunConfig& cfg) {
  if (!cfg.n) usage_error("sweep-fig2 requires --n");
  const auto [lo, hi] = parse_range(cfg.m_range, "--m");
  const bool json = cfg.format == "json";
  const std::string table = take_string([&](char** o) {
    return ia3_sweep_fig2(*cfg.n, lo, hi, cfg.t_max, json ? IA3_FORMAT_JSON : IA3_FORMAT_CSV, o);
  });
  if (json) {
    Json doc = envelope(cfg, std::nullopt, cfg.n, std::nullopt);
    doc["m_range"] = cfg.m_range;
    doc["t_max"] = cfg.t_max;
    doc["rows"] = parse(table);
    emit(cfg, dumped(doc));
  } else {
    emit(cfg, csv_comment(cfg, "n=" + std::to_string(*cfg.n) + " m=" + cfg.m_range +
                                   " t_max=" + std::to_string(cfg.t_max)) + table);
  }
  return kExitOk;
}

int run_sweep_fig1(const RunConfig& cfg) {
  const auto [lo, hi] = parse_range(cfg.l_range, "--l");
  const bool json = cfg.format == "json";
  const std::string table = take_string([&](char** o) {
    return ia3_sweep_fig1(lo, hi, cfg.ratio_steps, json ? IA3_FORMAT_JSON : IA3_FORMAT_CSV, o);
  });
  if (json) {
    Json doc = envelope(cfg, std::nullopt, std::nullopt, std::nullopt);
    doc["l_range"] = cfg.l_range;
    doc["ratio_steps"] = cfg.ratio_steps;
    doc["rows"] = parse(table);
    emit(cfg, dumped(doc));
  } else {
    emit(cfg, csv_comment(cfg, "l=" + cfg.l_range + " ratio_steps=" + std::to_string(cfg.ratio_steps)) + table);
  }
  return kExitOk;
}

int run_slope(const RunConfig& cfg) {
  require_mn(cfg);
  const auto [lo, hi] = parse_real_range(cfg.snr, "--snr");
  SchemePtr scheme = make_scheme(cfg);
  CertPtr cert = certify(cfg, scheme.get());
  const Json certificate = parse(take_string([&](char** o) { return ia3_certificate_to_json(cert.get(), o); }));
  if (!ia3_certificate_pass(cert.get())) {
    std::cerr << "ia3: scheme does not certify; slope not estimated\n";
    emit(cfg, dumped(Json{{"certificate", certificate}}));
    return kExitCertification;
  }
  const ia3_tolerance tol = tolerance(cfg);
  double slope = 0.0;
  const std::string curve = take_string([&](char** o) {
    return ia3_estimate_slope(scheme.get(), &tol, lo, hi, cfg.snr_step, cfg.noise, &slope, o);
  });
  int t = 1;
  check(ia3_scheme_streams(scheme.get(), nullptr, &t));
  if (cfg.format == "text") {
    std::ostringstream ss;
    ss << "certified per-slot DoF " << certificate["per_slot_dof_total"]["value"].get<std::string>()
       << ", fitted slope " << slope << " (over t=" << t << " slots)\n";
    emit(cfg, ss.str());
  } else {
    Json doc = envelope(cfg, cfg.m, cfg.n, t);
    doc["noise_variance"] = cfg.noise;
    doc["curve"] = parse(curve);
    doc["certificate"] = certificate;
    emit(cfg, dumped(doc));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"ia3: interference-alignment schemes for the 3-user MIMO interference channel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ia3_version()));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (falls back to $IA3_SEED, then 0)");
    sub->add_option("--tol-rank", cfg.tol_rank, "relative singular-value cutoff (default: size dependent)");
    sub->add_option("--tol-leak", cfg.tol_leak, "leakage tolerance")->capture_default_str();
    sub->add_option("--format", cfg.format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };
  auto add_mn = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "transmit antennas");
    sub->add_option("--n", cfg.n, "receive antennas");
  };
  auto add_scheme = [&](CLI::App* sub) {
    add_mn(sub);
    sub->add_option("--l", cfg.l, "force a single chain of this depth");
    sub->add_option("--dtilde", cfg.dtilde, "streams per chain block (with --l)");
    sub->add_option("--t", cfg.t, "force the symbol-extension factor");
    sub->add_option("--t-max", cfg.t_max, "largest extension factor searched")->capture_default_str();
    sub->add_option("--field", cfg.field, "complex | real")->capture_default_str();
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a channel set");
  add_mn(gen);
  gen->add_option("--t", cfg.t, "symbol-extension factor");
  gen->add_option("--field", cfg.field, "complex | real")->capture_default_str();
  add_common(gen);

  CLI::App* synth = app.add_subcommand("synth", "synthesize and certify a scheme");
  add_scheme(synth);
  add_common(synth);

  CLI::App* cert = app.add_subcommand("certify", "certify serialized channel + precoders");
  cert->add_option("--in", cfg.in, "bundle written by synth");
  cert->add_option("--channel", cfg.channel_path, "channel JSON");
  cert->add_option("--precoders", cfg.precoders_path, "precoder JSON (or a synth bundle)");
  add_common(cert);

  CLI::App* bounds = app.add_subcommand("bounds", "exact upperbounds and achievable DoF");
  add_mn(bounds);
  bounds->add_option("--t-max", cfg.t_max, "largest extension factor searched")->capture_default_str();
  add_common(bounds);

  CLI::App* fig2 = app.add_subcommand("sweep-fig2", "achievable DoF versus M at fixed N");
  fig2->add_option("--n", cfg.n, "receive antennas");
  fig2->add_option("--m", cfg.m_range, "M range lo:hi")->capture_default_str();
  fig2->add_option("--t-max", cfg.t_max, "largest extension factor searched")->capture_default_str();
  add_common(fig2);

  CLI::App* fig1 = app.add_subcommand("sweep-fig1", "normalized chain DoF versus M/N per L");
  fig1->add_option("--l", cfg.l_range, "L range lo:hi")->capture_default_str();
  fig1->add_option("--ratio-steps", cfg.ratio_steps, "grid points on (1, 2]")->capture_default_str();
  add_common(fig1);

  CLI::App* slope = app.add_subcommand("slope", "sum-rate slope of a synthesized scheme");
  add_scheme(slope);
  slope->add_option("--snr", cfg.snr, "SNR range in dB lo:hi")->capture_default_str();
  slope->add_option("--snr-step", cfg.snr_step, "SNR step in dB")->capture_default_str();
  slope->add_option("--noise", cfg.noise, "noise variance")->capture_default_str();
  add_common(slope);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (!cfg.seed) {
    if (const char* env = std::getenv("IA3_SEED")) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "ia3: IA3_SEED is not an unsigned integer\n";
        return kExitUsage;
      }
    }
  }

  try {
    if (gen->parsed()) {
      cfg.command = "gen";
      if (cfg.format.empty()) cfg.format = "json";
      return run_gen(cfg);
    }
    if (synth->parsed()) {
      cfg.command = "synth";
      if (cfg.format.empty()) cfg.format = "json";
      return run_synth(cfg);
    }
    if (cert->parsed()) {
      cfg.command = "certify";
      if (cfg.format.empty()) cfg.format = "json";
      return run_certify(cfg);
    }
    if (bounds->parsed()) {
      cfg.command = "bounds";
      if (cfg.format.empty()) cfg.format = "json";
      return run_bounds(cfg);
    }
    if (fig2->parsed()) {
      cfg.command = "sweep-fig2";
      if (cfg.format.empty()) cfg.format = "csv";
      return run_sweep_fig2(cfg);
    }
    if (fig1->parsed()) {
      cfg.command = "sweep-fig1";
      if (cfg.format.empty()) cfg.format = "csv";
      return run_sweep_fig1(cfg);
    }
    if (slope->parsed()) {
      cfg.command = "slope";
      if (cfg.format.empty()) cfg.format = "json";
      return run_slope(cfg);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ia3: malformed JSON input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ia3: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
