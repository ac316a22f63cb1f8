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

#include "ia3/certify.hpp"

#include "ia3/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace ia3 {

namespace {

// Largest incoming signal magnitude at receiver i. Ranks at that receiver are
// judged against it so that cancelled interference reads as rank 0.
double received_scale(const ChannelSet& ch, const PrecoderSet& v, int i) {
  double s = 0.0;
  for (int j = 0; j < kUsers; ++j)
    if (v.streams(j) > 0) s = std::max(s, singular_values(ch.h(i, j) * v.v[j])(0));
  return s;
}

// Zero-forcing decoder of one receiver, or nothing when the interference
// leaves too little room or the projected direct channel loses rank.
std::optional<Mat> zero_forcing_decoder(const ChannelSet& ch, const PrecoderSet& v, int i,
                                        const Tolerance& tol, std::string* why) {
  const Eigen::Index d = v.streams(i);
  if (d == 0) return Mat(ch.rx_dim(), 0);
  const double scale = received_scale(ch, v, i);
  const Mat complement = left_complement_basis(interference_matrix(ch, v, i), scale, tol);
  if (complement.cols() < d) {
    *why = "receiver " + std::to_string(i + 1) + ": interference leaves " +
           std::to_string(complement.cols()) + " dimensions for " + std::to_string(d) + " streams";
    return std::nullopt;
  }
  const Mat projected = complement.adjoint() * ch.h(i, i) * v.v[i];
  Eigen::BDCSVD<Mat> svd(projected, Eigen::ComputeThinU);
  if (rank(projected, scale, tol) < static_cast<std::size_t>(d)) {
    *why = "receiver " + std::to_string(i + 1) + ": effective direct channel is rank deficient";
    return std::nullopt;
  }
  return Mat(complement * svd.matrixU().leftCols(d));
}

// Directions of least interference energy; used only to score schemes that
// cannot be zero-forced.
Mat min_leakage_decoder(const ChannelSet& ch, const PrecoderSet& v, int i) {
  const Eigen::Index nr = ch.rx_dim();
  const Eigen::Index d = std::min(v.streams(i), nr);
  const Mat g = interference_matrix(ch, v, i);
  if (g.cols() == 0) return Mat::Identity(nr, nr).leftCols(d);
  Eigen::BDCSVD<Mat> svd(g, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(d);
}

double log2_det_hpd(const Mat& a) {
  Eigen::LLT<Mat> llt(a);
  if (llt.info() != Eigen::Success) fail(ErrorKind::not_certifiable, "covariance is not positive definite");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) acc += std::log2(std::real(llt.matrixL()(k, k)));
  return 2.0 * acc;
}

}  // namespace

double DofCertificate::max_leakage() const {
  double worst = 0.0;
  for (const auto& r : receivers) worst = std::max(worst, r.max_leakage);
  return worst;
}

Mat interference_matrix(const ChannelSet& ch, const PrecoderSet& v, int receiver) {
  Eigen::Index cols = 0;
  for (int j = 0; j < kUsers; ++j)
    if (j != receiver) cols += v.streams(j);
  Mat g(ch.rx_dim(), cols);
  Eigen::Index at = 0;
  for (int j = 0; j < kUsers; ++j) {
    if (j == receiver || v.streams(j) == 0) continue;
    g.middleCols(at, v.streams(j)) = ch.h(receiver, j) * v.v[j];
    at += v.streams(j);
  }
  return g;
}

DecoderSet build_decoders(const ChannelSet& ch, const PrecoderSet& v, const Tolerance& tol) {
  validate_precoders(ch, v);
  DecoderSet out;
  for (int i = 0; i < kUsers; ++i) {
    std::string why;
    auto u = zero_forcing_decoder(ch, v, i, tol, &why);
    if (!u) fail(ErrorKind::not_certifiable, why);
    out.u[i] = std::move(*u);
  }
  return out;
}

DecoderSet build_decoders_relaxed(const ChannelSet& ch, const PrecoderSet& v, const Tolerance& tol,
                                  std::string* note) {
  validate_precoders(ch, v);
  DecoderSet out;
  for (int i = 0; i < kUsers; ++i) {
    std::string why;
    if (auto u = zero_forcing_decoder(ch, v, i, tol, &why)) {
      out.u[i] = std::move(*u);
      continue;
    }
    out.u[i] = min_leakage_decoder(ch, v, i);
    if (note) {
      if (!note->empty()) *note += "; ";
      *note += why;
    }
  }
  return out;
}

Eigen::MatrixXd leakage(const ChannelSet& ch, const PrecoderSet& v, const DecoderSet& u) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(kUsers, kUsers);
  for (int j = 0; j < kUsers; ++j)
    if (v.streams(j) > 0 && v.v[j].norm() == 0.0)
      fail(ErrorKind::invalid_input, "leakage is undefined for zero precoders");
  for (int i = 0; i < kUsers; ++i) {
    if (u.u[i].rows() != ch.rx_dim()) fail(ErrorKind::invalid_input, "decoder shape mismatch");
    for (int j = 0; j < kUsers; ++j) {
      if (v.streams(j) == 0 || u.u[i].cols() == 0) continue;
      const Mat& h = ch.h(i, j);
      const double denom = singular_values(u.u[i])(0) * h.norm() * v.v[j].norm();
      out(i, j) = denom > 0.0 ? (u.u[i].adjoint() * h * v.v[j]).norm() / denom : 0.0;
    }
  }
  return out;
}

DofCertificate certify(const ChannelSet& ch, const PrecoderSet& v, const Tolerance& tol) {
  tol.validate();
  validate_precoders(ch, v);

  DofCertificate cert;
  cert.m = ch.m();
  cert.n = ch.n();
  cert.t = ch.t();
  cert.seed = ch.seed();
  cert.tolerances = tol;

  const DecoderSet dec = build_decoders_relaxed(ch, v, tol, &cert.note);
  cert.decoder_fallback = !cert.note.empty();
  const Eigen::MatrixXd leak = leakage(ch, v, dec);

  cert.pass = true;
  for (int i = 0; i < kUsers; ++i) {
    ReceiverReport& r = cert.receivers[i];
    r.receiver = i + 1;
    r.streams = v.streams(i);
    const double scale = received_scale(ch, v, i);
    const Mat g = interference_matrix(ch, v, i);
    r.interference_rank = g.cols() ? rank(g, scale, tol) : 0;
    const Mat signal = dec.u[i].adjoint() * ch.h(i, i) * v.v[i];
    r.signal_rank = signal.size() ? rank(signal, scale, tol) : 0;
    for (int j = 0; j < kUsers; ++j)
      if (j != i) r.max_leakage = std::max(r.max_leakage, leak(i, j));
    r.pass = r.signal_rank == static_cast<std::size_t>(r.streams) &&
             static_cast<Eigen::Index>(r.interference_rank) + r.streams <= ch.rx_dim() &&
             r.max_leakage <= tol.leakage;
    cert.pass = cert.pass && r.pass;
    cert.streams_per_user[i] = r.streams;
    cert.total_streams += r.streams;
  }
  cert.per_slot_dof_total = Rational(cert.total_streams, ch.t());
  return cert;
}

RateCurve estimate_dof_slope(const ChannelSet& ch, const PrecoderSet& v, const DecoderSet& u,
                             const NoiseModel& noise, const std::vector<double>& snr_db,
                             const Tolerance& tol) {
  noise.validate();
  validate_precoders(ch, v);
  if (snr_db.size() < 2) fail(ErrorKind::invalid_input, "slope estimation needs at least two SNR points");
  for (double s : snr_db)
    if (!std::isfinite(s)) fail(ErrorKind::invalid_input, "SNR grid must be finite");

  std::array<Mat, kUsers> direct;
  for (int i = 0; i < kUsers; ++i) {
    if (u.u[i].rows() != ch.rx_dim() || u.u[i].cols() != v.streams(i))
      fail(ErrorKind::invalid_input, "decoder shape mismatch");
    direct[i] = u.u[i].adjoint() * ch.h(i, i) * v.v[i];
    if (v.streams(i) > 0 && rank(direct[i], tol) < static_cast<std::size_t>(v.streams(i)))
      fail(ErrorKind::not_certifiable, "projected direct channel of receiver " + std::to_string(i + 1) +
                                           " is singular");
  }

  RateCurve curve;
  for (double s : snr_db) {
    const double power = std::pow(10.0, s / 10.0) * noise.variance;
    double sum_rate = 0.0;
    for (int i = 0; i < kUsers; ++i) {
      const Eigen::Index d = v.streams(i);
      if (d == 0) continue;
      Mat q = noise.variance * Mat::Identity(d, d);
      for (int j = 0; j < kUsers; ++j) {
        if (j == i || v.streams(j) == 0) continue;
        const Mat b = u.u[i].adjoint() * ch.h(i, j) * v.v[j];
        q += (power / static_cast<double>(v.streams(j))) * b * b.adjoint();
      }
      const Mat s_cov = (power / static_cast<double>(d)) * direct[i] * direct[i].adjoint();
      sum_rate += log2_det_hpd(q + s_cov) - log2_det_hpd(q);
    }
    curve.snr_db.push_back(s);
    curve.sum_rates.push_back(sum_rate);
  }

  const double top = *std::max_element(snr_db.begin(), snr_db.end());
  std::vector<std::size_t> fit;
  for (std::size_t k = 0; k < snr_db.size(); ++k)
    if (snr_db[k] >= top - 10.0) fit.push_back(k);
  if (fit.size() < 2) {
    fit.clear();
    for (std::size_t k = 0; k < snr_db.size(); ++k) fit.push_back(k);
  }
  double mx = 0.0, my = 0.0;
  for (auto k : fit) {
    mx += snr_db[k] * std::log2(10.0) / 10.0;
    my += curve.sum_rates[k];
  }
  mx /= static_cast<double>(fit.size());
  my /= static_cast<double>(fit.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto k : fit) {
    const double x = snr_db[k] * std::log2(10.0) / 10.0 - mx;
    sxy += x * (curve.sum_rates[k] - my);
    sxx += x * x;
  }
  if (sxx == 0.0) fail(ErrorKind::invalid_input, "SNR grid has no spread in its top decade");
  curve.fitted_slope = sxy / sxx;
  return curve;
}

std::string certificate_table(const DofCertificate& cert) {
  std::ostringstream out;
  char line[160];
  out << "receiver  streams  signal_rank  interference_rank  leakage       verdict\n";
  for (const auto& r : cert.receivers) {
    std::snprintf(line, sizeof line, "%-8d  %-7lld  %-11zu  %-17zu  %-12.3e  %s\n", r.receiver,
                  static_cast<long long>(r.streams), r.signal_rank, r.interference_rank,
                  r.max_leakage, r.pass ? "PASS" : "FAIL");
    out << line;
  }
  out << "total streams " << cert.total_streams << " over t=" << cert.t
      << " slot(s); per-slot DoF " << to_string(cert.per_slot_dof_total) << " ("
      << to_decimal(cert.per_slot_dof_total) << ")\n";
  out << "certificate " << (cert.pass ? "PASS" : "FAIL") << '\n';
  if (!cert.note.empty()) out << "note: " << cert.note << '\n';
  return out.str();
}

}  // namespace ia3
