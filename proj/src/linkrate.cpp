#include "stcomp/linkrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stcomp/errors.hpp"

namespace stcomp {

SicOrder sic_order(const std::vector<CVec>& channels) {
  const int K = static_cast<int>(channels.size());
  SicOrder s;
  s.order.resize(K);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::vector<double> norms(K);
  for (int k = 0; k < K; ++k) norms[k] = channels[k].squaredNorm();
  std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) { return norms[a] > norms[b]; });
  s.rank.resize(K);
  for (int j = 0; j < K; ++j) s.rank[s.order[j]] = j;
  return s;
}

std::vector<int> later_decoded(int k, const SicOrder& order) {
  return std::vector<int>(order.order.begin() + order.rank[k] + 1, order.order.end());
}

double interference(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order) {
  double acc = 0.0;
  for (size_t j = order.rank[k] + 1; j < order.order.size(); ++j) {
    const int i = order.order[j];
    acc += p(i) * std::norm(w.dot(channels[i]));
  }
  return acc;
}

double sinr(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order,
            double noise) {
  return p(k) * std::norm(w.dot(channels[k])) / (interference(k, channels, w, p, order) + noise);
}

double noma_rate(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order,
                 double bandwidth, double noise) {
  if (!(p(k) > 0.0)) throw Error(ErrorCode::ZeroPower, "user " + std::to_string(k) + " has zero power");
  return bandwidth * std::log2(1.0 + sinr(k, channels, w, p, order, noise));
}

double rate_gue_bs(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order,
                   double B1, double noise1) {
  return noma_rate(k, channels, w, p, order, B1, noise1);
}

double rate_gue_sat(int k, const std::vector<CVec>& channels, const CVec& v, const Vec& p, const SicOrder& order,
                    double B2, double noise2) {
  return noma_rate(k, channels, v, p, order, B2, noise2);
}

double fso_snr_slope(const FsoLink& link, double noise3) {
  const auto g = fso_gains(link);
  const double a = link.wavelength / (4.0 * kPi * link.distance);
  return link.eta_t * link.eta_r * a * a * g.G_t * g.G_r * g.L_t * g.L_r / noise3;
}

double rate_sue_sat(double q, const FsoLink& link, double B3, double noise3) {
  return B3 * std::log2(1.0 + q * fso_snr_slope(link, noise3));
}

Whitening interference_whitening(int k, const std::vector<CVec>& channels, const Vec& p, const SicOrder& order,
                                 double noise) {
  if (!(noise > 0.0)) throw Error(ErrorCode::SingularCovariance, "non-positive noise power");
  const Eigen::Index n = channels[k].size();
  const auto others = later_decoded(k, order);
  Whitening out;
  out.d = Vec::Zero(n);
  if (others.empty()) {
    out.U = CMat::Identity(n, n);
    return out;
  }
  // SVD of the scaled interferer matrix; the covariance itself is never formed
  // because satellite gains exceed the noise floor by far more than 1/eps.
  CMat Hi(n, static_cast<Eigen::Index>(others.size()));
  for (size_t j = 0; j < others.size(); ++j)
    Hi.col(static_cast<Eigen::Index>(j)) = channels[others[j]] * std::sqrt(p(others[j]) / noise);
  Eigen::JacobiSVD<CMat> svd(Hi, Eigen::ComputeFullU);
  out.U = svd.matrixU();
  const Vec& sv = svd.singularValues();
  for (Eigen::Index j = 0; j < sv.size(); ++j) out.d(j) = sv(j) * sv(j);
  return out;
}

CVec max_sinr_receiver(int k, const std::vector<CVec>& channels, const Vec& p, const SicOrder& order, double noise) {
  const Whitening wh = interference_whitening(k, channels, p, order, noise);
  CVec y = wh.U.adjoint() * channels[k];
  for (Eigen::Index j = 0; j < y.size(); ++j) y(j) /= 1.0 + wh.d(j);
  CVec w = wh.U * y;
  const double nrm = w.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error(ErrorCode::SingularCovariance, "degenerate receiver");
  return w / nrm;
}

ZfResult zf_receiver(int k, const std::vector<CVec>& channels, const SicOrder& order) {
  const Eigen::Index n = channels[k].size();
  const auto others = later_decoded(k, order);
  ZfResult out;
  if (others.empty()) {
    out.w = channels[k].normalized();
    return out;
  }
  CMat Hi(n, static_cast<Eigen::Index>(others.size()));
  for (size_t j = 0; j < others.size(); ++j) Hi.col(static_cast<Eigen::Index>(j)) = channels[others[j]];
  CMat proj;
  if (static_cast<Eigen::Index>(others.size()) < n) {
    // Projector onto the orthogonal complement of the interferers' span.
    Eigen::ColPivHouseholderQR<CMat> qr(Hi);
    const CMat Q = qr.householderQ() * CMat::Identity(n, qr.rank());
    proj = CMat::Identity(n, n) - Q * Q.adjoint();
  } else {
    out.zf_infeasible = true;
    const double reg = 1e-3 * Hi.squaredNorm() / static_cast<double>(n);
    proj = (Hi * Hi.adjoint() + reg * CMat::Identity(n, n)).inverse() * reg;
  }
  CVec w = proj * channels[k];
  if (!(w.norm() > 0.0)) w = channels[k];
  out.w = w.normalized();
  return out;
}

}  // namespace stcomp
