#pragma once

#include <vector>

#include "stcomp/channel.hpp"
#include "stcomp/types.hpp"

namespace stcomp {

// rank[k] is the decoding position of user k (0 = decoded first);
// order[j] is the user decoded at position j.
struct SicOrder {
  std::vector<int> rank;
  std::vector<int> order;
};

struct Beamformers {
  std::vector<CVec> w;  // k * M + m
  std::vector<CVec> v;  // k * N + n
};

SicOrder sic_order(const std::vector<CVec>& channels);

// Users whose signal is still present when user k is decoded.
std::vector<int> later_decoded(int k, const SicOrder& order);

double interference(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order);

double sinr(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order,
            double noise);

// B log2(1 + SINR) at one receiving node.
double noma_rate(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order,
                 double bandwidth, double noise);

double rate_gue_bs(int k, const std::vector<CVec>& channels, const CVec& w, const Vec& p, const SicOrder& order,
                   double B1, double noise1);
double rate_gue_sat(int k, const std::vector<CVec>& channels, const CVec& v, const Vec& p, const SicOrder& order,
                    double B2, double noise2);

// Received SNR per transmitted watt of the optical link.
double fso_snr_slope(const FsoLink& link, double noise3);
double rate_sue_sat(double q, const FsoLink& link, double B3, double noise3);

// Eigenbasis of the interference-plus-noise covariance of user k, normalised
// by the noise: R / noise = U diag(1 + d) U^H.
struct Whitening {
  CMat U;
  Vec d;
};

Whitening interference_whitening(int k, const std::vector<CVec>& channels, const Vec& p, const SicOrder& order,
                                 double noise);

CVec max_sinr_receiver(int k, const std::vector<CVec>& channels, const Vec& p, const SicOrder& order, double noise);

struct ZfResult {
  CVec w;
  bool zf_infeasible = false;  // more interferers than antennas; regularised nulling used
};

ZfResult zf_receiver(int k, const std::vector<CVec>& channels, const SicOrder& order);

}  // namespace stcomp
