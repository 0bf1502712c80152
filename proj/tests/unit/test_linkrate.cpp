#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "stcomp/linkrate.hpp"
#include "stcomp/rng.hpp"

using namespace stcomp;

namespace {

CVec random_cvec(Rng& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_SUITE("linkrate") {
  TEST_CASE("decoding order") {
    std::vector<CVec> ch(3, CVec::Zero(1));
    ch[0](0) = 3.0;
    ch[1](0) = 1.0;
    ch[2](0) = 2.0;
    const SicOrder s = sic_order(ch);
    CHECK(s.rank == std::vector<int>{0, 2, 1});
    CHECK(s.order == std::vector<int>{0, 2, 1});
    CHECK(later_decoded(0, s) == std::vector<int>{2, 1});
    CHECK(later_decoded(1, s).empty());

    std::vector<CVec> eq(4, CVec::Ones(2));
    CHECK(sic_order(eq).order == std::vector<int>{0, 1, 2, 3});

    Rng rng = make_rng(4, {5});
    std::vector<CVec> rnd;
    for (int i = 0; i < 12; ++i) rnd.push_back(random_cvec(rng, 3));
    std::vector<int> idx(12);
    std::iota(idx.begin(), idx.end(), 0);
    // Insertion sort by descending norm.
    for (int i = 1; i < 12; ++i)
      for (int j = i; j > 0 && rnd[idx[j]].squaredNorm() > rnd[idx[j - 1]].squaredNorm(); --j) std::swap(idx[j], idx[j - 1]);
    CHECK(sic_order(rnd).order == idx);
  }

  TEST_CASE("rate at unit SNR equals the bandwidth") {
    std::vector<CVec> ch{CVec::Constant(1, Complex(2.0, 0.0))};
    const SicOrder s = sic_order(ch);
    const CVec w = CVec::Ones(1);
    Vec p(1);
    p << 0.25;
    CHECK(noma_rate(0, ch, w, p, s, 20e6, 1.0) == doctest::Approx(20e6).epsilon(1e-14));
  }

  TEST_CASE("interference follows the decoding order") {
    Rng rng = make_rng(6, {5});
    std::vector<CVec> ch;
    for (int i = 0; i < 3; ++i) ch.push_back(random_cvec(rng, 4));
    const SicOrder s = sic_order(ch);
    Vec p(3);
    p << 0.3, 0.7, 0.5;
    const CVec w = random_cvec(rng, 4).normalized();
    const int last = s.order.back(), first = s.order.front();
    CHECK(interference(last, ch, w, p, s) == 0.0);
    double all = 0.0;
    for (int i = 0; i < 3; ++i)
      if (i != first) all += p(i) * std::norm(w.dot(ch[i]));
    CHECK(interference(first, ch, w, p, s) == doctest::Approx(all).epsilon(1e-14));

    // Element-wise expansion of the SINR.
    const double noise = 0.1;
    for (int k = 0; k < 3; ++k) {
      double num_re = 0, num_im = 0;
      for (int i = 0; i < 4; ++i) {
        num_re += w(i).real() * ch[k](i).real() + w(i).imag() * ch[k](i).imag();
        num_im += w(i).real() * ch[k](i).imag() - w(i).imag() * ch[k](i).real();
      }
      double intf = 0.0;
      for (int j = s.rank[k] + 1; j < 3; ++j) {
        const int u = s.order[j];
        double re = 0, im = 0;
        for (int i = 0; i < 4; ++i) {
          re += w(i).real() * ch[u](i).real() + w(i).imag() * ch[u](i).imag();
          im += w(i).real() * ch[u](i).imag() - w(i).imag() * ch[u](i).real();
        }
        intf += p(u) * (re * re + im * im);
      }
      CHECK(sinr(k, ch, w, p, s, noise) == doctest::Approx(p(k) * (num_re * num_re + num_im * num_im) / (intf + noise)).epsilon(1e-13));
    }
  }

  TEST_CASE("optical rate") {
    FsoLink link;
    CHECK(rate_sue_sat(0.0, link, 100e6, 1e-14) == 0.0);
    const double s1 = fso_snr_slope(link, 1e-14);
    link.distance *= 2;
    CHECK(fso_snr_slope(link, 1e-14) == doctest::Approx(s1 / 4).epsilon(1e-13));

    // Log-domain budget at 1000 km, q = 0.5 W.
    FsoLink l2;
    l2.distance = 1e6;
    const double Gt = std::pow(kPi * 0.2 / 1550e-9, 2);
    const double db = 10 * std::log10(0.5) + 20 * std::log10(0.9) + 20 * std::log10(1550e-9 / (4 * kPi * 1e6)) +
                      20 * std::log10(Gt) + 2 * 10 * std::log10(std::exp(-Gt * 0.64e-12)) + 140.0;
    const double expect = 100e6 * std::log2(1.0 + std::pow(10.0, db / 10.0));
    CHECK(rate_sue_sat(0.5, l2, 100e6, 1e-14) == doctest::Approx(expect).epsilon(1e-9));
  }

  TEST_CASE("max-SINR receiver") {
    Rng rng = make_rng(8, {5});
    std::vector<CVec> single{random_cvec(rng, 5)};
    Vec p1 = Vec::Constant(1, 0.5);
    const CVec w1 = max_sinr_receiver(0, single, p1, sic_order(single), 1e-3);
    CHECK(std::abs(std::abs(w1.dot(single[0].normalized())) - 1.0) < 1e-12);

    std::vector<CVec> ch;
    for (int i = 0; i < 6; ++i) ch.push_back(random_cvec(rng, 4));
    const SicOrder s = sic_order(ch);
    Vec p = Vec::Constant(6, 1.0);
    const double noise = 0.05;
    for (int k = 0; k < 6; ++k) {
      const CVec w = max_sinr_receiver(k, ch, p, s, noise);
      const double best = sinr(k, ch, w, p, s, noise);
      CHECK(best == doctest::Approx(oracle::max_sinr_value(k, ch, p, s, noise)).epsilon(1e-8));

      // Generalised eigenvalue through a Cholesky-whitened Jacobi solve.
      CMat R = CMat::Identity(4, 4) * noise;
      for (int j : later_decoded(k, s)) R += p(j) * ch[j] * ch[j].adjoint();
      const CMat Linv = R.llt().matrixL().solve(CMat::Identity(4, 4));
      const CMat A = Linv * (p(k) * ch[k] * ch[k].adjoint()) * Linv.adjoint();
      CHECK(best == doctest::Approx(oracle::jacobi_eigenvalues(A).maxCoeff()).epsilon(1e-8));
    }
    for (int t = 0; t < 1000; ++t) {
      const int k = t % 6;
      const double best = sinr(k, ch, max_sinr_receiver(k, ch, p, s, noise), p, s, noise);
      CHECK(best >= sinr(k, ch, random_cvec(rng, 4).normalized(), p, s, noise));
    }
  }

  TEST_CASE("zero-forcing receiver") {
    Rng rng = make_rng(10, {5});
    std::vector<CVec> ch{random_cvec(rng, 4), random_cvec(rng, 4)};
    const SicOrder s = sic_order(ch);
    const int first = s.order[0], second = s.order[1];
    const ZfResult z = zf_receiver(first, ch, s);
    CHECK(!z.zf_infeasible);
    CHECK(std::abs(z.w.dot(ch[second])) <= 1e-9 * ch[second].norm());
    std::vector<CVec> one{ch[0]};
    const ZfResult m = zf_receiver(0, one, sic_order(one));
    CHECK(std::abs(std::abs(m.w.dot(ch[0].normalized())) - 1.0) < 1e-12);
  }
}
