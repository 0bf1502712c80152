#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stcomp/channel.hpp"
#include "stcomp/errors.hpp"

using namespace stcomp;

TEST_SUITE("channel") {
  TEST_CASE("terrestrial pathloss") {
    CHECK(pathloss_db(1.0) == 128.1);
    CHECK(pathloss_db(10.0) == doctest::Approx(165.7).epsilon(1e-12));
    CHECK(pathloss_db(0.1) == doctest::Approx(90.5).epsilon(1e-12));
    CHECK_THROWS_AS(pathloss_db(0.0), Error);
  }

  TEST_CASE("terrestrial fading follows the pathloss law") {
    Rng a = make_rng(3, {1}), b = make_rng(3, {1});
    CHECK(gen_terrestrial(a, 0.5, 16).h == gen_terrestrial(b, 0.5, 16).h);
    CHECK(gen_terrestrial(a, 0.5, 16).h.size() == 16);

    Rng rng = make_rng(17, {2});
    const int draws = 100000;
    long double acc = 0.0L;
    for (int i = 0; i < draws / 4; ++i) acc += gen_terrestrial(rng, 1.0, 4).h.squaredNorm();
    const double mean = static_cast<double>(acc / draws);
    CHECK(std::abs(mean / std::pow(10.0, -12.81) - 1.0) < 0.02);
  }

  TEST_CASE("satellite large-scale factor") {
    const double base = large_scale_C(6e9, 1e6, 34.0, 1.38e-23, 20e6, 300.0);
    CHECK(large_scale_C(6e9, 2e6, 34.0, 1.38e-23, 20e6, 300.0) == doctest::Approx(base / 4).epsilon(1e-13));
    CHECK(large_scale_C(6e9, 1e6, 34.0, 1.38e-23, 40e6, 300.0) == doctest::Approx(base / 2).epsilon(1e-13));
    // Straight-line evaluation in the log domain.
    const double db = 20.0 * std::log10(3e8 / (4.0 * 3.14159265358979323846 * 6e9 * 1e6)) + 34.0 -
                      10.0 * std::log10(1.38e-23 * 20e6 * 300.0);
    CHECK(base == doctest::Approx(std::pow(10.0, db / 10.0)).epsilon(1e-10));
    CHECK_THROWS_AS(large_scale_C(6e9, 0.0, 34.0, 1.38e-23, 20e6, 300.0), Error);
  }

  TEST_CASE("rain attenuation") {
    Rng r0 = make_rng(1, {3});
    const CVec flat = rain_attenuation(r0, -2.6, 0.0, 8);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(flat(i)) == doctest::Approx(std::pow(10.0, -2.6 / 20.0)));

    Rng rng = make_rng(2, {3});
    const int draws = 100000;
    double log_amp = 0.0;
    std::vector<int> bins(20, 0);
    for (int i = 0; i < draws; ++i) {
      const CVec r = rain_attenuation(rng, -2.6, 1.63, 1);
      log_amp += std::log(std::abs(r(0)));
      double ph = std::arg(r(0));
      if (ph < 0) ph += 2.0 * kPi;
      ++bins[std::min(19, static_cast<int>(ph / (2.0 * kPi) * 20))];
    }
    const double expected = -2.6 / 20.0 * std::log(10.0);
    CHECK(std::abs(log_amp / draws / expected - 1.0) < 0.02);
    double chi2 = 0.0;
    for (int b : bins) chi2 += std::pow(b - draws / 20.0, 2) / (draws / 20.0);
    CHECK(chi2 < 36.19);  // 99th percentile, 19 degrees of freedom
  }

  TEST_CASE("beam gain shape") {
    const double eps3 = 0.4 * kPi / 180.0, bmax = 25.118864315095795;
    Vec e(1);
    e(0) = 0.0;
    CHECK(beam_gain(e, eps3, bmax)(0) == doctest::Approx(bmax).epsilon(1e-12));
    e(0) = eps3;
    // The cubed bracket is 2^(-1/2) at the 3-dB angle, so the gain there is 2^(-3/2) of the peak.
    CHECK(beam_gain(e, eps3, bmax)(0) / bmax == doctest::Approx(std::pow(2.0, -1.5)).epsilon(0.02));

    // Monotone on [0, eps3], checked against the series oracle.
    double prev = 1e300;
    for (int i = 0; i <= 400; ++i) {
      const double eps = eps3 * i / 400.0;
      const double u = 2.07123 * std::sin(eps) / std::sin(eps3);
      const double g = u < 1e-6 ? bmax
                                : bmax * std::pow(oracle::bessel_series(1, u) / (2 * u) +
                                                      36.0 * oracle::bessel_series(3, u) / (u * u * u),
                                                  3);
      e(0) = eps;
      const double lib = beam_gain(e, eps3, bmax)(0);
      CHECK(lib == doctest::Approx(g).epsilon(1e-9));
      CHECK(lib <= prev * (1 + 1e-15));
      prev = lib;
    }
  }

  TEST_CASE("doppler compensation and recomposition") {
    Rng rng = make_rng(9, {4});
    Vec b(4);
    b << 20.0, 18.0, 15.5, 22.0;
    const CVec r = rain_attenuation(rng, -2.6, 1.63, 4);
    const SatelliteChannel raw = assemble_sat_channel(1e-10, b, r, 0.37, 58.8);
    CHECK((recompose(raw) - raw.g).norm() <= 1e-12 * raw.g.norm());
    const SatelliteChannel comp = doppler_compensate(raw);
    CHECK(std::abs(comp.g.norm() - raw.g.norm()) <= 1e-12 * raw.g.norm());
    CHECK((recompose(comp) - comp.g).norm() <= 1e-12 * comp.g.norm());
    const SatelliteChannel still = assemble_sat_channel(1e-10, b, r, 0.0, 58.8);
    CHECK((doppler_compensate(still).g - still.g).norm() <= 1e-15 * still.g.norm());
  }

  TEST_CASE("optical gains") {
    FsoLink link;
    const FsoGains g = fso_gains(link);
    CHECK(g.G_t == doctest::Approx(1.643e11).epsilon(1e-3));
    CHECK(10.0 * std::log10(g.G_t) == doctest::Approx(112.2).epsilon(1e-3));
    CHECK(g.L_t == doctest::Approx(std::exp(-0.1052)).epsilon(1e-3));
    link.e_t = 0.0;
    CHECK(fso_gains(link).L_t == 1.0);
  }
}
