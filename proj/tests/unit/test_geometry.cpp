#include <cmath>

#include "doctest.h"
#include "stcomp/geometry.hpp"

using namespace stcomp;

TEST_SUITE("geometry") {
  TEST_CASE("full Walker shell") {
    ConstellationConfig c;
    const auto sats = build_walker(c);
    CHECK(sats.size() == 1584);
    for (const auto& s : sats) CHECK(std::abs(s.norm() - (kEarthRadiusKm + 550.0)) <= 1e-9 * s.norm());
  }

  TEST_CASE("degenerate constellation") {
    ConstellationConfig c;
    c.planes = 1;
    c.satellites_per_plane = 1;
    c.inclination_rad = 0.0;
    c.phase_factor = 0;
    const auto sats = build_walker(c);
    REQUIRE(sats.size() == 1);
    CHECK(std::abs(sats[0].z()) < 1e-9);
    CHECK(sats[0].norm() == doctest::Approx(kEarthRadiusKm + 550.0).epsilon(1e-12));
  }

  TEST_CASE("slant range") {
    CHECK(slant_range({0, 0, 6371}, {0, 0, 6921}) == doctest::Approx(550.0).epsilon(1e-14));
    CHECK(slant_range({1, 2, 3}, {1, 2, 3}) == 0.0);
    const Position a{1234.5, -42.0, 6000.0}, b{-300.0, 2500.25, 6800.0};
    const double dx = a.x() - b.x(), dy = a.y() - b.y(), dz = a.z() - b.z();
    CHECK(slant_range(a, b) == doctest::Approx(std::sqrt(dx * dx + dy * dy + dz * dz)).epsilon(1e-14));
  }

  TEST_CASE("direct mode is deterministic and respects the distance ranges") {
    ScenarioConfig cfg;
    const auto g1 = sample_geometry(5, cfg, GeometryMode::Direct);
    const auto g2 = sample_geometry(5, cfg, GeometryMode::Direct);
    CHECK(g1.dist_gue_bs == g2.dist_gue_bs);
    CHECK(g1.dist_sue_sat == g2.dist_sue_sat);
    CHECK(g1.boresight == g2.boresight);

    double lo = 1e9, hi = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const auto g = sample_geometry(s, cfg, GeometryMode::Direct);
      for (double d : g.dist_sue_sat.data()) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    }
    CHECK(lo >= 500.0);
    CHECK(hi <= 1500.0);
  }

  TEST_CASE("growing K keeps existing draws") {
    ScenarioConfig small, big;
    small.K = 3;
    big.K = 6;
    const auto a = sample_geometry(11, small, GeometryMode::Direct);
    const auto b = sample_geometry(11, big, GeometryMode::Direct);
    for (int k = 0; k < 3; ++k)
      for (int m = 0; m < small.M; ++m) CHECK(a.dist_gue_bs(k, m) == b.dist_gue_bs(k, m));
  }

  TEST_CASE("walker mode keeps visible satellites in range") {
    ScenarioConfig cfg;
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto g = sample_geometry(s, cfg, GeometryMode::Walker);
      for (double d : g.dist_gue_sat.data()) {
        CHECK(d >= 550.0);
        CHECK(d <= 2700.0);
      }
    }
  }
}
