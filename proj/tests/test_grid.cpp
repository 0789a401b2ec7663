#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "rqi/grid.hpp"

using namespace rqi;
using Catch::Approx;

namespace {

double integrate(const MomentumGrid& g, double (*f)(const Vec3&, double), double param) {
  double s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * f(g.momentum(i), param);
  return s;
}

double gauss(const Vec3& p, double delta) { return std::exp(-p.squaredNorm() / (delta * delta)); }

}  // namespace

TEST_CASE("presets and parsing") {
  CHECK(single_particle_grid(GridPreset::standard).size() == 48u * 32u * 48u);
  CHECK(single_particle_grid(GridPreset::coarse).size() == 16u * 8u * 16u);
  CHECK(pair_grid(GridPreset::standard).size() == 16u * 8u * 16u);
  CHECK(single_particle_grid(GridPreset::standard).cutoff == 6.0);
  CHECK(parse_grid_preset("COARSE") == GridPreset::coarse);
  CHECK(parse_grid_preset("DEFAULT") == GridPreset::standard);
  CHECK(parse_grid_preset("FINE") == GridPreset::fine);
  CHECK(to_string(GridPreset::fine) == "FINE");
  CHECK_THROWS_AS(parse_grid_preset("huge"), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  const Quadrature1D q = gauss_legendre(7, -1.0, 2.0);
  double s0 = 0, s13 = 0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    CHECK(q.nodes[i] > -1.0);
    CHECK(q.nodes[i] < 2.0);
    s0 += q.weights[i];
    s13 += q.weights[i] * std::pow(q.nodes[i], 13);
  }
  CHECK(s0 == Approx(3.0).epsilon(1e-14));
  CHECK(s13 == Approx((std::pow(2.0, 14) - 1.0) / 14).epsilon(1e-12));
  CHECK_THROWS_AS(gauss_legendre(0, 0, 1), std::domain_error);
}

TEST_CASE("massive Gaussian norms match a radial Simpson oracle") {
  for (double delta : {0.01, 0.05, 0.2}) {
    const MomentumGrid g = MomentumGrid::cylindrical(single_particle_grid(GridPreset::standard),
                                                     1.0, delta, delta);
    const double ref = oracle::gaussian_norm_massive(delta, 1.0);
    CHECK(std::abs(integrate(g, gauss, delta) - ref) / ref < 1e-6);
    for (double w : g.weights()) CHECK(w > 0);
  }
}

TEST_CASE("massless beam integral matches a two-dimensional Simpson oracle") {
  const double k = 1.0, dr = 0.05, dz = 0.01;
  const MomentumGrid g =
      MomentumGrid::cylindrical(single_particle_grid(GridPreset::standard), 0.0, dr, dz, k);
  CHECK(g.massless());
  double num = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3& p = g.momentum(i);
    const double pr2 = p.x() * p.x() + p.y() * p.y();
    num += g.weight(i) * std::exp(-pr2 / (dr * dr) - std::pow(p.z() - k, 2) / (dz * dz));
    CHECK(g.energy(i) == Approx(p.norm()).epsilon(1e-15));
  }
  auto inner = [&](double pz) {
    return oracle::simpson(
        [&](double pr) {
          return pr * std::exp(-pr * pr / (dr * dr) - std::pow(pz - k, 2) / (dz * dz)) /
                 (2 * std::hypot(pr, pz));
        },
        0, 8 * dr, 2000);
  };
  const double ref = oracle::simpson(inner, k - 8 * dz, k + 8 * dz, 2000) * 2 * oracle::kPi /
                     std::pow(2 * oracle::kPi, 3);
  CHECK(std::abs(num - ref) / ref < 1e-6);
}

TEST_CASE("transformed grids map nodes and keep weights") {
  const MomentumGrid g = MomentumGrid::cylindrical(single_particle_grid(GridPreset::coarse), 2.0,
                                                   0.1, 0.1);
  const auto lam = lorentz::boost_from_velocity(Vec3(0.1, -0.3, 0.5));
  const MomentumGrid h = g.transformed(lam);
  CHECK(h.size() == g.size());
  CHECK(h.weights() == g.weights());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec4 ref = oracle::boost_matrix(Vec3(0.1, -0.3, 0.5)) * g.four_momentum(i).vec();
    CHECK((h.four_momentum(i).vec() - ref).norm() < 1e-12);
  }
}

TEST_CASE("grid construction rejects invalid input") {
  CHECK_THROWS_AS(MomentumGrid(-1.0, {}, {}), std::domain_error);
  CHECK_THROWS_AS(MomentumGrid(1.0, {Vec3::Zero()}, {}), std::invalid_argument);
  CHECK_THROWS_AS(MomentumGrid(1.0, {Vec3::Zero()}, {0.0}), std::domain_error);
  CHECK_THROWS_AS(MomentumGrid::cylindrical(GridSpec{0, 4, 4, 6.0}, 1.0, 0.1, 0.1), std::domain_error);
  CHECK_THROWS_AS(MomentumGrid::cylindrical(GridSpec{}, 1.0, -0.1, 0.1), std::domain_error);
}
