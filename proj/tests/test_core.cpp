#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fdepth/core.hpp"
#include "fdepth/rng.hpp"

using namespace fdepth;
using std::numbers::pi;

namespace {

GridFunction random_function(const Grid& g, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  std::vector<double> v(g.size());
  for (double& x : v) x = rng.normal();
  return GridFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("grid construction and points") {
  CHECK_THROWS_AS(Grid(0.0, 1.0, 2), Error);
  CHECK_THROWS_AS(Grid(1.0, 1.0, 5), Error);
  const Grid g(-3.0, 3.0, 101);
  CHECK(g.point(0) == -3.0);
  CHECK(g.point(100) == 3.0);
  CHECK(g.step() == doctest::Approx(0.06));
  const auto w = Grid::unit(5).weights();
  CHECK(w[0] == doctest::Approx(0.125));
  CHECK(w[2] == doctest::Approx(0.25));
}

TEST_CASE("grid functions validate their values") {
  const Grid g = Grid::unit(5);
  CHECK_THROWS_AS(GridFunction(g, {1, 2, 3}), Error);
  CHECK_THROWS_AS(GridFunction(g, {1, 2, NAN, 4, 5}), Error);
  CHECK_THROWS_AS(GridFunction::zeros(g) + GridFunction::zeros(Grid::unit(6)), Error);
}

TEST_CASE("integrate") {
  const Grid g = Grid::unit(101);
  CHECK(integrate(GridFunction::constant(g, 1.0)) == 1.0);
  CHECK(integrate(GridFunction::sample(g, [](double t) { return t; })) == doctest::Approx(0.5).epsilon(1e-15));
  const Grid g2 = Grid::unit(201);
  CHECK(std::abs(integrate(GridFunction::sample(g2, [](double t) { return std::sin(pi * t); })) - 2.0 / pi) < 1e-4);
}

TEST_CASE("lp_norm") {
  const Grid g = Grid::unit(201);
  CHECK(lp_norm(GridFunction::zeros(g), 2.0) == 0.0);
  const auto f = GridFunction::sample(g, [](double t) { return std::sqrt(2.0) * std::sin(pi * t); });
  CHECK(std::abs(lp_norm(f, 2.0) - 1.0) < 1e-4);
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    CHECK(lp_norm(GridFunction::constant(g, -2.5), p) == doctest::Approx(2.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lp_norm(f, 0.5), Error);
}

TEST_CASE("l2_inner") {
  const Grid g = Grid::unit(201);
  const auto s1 = GridFunction::sample(g, [](double t) { return std::sqrt(2.0) * std::sin(pi * t); });
  const auto s2 = GridFunction::sample(g, [](double t) { return std::sqrt(2.0) * std::sin(2 * pi * t); });
  CHECK(std::abs(l2_inner(s1, s1) - 1.0) < 1e-4);
  CHECK(std::abs(l2_inner(s1, s2)) < 1e-4);
  CHECK(l2_inner(GridFunction::zeros(g), s2) == 0.0);
}

TEST_CASE("derivative") {
  const Grid g = Grid::unit(101);
  const auto lin = derivative(GridFunction::sample(g, [](double t) { return t; }), 1);
  for (double v : lin.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
  const auto quad = derivative(GridFunction::sample(g, [](double t) { return t * t; }), 2);
  for (std::size_t k = 1; k + 1 < g.size(); ++k) CHECK(std::abs(quad[k] - 2.0) < 1e-6);
  const auto c = derivative(GridFunction::constant(g, 4.0), 1);
  for (double v : c.values()) CHECK(std::abs(v) < 1e-12);
  CHECK_THROWS_AS(derivative(lin, 3), Error);
}

TEST_CASE("derivative stencils are second order up to the boundary") {
  // Halving the step should cut the worst error roughly fourfold.
  auto worst = [](std::size_t m, int r) {
    const Grid g = Grid::unit(m);
    const auto d = derivative(GridFunction::sample(g, [](double t) { return std::exp(2 * t); }), r);
    double e = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double exact = (r == 1 ? 2.0 : 4.0) * std::exp(2 * g.point(k));
      e = std::max(e, std::abs(d[k] - exact));
    }
    return e;
  };
  for (int r : {1, 2}) {
    const double ratio = worst(101, r) / worst(201, r);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
  }
}

TEST_CASE("quadrature and norm properties on random functions") {
  const Grid g = Grid::unit(64);
  for (std::uint64_t s = 0; s < 25; ++s) {
    const auto f = random_function(g, 2 * s);
    const auto h = random_function(g, 2 * s + 1);
    const double a = 1.7;
    const double b = -0.3;
    const double lhs = integrate(a * f + b * h);
    const double rhs = a * integrate(f) + b * integrate(h);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
    for (double p : {1.0, 2.0, 3.5}) {
      CHECK(lp_norm(-3.0 * f, p) == doctest::Approx(3.0 * lp_norm(f, p)).epsilon(1e-12));
      CHECK(lp_norm(f + h, p) <= lp_norm(f, p) + lp_norm(h, p) + 1e-12);
    }
    CHECK(std::abs(l2_inner(f, h)) <= lp_norm(f, 2.0) * lp_norm(h, 2.0) + 1e-12);
    CHECK(l2_inner(f, f) == doctest::Approx(std::pow(lp_norm(f, 2.0), 2)).epsilon(1e-12));
  }
}

TEST_CASE("functional sample") {
  const Grid g = Grid::unit(3);
  RowMatrix v(2, 3);
  v << 1, 2, 3, 3, 4, 5;
  const FunctionalSample s(g, v);
  CHECK(s.size() == 2);
  CHECK(s.mean()[1] == 3.0);
  CHECK(s.row(1)[2] == 5.0);
  CHECK_THROWS_AS(FunctionalSample(Grid::unit(4), v), Error);
}
