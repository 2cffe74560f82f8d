#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "casimir/quadrature.hpp"

using namespace casimir;

namespace {
BatchIntegrand wrap(double (*f)(double)) {
  return [f](std::span<const double> x, std::span<double> out) {
    for (size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  };
}
} // namespace

TEST_CASE("Kronrod pair integrates smooth functions to tolerance") {
  QuadResult q = integrate_panels(wrap(+[](double x) { return x * x * x * std::exp(-x); }),
                                  {0.0, 2.0, 8.0, 30.0}, 1e-10, 0.0, 1'000'000);
  CHECK(q.converged);
  // Int_0^30 x^3 e^-x = 6 - e^-30 (27000 + 2700 + 180 + 6)
  const double exact = 6.0 - std::exp(-30.0) * (27000.0 + 2700.0 + 180.0 + 6.0);
  CHECK(std::fabs(q.value - exact) <= 1e-10 * exact);
  CHECK(std::fabs(q.value - exact) <= q.error + 1e-15);
}

TEST_CASE("single-panel rule is exact for low-degree polynomials") {
  QuadResult q = integrate_panels(wrap(+[](double x) { return 5.0 * x * x * x * x; }),
                                  {-1.0, 1.0}, 1e-14, 0.0, 15);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sharp Lorentzian converges with panel hints") {
  const double g = 1e-3;
  auto f = [g](std::span<const double> x, std::span<double> out) {
    for (size_t i = 0; i < x.size(); ++i)
      out[i] = g / ((x[i] - 0.5) * (x[i] - 0.5) + g * g);
  };
  QuadResult q = integrate_panels(f, {0.0, 0.47, 0.5, 0.53, 1.0}, 1e-9, 0.0, 4'000'000);
  CHECK(q.converged);
  const double exact = std::atan(0.5 / g) + std::atan(0.5 / g);
  CHECK(q.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("error estimate bounds the next refinement") {
  // run at a loose tolerance, then tighter: the reported error of the loose
  // run must bound the observed difference
  auto f = wrap(+[](double x) { return std::sin(3.0 * x) * std::exp(-0.3 * x * x); });
  QuadResult loose = integrate_panels(f, {0.0, 4.0}, 1e-4, 0.0, 1'000'000);
  QuadResult tight = integrate_panels(f, {0.0, 4.0}, 1e-13, 0.0, 4'000'000);
  CHECK(std::fabs(loose.value - tight.value) <= loose.error * 1.0000001 + 1e-16);
}

TEST_CASE("budget exhaustion reports non-convergence") {
  auto f = wrap(+[](double x) { return std::sqrt(std::fabs(x - 0.123456)); });
  QuadResult q = integrate_panels(f, {0.0, 1.0}, 1e-14, 0.0, 120);
  CHECK(!q.converged);
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(16, 0.0, 2.0, x, w);
  double s31 = 0.0, s0 = 0.0;
  for (int i = 0; i < 16; ++i) {
    s31 += w[i] * std::pow(x[i], 31);
    s0 += w[i];
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s31 == doctest::Approx(std::pow(2.0, 32) / 32.0).epsilon(1e-12));
}

TEST_CASE("parallel_for covers every index once, any thread count") {
  for (int threads : {1, 3, 7}) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(257, threads, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}
