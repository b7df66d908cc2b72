/*
 * Copyright 2026 The focdes Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "focdes/error.hpp"
#include "focdes/fractional.hpp"
#include "support/oracles.hpp"

using namespace focdes;
using namespace focdes::fractional;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> w;
  for (int k = 0; k < n; ++k) w.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  return w;
}

}  // namespace

TEST_SUITE("fractional") {
  TEST_CASE("recursive pole-zero placement") {
    const ZeroPoleGain z = oustaloup_zpk({0.5, 1e-2, 1e2, 2});
    REQUIRE(z.zeros.size() == 5);
    REQUIRE(z.poles.size() == 5);
    CHECK(z.gain == doctest::Approx(10.0));
    // Geometric spacing ratio (w_h / w_b)^(1 / (2N + 1)) = 1e4^(1/5).
    const double ratio = std::pow(1e4, 0.2);
    for (std::size_t k = 1; k < 5; ++k) {
      CHECK(z.poles[k] / z.poles[k - 1] == doctest::Approx(ratio));
      CHECK(z.zeros[k] / z.zeros[k - 1] == doctest::Approx(ratio));
    }
    // alpha > 0: each zero precedes its pole, separated by ratio^alpha.
    for (std::size_t k = 0; k < 5; ++k) CHECK(z.poles[k] / z.zeros[k] == doctest::Approx(std::pow(ratio, 0.5)));
    CHECK(z.zeros.front() == doctest::Approx(1e-2 * std::pow(1e4, 0.25 / 5.0)));
  }

  TEST_CASE("order zero is the identity") {
    const lti::LtiSystem sys = oustaloup({0.0, 1e-2, 1e2, 2});
    for (double w : {1e-3, 0.1, 1.0, 50.0, 1e4}) CHECK(std::abs(sys.frequency_response(w) - 1.0) < 1e-12);
  }

  TEST_CASE("phase and slope stay flat inside the band") {
    for (double alpha : {-0.85, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 0.85}) {
      CAPTURE(alpha);
      const lti::LtiSystem sys = oustaloup({alpha, 1e-2, 1e2, 2});
      for (double w : log_grid(0.1, 10.0, 41)) {
        const auto [phase, slope] = oracle::phase_and_slope(sys, w);
        CHECK(std::abs(phase - alpha * 90.0) <= 5.0);
        CHECK(std::abs(slope - 20.0 * alpha) <= 0.1 * std::abs(20.0 * alpha));
      }
      // Magnitude crosses 1 at the geometric band centre.
      CHECK(std::abs(sys.frequency_response(1.0)) == doctest::Approx(1.0).epsilon(0.05));
    }
  }

  TEST_CASE("half-order filter at the band centre") {
    const auto g = oustaloup({0.5, 1e-2, 1e2, 2}).frequency_response(1.0);
    CHECK(std::abs(std::abs(g) - 1.0) <= 0.02);
    CHECK(std::abs(std::arg(g) * 180.0 / std::numbers::pi - 45.0) <= 2.0);
  }

  TEST_CASE("filters are stable and minimum phase") {
    for (double alpha : {-1.0, -0.6, -0.1, 0.3, 0.9, 1.0}) {
      const ZeroPoleGain z = oustaloup_zpk({alpha, 1e-2, 1e2, 2});
      for (double w : z.zeros) CHECK(-w < 0.0);
      for (double w : z.poles) CHECK(-w < 0.0);
      if (alpha == 0.0) continue;
      const auto poles = oustaloup({alpha, 1e-2, 1e2, 2}).poles();
      for (Eigen::Index k = 0; k < poles.size(); ++k) {
        CHECK(poles(k).real() < 0.0);
        CHECK(std::abs(poles(k).imag()) < 1e-9);
      }
    }
  }

  TEST_CASE("slope between 0.5 and 2 rad/s") {
    for (double alpha : {-1.0, -0.5, 0.2, 0.7, 1.0}) {
      const lti::LtiSystem sys = oustaloup({alpha, 1e-2, 1e2, 2});
      const double slope = 20.0 * (std::log10(std::abs(sys.frequency_response(2.0))) -
                                   std::log10(std::abs(sys.frequency_response(0.5)))) / std::log10(4.0);
      CHECK(std::abs(slope - 20.0 * alpha) <= 0.1 * std::abs(20.0 * alpha));
    }
  }

  TEST_CASE("opposite orders cancel inside the band") {
    for (double alpha : {0.2, 0.5, 0.8, 1.0}) {
      const lti::LtiSystem pair = lti::series(oustaloup({alpha, 1e-2, 1e2, 2}), oustaloup({-alpha, 1e-2, 1e2, 2}));
      for (double w : log_grid(0.1, 10.0, 21)) CHECK(std::abs(std::abs(pair.frequency_response(w)) - 1.0) <= 0.02);
    }
  }

  TEST_CASE("oustaloup rejects out-of-range inputs") {
    CHECK_THROWS_AS(oustaloup({1.5, 1e-2, 1e2, 2}), InvalidArgument);
    CHECK_THROWS_AS(oustaloup({0.5, 1e2, 1e-2, 2}), InvalidArgument);
    CHECK_THROWS_AS(oustaloup({0.5, 1e-2, 1e2, 0}), InvalidArgument);
  }

  TEST_CASE("order decomposition") {
    const OrderSplit a = decompose_order(1.3);
    CHECK(a.integer_part == 1);
    CHECK(a.fractional_part == doctest::Approx(0.3));
    const OrderSplit b = decompose_order(-0.7);
    CHECK(b.integer_part == 0);
    CHECK(b.fractional_part == doctest::Approx(-0.7));
    const OrderSplit c = decompose_order(-1.5);
    CHECK(c.integer_part == -1);
    CHECK(c.fractional_part == doctest::Approx(-0.5));
    CHECK(decompose_order(1.0).fractional_part == 0.0);
    CHECK(decompose_order(1.4).integer_part == 1);
    CHECK(decompose_order(1.4).fractional_part == doctest::Approx(0.4));
    CHECK(decompose_order(0.7).integer_part == 0);
    CHECK(decompose_order(-1.2).integer_part == -1);
    CHECK(decompose_order(-1.2).fractional_part == doctest::Approx(-0.2));
    CHECK_THROWS_AS(decompose_order(2.0), InvalidArgument);
  }

  TEST_CASE("family names") {
    CHECK(parse_family("slow") == Family::kSlow);
    CHECK(parse_family("fast") == Family::kFast);
    CHECK(parse_family("pid") == Family::kPid);
    CHECK(to_string(Family::kFast) == "fast");
    try {
      parse_family("medium");
      FAIL("expected rejection");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find("slow, fast, pid") != std::string::npos);
    }
  }

  TEST_CASE("parameter validation") {
    CHECK_NOTHROW((FopidParams{1, 1, 1, 0.5, 0.5, Family::kSlow}.validate()));
    CHECK_NOTHROW((FopidParams{1, 1, 1, 1.5, 0.5, Family::kFast}.validate()));
    CHECK_THROWS_AS((FopidParams{1, 1, 1, 1.5, 0.5, Family::kSlow}.validate()), InvalidArgument);
    CHECK_THROWS_AS((FopidParams{1, 1, 1, 0.5, 0.5, Family::kFast}.validate()), InvalidArgument);
    CHECK_THROWS_AS((FopidParams{1, 1, 1, 0.5, 1.0, Family::kPid}.validate()), InvalidArgument);
    CHECK_THROWS_AS((FopidParams{1, 1, 1, 3.0, 1.0, Family::kFast}.validate()), InvalidArgument);
    CHECK_THROWS_AS((FopidParams{-1, 1, 1, 1, 1, Family::kPid}.validate()), InvalidArgument);
    CHECK_THROWS_AS((FopidParams{1, std::nan(""), 1, 1, 1, Family::kPid}.validate()), InvalidArgument);
  }

  TEST_CASE("proportional-only controller") {
    for (Family f : {Family::kSlow, Family::kFast, Family::kPid}) {
      const double lambda = f == Family::kFast ? 1.7 : (f == Family::kSlow ? 0.3 : 1.0);
      const double mu = f == Family::kPid ? 1.0 : 0.6;
      RealizedController c = realize_controller({1.0, 0.0, 0.0, lambda, mu, f});
      for (double w : {0.01, 1.0, 100.0}) CHECK(std::abs(c.as_system().frequency_response(w) - 1.0) < 1e-12);
      RealizedController k = realize_controller({2.5, 0.0, 0.0, lambda, mu, f});
      CHECK(step_controller(k, 0.3, 0.01) == doctest::Approx(0.75));
    }
  }

  TEST_CASE("pure integrator at five seconds") {
    RealizedController c = realize_controller({0.0, 1.0, 0.0, 1.0, 1.0, Family::kPid});
    double y = 0.0;
    for (int k = 0; k < 500; ++k) y = step_controller(c, 1.0, 0.01);
    CHECK(std::abs(y - 5.0) < 1e-6);
  }

  TEST_CASE("unit-order FOPID equals the exact PID on a band-limited signal") {
    const FopidParams p{0.7, 0.4, 0.2, 1.0, 1.0, Family::kSlow};
    RealizedController frac = realize_controller(p);
    // Exact PID built directly from transfer functions.
    lti::LtiSystem integ = lti::from_transfer_function(std::vector<double>{p.ki}, std::vector<double>{1.0, 0.0});
    lti::LtiSystem deriv = lti::from_transfer_function(std::vector<double>{p.kd, 0.0}, std::vector<double>{1.0 / 1e2, 1.0});
    double err2 = 0.0, ref2 = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double t = k * 0.01;
      const double e = std::sin(0.3 * t) + 0.5 * std::sin(2.1 * t + 0.4) + 0.2 * std::cos(0.05 * t);
      const double got = step_controller(frac, e, 0.01);
      const double want = p.kp * e + lti::step_lti(integ, e, 0.01) + lti::step_lti(deriv, e, 0.01);
      err2 += (got - want) * (got - want);
      ref2 += want * want;
    }
    CHECK(std::sqrt(err2 / ref2) < 0.02);
  }

  TEST_CASE("controller stepping is linear in its input") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const FopidParams& p : {FopidParams{0.3, 0.8, 0.2, 0.6, 0.4, Family::kSlow},
                                 FopidParams{0.1, 0.5, 0.7, 1.4, 1.3, Family::kFast},
                                 FopidParams{0.9, 0.2, 0.1, 1.0, 1.0, Family::kPid}}) {
      RealizedController a = realize_controller(p), b = a.clone(), ab = a.clone();
      const double alpha = 0.7, beta = -1.3;
      for (int k = 0; k < 2000; ++k) {
        const double x = u(gen), y = u(gen);
        const double ya = step_controller(a, x, 0.01);
        const double yb = step_controller(b, y, 0.01);
        const double yab = step_controller(ab, alpha * x + beta * y, 0.01);
        CHECK(std::abs(yab - (alpha * ya + beta * yb)) <= 1e-9 * std::max(1.0, std::abs(yab)));
      }
    }
  }

  TEST_CASE("integer PID realization is exact") {
    const FopidParams p{0.4, 0.3, 0.05, 1.0, 1.0, Family::kPid};
    const RealizedController c = realize_controller(p);
    const lti::LtiSystem sys = c.as_system();
    for (double w : {0.01, 0.5, 3.0, 40.0}) {
      const std::complex<double> s(0.0, w);
      const std::complex<double> want = p.kp + p.ki / s + p.kd * s / (1.0 + s / 1e2);
      CHECK(std::abs(sys.frequency_response(w) - want) < 1e-9 * std::abs(want));
    }
  }

  TEST_CASE("fractional branches follow the power law inside the band") {
    for (double lambda : {0.3, 0.7, 1.2, 1.8}) {
      CAPTURE(lambda);
      const Family fam = lambda < 1.0 ? Family::kSlow : Family::kFast;
      const RealizedController c = realize_controller({0.0, 2.0, 0.0, lambda, 1.0, fam});
      for (double w : log_grid(0.1, 10.0, 11)) {
        const auto g = c.integral_branch.frequency_response(w);
        CHECK(std::abs(g) == doctest::Approx(2.0 * std::pow(w, -lambda)).epsilon(0.1));
        CHECK(std::abs(std::arg(g) * 180.0 / std::numbers::pi + lambda * 90.0) <= 5.0);
      }
    }
    for (double mu : {0.2, 0.6, 1.4}) {
      CAPTURE(mu);
      const RealizedController c = realize_controller({0.0, 0.0, 1.5, 0.5, mu, Family::kSlow});
      for (double w : log_grid(0.1, 10.0, 11)) {
        const auto g = c.derivative_branch.frequency_response(w);
        // The integer stage is band-limited at w_h, so the tolerance widens near 10 rad/s.
        CHECK(std::abs(g) == doctest::Approx(1.5 * std::pow(w, mu)).epsilon(0.12));
      }
    }
  }

  TEST_CASE("fractional integral keeps exact integral action") {
    const RealizedController c = realize_controller({0.0, 1.0, 0.0, 0.4, 1.0, Family::kSlow});
    const auto poles = c.integral_branch.poles();
    int at_origin = 0;
    for (Eigen::Index k = 0; k < poles.size(); ++k) at_origin += std::abs(poles(k)) < 1e-12;
    CHECK(at_origin == 1);
  }

  TEST_CASE("half-integrator step response") {
    RealizedController c = realize_controller({0.0, 1.0, 0.0, 0.5, 1.0, Family::kSlow});
    const double h = 1e-3;
    double worst = 0.0;
    for (int k = 1; k <= 10000; ++k) {
      const double y = step_controller(c, 1.0, h);
      const double t = k * h;
      if (t < 0.1 - 1e-12) continue;
      const double exact = std::sqrt(t) / std::tgamma(1.5);
      worst = std::max(worst, std::abs(y - exact) / exact);
    }
    CHECK(worst < 0.05);
  }

  TEST_CASE("double integrator at the upper order bound") {
    RealizedController c = realize_controller({0.0, 1.0, 0.0, 2.0, 1.0, Family::kFast});
    double y = 0.0;
    for (int k = 0; k < 200; ++k) y = step_controller(c, 1.0, 0.01);
    CHECK(y == doctest::Approx(2.0).epsilon(1e-9));  // t^2 / 2 at t = 2
  }

  TEST_CASE("zero gains give a silent controller") {
    for (Family f : {Family::kSlow, Family::kFast, Family::kPid}) {
      const double lambda = f == Family::kFast ? 1.5 : (f == Family::kSlow ? 0.5 : 1.0);
      RealizedController c = realize_controller({0.0, 0.0, 0.0, lambda, 1.0, f});
      for (int k = 0; k < 100; ++k) CHECK(step_controller(c, 0.3, 0.01) == 0.0);
    }
  }

  TEST_CASE("clone starts from rest") {
    RealizedController c = realize_controller({0.1, 0.5, 0.1, 0.7, 0.4, Family::kSlow});
    for (int k = 0; k < 10; ++k) step_controller(c, 1.0, 0.01);
    RealizedController fresh = c.clone();
    CHECK(fresh.integral_branch.state().norm() == 0.0);
    CHECK(fresh.derivative_branch.state().norm() == 0.0);
    CHECK(c.integral_branch.state().norm() > 0.0);
  }
}
