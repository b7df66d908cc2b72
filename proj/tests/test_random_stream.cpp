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
#include <string>

#include "focdes/error.hpp"
#include "focdes/random_stream.hpp"

using namespace focdes;
using namespace focdes::nsga2;

namespace {

constexpr StreamKind kAll[] = {StreamKind::kUniform, StreamKind::kLogistic, StreamKind::kHenon};

}  // namespace

TEST_SUITE("random_stream") {
  TEST_CASE("logistic map") {
    CHECK(logistic_next(0.3) == doctest::Approx(0.84).epsilon(1e-15));
    CHECK(logistic_next(0.0) == 0.0);
    CHECK(logistic_next(0.5) == 1.0);
    CHECK(logistic_next(1.0) == 0.0);
    for (int k = 0; k <= 1000; ++k) {
      const double y = logistic_next(k / 1000.0);
      CHECK(y >= 0.0);
      CHECK(y <= 1.0);
    }
  }

  TEST_CASE("henon map") {
    auto p = henon_next(0.0, 0.0);
    CHECK(p.first == 1.0);
    CHECK(p.second == 0.0);
    p = henon_next(1.0, 0.0);
    CHECK(p.first == doctest::Approx(-0.4));
    CHECK(p.second == doctest::Approx(0.3));
    p = henon_next(-0.4, 0.3);
    CHECK(p.first == doctest::Approx(1.076));
    CHECK(p.second == doctest::Approx(-0.12));
  }

  TEST_CASE("a million draws stay inside the unit interval") {
    for (StreamKind k : kAll) {
      CAPTURE(to_string(k));
      RandomStream rs(k, 12345);
      bool ok = true;
      for (int i = 0; i < 1000000; ++i) {
        const double v = rs.next();
        ok = ok && v >= 0.0 && v <= 1.0;
      }
      CHECK(ok);
    }
  }

  TEST_CASE("chaotic draws are the product of map and uniform values") {
    for (StreamKind k : {StreamKind::kLogistic, StreamKind::kHenon}) {
      RandomStream a(k, 77), b(k, 77);
      for (int i = 0; i < 1000; ++i) {
        const double c = b.chaotic();
        const double u = b.uniform();
        CHECK(a.next() == c * u);
      }
    }
    CHECK(0.84 * 0.5 == doctest::Approx(0.42));
  }

  TEST_CASE("chaotic histograms lean toward zero") {
    for (StreamKind k : {StreamKind::kLogistic, StreamKind::kHenon}) {
      for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        RandomStream rs(k, seed);
        int low = 0, high = 0;
        for (int i = 0; i < 10000; ++i) {
          const double v = rs.next();
          low += v <= 0.25;
          high += v >= 0.75;
        }
        CHECK(low > high);
      }
    }
  }

  TEST_CASE("fixed seeds reproduce sequences bit for bit") {
    for (StreamKind k : kAll) {
      RandomStream a(k, 2024), b(k, 2024), c(k, 2025);
      bool same = true, differs = false;
      for (int i = 0; i < 100000; ++i) {
        const double x = a.next(), y = b.next(), z = c.next();
        same = same && x == y;
        differs = differs || x != z;
      }
      CHECK(same);
      CHECK(differs);
    }
  }

  TEST_CASE("uniform stream is the 53-bit reduction of the twister") {
    RandomStream rs(StreamKind::kUniform, 9);
    std::mt19937_64 gen(9);
    for (int i = 0; i < 1000; ++i) CHECK(rs.next() == static_cast<double>(gen() >> 11) * 0x1.0p-53);
  }

  TEST_CASE("logistic seeds avoid degenerate neighbourhoods") {
    for (std::uint64_t seed = 0; seed < 5000; ++seed) {
      const double x = RandomStream(StreamKind::kLogistic, seed).logistic_state();
      CHECK(x > 0.01);
      CHECK(x < 0.99);
      for (double bad : {0.25, 0.5, 0.75}) CHECK(std::abs(x - bad) > 1e-3);
    }
  }

  TEST_CASE("logistic orbit never collapses") {
    RandomStream rs(StreamKind::kLogistic, 3);
    for (int i = 0; i < 200000; ++i) {
      const double x = rs.chaotic();
      REQUIRE(x > 0.0);
      REQUIRE(x < 1.0);
    }
  }

  TEST_CASE("henon orbit stays bounded") {
    for (std::uint64_t seed : {0ull, 5ull, 123456789ull}) {
      RandomStream rs(StreamKind::kHenon, seed);
      for (int i = 0; i < 100000; ++i) {
        const double c = rs.chaotic();
        REQUIRE(c >= 0.0);
        REQUIRE(c <= 1.0);
        REQUIRE(std::abs(rs.henon_state().first) <= 10.0);
      }
    }
  }

  TEST_CASE("uniform gaussian deviates have unit moments") {
    RandomStream rs(StreamKind::kUniform, 4);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double g = rs.next_gaussian();
      sum += g;
      sq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
  }

  TEST_CASE("index draws cover the range") {
    for (StreamKind k : kAll) {
      RandomStream rs(k, 8);
      std::vector<int> seen(7, 0);
      for (int i = 0; i < 20000; ++i) {
        const std::size_t j = rs.next_index(7);
        REQUIRE(j < 7);
        ++seen[j];
      }
      for (int c : seen) CHECK(c > 0);
    }
  }

  TEST_CASE("variant names") {
    for (StreamKind k : kAll) CHECK(parse_stream_kind(to_string(k)) == k);
    try {
      parse_stream_kind("sobol");
      FAIL("expected rejection");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find("uniform, logistic, henon") != std::string::npos);
    }
  }
}
