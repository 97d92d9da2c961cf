#include <catch2/catch_amalgamated.hpp>

#include "relops/core/rng.hpp"
#include "relops/core/time.hpp"
#include "relops/core/util.hpp"

using namespace relops;

TEST_CASE("rng streams are deterministic and independent") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 10; ++i) differs = differs || (a2.next() != c.next());
  REQUIRE(differs);
  REQUIRE(Rng::derive(7, "noise", 1) != Rng::derive(7, "noise", 2));
  REQUIRE(Rng::derive(7, "noise", 1) != Rng::derive(7, "arrival", 1));
}

TEST_CASE("exponential sampling matches its mean") {
  Rng r(1234);
  const double mean = 5.0;
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += r.exponential(mean);
  REQUIRE(sum / n == Catch::Approx(mean).epsilon(0.02));
}

TEST_CASE("normal sampling matches mean and sigma") {
  Rng r(99);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = r.normal(10.0, 2.0);
    sum += v;
    sq += v * v;
  }
  const double m = sum / n;
  const double var = sq / n - m * m;
  REQUIRE(m == Catch::Approx(10.0).margin(0.05));
  REQUIRE(std::sqrt(var) == Catch::Approx(2.0).epsilon(0.02));
}

TEST_CASE("civil date arithmetic and month keys") {
  REQUIRE(days_from_civil(1970, 1, 1) == 0);
  REQUIRE(days_from_civil(2025, 3, 1) == 20148);
  const CivilDate epoch{2025, 3, 1};
  REQUIRE(month_key(epoch, 0) == "2025-03");
  REQUIRE(month_key(epoch, hours_ms(24.0 * 30)) == "2025-03");  // Mar has 31 days
  REQUIRE(month_key(epoch, hours_ms(24.0 * 31)) == "2025-04");
  REQUIRE(month_key(epoch, hours_ms(24.0 * (31 + 30))) == "2025-05");
}

TEST_CASE("rounding conventions") {
  REQUIRE(truncate_to(43.478260, 2) == Catch::Approx(43.47).margin(1e-12));
  REQUIRE(round_half_even(97.826086, 2) == Catch::Approx(97.83).margin(1e-12));
  REQUIRE(to_fixed(97.82, 2) == "97.82");
  REQUIRE(to_fixed(0.0, 2) == "0.00");
}
