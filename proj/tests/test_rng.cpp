#include <doctest.h>

#include <cmath>
#include <vector>

#include "levymult/rng.hpp"

using namespace levymult;

TEST_CASE("streams are reproducible and independent of draw interleaving") {
  CounterRng a(42, 7, 1);
  CounterRng b(42, 7, 1);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(42, 8, 1);
  bool identical = true;
  CounterRng a2(42, 7, 1);
  for (int i = 0; i < 16; ++i) identical &= (a2.next_u64() == c.next_u64());
  CHECK_FALSE(identical);
}

TEST_CASE("uniform moments") {
  CounterRng rng(2024, 0);
  const int n = 200000;
  double mean = 0.0, var = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mean += u;
    var += (u - 0.5) * (u - 0.5);
  }
  mean /= n;
  var /= n;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("exponential mean and normal variance") {
  CounterRng rng(99, 1);
  const int n = 200000;
  double esum = 0.0, nsum = 0.0, nsq = 0.0;
  for (int i = 0; i < n; ++i) {
    esum += rng.exponential(2.5);
    const double z = rng.standard_normal();
    nsum += z;
    nsq += z * z;
  }
  CHECK(esum / n == doctest::Approx(0.4).epsilon(0.02));
  CHECK(std::abs(nsum / n) < 0.02);
  CHECK(nsq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("categorical follows the mass table") {
  CounterRng rng(7, 3);
  const std::vector<double> cumulative = {0.2, 0.5, 1.0};
  std::vector<int> counts(3, 0);
  const int n = 90000;
  for (int i = 0; i < n; ++i) ++counts[rng.categorical(cumulative)];
  CHECK(double(counts[0]) / n == doctest::Approx(0.2).epsilon(0.05));
  CHECK(double(counts[1]) / n == doctest::Approx(0.3).epsilon(0.05));
  CHECK(double(counts[2]) / n == doctest::Approx(0.5).epsilon(0.05));
}
