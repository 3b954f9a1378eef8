#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "praginfo/dist.hpp"
#include "praginfo/random.hpp"
#include "oracle.hpp"

using namespace praginfo;

TEST_CASE("Dist validates and renormalizes") {
  CHECK_THROWS_AS(Dist(std::vector<double>{}), domain_error);
  CHECK_THROWS_AS(Dist({0.5, -0.5, 1.0}), domain_error);
  CHECK_THROWS_AS(Dist({0.5, 0.4}), domain_error);          // sums to 0.9
  CHECK_THROWS_AS(Dist({0.5, 0.5 + 1e-6}), domain_error);   // outside tolerance

  // decimal round-off inside the band renormalizes cleanly
  const Dist d{0.3333333333, 0.3333333333, 0.3333333334};
  kahan_sum s;
  for (double v : d) s.add(v);
  CHECK(s.value() == Catch::Approx(1.0).margin(1e-15));

  const Dist one{1.0};
  CHECK(one.size() == 1);
  CHECK(Dist::unit(4, 2)[2] == 1.0);
  CHECK(Dist::uniform(4)[0] == Catch::Approx(0.25));
}

TEST_CASE("Prior requires strict positivity") {
  CHECK_THROWS_AS(Prior({1.0, 0.0}), domain_error);
  CHECK_THROWS_WITH(Prior({0.5, 0.5, 0.0}), Catch::Matchers::ContainsSubstring("index 2"));
  CHECK_NOTHROW(Prior({0.999999999, 1e-9}));
}

TEST_CASE("kl_divergence worked values") {
  const Prior u2{0.5, 0.5};
  CHECK(kl_divergence(Dist{0.5, 0.5}, u2) == 0.0);
  CHECK(kl_divergence(Dist{1.0, 0.0}, u2) == Catch::Approx(1.0).margin(1e-15));

  const Dist p{2.0 / 3.0, 1.0 / 3.0};
  const double d = kl_divergence(p, u2);
  CHECK(d == Catch::Approx(oracle::kKL_TwoThirds_Uniform).margin(1e-14));
  CHECK(d == Catch::Approx(static_cast<double>(oracle::kl_bits(p.probs(), u2.probs())))
                 .margin(1e-14));

  CHECK_THROWS_AS(kl_divergence(Dist{1.0}, u2), domain_error);
}

TEST_CASE("kl_divergence skips zero-probability terms") {
  const Prior q{0.25, 0.25, 0.5};
  const double d = kl_divergence(Dist{0.0, 0.5, 0.5}, q);
  CHECK(std::isfinite(d));
  CHECK(d == Catch::Approx(0.5 * std::log2(2.0) + 0.5 * std::log2(1.0)).margin(1e-15));
}

TEST_CASE("shannon_entropy worked values") {
  CHECK(shannon_entropy(Dist{0.5, 0.5}) == Catch::Approx(1.0).margin(1e-15));
  CHECK(shannon_entropy(Dist{1.0, 0.0}) == 0.0);
  CHECK(shannon_entropy(Dist{0.25, 0.75}) ==
        Catch::Approx(oracle::kEntropy_QuarterThree).margin(1e-14));
}

TEST_CASE("convex_mix") {
  const Dist p{0.8, 0.2};
  CHECK(convex_mix(p, p, 0.3).approx_equal(p, 1e-15));
  CHECK(convex_mix(Dist{1.0, 0.0}, Dist{0.0, 1.0}, 0.5).approx_equal(Dist{0.5, 0.5}, 1e-15));
  CHECK(convex_mix(Dist{0.8, 0.2}, Dist{0.2, 0.8}, 0.25).approx_equal(Dist{0.35, 0.65}, 1e-15));
  CHECK_THROWS_AS(convex_mix(p, p, 1.5), domain_error);
  CHECK_THROWS_AS(convex_mix(p, p, -0.1), domain_error);
  CHECK_THROWS_AS(convex_mix(p, Dist{1.0}, 0.5), domain_error);
}

TEST_CASE("non-negativity over random pairs, zero iff equal") {
  rng_t rng(20240811);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Dist p = random_dist(rng, n);
    const Prior q = random_prior(rng, n);
    const double d = kl_divergence(p, q);
    REQUIRE(d >= 0.0);
    REQUIRE(d == static_cast<double>(d));  // finite
    if (d < 1e-12) REQUIRE(p.approx_equal(q));
    REQUIRE(std::fabs(kl_divergence(q, q)) < 1e-12);
  }
}

TEST_CASE("convexity of the divergence under interpolation") {
  rng_t rng(987654);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Dist p1 = random_dist(rng, n), p2 = random_dist(rng, n);
    const Prior q1 = random_prior(rng, n), q2 = random_prior(rng, n);
    const double lambda = unit_double(rng);
    const double lhs =
        kl_divergence(convex_mix(p1, p2, lambda), Prior(convex_mix(q1, q2, lambda)));
    const double rhs = lambda * kl_divergence(p1, q1) + (1 - lambda) * kl_divergence(p2, q2);
    REQUIRE(lhs <= rhs + 1e-10);
  }
}
