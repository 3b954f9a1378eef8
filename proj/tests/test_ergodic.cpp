#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "praginfo/ergodic.hpp"
#include "praginfo/random.hpp"

using namespace praginfo;

namespace {

MessageEnsemble boolean_delta_prime() {
  return MessageEnsemble(Prior{0.5, 0.5}, Dist{0.75, 0.25},
                         {Dist{1.0, 0.0}, Dist{0.5, 0.5}});
}

Grid boolean_prime_chain() {
  // stationary distribution (3/4, 1/4), second eigenvalue 1/2
  return Grid(2, 2, std::vector<double>{0.875, 0.125, 0.375, 0.625});
}

}  // namespace

TEST_CASE("stationary distribution of simple chains") {
  CHECK(stationary_distribution(Grid(2, 2, std::vector<double>{0.5, 0.5, 0.5, 0.5}))
            .approx_equal(Dist{0.5, 0.5}, 1e-10));

  // balance equations by hand: 0.1 pi0 = 0.5 pi1  =>  (5/6, 1/6)
  CHECK(stationary_distribution(Grid(2, 2, std::vector<double>{0.9, 0.1, 0.5, 0.5}))
            .approx_equal(Dist{5.0 / 6.0, 1.0 / 6.0}, 1e-10));

  // doubly stochastic: uniform
  CHECK(stationary_distribution(
            Grid(3, 3, std::vector<double>{0.2, 0.3, 0.5, 0.5, 0.2, 0.3, 0.3, 0.5, 0.2}))
            .approx_equal(Dist::uniform(3), 1e-10));

  // periodic flip-flop converges thanks to the damping
  CHECK(stationary_distribution(Grid(2, 2, std::vector<double>{0.0, 1.0, 1.0, 0.0}))
            .approx_equal(Dist{0.5, 0.5}, 1e-10));

  CHECK(stationary_distribution(boolean_prime_chain()).approx_equal(Dist{0.75, 0.25}, 1e-10));

  CHECK_THROWS_AS(stationary_distribution(Grid(2, 3, 0.5)), domain_error);
  CHECK_THROWS_AS(stationary_distribution(Grid(2, 2, std::vector<double>{0.9, 0.2, 0.5, 0.5})),
                  domain_error);
}

TEST_CASE("MessageSource rejects reducible chains") {
  CHECK_THROWS_AS(
      MessageSource::markov(Grid(2, 2, std::vector<double>{1.0, 0.0, 0.5, 0.5}), 0, 1),
      domain_error);
  CHECK_NOTHROW(MessageSource::markov(boolean_prime_chain(), 0, 1));
  CHECK_THROWS_AS(MessageSource::markov(boolean_prime_chain(), 5, 1), domain_error);
}

TEST_CASE("inert ensemble accrues nothing") {
  const MessageEnsemble inert(Prior{0.4, 0.6}, Dist{0.5, 0.5},
                              {Dist{0.4, 0.6}, Dist{0.4, 0.6}});
  const Trajectory traj =
      sample_trajectory(inert, MessageSource::iid(inert.message_probs(), 9), 500);
  for (double avg : traj.running_avg) REQUIRE(avg == 0.0);
}

TEST_CASE("single-message ensemble is constant at its divergence") {
  const MessageEnsemble single(Prior{0.5, 0.5}, Dist{1.0}, {Dist{0.9, 0.1}});
  const double d = kl_divergence(single.posterior(0), single.prior());
  const Trajectory traj =
      sample_trajectory(single, MessageSource::iid(single.message_probs(), 3), 200);
  for (double avg : traj.running_avg) REQUIRE(avg == Catch::Approx(d).margin(1e-13));
}

TEST_CASE("identical seeds give identical trajectories") {
  const MessageEnsemble e = boolean_delta_prime();
  const MessageSource src = MessageSource::iid(e.message_probs(), 314);
  const Trajectory a = sample_trajectory(e, src, 5000);
  const Trajectory b = sample_trajectory(e, src, 5000);
  REQUIRE(a.running_avg == b.running_avg);

  const Trajectory c = sample_trajectory(e, MessageSource::iid(e.message_probs(), 315), 5000);
  REQUIRE(a.running_avg != c.running_avg);
}

TEST_CASE("mismatched sources are refused") {
  const MessageEnsemble e = boolean_delta_prime();
  CHECK_THROWS_AS(sample_trajectory(e, MessageSource::iid(Dist{0.5, 0.25, 0.25}, 1), 10),
                  mismatch_error);
  CHECK_THROWS_AS(sample_trajectory(e, MessageSource::iid(Dist{0.5, 0.5}, 1), 10),
                  mismatch_error);
  // the error names both vectors
  CHECK_THROWS_WITH(sample_trajectory(e, MessageSource::iid(Dist{0.5, 0.5}, 1), 10),
                    Catch::Matchers::ContainsSubstring("0.75"));
  // uniform chain has stationary (1/2, 1/2) != (3/4, 1/4)
  CHECK_THROWS_AS(
      sample_trajectory(
          e, MessageSource::markov(Grid(2, 2, std::vector<double>{0.5, 0.5, 0.5, 0.5}), 0, 1),
          10),
      mismatch_error);
  CHECK_THROWS_AS(sample_trajectory(e, MessageSource::iid(e.message_probs(), 1), 0),
                  domain_error);
}

TEST_CASE("IID averages converge to the ensemble information") {
  const MessageEnsemble e = boolean_delta_prime();
  const Trajectory traj =
      sample_trajectory(e, MessageSource::iid(e.message_probs(), 42), 100000);
  CHECK(std::fabs(traj.final_avg() - 0.75) < 0.01);
}

TEST_CASE("Markov averages converge to the same limit") {
  const MessageEnsemble e = boolean_delta_prime();
  const Trajectory traj =
      sample_trajectory(e, MessageSource::markov(boolean_prime_chain(), 0, 42), 100000);
  CHECK(std::fabs(traj.final_avg() - 0.75) < 0.01);
}

TEST_CASE("running averages respect the divergence bound") {
  rng_t rng(8080);
  const MessageEnsemble e = random_ensemble(rng, 4, 5);
  double max_d = 0.0;
  for (std::size_t m = 0; m < e.message_count(); ++m)
    max_d = std::max(max_d, kl_divergence(e.posterior(m), e.prior()));
  const double bound = definitive_upper_bound(e.prior());
  REQUIRE(max_d <= bound + 1e-12);
  const Trajectory traj = sample_trajectory(e, MessageSource::iid(e.message_probs(), 6), 3000);
  for (double avg : traj.running_avg) {
    REQUIRE(avg >= 0.0);
    REQUIRE(avg <= max_d + 1e-12);
  }
}
