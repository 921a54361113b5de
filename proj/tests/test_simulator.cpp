#include "doctest.h"
#include "wheelperc/dynamics.hpp"
#include "wheelperc/simulator.hpp"

using namespace wheelperc;

TEST_CASE("one e-layer on an empty frontier") {
  // the cap at frontier points 1,2 joins labels 1 and 2 right away
  FrontierState st(1);
  st.apply_layer(e_layer(1, 1));
  CHECK(st.done());
  CHECK(st.result() == pi_max(1));
}

TEST_CASE("layers compose like the Markov chain") {
  // e_2 closes labels 2,3; then e_4 wraps around and closes 4,1
  FrontierState st(2);
  st.apply_layer(e_layer(2, 2));
  CHECK(st.open == 2);
  CHECK(st.matched[1] == 3);
  st.apply_layer(e_layer(2, 4));
  CHECK(st.done());
  CHECK(st.result() == parse_matching("[[1,4],[2,3]]"));
}

TEST_CASE("clopper-pearson") {
  auto [lo, hi] = clopper_pearson(0, 10, 0.95);
  CHECK(lo == 0);
  CHECK(hi == doctest::Approx(0.3084971).epsilon(1e-6));
  auto [lo2, hi2] = clopper_pearson(5, 10, 0.95);
  CHECK(lo2 == doctest::Approx(0.187086).epsilon(1e-5));
  CHECK(hi2 == doctest::Approx(0.812914).epsilon(1e-5));
}

TEST_CASE("chi square") {
  auto c = chi_square({50, 50}, {BigRational(1, 2), BigRational(1, 2)});
  CHECK(c.statistic == 0);
  CHECK(c.p_value == doctest::Approx(1));
  auto d = chi_square({90, 10}, {BigRational(1, 2), BigRational(1, 2)});
  CHECK(d.statistic == doctest::Approx(64));
  CHECK(d.p_value < 1e-10);
}

TEST_CASE("sampler histograms follow mu") {
  for (int n = 2; n <= 3; ++n)
    for (auto be : {Backend::Frontier, Backend::Plaquette}) {
      SamplerOptions opt;
      opt.backend = be;
      auto h = sample_histogram(n, 20000, 11, 2, opt);
      auto c = chi_square(h, stationary(n).mu);
      CHECK(c.p_value > 1e-3);
    }
  auto h = sample_histogram_extra_step(3, 20000, 12);
  CHECK(chi_square(h, stationary(3).mu).p_value > 1e-3);
}

TEST_CASE("threads do not change results") {
  auto ev = parse_event("arc:1,2");
  auto a = estimate_event(4, ev, 3000, 9, 1);
  auto b = estimate_event(4, ev, 3000, 9, 4);
  CHECK(a.hits == b.hits);
  CHECK(a.ci_low <= a.estimate);
  CHECK(a.estimate <= a.ci_high);
}

TEST_CASE("events") {
  Matching p = parse_matching("[[1,2],[3,6],[4,5]]");
  CHECK(parse_event("arc:1,2")(p));
  CHECK(parse_event("submatching:[[1,2],[3,6],[4,5]]")(p));
  CHECK_FALSE(parse_event("anticluster:2")(p));
  CHECK(parse_event("anticluster:2")(parse_matching("[[1,4],[2,3]]")));
  CHECK(parse_event("anticluster:2")(parse_matching("[[1,6],[2,3],[4,5]]")));
  CHECK_THROWS(parse_event("nope:1"));
  CHECK_THROWS(parse_backend("gpu"));
}

TEST_CASE("step cap") {
  SamplerOptions opt;
  opt.step_cap_per_n = 1;
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(sample_matching(6, rng, opt), std::runtime_error);
}
