#include "unirecover/bench.hpp"
#include "unirecover/function_classes.hpp"
#include "unirecover/function_spec.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace unirecover {
namespace {

double bernoulli_naive(double r, double alpha, double x, std::int64_t K) {
  double acc = 1.0;
  for (std::int64_t k = 1; k <= K; ++k) {
    acc += 2.0 * std::pow(static_cast<double>(k), -r) * std::cos(k * x - alpha * kPi / 2.0);
  }
  return acc;
}

TEST(BernoulliTest, MatchesNaiveSum) {
  for (double r : {1.5, 2.0, 3.0}) {
    for (double alpha : {0.0, 1.0, 0.3}) {
      for (double x : {0.0, 0.4, 3.0, 6.0}) {
        const auto v = bernoulli_eval(r, alpha, x, 200);
        EXPECT_NEAR(v.value, bernoulli_naive(r, alpha, x, 200), 1e-12);
        EXPECT_DOUBLE_EQ(v.tail, bernoulli_tail_bound(r, 200));
      }
    }
  }
  EXPECT_THROW(bernoulli_eval(1.0, 0.0, 0.0, 10), std::invalid_argument);
  EXPECT_THROW(bernoulli_eval(2.0, 0.0, 0.0, 0), std::invalid_argument);
}

TEST(BernoulliTest, TailBoundCoversTruncation) {
  for (double r : {1.5, 2.5}) {
    const double bound = bernoulli_tail_bound(r, 64);
    EXPECT_DOUBLE_EQ(bound, 2.0 * std::pow(64.0, 1.0 - r) / (r - 1.0));
    for (double x : {0.0, 1.0, 2.0}) {
      const double diff = std::abs(bernoulli_naive(r, 0.0, x, 64) - bernoulli_naive(r, 0.0, x, 20000));
      EXPECT_LE(diff, bound);
    }
  }
}

TEST(BernoulliTest, GOfR) {
  EXPECT_DOUBLE_EQ(g_of_r(std::vector<double>{2.0, 2.0}), 1.0);
  EXPECT_NEAR(g_of_r(std::vector<double>{1.5, 3.0}), 1.0, 1e-15);
  EXPECT_NEAR(g_of_r(std::vector<double>{2.0, 3.0, 6.0}), 1.0, 1e-15);
  EXPECT_THROW(g_of_r(std::vector<double>{2.0, 0.0}), std::invalid_argument);
}

TEST(BernoulliProductTest, FactorsAndClassMembers) {
  const auto f = make_test_function({2.0, 1.5}, {0.0, 1.0}, 128);
  const std::vector<double> x = {0.7, 4.1};
  EXPECT_NEAR(f(x), bernoulli_naive(2.0, 0.0, 0.7, 128) * bernoulli_naive(1.5, 1.0, 4.1, 128),
              1e-12);
  EXPECT_NEAR(f.g(), 1.0 / (0.5 + 1.0 / 1.5), 1e-15);

  const auto member = make_class_member({2.0, 1.5}, {0.0, 1.0}, 128);
  EXPECT_EQ(member.exponents(), (std::vector<double>{3.0, 2.5}));
  EXPECT_EQ(member.phases(), (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(member.smoothness(), (std::vector<double>{2.0, 1.5}));

  const PointSet pts(2, {0.1, 0.2, 0.1, 5.0, 3.0, 0.2});
  const auto batch = member.at(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(batch[i], member(pts.point(i)), 1e-13);
}

TEST(TrigPolynomialTest, RandomIsSeededAndRoundTrips) {
  const ShapeVector s({1, 2});
  const auto a = random_trig_polynomial(s, 3);
  EXPECT_EQ(a.coefficients(), random_trig_polynomial(s, 3).coefficients());
  EXPECT_NE(a.coefficients(), random_trig_polynomial(s, 4).coefficients());
  std::stringstream buf;
  write_trig_polynomial(buf, a);
  const auto back = read_trig_polynomial(buf);
  EXPECT_EQ(back.space().shape(), s);
  EXPECT_EQ(back.coefficients(), a.coefficients());
  std::istringstream bad("# d=2 s=1,2\n1.0\n");
  EXPECT_THROW(read_trig_polynomial(bad), std::invalid_argument);
}

TEST(BestApproxTest, ZeroForMembersAndKnownValueOtherwise) {
  const ShapeVector s({1, 1});
  const auto grid = EvaluationGrid::for_shapes(2, 2, 4);
  const auto t = random_trig_polynomial(s, 11);
  EXPECT_LT(best_approx_oracle(t, s, grid).value, 1e-10);

  // cos(4x) is orthogonal to T(R((2))) and equioscillates, so E = 1.
  FunctionSampler c(1, [](std::span<const double> x) { return std::cos(4 * x[0]); });
  const auto r = best_approx_oracle(c, ShapeVector({2}), EvaluationGrid(1, 64));
  EXPECT_NEAR(r.value, 1.0, 1e-10);
  EXPECT_NEAR(r.dual_bound, 1.0, 1e-10);
}

TEST(SeededFunctionsTest, ReproducibleMix) {
  const auto a = seeded_test_functions(6, 2, 2, 5);
  const auto b = seeded_test_functions(6, 2, 2, 5);
  ASSERT_EQ(a.size(), 6u);
  const std::vector<double> x = {1.0, 2.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ((*a[i].f)(x), (*b[i].f)(x));
    EXPECT_EQ(a[i].f->dim(), 2u);
  }
  const auto p = random_bernoulli_product(3, 1);
  for (double r : p.smoothness()) {
    EXPECT_GE(r, 1.5);
    EXPECT_LE(r, 3.0);
  }
}

TEST(FunctionSpecTest, ParsesKinds) {
  const auto b = parse_function_spec("bernoulli:r=2,1.5;alpha=0,1;K=64");
  ASSERT_TRUE(b.sampler);
  EXPECT_EQ(b.sampler->dim(), 2u);
  EXPECT_EQ(*b.smoothness, (std::vector<double>{2.0, 1.5}));
  const std::vector<double> x = {0.5, 1.5};
  EXPECT_NEAR((*b.sampler)(x), make_test_function({2.0, 1.5}, {0.0, 1.0}, 64)(x), 1e-14);

  const auto s = parse_function_spec("sobolev:r=2,2");
  EXPECT_NEAR((*s.sampler)(x), make_class_member({2.0, 2.0})(x), 1e-14);
  EXPECT_GT(s.tail_bound, 0.0);

  const std::string path = ::testing::TempDir() + "unirecover_trig.txt";
  {
    std::ofstream out(path);
    write_trig_polynomial(out, random_trig_polynomial(ShapeVector({1}), 2));
  }
  const auto t = parse_function_spec("trig:" + path);
  EXPECT_EQ(t.sampler->dim(), 1u);
  std::remove(path.c_str());
}

TEST(FunctionSpecTest, RejectsMalformed) {
  for (const char* bad : {"bernoulli", "bernoulli:alpha=0", "bernoulli:r=2,x",
                          "bernoulli:r=2;beta=1", "fourier:r=2", "trig:/nonexistent/file"}) {
    EXPECT_ANY_THROW(parse_function_spec(bad)) << bad;
  }
}

TEST(BenchConfigTest, Validation) {
  using nlohmann::json;
  EXPECT_THROW(parse_experiment_config(json::array()), std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(json{{"n", 3}}), std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(json{{"experiment", "magic"}}), std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(json{{"experiment", "exactness"}, {"lattice", "halton"}}),
               std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(
                   json{{"experiment", "rates"}, {"n", {8, 10}}, {"slope_range", {1, 0}}}),
               std::invalid_argument);
  const auto c = parse_experiment_config(json{{"experiment", "exactness"}, {"n", {5, 9}}});
  EXPECT_EQ(c.n_min, 5);
  EXPECT_EQ(c.n_max, 9);
}

TEST(BenchTest, OlsSlope) {
  EXPECT_NEAR(ols_slope({1, 2, 3, 4}, {3, 1, -1, -3}), -2.0, 1e-15);
  EXPECT_NEAR(ols_slope({0, 1, 2}, {0, 1, 0}), 0.0, 1e-15);
  EXPECT_THROW(ols_slope({1}, {1}), std::invalid_argument);
}

TEST(BenchTest, ExactnessRunAndCsv) {
  const auto config = parse_experiment_config(
      nlohmann::json{{"experiment", "exactness"}, {"n", {5, 9}}});
  const auto table = run_experiment(config);
  EXPECT_EQ(table.records.size(), 5u);
  EXPECT_TRUE(table.all_pass());
  std::ostringstream csv;
  write_csv(csv, table);
  EXPECT_EQ(csv.str().rfind("# unirecover-bench schema=1 kind=exactness\n", 0), 0u);
  const auto j = to_json(table);
  EXPECT_EQ(j["rows"].size(), 5u);
  EXPECT_TRUE(j["all_pass"].get<bool>());

  BenchTable failing = table;
  failing.records[0].bound = "x <= 0";
  failing.records[0].pass = false;
  EXPECT_FALSE(failing.all_pass());
}

TEST(RatePropertyTest, ClassMemberSlopeOnShortRange) {
  const auto config = parse_experiment_config(nlohmann::json{{"experiment", "rates"},
                                                             {"function", "sobolev:r=2,2"},
                                                             {"n", {8, 14}},
                                                             {"slope_range", {-1.15, -0.85}}});
  const auto table = run_rates(config);
  EXPECT_TRUE(table.all_pass());
  for (const auto& rec : table.records) {
    for (const auto& [k, v] : rec.fields) {
      if (k == "used_in_fit") {
        EXPECT_EQ(v, "true");
      }
    }
  }
}

}  // namespace
}  // namespace unirecover
