#include <doctest.h>

#include <cmath>
#include <random>

#include "medialcorr/copula.hpp"
#include "medialcorr/orthant.hpp"
#include "test_models.hpp"

using namespace medialcorr;

namespace {

Eigen::VectorXd half(int d) { return Eigen::VectorXd::Constant(d, 0.5); }

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("family cdfs at reference points") {
  CHECK(cdf(CopulaModel::product(3), half(3)) == 0.125);
  CHECK(cdf(CopulaModel::comonotone(2), vec({0.3, 0.7})) == 0.3);
  CHECK(cdf(CopulaModel::countermonotone_pair(), vec({0.3, 0.7})) == 0.0);
  CHECK(cdf(CopulaModel::countermonotone_pair(), vec({0.8, 0.7})) == doctest::Approx(0.5));
  CHECK(cdf(CopulaModel::gumbel(3, 0.5), half(3)) ==
        doctest::Approx(std::exp2(-std::pow(3.0, 0.5))).epsilon(1e-14));

  // the general Marshall-Olkin form covers the one-parameter factor
  const double delta = 0.35;
  const CopulaModel mo = CopulaModel::marshall_olkin(delta, 1.0);
  for (double u1 : {0.05, 0.4, 0.95}) {
    for (double u2 : {0.2, 0.5, 1.0}) {
      CHECK(cdf(mo, vec({u1, u2})) ==
            doctest::Approx(std::min(u1, std::pow(u1, 1.0 - delta) * u2)).epsilon(1e-15));
    }
  }
}

TEST_CASE("zero and margin boundary behavior") {
  const auto models = {CopulaModel::product(4), CopulaModel::comonotone(4),
                       CopulaModel::gumbel(4, 0.3)};
  for (const auto& m : models) {
    for (int i = 0; i < 4; ++i) {
      Eigen::VectorXd zero = Eigen::VectorXd::Constant(4, 0.7);
      zero[i] = 0.0;
      CHECK(cdf(m, zero) == 0.0);
      for (int step = 0; step <= 8; ++step) {
        Eigen::VectorXd margin = Eigen::VectorXd::Ones(4);
        margin[i] = step / 8.0;
        CHECK(cdf(m, margin) == doctest::Approx(margin[i]).epsilon(1e-12));
      }
    }
  }
  CHECK(cdf(CopulaModel::marshall_olkin(1.0, 1.0), vec({0.0, 0.9})) == 0.0);
  CHECK(cdf(CopulaModel::marshall_olkin(0.4, 0.8), vec({1.0, 0.9})) == doctest::Approx(0.9));
}

TEST_CASE("degenerate parameters collapse to the known families") {
  for (double u1 : {0.1, 0.5, 0.9}) {
    for (double u2 : {0.2, 0.6, 1.0}) {
      const auto p = vec({u1, u2});
      CHECK(cdf(CopulaModel::marshall_olkin(0.0, 0.0), p) ==
            doctest::Approx(u1 * u2).epsilon(1e-15));
      CHECK(cdf(CopulaModel::marshall_olkin(1.0, 1.0), p) ==
            doctest::Approx(std::min(u1, u2)).epsilon(1e-15));
      CHECK(cdf(CopulaModel::gumbel(2, 1.0), p) == doctest::Approx(u1 * u2).epsilon(1e-12));
    }
  }
}

TEST_CASE("composition multiplies block cdfs exactly") {
  std::vector<BlockComposition::Block> blocks;
  blocks.push_back({CopulaModel::gumbel(2, 0.5), {0, 2}});
  blocks.push_back({CopulaModel::comonotone(2), {1, 3}});
  const CopulaModel m = CopulaModel::compose(std::move(blocks));
  REQUIRE(m.dim() == 4);
  const auto p = vec({0.3, 0.8, 0.6, 0.2});
  const double expected =
      cdf(CopulaModel::gumbel(2, 0.5), vec({0.3, 0.6})) * cdf(CopulaModel::comonotone(2), vec({0.8, 0.2}));
  CHECK(cdf(m, p) == expected);
}

TEST_CASE("marginals agree with pinning off-subset coordinates to one") {
  CHECK(marginal_cdf(CopulaModel::product(4), 0b0101, vec({0.5, 0.5})) == 0.25);
  CHECK(marginal_cdf(CopulaModel::comonotone(5), 0b01010, vec({0.9, 0.1})) == 0.1);
  const CopulaModel g = CopulaModel::gumbel(3, 0.62);
  for (double a = 0.125; a < 1.0; a += 0.25) {
    for (double b = 0.125; b < 1.0; b += 0.25) {
      CHECK(marginal_cdf(g, 0b110, vec({a, b})) ==
            doctest::Approx(cdf(CopulaModel::gumbel(2, 0.62), vec({a, b}))).epsilon(1e-12));
    }
  }
}

TEST_CASE("survival cdf matches the orthant engine at the median") {
  for (const auto& m : {CopulaModel::gumbel(3, 0.4), CopulaModel::product(3),
                        CopulaModel::marshall_olkin(0.3, 0.9)}) {
    const OrthantTable t = build_orthant_table(m);
    CHECK(survival_cdf(m, half(m.dim())) ==
          doctest::Approx(orthant_mask_prob(t, 0, full_set(m.dim()))).epsilon(1e-13));
  }
}

TEST_CASE("cdf is nondecreasing in each coordinate") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& m : {CopulaModel::gumbel(3, 0.3), CopulaModel::marshall_olkin(0.7, 0.2),
                        testing::pair_with(CopulaModel::comonotone(2)), CopulaModel::product(4)}) {
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd u(m.dim());
      for (int i = 0; i < m.dim(); ++i) u[i] = unif(gen);
      Eigen::VectorXd v = u;
      const int bump = std::uniform_int_distribution<int>(0, m.dim() - 1)(gen);
      v[bump] = u[bump] + (1.0 - u[bump]) * unif(gen);
      CHECK(cdf(m, v) >= cdf(m, u) - 1e-15);
    }
  }
}

TEST_CASE("invalid construction and evaluation are rejected") {
  CHECK_THROWS_AS(CopulaModel::product(0), std::invalid_argument);
  CHECK_THROWS_AS(CopulaModel::gumbel(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CopulaModel::gumbel(3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(CopulaModel::marshall_olkin(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cdf(CopulaModel::product(3), vec({0.5, 0.5})), std::invalid_argument);
  CHECK_THROWS_AS(cdf(CopulaModel::product(2), vec({0.5, 1.5})), std::invalid_argument);
  CHECK_THROWS_AS(marginal_cdf(CopulaModel::product(3), 0, vec({})), std::invalid_argument);
  CHECK_THROWS_AS(marginal_cdf(CopulaModel::product(2), 0b100, vec({0.5})), std::invalid_argument);

  std::vector<BlockComposition::Block> overlapping;
  overlapping.push_back({CopulaModel::product(2), {0, 1}});
  overlapping.push_back({CopulaModel::product(2), {1, 2}});
  CHECK_THROWS_AS(CopulaModel::compose(std::move(overlapping)), std::invalid_argument);
}

TEST_CASE("axiom check flags a corrupted evaluator and clears real models") {
  const auto good = axiom_check(testing::pair_with(CopulaModel::product(2)), 5, 40, 99);
  CHECK(good.ok());
  CHECK(good.checks_run > 0);

  const auto bad = axiom_check(
      2, [](const Eigen::VectorXd& u) { return u[0] * u[1] - 0.1; }, 4, 5, 99);
  REQUIRE_FALSE(bad.ok());
  bool saw_groundedness = false;
  for (const auto& f : bad.findings) {
    if (f.kind == AxiomFinding::Kind::groundedness) saw_groundedness = true;
  }
  CHECK(saw_groundedness);
}
