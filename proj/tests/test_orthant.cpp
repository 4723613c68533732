#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "medialcorr/estimator.hpp"
#include "medialcorr/orthant.hpp"
#include "test_models.hpp"

using namespace medialcorr;

namespace {

// Brute-force oracle: count rows matching the (leq, gt) pattern directly.
double orthant_by_rows(const PseudoObservations& pseudo, CoordSet leq, CoordSet gt) {
  std::int64_t hits = 0;
  for (std::int64_t j = 0; j < pseudo.n(); ++j) {
    bool match = true;
    for (int i = 0; i < pseudo.d(); ++i) {
      const bool below = pseudo.u(j, i) <= 0.5;
      if (leq & (CoordSet{1} << i)) match &= below;
      if (gt & (CoordSet{1} << i)) match &= !below;
    }
    hits += match;
  }
  return static_cast<double>(hits) / static_cast<double>(pseudo.n());
}

}  // namespace

TEST_CASE("orthant table of the product copula") {
  const OrthantTable t = build_orthant_table(CopulaModel::product(2));
  CHECK(t.values[0b00] == 1.0);
  CHECK(t.values[0b01] == 0.5);
  CHECK(t.values[0b10] == 0.5);
  CHECK(t.values[0b11] == 0.25);
  CHECK_FALSE(t.empirical());
  CHECK(t.margin_gap() == 0.0);
}

TEST_CASE("orthant table entries of the gumbel family") {
  const double delta = 0.44;
  const OrthantTable t = build_orthant_table(CopulaModel::gumbel(3, delta));
  CHECK(t.values[0b111] == doctest::Approx(std::exp2(-std::pow(3.0, delta))).epsilon(1e-14));
  for (CoordSet pair : {0b011u, 0b101u, 0b110u}) {
    CHECK(t.values[pair] == doctest::Approx(std::exp2(-std::pow(2.0, delta))).epsilon(1e-14));
  }
  CHECK(orthant_mask_prob(t, 0, 0b111) ==
        doctest::Approx(3.0 * std::exp2(-std::pow(2.0, delta)) - std::exp2(-std::pow(3.0, delta)) -
                        0.5)
            .epsilon(1e-13));
}

TEST_CASE("mask probabilities: reference values and the partition of unity") {
  const OrthantTable tm = build_orthant_table(CopulaModel::comonotone(2));
  CHECK(orthant_mask_prob(tm, 0, 0b11) == 0.5);
  const OrthantTable tp = build_orthant_table(CopulaModel::product(3));
  CHECK(orthant_mask_prob(tp, 0b001, 0b110) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(orthant_mask_prob(tp, 0b111, 0) == tp.values[0b111]);

  for (const auto& m : {CopulaModel::gumbel(4, 0.6), testing::example1_model(0.7, 0.2)}) {
    const OrthantTable t = build_orthant_table(m);
    double total = 0.0;
    for (CoordSet g = 0; g <= full_set(t.d); ++g) {
      const double p = orthant_mask_prob(t, full_set(t.d) ^ g, g);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mask probabilities against the row-counting oracle") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 3;
    const auto pseudo = pseudo_observations(testing::random_data(gen, 60, d));
    const OrthantTable t = empirical_orthant_table(pseudo);
    for (CoordSet leq = 0; leq <= full_set(d); ++leq) {
      const CoordSet rest = full_set(d) ^ leq;
      for (CoordSet gt = rest;; gt = (gt - 1) & rest) {
        CHECK(orthant_mask_prob(t, leq, gt) == orthant_by_rows(pseudo, leq, gt));
        if (gt == 0) break;
      }
    }
  }
}

TEST_CASE("mask probability rejects overlapping or out-of-range sets") {
  const OrthantTable t = build_orthant_table(CopulaModel::product(3));
  CHECK_THROWS_AS(orthant_mask_prob(t, 0b011, 0b010), std::invalid_argument);
  CHECK_THROWS_AS(orthant_mask_prob(t, 0b1000, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_orthant_table(CopulaModel::product(kMaxDimension + 1)),
                  std::invalid_argument);
}

TEST_CASE("reflection is an involution and matches direct counting") {
  std::mt19937_64 gen(11);
  const auto pseudo = pseudo_observations(testing::random_data(gen, 80, 3));
  const OrthantTable t = empirical_orthant_table(pseudo);
  for (CoordSet mask = 0; mask <= full_set(3); ++mask) {
    const OrthantTable r = reflect_table(t, mask);
    for (CoordSet s = 0; s <= full_set(3); ++s) {
      CHECK(r.values[s] == orthant_by_rows(pseudo, s & ~mask, s & mask));
    }
    const OrthantTable back = reflect_table(r, mask);
    for (CoordSet s = 0; s <= full_set(3); ++s) CHECK(back.values[s] == t.values[s]);
  }
}

TEST_CASE("exceedance distributions: golden values and row-count oracle") {
  const auto dp = exceedance_distribution(build_orthant_table(CopulaModel::product(3)));
  CHECK(dp.probs[0] == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(dp.probs[1] == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(dp.probs[2] == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(dp.probs[3] == doctest::Approx(0.125).epsilon(1e-14));

  const auto dm = exceedance_distribution(build_orthant_table(CopulaModel::comonotone(4)));
  CHECK(dm.probs[0] == 0.5);
  CHECK(dm.probs[4] == 0.5);
  CHECK(dm.probs.segment(1, 3).cwiseAbs().maxCoeff() == 0.0);

  const auto dw = exceedance_distribution(
      build_orthant_table(testing::pair_with(CopulaModel::product(1))));
  CHECK(dw.probs[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(dw.probs[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dw.probs[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dw.probs[3] == doctest::Approx(0.0).epsilon(1e-14));

  std::mt19937_64 gen(13);
  const auto pseudo = pseudo_observations(testing::random_data(gen, 70, 4));
  const auto dist = exceedance_distribution(empirical_orthant_table(pseudo));
  Eigen::VectorXd direct = Eigen::VectorXd::Zero(5);
  for (std::int64_t j = 0; j < pseudo.n(); ++j) {
    int above = 0;
    for (int i = 0; i < 4; ++i) above += pseudo.u(j, i) > 0.5;
    direct[above] += 1.0 / static_cast<double>(pseudo.n());
  }
  for (int k = 0; k <= 4; ++k) CHECK(dist.probs[k] == doctest::Approx(direct[k]).epsilon(1e-14));
  CHECK(dist.probs.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.probs.minCoeff() >= 0.0);
}
