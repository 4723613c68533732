#include "medialcorr/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "medialcorr/coefficients.hpp"
#include "medialcorr/copula.hpp"
#include "medialcorr/data_io.hpp"
#include "medialcorr/estimator.hpp"
#include "medialcorr/model_parse.hpp"
#include "medialcorr/orthant.hpp"
#include "medialcorr/sampler.hpp"

namespace medialcorr {

namespace {

struct Collector {
  std::vector<CheckResult> results;
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    if (!ok && problems.size() < 8) problems.push_back(what);
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol) && problems.size() < 8) {
      std::ostringstream os;
      os.precision(15);
      os << what << ": got " << got << ", expected " << want << " (tol " << tol << ")";
      problems.push_back(os.str());
    }
  }
  void finish(const std::string& name) {
    std::string detail;
    for (std::size_t i = 0; i < problems.size(); ++i) detail += (i ? "; " : "") + problems[i];
    results.push_back({name, problems.empty(), detail});
    problems.clear();
  }
};

Eigen::VectorXd constant_point(int d, double v) { return Eigen::VectorXd::Constant(d, v); }

CopulaModel example1_model(double delta, double alpha) {
  std::vector<BlockComposition::Block> blocks;
  blocks.push_back({CopulaModel::marshall_olkin(delta, 1.0), {0, 1}});
  blocks.push_back({CopulaModel::marshall_olkin(alpha, 1.0), {2, 3}});
  return CopulaModel::compose(std::move(blocks));
}

CopulaModel pair_with(const CopulaModel& tail) {
  std::vector<BlockComposition::Block> blocks;
  blocks.push_back({CopulaModel::countermonotone_pair(), {0, 1}});
  std::vector<int> rest(tail.dim());
  for (int i = 0; i < tail.dim(); ++i) rest[i] = 2 + i;
  blocks.push_back({tail, std::move(rest)});
  return CopulaModel::compose(std::move(blocks));
}

// Random block-composed model on d coordinates (shuffled assignment).
CopulaModel random_model(std::mt19937_64& gen, int d) {
  std::vector<int> coords(d);
  for (int i = 0; i < d; ++i) coords[i] = i;
  std::shuffle(coords.begin(), coords.end(), gen);

  std::vector<BlockComposition::Block> blocks;
  std::size_t used = 0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (used < coords.size()) {
    const int remaining = static_cast<int>(coords.size() - used);
    std::uniform_int_distribution<int> size_pick(1, remaining);
    const int m = size_pick(gen);
    std::vector<int> own(coords.begin() + used, coords.begin() + used + m);
    used += m;
    CopulaModel part = CopulaModel::product(m);
    switch (std::uniform_int_distribution<int>(0, m == 2 ? 4 : 2)(gen)) {
      case 0: part = CopulaModel::product(m); break;
      case 1: part = CopulaModel::comonotone(m); break;
      case 2: part = CopulaModel::gumbel(m, 0.05 + 0.95 * unif(gen)); break;
      case 3: part = CopulaModel::marshall_olkin(unif(gen), unif(gen)); break;
      case 4: part = CopulaModel::countermonotone_pair(); break;
    }
    blocks.push_back({std::move(part), std::move(own)});
  }
  return CopulaModel::compose(std::move(blocks));
}

// Tie-free data matrix: a shuffled strictly increasing sequence per column.
DataMatrix random_data(std::mt19937_64& gen, std::int64_t n, int d) {
  DataMatrix data;
  data.values.resize(n, d);
  data.labels.resize(d);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  for (int i = 0; i < d; ++i) {
    data.labels[i] = "x" + std::to_string(i + 1);
    std::vector<double> col(n);
    double acc = 0.0;
    for (std::int64_t j = 0; j < n; ++j) col[j] = (acc += unif(gen));
    std::shuffle(col.begin(), col.end(), gen);
    for (std::int64_t j = 0; j < n; ++j) data.values(j, i) = col[j];
  }
  return data;
}

OrthantTable permute_table(const OrthantTable& table, const std::vector<int>& perm) {
  OrthantTable out = table;
  for (CoordSet s = 0; s <= full_set(table.d); ++s) {
    CoordSet mapped = 0;
    for (int i = 0; i < table.d; ++i) {
      if (s & (CoordSet{1} << i)) mapped |= CoordSet{1} << perm[i];
    }
    out.values[mapped] = table.values[s];
    if (table.empirical()) out.counts[mapped] = table.counts[s];
  }
  return out;
}

double ks_distance(std::vector<double> column) {
  std::sort(column.begin(), column.end());
  const auto n = static_cast<double>(column.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    dist = std::max(dist, std::abs((i + 1) / n - column[i]));
    dist = std::max(dist, std::abs(column[i] - i / n));
  }
  return dist;
}

void negate_columns(DataMatrix& data, CoordSet mask) {
  for (int i = 0; i < data.d(); ++i) {
    if (mask & (CoordSet{1} << i)) data.values.col(i) = -data.values.col(i);
  }
}

}  // namespace

std::vector<CheckResult> run_example_checks() {
  Collector c;
  const double inv_sqrt2 = std::exp2(2.0 - std::pow(2.0, 0.5)) - 1.0;  // beta of Gumbel(3, 1/2)

  {  // point evaluations of every family
    c.expect_near(cdf(CopulaModel::product(3), constant_point(3, 0.5)), 0.125, 0.0, "product cdf");
    Eigen::VectorXd p(2);
    p << 0.3, 0.7;
    c.expect_near(cdf(CopulaModel::comonotone(2), p), 0.3, 0.0, "comonotone cdf");
    c.expect_near(cdf(CopulaModel::countermonotone_pair(), p), 0.0, 0.0, "countermonotone cdf");
    c.expect_near(cdf(CopulaModel::gumbel(3, 0.5), constant_point(3, 0.5)),
                  std::exp2(-std::pow(3.0, 0.5)), 1e-15, "gumbel cdf at the median");
    for (double u1 : {0.2, 0.5, 0.9}) {
      for (double u2 : {0.1, 0.6, 1.0}) {
        Eigen::VectorXd q(2);
        q << u1, u2;
        c.expect_near(cdf(CopulaModel::marshall_olkin(0.3, 1.0), q),
                      std::min(u1, std::pow(u1, 0.7) * u2), 1e-15, "marshall-olkin cdf");
      }
    }
    c.finish("cdf golden values");
  }

  {  // marginals
    Eigen::VectorXd p(2);
    p << 0.5, 0.5;
    c.expect_near(marginal_cdf(CopulaModel::product(4), 0b0101, p), 0.25, 0.0, "product marginal");
    Eigen::VectorXd q(2);
    q << 0.9, 0.1;
    c.expect_near(marginal_cdf(CopulaModel::comonotone(5), 0b01010, q), 0.1, 0.0,
                  "comonotone marginal");
    const CopulaModel g3 = CopulaModel::gumbel(3, 0.37);
    const CopulaModel g2 = CopulaModel::gumbel(2, 0.37);
    for (double u1 = 0.1; u1 < 1.0; u1 += 0.2) {
      for (double u2 = 0.1; u2 < 1.0; u2 += 0.2) {
        Eigen::VectorXd r(2);
        r << u1, u2;
        c.expect_near(marginal_cdf(g3, 0b011, r), cdf(g2, r), 1e-12, "gumbel marginal closure");
      }
    }
    c.finish("marginal golden values");
  }

  {  // orthant table entries of the worked examples
    const OrthantTable t2 = build_orthant_table(CopulaModel::product(2));
    c.expect(t2.values[0] == 1.0 && t2.values[1] == 0.5 && t2.values[2] == 0.5 &&
                 t2.values[3] == 0.25,
             "product(2) table");
    const double delta = 0.6;
    const OrthantTable tg = build_orthant_table(CopulaModel::gumbel(3, delta));
    c.expect_near(tg.values[0b111], std::exp2(-std::pow(3.0, delta)), 1e-15, "gumbel full value");
    for (CoordSet pair : {0b011u, 0b101u, 0b110u}) {
      c.expect_near(tg.values[pair], std::exp2(-std::pow(2.0, delta)), 1e-15, "gumbel pair value");
    }
    c.expect_near(orthant_mask_prob(tg, 0, 0b111),
                  3.0 * std::exp2(-std::pow(2.0, delta)) - std::exp2(-std::pow(3.0, delta)) - 0.5,
                  1e-14, "gumbel survival orthant");
    const double alpha = 0.25;
    const OrthantTable tmo = build_orthant_table(example1_model(delta, alpha));
    c.expect_near(tmo.values[0b1111], std::pow(0.5, 4.0 - delta - alpha), 1e-15,
                  "example-model full value");
    c.expect_near(orthant_mask_prob(tmo, 0, 0b1111), std::pow(0.5, 4.0 - delta - alpha), 1e-14,
                  "example-model survival value");
    const OrthantTable tm = build_orthant_table(CopulaModel::comonotone(2));
    c.expect_near(orthant_mask_prob(tm, 0, 0b11), 0.5, 0.0, "comonotone survival");
    const OrthantTable tp = build_orthant_table(CopulaModel::product(3));
    c.expect_near(orthant_mask_prob(tp, 0b001, 0b110), 0.125, 1e-15, "product mixed orthant");
    c.finish("orthant golden values");
  }

  {  // exceedance distributions
    const auto dp = exceedance_distribution(build_orthant_table(CopulaModel::product(3)));
    for (int k = 0; k <= 3; ++k) {
      const double binomial = (k == 0 || k == 3) ? 0.125 : 0.375;
      c.expect_near(dp.probs[k], binomial, 1e-14, "product exceedance");
    }
    const auto dm = exceedance_distribution(build_orthant_table(CopulaModel::comonotone(4)));
    c.expect(dm.probs[0] == 0.5 && dm.probs[4] == 0.5 &&
                 dm.probs.segment(1, 3).cwiseAbs().maxCoeff() == 0.0,
             "comonotone exceedance");
    const auto dw = exceedance_distribution(build_orthant_table(pair_with(CopulaModel::product(1))));
    c.expect_near(dw.probs[0], 0.0, 1e-14, "pair exceedance 0");
    c.expect_near(dw.probs[1], 0.5, 1e-14, "pair exceedance 1");
    c.expect_near(dw.probs[2], 0.5, 1e-14, "pair exceedance 2");
    c.expect_near(dw.probs[3], 0.0, 1e-14, "pair exceedance 3");
    c.finish("exceedance golden values");
  }

  {  // degenerate coefficients
    for (int d = 2; d <= 10; ++d) {
      c.expect_near(coefficients_from_table(build_orthant_table(CopulaModel::product(d))).beta, 0.0,
                    1e-12, "product beta d=" + std::to_string(d));
      c.expect_near(coefficients_from_table(build_orthant_table(CopulaModel::comonotone(d))).beta,
                    1.0, 1e-12, "comonotone beta d=" + std::to_string(d));
    }
    c.finish("degenerate coefficients");
  }

  {  // Gumbel closed forms against the orthant engine
    for (int d = 2; d <= 6; ++d) {
      for (double delta : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const double via_table =
            coefficients_from_table(build_orthant_table(CopulaModel::gumbel(d, delta))).beta;
        c.expect_near(gumbel_beta(d, delta), via_table, 1e-10,
                      "gumbel closed form d=" + std::to_string(d));
      }
    }
    for (double delta : {0.2, 0.5, 0.8, 1.0}) {
      c.expect_near(gumbel_beta(3, delta), std::exp2(2.0 - std::pow(2.0, delta)) - 1.0, 1e-12,
                    "gumbel trivariate closed form");
      c.expect_near(gumbel_beta(4, delta),
                    4.0 * std::exp2(-std::pow(4.0, delta)) - 8.0 * std::exp2(-std::pow(3.0, delta)) +
                        9.0 * std::exp2(-std::pow(2.0, delta)) - 1.5,
                    1e-12, "gumbel quadrivariate closed form");
    }
    c.expect_near(gumbel_beta(3, 0.5), inv_sqrt2, 1e-15, "gumbel beta at delta=1/2");
    c.finish("gumbel closed forms");
  }

  {  // Marshall-Olkin product closed form
    for (double delta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double via_table =
            coefficients_from_table(build_orthant_table(example1_model(delta, alpha))).beta;
        c.expect_near(mo_product_beta(delta, alpha), via_table, 1e-12, "mo product closed form");
      }
    }
    c.expect_near(mo_product_beta(0.0, 0.0), 0.0, 0.0, "mo product at (0,0)");
    c.expect_near(mo_product_beta(1.0, 1.0), 0.5, 1e-15, "mo product at (1,1)");
    for (double a = 0.0; a < 1.0; a += 0.25) {
      c.expect(mo_product_beta(a + 0.25, 0.5) >= mo_product_beta(a, 0.5), "monotone in delta");
      c.expect(mo_product_beta(0.5, a + 0.25) >= mo_product_beta(0.5, a), "monotone in alpha");
    }
    c.finish("marshall-olkin product closed form");
  }

  {  // concordance-monotonicity counterexample
    const CopulaModel x = pair_with(CopulaModel::product(2));
    const CopulaModel y = pair_with(CopulaModel::comonotone(2));
    c.expect_near(coefficients_from_table(build_orthant_table(x)).beta, -0.125, 1e-12,
                  "counterexample beta(X)");
    c.expect_near(coefficients_from_table(build_orthant_table(y)).beta, -0.25, 1e-12,
                  "counterexample beta(Y)");
    const auto report = strong_concordance_check(x, y, 6);
    c.expect(report.grid_dominance, "counterexample keeps pointwise dominance on the grid");
    c.expect(!report.median_reflections, "counterexample breaks the median reflection condition");
    c.expect(report.verdict == ConcordanceReport::Verdict::weak_only,
             "counterexample verdict is weak-only");
    c.finish("concordance counterexample");
  }

  {  // minimum attainment: -1 for a pair, -1/d once a comonotone tail exists
    c.expect_near(coefficients_from_table(build_orthant_table(CopulaModel::countermonotone_pair())).beta,
                  -1.0, 1e-12, "minimum attainment d=2");
    for (int d = 3; d <= 8; ++d) {
      const CopulaModel m = pair_with(CopulaModel::comonotone(d - 2));
      c.expect_near(coefficients_from_table(build_orthant_table(m)).beta, -1.0 / d, 1e-12,
                    "minimum attainment d=" + std::to_string(d));
    }
    c.finish("minimum attainment");
  }

  {  // reflected golden value and concordance orderings
    for (double delta : {0.3, 0.6, 0.9}) {
      const OrthantTable t = build_orthant_table(CopulaModel::gumbel(3, delta));
      c.expect_near(beta_of_reflection(t, 0b001),
                    (1.0 - std::exp2(2.0 - std::pow(2.0, delta))) / 3.0, 1e-12,
                    "gumbel single reflection");
    }
    const auto strong =
        strong_concordance_check(CopulaModel::gumbel(3, 0.8), CopulaModel::gumbel(3, 0.3), 6);
    c.expect(strong.verdict == ConcordanceReport::Verdict::strong_on_grid,
             "gumbel pair is strongly ordered on the grid");
    const auto self = strong_concordance_check(CopulaModel::product(3), CopulaModel::product(3), 4);
    c.expect(self.verdict == ConcordanceReport::Verdict::strong_on_grid,
             "strong concordance is reflexive");
    c.finish("reflections and concordance order");
  }

  {  // block-pair coefficients
    const OrthantTable tp4 = build_orthant_table(CopulaModel::product(4));
    c.expect_near(beta_between(tp4, 0b0001, 0b0010), 0.0, 1e-14, "product singleton pair");
    c.expect_near(beta_between(tp4, 0b0011, 0b1100), 0.25, 1e-14, "product 2x2 blocks");
    const OrthantTable tm4 = build_orthant_table(CopulaModel::comonotone(4));
    c.expect_near(beta_between(tm4, 0b0001, 0b1110), 1.0, 1e-14, "comonotone blocks");
    c.expect_near(beta_between(tm4, 0b0011, 0b1100), 1.0, 1e-14, "comonotone 2x2 blocks");
    c.finish("block-pair coefficients");
  }

  return c.results;
}

std::vector<CheckResult> run_property_checks(std::uint64_t seed) {
  Collector c;
  std::mt19937_64 gen(seed);

  std::vector<CopulaModel> models;
  for (int r = 0; r < 10; ++r) models.push_back(random_model(gen, 3));
  for (int r = 0; r < 10; ++r) models.push_back(random_model(gen, 4));
  models.push_back(CopulaModel::gumbel(2, 0.45));
  models.push_back(CopulaModel::gumbel(5, 0.7));
  models.push_back(example1_model(0.6, 0.3));

  {  // three-way representation equivalence
    for (const auto& m : models) {
      const auto routes = beta_representations(build_orthant_table(m));
      c.expect_near(routes.reflected, routes.marginal, 1e-12,
                    "reflected route for " + format_model(m));
      c.expect_near(routes.exceedance, routes.marginal, 1e-12,
                    "exceedance route for " + format_model(m));
    }
    c.finish("representation equivalence");
  }

  {  // table shape invariants
    for (const auto& m : models) {
      const OrthantTable t = build_orthant_table(m);
      c.expect(t.values[0] == 1.0, "values[empty] = 1 for " + format_model(m));
      c.expect(t.margin_gap() <= 1e-15, "margins at 1/2 for " + format_model(m));
      for (CoordSet s = 0; s <= full_set(t.d); ++s) {
        for (int i = 0; i < t.d; ++i) {
          if (s & (CoordSet{1} << i)) continue;
          c.expect(t.values[s] >= t.values[s | (CoordSet{1} << i)] - 1e-15,
                   "monotone table for " + format_model(m));
        }
      }
      double partition = 0.0;
      for (CoordSet g = 0; g <= full_set(t.d); ++g) {
        partition += orthant_mask_prob(t, full_set(t.d) ^ g, g);
      }
      c.expect_near(partition, 1.0, 1e-12, "orthant partition for " + format_model(m));
    }
    c.finish("orthant table invariants");
  }

  {  // permutation invariance
    for (const auto& m : models) {
      const OrthantTable t = build_orthant_table(m);
      std::vector<int> perm(t.d);
      for (int i = 0; i < t.d; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), gen);
      c.expect_near(coefficients_from_table(permute_table(t, perm)).beta,
                    coefficients_from_table(t).beta, 1e-12,
                    "permutation invariance for " + format_model(m));
    }
    // the same at the model level, with reshuffled block coordinates
    std::vector<BlockComposition::Block> blocks;
    blocks.push_back({CopulaModel::marshall_olkin(0.7, 0.2), {3, 0}});
    blocks.push_back({CopulaModel::gumbel(2, 0.4), {1, 2}});
    const CopulaModel shuffled = CopulaModel::compose(std::move(blocks));
    std::vector<BlockComposition::Block> plain;
    plain.push_back({CopulaModel::marshall_olkin(0.7, 0.2), {0, 1}});
    plain.push_back({CopulaModel::gumbel(2, 0.4), {2, 3}});
    const CopulaModel sorted = CopulaModel::compose(std::move(plain));
    c.expect_near(coefficients_from_table(build_orthant_table(shuffled)).beta,
                  coefficients_from_table(build_orthant_table(sorted)).beta, 1e-12,
                  "model-level permutation invariance");
    c.finish("permutation invariance");
  }

  {  // duality and reflection sums
    for (const auto& m : models) {
      const OrthantTable t = build_orthant_table(m);
      const double beta = coefficients_from_table(t).beta;
      c.expect_near(beta_of_reflection(t, 0), beta, 0.0, "empty mask for " + format_model(m));
      c.expect_near(beta_of_reflection(t, full_set(t.d)), beta, 1e-12,
                    "duality for " + format_model(m));
      double sum = 0.0;
      for (CoordSet mask = 0; mask <= full_set(t.d); ++mask) sum += beta_of_reflection(t, mask);
      c.expect_near(sum, 0.0, 1e-11, "reflection sum for " + format_model(m));
    }
    c.finish("duality and reflection sum");
  }

  {  // transition identity across dimensions (Gumbel margins)
    for (int d = 2; d <= 3; ++d) {
      for (double delta : {0.25, 0.55, 0.85}) {
        const double lower =
            coefficients_from_table(build_orthant_table(CopulaModel::gumbel(d, delta))).beta;
        const OrthantTable t = build_orthant_table(CopulaModel::gumbel(d + 1, delta));
        const double upper = coefficients_from_table(t).beta;
        for (int i = 0; i <= d; ++i) {
          c.expect_near(upper + beta_of_reflection(t, CoordSet{1} << i),
                        (static_cast<double>(d) / (d + 1)) * lower, 1e-10,
                        "transition d=" + std::to_string(d));
        }
      }
    }
    c.finish("transition identity");
  }

  {  // dimension-3 collapse, exact and empirical
    for (const auto& m : models) {
      if (m.dim() != 3) continue;
      const auto rep = coefficients_from_table(build_orthant_table(m));
      c.expect_near(rep.beta_star, rep.beta, 1e-12, "beta* collapse for " + format_model(m));
      c.expect_near(rep.beta_pairwise_avg, rep.beta, 1e-12,
                    "pairwise collapse for " + format_model(m));
    }
    for (int r = 0; r < 5; ++r) {
      const auto rep = empirical_coefficients(random_data(gen, 100, 3));
      c.expect_near(rep.beta_star, rep.beta, 1e-12, "empirical beta* collapse");
      c.expect_near(rep.beta_pairwise_avg, rep.beta, 1e-12, "empirical pairwise collapse");
    }
    c.finish("dimension-3 collapse");
  }

  {  // value ranges and component mean
    for (const auto& m : models) {
      const auto rep = coefficients_from_table(build_orthant_table(m));
      const double floor = rep.d == 2 ? -1.0 : -1.0 / rep.d;
      c.expect(rep.beta >= floor - 1e-12, "lower bound for " + format_model(m));
      c.expect(rep.beta <= 1.0 + 1e-12, "upper bound for " + format_model(m));
      c.expect_near(rep.components.mean(), rep.beta, 1e-12,
                    "component mean for " + format_model(m));
      c.expect(rep.components.minCoeff() >= -1.0 - 1e-12 && rep.components.maxCoeff() <= 1.0 + 1e-12,
               "component range for " + format_model(m));
    }
    c.finish("value ranges");
  }

  {  // concordance monotonicity inside the Gumbel family
    for (int d = 2; d <= 5; ++d) {
      double prev = gumbel_beta(d, 0.05);
      for (double delta = 0.15; delta <= 1.0; delta += 0.1) {
        const double next = gumbel_beta(d, delta);
        c.expect(next <= prev + 1e-12, "beta decreasing in delta, d=" + std::to_string(d));
        prev = next;
      }
    }
    c.finish("gumbel delta monotonicity");
  }

  {  // axiom diagnostics
    for (const auto& m : {CopulaModel::product(3), CopulaModel::gumbel(3, 0.4),
                          CopulaModel::marshall_olkin(0.6, 0.2), pair_with(CopulaModel::product(2))}) {
      const auto report = axiom_check(m, 6, 60, seed);
      c.expect(report.ok(), "axiom check clean for " + format_model(m));
    }
    const auto broken = axiom_check(
        2, [](const Eigen::VectorXd& u) { return u[0] * u[1] - 0.1; }, 4, 10, seed);
    bool grounded_violation = false;
    for (const auto& f : broken.findings) {
      grounded_violation |= f.kind == AxiomFinding::Kind::groundedness;
    }
    c.expect(grounded_violation, "corrupted evaluator is flagged for groundedness");
    c.finish("axiom diagnostics");
  }

  {  // estimator route equivalence, bit for bit
    int mismatches = 0;
    for (int r = 0; r < 50; ++r) {
      const std::int64_t n = (r % 2 == 0) ? 50 : 200;
      const int d = 2 + r % 3;
      const DataMatrix data = random_data(gen, n, d);
      const auto direct = empirical_coefficients(data);
      const auto plugged = coefficients_from_table(empirical_orthant_table(pseudo_observations(data)));
      if (!(direct.beta == plugged.beta && direct.components == plugged.components &&
            direct.beta_star == plugged.beta_star && direct.beta_nelsen == plugged.beta_nelsen &&
            direct.beta_pairwise_avg == plugged.beta_pairwise_avg)) {
        ++mismatches;
      }
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " of 50 route comparisons differ");
    c.finish("estimator route equivalence");
  }

  {  // estimator invariances
    for (int r = 0; r < 6; ++r) {
      const std::int64_t n = (r % 2 == 0) ? 50 : 200;
      const int d = 2 + r % 2;
      const DataMatrix data = random_data(gen, n, d);
      const auto base = empirical_coefficients(data);

      DataMatrix transformed = data;
      for (std::int64_t j = 0; j < n; ++j) {
        transformed.values(j, 0) = std::exp(transformed.values(j, 0));
        transformed.values(j, 1) = std::atan(transformed.values(j, 1)) * 2.0 + 1.0;
      }
      const auto shifted = empirical_coefficients(transformed);
      c.expect(base.beta == shifted.beta && base.components == shifted.components,
               "monotone transforms leave the report unchanged");

      DataMatrix negated = data;
      negate_columns(negated, full_set(d));
      c.expect(empirical_coefficients(negated).beta == base.beta,
               "full negation leaves beta unchanged (even n)");

      std::int64_t numerator_sum = 0;
      double float_sum = 0.0;
      for (CoordSet mask = 0; mask <= full_set(d); ++mask) {
        DataMatrix flipped = data;
        negate_columns(flipped, mask);
        const double beta = empirical_coefficients(flipped).beta;
        numerator_sum += std::llround(beta * static_cast<double>(d) * static_cast<double>(n));
        float_sum += beta;
      }
      c.expect(numerator_sum == 0, "reflection numerators sum to zero");
      c.expect(std::abs(float_sum) <= 1e-13, "reflection betas sum to zero at machine level");
    }
    c.finish("estimator invariances");
  }

  {  // estimator basics and tie handling
    DataMatrix mono;
    mono.values.resize(4, 3);
    mono.labels = {"a", "b", "c"};
    for (int j = 0; j < 4; ++j) {
      mono.values(j, 0) = j;
      mono.values(j, 1) = std::pow(j + 1.0, 3.0);
      mono.values(j, 2) = std::exp(j);
    }
    c.expect_near(empirical_coefficients(mono).beta, 1.0, 0.0, "comonotone data");

    DataMatrix anti;
    anti.values.resize(4, 2);
    anti.labels = {"a", "b"};
    for (int j = 0; j < 4; ++j) {
      anti.values(j, 0) = j;
      anti.values(j, 1) = -static_cast<double>(j);
    }
    c.expect_near(empirical_coefficients(anti).beta, -1.0, 0.0, "countermonotone data");

    DataMatrix ranks;
    ranks.values.resize(4, 2);
    ranks.labels = {"a", "b"};
    ranks.values.col(0) << 3.0, 1.0, 2.0, 4.0;
    ranks.values.col(1) << 1.0, 2.0, 3.0, 4.0;
    const auto pseudo = pseudo_observations(ranks);
    const Eigen::Vector4d expected(0.6, 0.2, 0.4, 0.8);
    c.expect((pseudo.u.col(0) - expected).cwiseAbs().maxCoeff() == 0.0, "rank transform");

    DataMatrix tied;
    tied.values.resize(3, 2);
    tied.labels = {"a", "b"};
    tied.values.col(0) << 1.0, 1.0, 2.0;
    tied.values.col(1) << 1.0, 2.0, 3.0;
    const auto tied_pseudo = pseudo_observations(tied);
    c.expect(tied_pseudo.u(0, 0) == 0.5 && tied_pseudo.u(1, 0) == 0.5 &&
                 tied_pseudo.u(2, 0) == 0.75,
             "ties take the maximal rank");

    for (int r = 0; r < 4; ++r) {
      const std::int64_t n = 50 + 50 * r;
      const auto table = empirical_orthant_table(pseudo_observations(random_data(gen, n, 3)));
      c.expect(table.margin_gap() <= 1.0 / (n + 1) + 1e-15, "empirical margin gap, tie-free");
      const auto rep = coefficients_from_table(table);
      c.expect(rep.beta >= -1.0 && rep.beta <= 1.0, "empirical beta range");
    }
    c.finish("estimator basics");
  }

  return c.results;
}

std::vector<CheckResult> run_montecarlo_checks(std::uint64_t seed, int threads) {
  Collector c;

  const std::vector<CopulaModel> families = {
      CopulaModel::product(3),     CopulaModel::comonotone(3),
      CopulaModel::countermonotone_pair(), CopulaModel::gumbel(3, 0.3),
      CopulaModel::gumbel(3, 0.5), CopulaModel::gumbel(3, 0.8),
      CopulaModel::marshall_olkin(0.4, 1.0), CopulaModel::marshall_olkin(0.3, 0.7),
      CopulaModel::marshall_olkin(1.0, 1.0), CopulaModel::marshall_olkin(0.0, 0.5),
      example1_model(0.6, 0.3),    pair_with(CopulaModel::product(2)),
      pair_with(CopulaModel::comonotone(2))};

  {  // uniform margins at the 99.9% Kolmogorov-Smirnov bound
    const std::int64_t n = 100000;
    const double bound = 1.9495 / std::sqrt(static_cast<double>(n));
    for (const auto& m : families) {
      const SampleBatch batch = sample(m, n, seed ^ 0x5eedULL, threads);
      for (int i = 0; i < batch.d(); ++i) {
        std::vector<double> col(batch.u.col(i).data(), batch.u.col(i).data() + n);
        c.expect(ks_distance(std::move(col)) < bound,
                 "margin " + std::to_string(i) + " of " + format_model(m));
      }
    }
    c.finish("sampler uniform margins");
  }

  {  // orthant consistency at 4 standard errors
    const std::int64_t n = 200000;
    for (const auto& m : families) {
      const OrthantTable exact = build_orthant_table(m);
      const SampleBatch batch = sample(m, n, seed ^ 0x0cea11ULL, threads);
      PseudoObservations direct;  // the batch already has uniform margins
      direct.u = batch.u;
      const OrthantTable sampled = empirical_orthant_table(direct);
      for (CoordSet s = 1; s <= full_set(exact.d); ++s) {
        const double p = exact.values[s];
        const double tol = 4.0 * std::sqrt(p * (1.0 - p) / n) + 2.0 / n;
        c.expect(std::abs(sampled.values[s] - p) <= tol,
                 "orthant mask " + std::to_string(s) + " of " + format_model(m));
      }
    }
    c.finish("sampler orthant consistency");
  }

  {  // empirical beta against exact beta
    const std::int64_t n = 200000;
    const std::vector<CopulaModel> targets = {CopulaModel::gumbel(3, 0.5),
                                              example1_model(0.6, 0.3), CopulaModel::product(4)};
    for (const auto& m : targets) {
      const double exact = coefficients_from_table(build_orthant_table(m)).beta;
      for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) {
        const SampleBatch batch = sample(m, n, s, threads);
        DataMatrix data;
        data.values = batch.u;
        const double estimate = empirical_coefficients(data).beta;
        c.expect_near(estimate, exact, 0.01, "monte-carlo beta for " + format_model(m));
      }
    }
    c.finish("sampler beta consistency");
  }

  {  // structural sample properties and determinism
    const SampleBatch co = sample(CopulaModel::comonotone(3), 5000, seed, threads);
    bool equal_rows = true;
    for (std::int64_t j = 0; j < co.n(); ++j) {
      equal_rows &= co.u(j, 0) == co.u(j, 1) && co.u(j, 1) == co.u(j, 2);
    }
    c.expect(equal_rows, "comonotone rows are constant");

    const SampleBatch cm = sample(CopulaModel::countermonotone_pair(), 5000, seed, threads);
    bool sums = true;
    for (std::int64_t j = 0; j < cm.n(); ++j) sums &= cm.u(j, 0) + cm.u(j, 1) == 1.0;
    c.expect(sums, "countermonotone rows sum to one");

    const CopulaModel m = example1_model(0.5, 0.5);
    const SampleBatch a = sample(m, 20000, 42, 1);
    const SampleBatch b = sample(m, 20000, 42, 7);
    c.expect(a.u == b.u, "thread count does not change the batch");
    const SampleBatch c2 = sample(m, 20000, 42, threads);
    c.expect(a.u == c2.u, "repeat sampling is byte-identical");
    bool interior = true;
    for (std::int64_t j = 0; j < a.n(); ++j) {
      for (int i = 0; i < a.d(); ++i) interior &= a.u(j, i) > 0.0 && a.u(j, i) < 1.0;
    }
    c.expect(interior, "entries stay inside (0,1)");
    c.finish("sampler determinism and structure");
  }

  {  // bootstrap behavior
    DataMatrix mono;
    mono.values.resize(40, 3);
    mono.labels = {"a", "b", "c"};
    for (int j = 0; j < 40; ++j) {
      mono.values(j, 0) = j;
      mono.values(j, 1) = 2.0 * j + 1.0;
      mono.values(j, 2) = j * j;
    }
    const auto degenerate = bootstrap_ci(mono, 200, 0.95, seed, threads);
    c.expect(degenerate.beta.lo == 1.0 && degenerate.beta.hi == 1.0,
             "comonotone data bootstraps to [1,1]");

    const SampleBatch indep = sample(CopulaModel::product(3), 500, seed ^ 0xB00ULL, threads);
    DataMatrix data;
    data.values = indep.u;
    const auto ci = bootstrap_ci(data, 400, 0.95, seed, threads);
    c.expect(ci.beta.lo <= 0.0 && 0.0 <= ci.beta.hi, "independent data interval covers zero");
    const auto again = bootstrap_ci(data, 400, 0.95, seed, threads);
    c.expect(again.beta.lo == ci.beta.lo && again.beta.hi == ci.beta.hi,
             "bootstrap is deterministic");
    c.finish("bootstrap intervals");
  }

  return c.results;
}

std::vector<CheckResult> run_wine_checks(const std::string& csv_path) {
  Collector c;
  CsvSpec spec;
  spec.delimiter = ';';
  spec.columns = {std::string("residual sugar"), std::string("density"), std::string("alcohol")};

  DataMatrix data;
  try {
    data = load_csv(csv_path, spec);
  } catch (const std::exception& e) {
    c.expect(false, e.what());
    c.finish("wine dataset available");
    return c.results;
  }
  c.expect(data.n() == 4898 && data.d() == 3,
           "expected 4898x3, got " + std::to_string(data.n()) + "x" + std::to_string(data.d()));
  c.finish("wine dataset loads");

  const auto start = std::chrono::steady_clock::now();
  const CoefficientsReport report = empirical_coefficients(data);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(elapsed < 1.0, "estimate took " + std::to_string(elapsed) + "s");
  c.finish("wine estimate under one second");

  const double expected_components[3] = {0.250, 0.179, -0.429};
  for (int i = 0; i < 3; ++i) {
    c.expect_near(report.components[i], expected_components[i], 5e-4,
                  "component '" + data.labels[i] + "'");
  }
  c.expect_near(report.beta, 0.000, 5e-4, "beta");
  c.finish("wine reference values");
  return c.results;
}

}  // namespace medialcorr
