#include "medialcorr/coefficients.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace medialcorr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double binom(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return std::round(b);
}

}  // namespace

bool CoefficientsReport::operator==(const CoefficientsReport& other) const {
  return d == other.d && beta == other.beta && components.size() == other.components.size() &&
         components == other.components && beta_star == other.beta_star &&
         beta_nelsen == other.beta_nelsen && beta_pairwise_avg == other.beta_pairwise_avg &&
         source == other.source && n == other.n && labels == other.labels;
}

CoefficientsReport coefficients_from_table(const OrthantTable& table) {
  const int d = table.d;
  require(d >= 2, "coefficients need dimension >= 2");
  const CoordSet full = full_set(d);
  const OrthantTable surv = reflect_table(table, full);

  CoefficientsReport report;
  report.d = d;
  report.components = Eigen::VectorXd::Zero(d);
  report.source = table.empirical() ? ReportSource::empirical : ReportSource::exact;
  report.n = table.n_rows;

  if (table.empirical()) {
    // Exact integer numerators; the only rounding is one division per value.
    const std::int64_t n = table.n_rows;
    const std::int64_t joint = table.counts[full] + surv.counts[full];
    std::int64_t total = 0;
    for (int i = 0; i < d; ++i) {
      const CoordSet rest = full ^ (CoordSet{1} << i);
      const std::int64_t num = 2 * joint - table.counts[rest] - surv.counts[rest];
      report.components[i] = static_cast<double>(num) / static_cast<double>(n);
      total += num;
    }
    report.beta = static_cast<double>(total) / (static_cast<double>(d) * static_cast<double>(n));

    const std::int64_t half_cells = std::int64_t{1} << (d - 1);
    report.beta_star = static_cast<double>(half_cells * joint - n) /
                       (static_cast<double>(half_cells - 1) * static_cast<double>(n));
    report.beta_nelsen = static_cast<double>((std::int64_t{1} << d) * table.counts[full] - n) /
                         (static_cast<double>(half_cells - 1) * static_cast<double>(n));

    std::int64_t pair_num = 0;
    int pairs = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const CoordSet ij = (CoordSet{1} << i) | (CoordSet{1} << j);
        pair_num += 2 * (table.counts[ij] + surv.counts[ij]) - n;
        ++pairs;
      }
    }
    report.beta_pairwise_avg =
        static_cast<double>(pair_num) / (static_cast<double>(pairs) * static_cast<double>(n));
    return report;
  }

  const double joint = table.values[full] + surv.values[full];
  for (int i = 0; i < d; ++i) {
    const CoordSet rest = full ^ (CoordSet{1} << i);
    report.components[i] = 2.0 * joint - table.values[rest] - surv.values[rest];
  }
  report.beta = report.components.mean();

  const double half_cells = std::ldexp(1.0, d - 1);
  report.beta_star = (half_cells * joint - 1.0) / (half_cells - 1.0);
  report.beta_nelsen = (2.0 * half_cells * table.values[full] - 1.0) / (half_cells - 1.0);

  double pair_sum = 0.0;
  int pairs = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const CoordSet ij = (CoordSet{1} << i) | (CoordSet{1} << j);
      pair_sum += 2.0 * (table.values[ij] + surv.values[ij]) - 1.0;
      ++pairs;
    }
  }
  report.beta_pairwise_avg = pair_sum / pairs;
  return report;
}

BetaRepresentations beta_representations(const OrthantTable& table) {
  const int d = table.d;
  require(d >= 2, "coefficients need dimension >= 2");
  const CoordSet full = full_set(d);

  BetaRepresentations out{};
  out.marginal = coefficients_from_table(table).beta;

  const double joint = orthant_mask_prob(table, full, 0) + orthant_mask_prob(table, 0, full);
  double reflected_sum = 0.0;
  for (int i = 0; i < d; ++i) {
    const CoordSet bit = CoordSet{1} << i;
    reflected_sum += orthant_mask_prob(table, full ^ bit, bit);  // i-th reflection, lower orthant
    reflected_sum += orthant_mask_prob(table, bit, full ^ bit);  // i-th reflection, upper orthant
  }
  out.reflected = joint - reflected_sum / d;

  const ExceedanceDistribution dist = exceedance_distribution(table);
  out.exceedance = dist.probs[0] + dist.probs[d] - (dist.probs[1] + dist.probs[d - 1]) / d;
  return out;
}

double beta_between(const OrthantTable& table, CoordSet I, CoordSet J) {
  const CoordSet full = full_set(table.d);
  require(I != 0 && J != 0, "I and J must be nonempty");
  require((I & J) == 0, "I and J must be disjoint");
  require((I & ~full) == 0 && (J & ~full) == 0, "subset has a coordinate out of range");
  const CoordSet both = I | J;
  const OrthantTable surv = reflect_table(table, full);

  if (table.empirical()) {
    const std::int64_t n = table.n_rows;
    const std::int64_t max_num =  // maxima of both blocks on the same side of 1/2
        4 * table.counts[both] - 2 * table.counts[I] - 2 * table.counts[J] + n;
    const std::int64_t min_num =
        4 * surv.counts[both] - 2 * surv.counts[I] - 2 * surv.counts[J] + n;
    return static_cast<double>(max_num + min_num) / (2.0 * static_cast<double>(n));
  }

  const double beta_max =
      4.0 * table.values[both] - 2.0 * table.values[I] - 2.0 * table.values[J] + 1.0;
  const double beta_min =
      4.0 * surv.values[both] - 2.0 * surv.values[I] - 2.0 * surv.values[J] + 1.0;
  return 0.5 * (beta_max + beta_min);
}

double beta_of_reflection(const OrthantTable& table, CoordSet mask) {
  return coefficients_from_table(reflect_table(table, mask)).beta;
}

double gumbel_beta(int d, double delta) {
  require(d >= 2, "gumbel closed form needs dimension >= 2");
  require(delta > 0.0 && delta <= 1.0, "gumbel delta must lie in (0,1]");
  const auto at = [delta](int t) { return std::exp2(-std::pow(static_cast<double>(t), delta)); };

  double beta = 0.5 * (1.0 - d);
  for (int k = 1; k <= d - 2; ++k) {
    const double coeff = binom(d - 1, k) + binom(d, k + 1);
    beta += (k % 2 == 1 ? 1.0 : -1.0) * coeff * at(k + 1);
  }
  if (d % 2 == 0) {
    beta += 4.0 * at(d) - at(d - 1);
  } else {
    beta -= at(d - 1);
  }
  return beta;
}

double mo_product_beta(double delta, double alpha) {
  require(delta >= 0.0 && delta <= 1.0 && alpha >= 0.0 && alpha <= 1.0,
          "parameters must lie in [0,1]");
  return std::exp2(delta + alpha - 2.0) - std::exp2(alpha - 3.0) - std::exp2(delta - 3.0);
}

ConcordanceReport strong_concordance_check(const CopulaModel& x, const CopulaModel& y,
                                           int grid_resolution) {
  require(x.dim() == y.dim(), "models must have equal dimensions");
  require(grid_resolution >= 2, "grid resolution must be >= 2");
  const int d = x.dim();
  const int g = grid_resolution;

  double points = 1.0;
  for (int i = 0; i < d; ++i) points *= g;
  require(points <= 4e6, "grid has too many points; lower the resolution");

  ConcordanceReport report;
  const CoordSet full = full_set(d);

  // exact part: per-coordinate reflected orthant values at the median
  constexpr double kExactTol = 1e-12;
  const OrthantTable tx = build_orthant_table(x);
  const OrthantTable ty = build_orthant_table(y);
  report.median_reflections = true;
  for (int i = 0; i < d; ++i) {
    const CoordSet bit = CoordSet{1} << i;
    const bool lower_ok = orthant_mask_prob(ty, full ^ bit, bit) <=
                          orthant_mask_prob(tx, full ^ bit, bit) + kExactTol;
    const bool upper_ok = orthant_mask_prob(ty, bit, full ^ bit) <=
                          orthant_mask_prob(tx, bit, full ^ bit) + kExactTol;
    if (!lower_ok || !upper_ok) {
      report.median_reflections = false;
      report.failing_coords.push_back(i);
    }
  }

  // approximate part: cdf and survival dominance sampled on an interior grid
  Eigen::VectorXd u(d);
  std::vector<int> digit(d, 1);
  bool done = false;
  while (!done) {
    for (int i = 0; i < d; ++i) u[i] = static_cast<double>(digit[i]) / (g + 1);
    report.max_violation = std::max(report.max_violation, cdf(x, u) - cdf(y, u));
    report.max_violation =
        std::max(report.max_violation, survival_cdf(x, u) - survival_cdf(y, u));
    ++report.grid_points;
    int i = 0;
    while (i < d && ++digit[i] > g) digit[i++] = 1;
    done = (i == d);
  }
  report.grid_dominance = report.max_violation <= kExactTol;

  constexpr double kNoiseCeiling = 1e-9;
  if (report.grid_dominance) {
    report.verdict = report.median_reflections ? ConcordanceReport::Verdict::strong_on_grid
                                               : ConcordanceReport::Verdict::weak_only;
  } else if (report.max_violation > kNoiseCeiling) {
    report.verdict = ConcordanceReport::Verdict::fails;
  } else {
    report.verdict = ConcordanceReport::Verdict::inconclusive;
  }
  return report;
}

}  // namespace medialcorr
