#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "medialcorr/orthant.hpp"

namespace medialcorr {

enum class ReportSource { exact, empirical };

/// The multivariate medial correlation coefficient together with its
/// per-coordinate components and the companion coefficients, for one vector.
struct CoefficientsReport {
  int d = 0;
  double beta = 0.0;
  Eigen::VectorXd components;   // component i couples coordinate i with the rest
  double beta_star = 0.0;       // rescaled median-orthant coefficient
  double beta_nelsen = 0.0;     // rescaled lower-orthant coefficient
  double beta_pairwise_avg = 0.0;
  ReportSource source = ReportSource::exact;
  std::int64_t n = 0;                // sample size when empirical, else 0
  std::vector<std::string> labels;   // column labels when empirical, may be empty

  bool operator==(const CoefficientsReport& other) const;
};

/// Computes the full report from an orthant table. Requires d >= 2.
/// For count-backed tables every coefficient is an exact integer ratio.
CoefficientsReport coefficients_from_table(const OrthantTable& table);

/// beta evaluated through its three equivalent representations; they agree
/// within numerical tolerance for any valid table (an internal consistency
/// probe, exercised by the validation suites).
struct BetaRepresentations {
  double marginal;    // full + (d-1)-margin orthant values
  double reflected;   // single-coordinate reflections at the median
  double exceedance;  // distribution of the number of coordinates above 1/2
};

BetaRepresentations beta_representations(const OrthantTable& table);

/// Medial correlation between the block maxima and block minima of two
/// disjoint nonempty coordinate sets: the average of the max-based and
/// min-based bivariate coefficients cut at 1/2.
double beta_between(const OrthantTable& table, CoordSet I, CoordSet J);

/// beta of the vector with the coordinates in `mask` negated, computed from
/// the reflected table. mask = 0 and mask = full both return beta itself.
double beta_of_reflection(const OrthantTable& table, CoordSet mask);

/// Closed form of beta for the Gumbel family, d >= 2, delta in (0,1].
/// Matches the orthant-table computation within 1e-10.
double gumbel_beta(int d, double delta);

/// Closed form of beta for the 4-dimensional product of two Marshall-Olkin
/// factors with parameters (delta, 1) and (alpha, 1):
/// 2^(delta+alpha-2) - 2^(alpha-3) - 2^(delta-3).
double mo_product_beta(double delta, double alpha);

struct ConcordanceReport {
  enum class Verdict { strong_on_grid, weak_only, fails, inconclusive };

  bool grid_dominance = false;      // C_X <= C_Y and survival C_X <= C_Y on the grid
  bool median_reflections = false;  // reflected median-orthant comparisons, exact
  int grid_points = 0;
  double max_violation = 0.0;          // worst grid dominance breach
  std::vector<int> failing_coords;     // coordinates breaking the median condition
  Verdict verdict = Verdict::inconclusive;
};

/// Diagnoses whether X is less concordant than Y in the strong sense:
/// pointwise cdf/survival dominance sampled on an interior grid
/// (approximate by nature) plus the exact per-coordinate reflected
/// comparison at the median point. `inconclusive` flags grid breaches inside
/// the floating-point gray zone.
ConcordanceReport strong_concordance_check(const CopulaModel& x, const CopulaModel& y,
                                           int grid_resolution);

}  // namespace medialcorr
