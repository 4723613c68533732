#pragma once

#include <Eigen/Core>

#include <cstdint>

#include "medialcorr/copula.hpp"

namespace medialcorr {

/// All marginal copulas of a vector evaluated at the median point, indexed
/// by coordinate subset: values[s] = P(U_i <= 1/2 for every i in s).
/// values[0] = 1. This table is the sufficient statistic for every
/// coefficient computed by this library.
///
/// Tables built from data additionally carry the exact row counts behind
/// each probability (values[s] = counts[s] / n_rows); all downstream
/// inclusion-exclusion then runs in integer arithmetic and each reported
/// coefficient is a single exact integer ratio.
struct OrthantTable {
  int d = 0;
  std::vector<double> values;        // size 1 << d
  std::vector<std::int64_t> counts;  // empty for exact tables
  std::int64_t n_rows = 0;           // > 0 iff counts is populated

  bool empirical() const { return n_rows > 0; }

  /// max_i |values[{i}] - 1/2|; 0 for exact tables, rank granularity for
  /// empirical ones (tie-free data keeps it within 1/(n+1)).
  double margin_gap() const;
};

/// Evaluates the model's marginal cdfs at (1/2,...,1/2) for all 2^d subsets.
/// Throws if model.dim() exceeds kMaxDimension.
OrthantTable build_orthant_table(const CopulaModel& model);

/// P(U_i <= 1/2 for i in leq, U_j > 1/2 for j in gt), by inclusion-exclusion
/// over the table: sum over T subset of gt of (-1)^|T| values[leq | T].
/// The sets must be disjoint subsets of {0,...,d-1}.
double orthant_mask_prob(const OrthantTable& table, CoordSet leq, CoordSet gt);

/// Table of the vector with the coordinates in `mask` reflected, derived
/// exactly from the input table (one in-place elimination pass per reflected
/// coordinate, never a separate evaluator).
OrthantTable reflect_table(const OrthantTable& table, CoordSet mask);

/// probs[k] = P(exactly k coordinates exceed 1/2), k = 0..d.
struct ExceedanceDistribution {
  Eigen::VectorXd probs;
};

ExceedanceDistribution exceedance_distribution(const OrthantTable& table);

}  // namespace medialcorr
