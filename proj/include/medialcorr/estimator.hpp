#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "medialcorr/coefficients.hpp"

namespace medialcorr {

/// n observations by d variables, finite entries, labeled columns.
struct DataMatrix {
  Eigen::MatrixXd values;            // n x d
  std::vector<std::string> labels;   // size d

  std::int64_t n() const { return values.rows(); }
  int d() const { return static_cast<int>(values.cols()); }
};

/// Throws std::invalid_argument unless n >= 2, d >= 2, labels match and all
/// entries are finite.
void validate_data(const DataMatrix& data);

/// Rank transform: entry (j,i) = #{l : X(l,i) <= X(j,i)} / (n+1).
/// Ties receive their maximal rank (the count includes every equal value).
/// Entries are strictly inside (0,1).
struct PseudoObservations {
  Eigen::MatrixXd u;  // n x d
  std::int64_t n() const { return u.rows(); }
  int d() const { return static_cast<int>(u.cols()); }
};

PseudoObservations pseudo_observations(const DataMatrix& data);

/// Per-row maximum and minimum of the pseudo-observations over all
/// coordinates except `excluded`.
struct RowExtremes {
  Eigen::VectorXd row_max;
  Eigen::VectorXd row_min;
};

RowExtremes complement_extremes(const PseudoObservations& pseudo, int excluded);

/// Orthant table of the empirical measure of the pseudo-observations, with
/// exact integer counts attached: counts[s] = #rows with u <= 1/2 on every
/// coordinate of s.
OrthantTable empirical_orthant_table(const PseudoObservations& pseudo);

/// The empirical report. Components and beta come from the per-row
/// indicator sums over the row extremes; the companion coefficients come
/// from the empirical orthant table. Identical bit-for-bit to
/// coefficients_from_table(empirical_orthant_table(pseudo_observations(data))).
CoefficientsReport empirical_coefficients(const DataMatrix& data);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct BootstrapResult {
  Interval beta;
  std::vector<Interval> components;
  int replicates = 0;
  double level = 0.0;
};

/// Nonparametric bootstrap (rows resampled with replacement, estimator
/// rerun per replicate) with percentile intervals for beta and each
/// component. Deterministic given (data, replicates, level, seed); each
/// replicate uses its own counter-RNG substream, so the thread count does
/// not affect the result. replicates >= 100, level in (0,1).
BootstrapResult bootstrap_ci(const DataMatrix& data, int replicates, double level,
                             std::uint64_t seed, int threads = 0);

}  // namespace medialcorr
