#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

#include "medialcorr/copula.hpp"

namespace medialcorr {

/// A seeded draw from a copula model: n rows with uniform margins, entries
/// strictly inside (0,1), plus provenance.
struct SampleBatch {
  Eigen::MatrixXd u;  // n x d
  std::string model;  // textual model description
  std::uint64_t seed = 0;

  std::int64_t n() const { return u.rows(); }
  int d() const { return static_cast<int>(u.cols()); }
};

/// Draws n rows from the model. Deterministic given (model, n, seed) and
/// independent of the thread count. n >= 1.
///
/// Per family: Product draws independent uniforms; Comonotone replicates one
/// uniform; CountermonotonePair emits (U, 1-U); Gumbel uses the
/// positive-stable frailty construction with the stable variate from the
/// Chambers-Mallows-Stuck method (Kanter form); MarshallOlkin uses the
/// exponential shock model with the common-shock rate normalized to 1;
/// composition blocks are sampled on independent substreams.
SampleBatch sample(const CopulaModel& model, std::int64_t n, std::uint64_t seed,
                   int threads = 0);

}  // namespace medialcorr
