#include "medialcorr/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "medialcorr/parallel.hpp"
#include "medialcorr/rng.hpp"

namespace medialcorr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void validate_data(const DataMatrix& data) {
  require(data.n() >= 2, "need at least 2 observations");
  require(data.d() >= 2, "need at least 2 variables");
  require(data.labels.empty() || static_cast<int>(data.labels.size()) == data.d(),
          "label count does not match the column count");
  require(data.values.allFinite(), "data contains non-finite entries");
}

PseudoObservations pseudo_observations(const DataMatrix& data) {
  validate_data(data);
  const std::int64_t n = data.n();
  const int d = data.d();
  PseudoObservations pseudo;
  pseudo.u.resize(n, d);

  std::vector<std::int64_t> order(n);
  for (int i = 0; i < d; ++i) {
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
      return data.values(a, i) < data.values(b, i);
    });
    // ties share the count of values <= them, i.e. the last index of the group
    std::int64_t pos = 0;
    while (pos < n) {
      std::int64_t end = pos + 1;
      while (end < n && data.values(order[end], i) == data.values(order[pos], i)) ++end;
      const double u = static_cast<double>(end) / static_cast<double>(n + 1);
      for (std::int64_t k = pos; k < end; ++k) pseudo.u(order[k], i) = u;
      pos = end;
    }
  }
  return pseudo;
}

RowExtremes complement_extremes(const PseudoObservations& pseudo, int excluded) {
  const int d = pseudo.d();
  require(excluded >= 0 && excluded < d, "excluded coordinate out of range");
  require(d >= 2, "row extremes need dimension >= 2");
  const std::int64_t n = pseudo.n();
  RowExtremes ext;
  ext.row_max.resize(n);
  ext.row_min.resize(n);
  for (std::int64_t j = 0; j < n; ++j) {
    double hi = -1.0, lo = 2.0;
    for (int r = 0; r < d; ++r) {
      if (r == excluded) continue;
      hi = std::max(hi, pseudo.u(j, r));
      lo = std::min(lo, pseudo.u(j, r));
    }
    ext.row_max[j] = hi;
    ext.row_min[j] = lo;
  }
  return ext;
}

OrthantTable empirical_orthant_table(const PseudoObservations& pseudo) {
  const int d = pseudo.d();
  require(d >= 1 && d <= kMaxDimension, "dimension exceeds the exact-engine cap");
  const std::int64_t n = pseudo.n();
  const std::size_t size = std::size_t{1} << d;

  std::vector<std::int64_t> hist(size, 0);
  for (std::int64_t j = 0; j < n; ++j) {
    CoordSet mask = 0;
    for (int i = 0; i < d; ++i) {
      if (pseudo.u(j, i) <= 0.5) mask |= CoordSet{1} << i;
    }
    ++hist[mask];
  }
  // counts[s] = #rows whose at-or-below mask contains s (superset sums)
  for (int i = 0; i < d; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < size; ++s) {
      if (!(s & bit)) hist[s] += hist[s | bit];
    }
  }

  OrthantTable table;
  table.d = d;
  table.n_rows = n;
  table.counts = std::move(hist);
  table.values.resize(size);
  for (std::size_t s = 0; s < size; ++s) {
    table.values[s] = static_cast<double>(table.counts[s]) / static_cast<double>(n);
  }
  return table;
}

CoefficientsReport empirical_coefficients(const DataMatrix& data) {
  validate_data(data);
  require(data.d() >= 2, "need at least 2 variables");
  const PseudoObservations pseudo = pseudo_observations(data);
  const std::int64_t n = pseudo.n();
  const int d = pseudo.d();

  // Companion coefficients are plug-ins of the empirical orthant table.
  CoefficientsReport report = coefficients_from_table(empirical_orthant_table(pseudo));

  // Components and beta are recomputed from the per-row indicator sums over
  // the complement extremes. The integer numerators coincide with the table
  // route by an inclusion-exclusion identity, so the two routes agree
  // bit-for-bit; both are kept live as mutual checks.
  std::int64_t total = 0;
  for (int i = 0; i < d; ++i) {
    const RowExtremes ext = complement_extremes(pseudo, i);
    std::int64_t below_max = 0, above_max = 0, below_min = 0, above_min = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      const bool u_below = pseudo.u(j, i) <= 0.5;
      if (u_below && ext.row_max[j] <= 0.5) ++below_max;
      if (!u_below && ext.row_max[j] > 0.5) ++above_max;
      if (u_below && ext.row_min[j] <= 0.5) ++below_min;
      if (!u_below && ext.row_min[j] > 0.5) ++above_min;
    }
    const std::int64_t num = below_max + above_max + below_min + above_min - n;
    report.components[i] = static_cast<double>(num) / static_cast<double>(n);
    total += num;
  }
  report.beta = static_cast<double>(total) / (static_cast<double>(d) * static_cast<double>(n));
  report.source = ReportSource::empirical;
  report.n = n;
  report.labels = data.labels;
  return report;
}

BootstrapResult bootstrap_ci(const DataMatrix& data, int replicates, double level,
                             std::uint64_t seed, int threads) {
  validate_data(data);
  require(replicates >= 100, "need at least 100 bootstrap replicates");
  require(level > 0.0 && level < 1.0, "confidence level must lie in (0,1)");

  const std::int64_t n = data.n();
  const int d = data.d();
  std::vector<double> betas(replicates);
  Eigen::MatrixXd comps(replicates, d);

  parallel_for(replicates, resolve_threads(threads), [&](std::int64_t begin, std::int64_t end) {
    DataMatrix resample;
    resample.values.resize(n, d);
    resample.labels = data.labels;
    for (std::int64_t r = begin; r < end; ++r) {
      const std::uint64_t key = rng::substream(seed, static_cast<std::uint64_t>(r));
      for (std::int64_t j = 0; j < n; ++j) {
        const auto row = static_cast<std::int64_t>(rng::bits(key, j) % static_cast<std::uint64_t>(n));
        resample.values.row(j) = data.values.row(row);
      }
      const CoefficientsReport rep = empirical_coefficients(resample);
      betas[r] = rep.beta;
      comps.row(r) = rep.components;
    }
  });

  const auto percentile = [](std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double h = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
  };

  const double tail = (1.0 - level) / 2.0;
  BootstrapResult result;
  result.replicates = replicates;
  result.level = level;
  result.beta = {percentile(betas, tail), percentile(betas, 1.0 - tail)};
  result.components.resize(d);
  for (int i = 0; i < d; ++i) {
    std::vector<double> ci(comps.col(i).data(), comps.col(i).data() + replicates);
    result.components[i] = {percentile(ci, tail), percentile(ci, 1.0 - tail)};
  }
  return result;
}

}  // namespace medialcorr
