#include "medialcorr/orthant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace medialcorr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Neumaier-compensated accumulator for the alternating subset sums.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

void check_table(const OrthantTable& table) {
  require(table.d >= 1 && table.d <= kMaxDimension, "orthant table dimension out of range");
  require(table.values.size() == (std::size_t{1} << table.d), "orthant table has wrong size");
  if (table.empirical()) {
    require(table.counts.size() == table.values.size(), "orthant table counts have wrong size");
  }
}

}  // namespace

double OrthantTable::margin_gap() const {
  double gap = 0.0;
  for (int i = 0; i < d; ++i) gap = std::max(gap, std::abs(values[std::size_t{1} << i] - 0.5));
  return gap;
}

OrthantTable build_orthant_table(const CopulaModel& model) {
  const int d = model.dim();
  require(d <= kMaxDimension,
          "model dimension " + std::to_string(d) + " exceeds the exact-engine cap of " +
              std::to_string(kMaxDimension));
  OrthantTable table;
  table.d = d;
  table.values.resize(std::size_t{1} << d);
  Eigen::VectorXd point(d);
  for (CoordSet s = 0; s <= full_set(d); ++s) {
    for (int i = 0; i < d; ++i) point[i] = (s & (CoordSet{1} << i)) ? 0.5 : 1.0;
    table.values[s] = cdf(model, point);
  }
  return table;
}

double orthant_mask_prob(const OrthantTable& table, CoordSet leq, CoordSet gt) {
  check_table(table);
  const CoordSet full = full_set(table.d);
  require((leq & gt) == 0, "leq and gt sets overlap");
  require((leq & ~full) == 0 && (gt & ~full) == 0, "subset has a coordinate out of range");

  if (table.empirical()) {
    std::int64_t count = 0;
    CoordSet t = gt;
    while (true) {
      count += (std::popcount(t) % 2 == 0 ? 1 : -1) * table.counts[leq | t];
      if (t == 0) break;
      t = (t - 1) & gt;
    }
    return static_cast<double>(count) / static_cast<double>(table.n_rows);
  }

  CompensatedSum acc;
  CoordSet t = gt;
  while (true) {
    acc.add((std::popcount(t) % 2 == 0 ? 1.0 : -1.0) * table.values[leq | t]);
    if (t == 0) break;
    t = (t - 1) & gt;
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

OrthantTable reflect_table(const OrthantTable& table, CoordSet mask) {
  check_table(table);
  require((mask & ~full_set(table.d)) == 0, "reflection mask has a coordinate out of range");

  OrthantTable out = table;
  const std::size_t size = out.values.size();
  // One elimination pass per reflected coordinate: P(flip_i <= 1/2, rest) =
  // P(rest) - P(U_i <= 1/2, rest), applied in place over the subset lattice.
  if (out.empirical()) {
    // counts stay exact; probabilities are rebuilt with one division each
    for (int i = 0; i < table.d; ++i) {
      if (!(mask & (CoordSet{1} << i))) continue;
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t s = 0; s < size; ++s) {
        if (s & bit) out.counts[s] = out.counts[s ^ bit] - out.counts[s];
      }
    }
    for (std::size_t s = 0; s < size; ++s) {
      out.values[s] = static_cast<double>(out.counts[s]) / static_cast<double>(out.n_rows);
    }
    return out;
  }
  for (int i = 0; i < table.d; ++i) {
    if (!(mask & (CoordSet{1} << i))) continue;
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < size; ++s) {
      if (s & bit) out.values[s] = out.values[s ^ bit] - out.values[s];
    }
  }
  for (double& v : out.values) v = std::clamp(v, 0.0, 1.0);
  return out;
}

ExceedanceDistribution exceedance_distribution(const OrthantTable& table) {
  check_table(table);
  const int d = table.d;
  const std::size_t size = std::size_t{1} << d;
  const CoordSet full = full_set(d);

  ExceedanceDistribution dist;
  dist.probs = Eigen::VectorXd::Zero(d + 1);

  if (table.empirical()) {
    // cell[g] = #rows exceeding 1/2 exactly on g, by Mobius inversion of the
    // superset counts; exact in integers.
    std::vector<std::int64_t> cell(size);
    for (std::size_t g = 0; g < size; ++g) cell[g] = table.counts[full & ~g];
    for (int i = 0; i < d; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t g = 0; g < size; ++g) {
        if (g & bit) cell[g] -= cell[g ^ bit];
      }
    }
    std::vector<std::int64_t> level(d + 1, 0);
    for (std::size_t g = 0; g < size; ++g) level[std::popcount(static_cast<CoordSet>(g))] += cell[g];
    for (int k = 0; k <= d; ++k) {
      dist.probs[k] = static_cast<double>(level[k]) / static_cast<double>(table.n_rows);
    }
    return dist;
  }

  std::vector<double> cell(size);
  for (std::size_t g = 0; g < size; ++g) cell[g] = table.values[full & ~g];
  for (int i = 0; i < d; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t g = 0; g < size; ++g) {
      if (g & bit) cell[g] -= cell[g ^ bit];
    }
  }
  for (std::size_t g = 0; g < size; ++g) {
    dist.probs[std::popcount(static_cast<CoordSet>(g))] += std::max(cell[g], 0.0);
  }
  return dist;
}

}  // namespace medialcorr
