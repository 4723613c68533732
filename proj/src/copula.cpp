#include "medialcorr/copula.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "medialcorr/rng.hpp"

namespace medialcorr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_point(const CopulaModel& model, const Eigen::VectorXd& point) {
  require(point.size() == model.dim(), "point dimension " + std::to_string(point.size()) +
                                           " does not match model dimension " +
                                           std::to_string(model.dim()));
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    require(point[i] >= 0.0 && point[i] <= 1.0,
            "coordinate " + std::to_string(i) + " outside [0,1]");
  }
}

double gumbel_cdf(int dim, double delta, const Eigen::VectorXd& u) {
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    if (u[i] == 0.0) return 0.0;
    if (u[i] < 1.0) sum += std::pow(-std::log(u[i]), 1.0 / delta);
  }
  if (sum == 0.0) return 1.0;
  return std::exp(-std::pow(sum, delta));
}

double marshall_olkin_cdf(double alpha1, double alpha2, double u1, double u2) {
  if (u1 == 0.0 || u2 == 0.0) return 0.0;
  return std::min(std::pow(u1, 1.0 - alpha1) * u2, u1 * std::pow(u2, 1.0 - alpha2));
}

}  // namespace

CopulaModel CopulaModel::product(int dim) {
  require(dim >= 1, "product copula needs dimension >= 1");
  return CopulaModel(ProductCopula{dim}, dim);
}

CopulaModel CopulaModel::comonotone(int dim) {
  require(dim >= 1, "comonotone copula needs dimension >= 1");
  return CopulaModel(ComonotoneCopula{dim}, dim);
}

CopulaModel CopulaModel::countermonotone_pair() {
  return CopulaModel(CountermonotonePair{}, 2);
}

CopulaModel CopulaModel::gumbel(int dim, double delta) {
  require(dim >= 1, "gumbel copula needs dimension >= 1");
  require(delta > 0.0 && delta <= 1.0, "gumbel delta must lie in (0,1]");
  return CopulaModel(GumbelCopula{dim, delta}, dim);
}

CopulaModel CopulaModel::marshall_olkin(double alpha1, double alpha2) {
  require(alpha1 >= 0.0 && alpha1 <= 1.0 && alpha2 >= 0.0 && alpha2 <= 1.0,
          "marshall-olkin parameters must lie in [0,1]");
  return CopulaModel(MarshallOlkinCopula{alpha1, alpha2}, 2);
}

CopulaModel CopulaModel::compose(std::vector<BlockComposition::Block> blocks) {
  require(!blocks.empty(), "composition needs at least one block");
  int total = 0;
  for (const auto& b : blocks) {
    require(static_cast<int>(b.coords.size()) == b.model.dim(),
            "block coordinate list does not match the block model dimension");
    total += b.model.dim();
  }
  std::vector<int> seen;
  for (const auto& b : blocks) seen.insert(seen.end(), b.coords.begin(), b.coords.end());
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < total; ++i) {
    require(i < static_cast<int>(seen.size()) && seen[i] == i,
            "block coordinates must partition {0,...,d-1}");
  }
  return CopulaModel(BlockComposition{std::move(blocks)}, total);
}

double cdf(const CopulaModel& model, const Eigen::VectorXd& point) {
  check_point(model, point);
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ProductCopula>) {
          double p = 1.0;
          for (int i = 0; i < node.dim; ++i) p *= point[i];
          return p;
        } else if constexpr (std::is_same_v<T, ComonotoneCopula>) {
          return point.minCoeff();
        } else if constexpr (std::is_same_v<T, CountermonotonePair>) {
          return std::max(point[0] + point[1] - 1.0, 0.0);
        } else if constexpr (std::is_same_v<T, GumbelCopula>) {
          return gumbel_cdf(node.dim, node.delta, point);
        } else if constexpr (std::is_same_v<T, MarshallOlkinCopula>) {
          return marshall_olkin_cdf(node.alpha1, node.alpha2, point[0], point[1]);
        } else {
          static_assert(std::is_same_v<T, BlockComposition>);
          double p = 1.0;
          for (const auto& block : node.blocks) {
            Eigen::VectorXd sub(block.coords.size());
            for (std::size_t k = 0; k < block.coords.size(); ++k) sub[k] = point[block.coords[k]];
            p *= cdf(block.model, sub);
          }
          return p;
        }
      },
      model.node());
}

double marginal_cdf(const CopulaModel& model, CoordSet subset, const Eigen::VectorXd& point_sub) {
  const int d = model.dim();
  require(subset != 0, "marginal subset must be nonempty");
  require((subset & ~full_set(d)) == 0, "marginal subset has a coordinate out of range");
  require(point_sub.size() == std::popcount(subset),
          "marginal point size does not match the subset size");
  Eigen::VectorXd point = Eigen::VectorXd::Ones(d);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    if (subset & (CoordSet{1} << i)) point[i] = point_sub[k++];
  }
  return cdf(model, point);
}

double survival_cdf(const CopulaModel& model, const Eigen::VectorXd& point) {
  check_point(model, point);
  const int d = model.dim();
  // P(all U_i > 1 - u_i) = sum over corner sets S of (-1)^|S| C(corner_S)
  // with corner_S equal to 1 - u on S and 1 elsewhere.
  double sum = 0.0, comp = 0.0;
  Eigen::VectorXd corner(d);
  for (CoordSet s = 0; s <= full_set(d); ++s) {
    for (int i = 0; i < d; ++i) corner[i] = (s & (CoordSet{1} << i)) ? 1.0 - point[i] : 1.0;
    const double term = (std::popcount(s) % 2 == 0 ? 1.0 : -1.0) * cdf(model, corner);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::clamp(sum + comp, 0.0, 1.0);
}

AxiomReport axiom_check(int dim, const CdfFunction& cdf_fn, int grid_resolution, int rectangles,
                        std::uint64_t seed) {
  require(dim >= 1, "dimension must be >= 1");
  require(grid_resolution >= 2, "grid resolution must be >= 2");
  require(rectangles >= 0, "rectangle count must be >= 0");

  constexpr double kTol = 1e-9;
  AxiomReport report;
  const int g = grid_resolution;

  // groundedness: one coordinate pinned to 0, the others swept on the grid
  for (int zero = 0; zero < dim; ++zero) {
    for (int step = 0; step <= g; ++step) {
      Eigen::VectorXd u = Eigen::VectorXd::Constant(dim, static_cast<double>(step) / g);
      u[zero] = 0.0;
      const double v = cdf_fn(u);
      ++report.checks_run;
      if (std::abs(v) > kTol) {
        report.findings.push_back({AxiomFinding::Kind::groundedness, u, v});
      }
    }
  }

  // uniform margins: all coordinates 1 except one
  for (int i = 0; i < dim; ++i) {
    for (int step = 0; step <= g; ++step) {
      Eigen::VectorXd u = Eigen::VectorXd::Ones(dim);
      u[i] = static_cast<double>(step) / g;
      const double v = cdf_fn(u);
      ++report.checks_run;
      if (std::abs(v - u[i]) > kTol) {
        report.findings.push_back({AxiomFinding::Kind::uniform_margin, u, v});
      }
    }
  }

  // rectangle volumes on random axis-aligned boxes
  const std::uint64_t key = rng::substream(seed, 0);
  std::uint64_t idx = 0;
  Eigen::VectorXd lo(dim), hi(dim), corner(dim);
  for (int r = 0; r < rectangles; ++r) {
    for (int i = 0; i < dim; ++i) {
      double a = rng::uniform01(key, idx++);
      double b = rng::uniform01(key, idx++);
      lo[i] = std::min(a, b);
      hi[i] = std::max(a, b);
    }
    double volume = 0.0;
    for (CoordSet s = 0; s <= full_set(dim); ++s) {
      for (int i = 0; i < dim; ++i) corner[i] = (s & (CoordSet{1} << i)) ? lo[i] : hi[i];
      volume += (std::popcount(s) % 2 == 0 ? 1.0 : -1.0) * cdf_fn(corner);
    }
    ++report.checks_run;
    if (volume < -kTol) {
      report.findings.push_back({AxiomFinding::Kind::rectangle_volume, hi, volume});
    }
  }
  return report;
}

AxiomReport axiom_check(const CopulaModel& model, int grid_resolution, int rectangles,
                        std::uint64_t seed) {
  return axiom_check(
      model.dim(), [&model](const Eigen::VectorXd& u) { return cdf(model, u); }, grid_resolution,
      rectangles, seed);
}

}  // namespace medialcorr
