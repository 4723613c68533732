#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace medialcorr {

/// Hard cap on model dimension: the exact engine materializes 2^d orthant
/// values, so anything past this is no longer desk-scale.
inline constexpr int kMaxDimension = 20;

/// Coordinate subsets are bitmasks; bit i set means coordinate i (0-based).
using CoordSet = std::uint32_t;

inline constexpr CoordSet full_set(int d) { return (CoordSet{1} << d) - 1; }

struct ProductCopula {
  int dim = 1;
};

struct ComonotoneCopula {
  int dim = 1;
};

/// Perfect negative dependence in two dimensions: (U, 1-U).
struct CountermonotonePair {};

/// C(u) = exp(-(sum_i (-ln u_i)^(1/delta))^delta), delta in (0,1].
/// delta = 1 is independence.
struct GumbelCopula {
  int dim = 2;
  double delta = 1.0;
};

/// C(u1,u2) = min(u1^(1-alpha1) * u2, u1 * u2^(1-alpha2)), alphas in [0,1].
struct MarshallOlkinCopula {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

class CopulaModel;

/// Product composition over disjoint coordinate blocks.
struct BlockComposition {
  struct Block;
  std::vector<Block> blocks;
};

class CopulaModel {
 public:
  using Variant = std::variant<ProductCopula, ComonotoneCopula, CountermonotonePair,
                               GumbelCopula, MarshallOlkinCopula, BlockComposition>;

  static CopulaModel product(int dim);
  static CopulaModel comonotone(int dim);
  static CopulaModel countermonotone_pair();
  static CopulaModel gumbel(int dim, double delta);
  static CopulaModel marshall_olkin(double alpha1, double alpha2);

  /// Blocks must partition {0,...,d-1}; total dimension is the sum of block
  /// dimensions. Throws std::invalid_argument otherwise.
  static CopulaModel compose(std::vector<BlockComposition::Block> blocks);

  int dim() const { return dim_; }
  const Variant& node() const { return node_; }

 private:
  CopulaModel(Variant node, int dim) : node_(std::move(node)), dim_(dim) {}

  Variant node_;
  int dim_ = 0;
};

struct BlockComposition::Block {
  CopulaModel model;
  std::vector<int> coords;  // 0-based coordinates of this block, size == model.dim()
};

/// Distribution function of the model at a point in [0,1]^d.
/// Throws std::invalid_argument on dimension mismatch or coordinates
/// outside [0,1].
double cdf(const CopulaModel& model, const Eigen::VectorXd& point);

/// Marginal copula of the coordinates in `subset`, evaluated at `point_sub`
/// (packed in increasing coordinate order). Equals the full cdf with
/// off-subset coordinates set to 1.
double marginal_cdf(const CopulaModel& model, CoordSet subset, const Eigen::VectorXd& point_sub);

/// Survival function of the uniformized vector: P(U_i > 1 - u_i ... ), i.e.
/// the survival copula at `point`, computed from the cdf by
/// inclusion-exclusion over the 2^d corner evaluations.
double survival_cdf(const CopulaModel& model, const Eigen::VectorXd& point);

using CdfFunction = std::function<double(const Eigen::VectorXd&)>;

struct AxiomFinding {
  enum class Kind { groundedness, uniform_margin, rectangle_volume };
  Kind kind;
  Eigen::VectorXd at;  // offending grid point or rectangle upper corner
  double value;        // the offending cdf value or rectangle volume
};

struct AxiomReport {
  std::vector<AxiomFinding> findings;
  int checks_run = 0;
  bool ok() const { return findings.empty(); }
};

/// Diagnostic sanity check of an arbitrary evaluator against the copula
/// axioms: groundedness, uniform margins on a grid, and nonnegative volume
/// on randomly sampled axis-aligned rectangles. Returns findings instead of
/// throwing; an empty findings list means no violation was detected.
AxiomReport axiom_check(int dim, const CdfFunction& cdf_fn, int grid_resolution, int rectangles,
                        std::uint64_t seed);

AxiomReport axiom_check(const CopulaModel& model, int grid_resolution, int rectangles,
                        std::uint64_t seed);

}  // namespace medialcorr
