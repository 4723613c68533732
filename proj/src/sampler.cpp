#include "medialcorr/sampler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "medialcorr/model_parse.hpp"
#include "medialcorr/parallel.hpp"
#include "medialcorr/rng.hpp"

namespace medialcorr {

namespace {

double interior(double v) {
  if (v <= 0.0) return std::numeric_limits<double>::denorm_min();
  if (v >= 1.0) return std::nextafter(1.0, 0.0);
  return v;
}

double exponential(std::uint64_t key, std::uint64_t index) {
  return -std::log(rng::uniform01(key, index));
}

// One-sided positive stable variate with E[exp(-tS)] = exp(-t^alpha),
// alpha in (0,1): the Chambers-Mallows-Stuck construction in Kanter's form,
// S = (a(U)/W)^((1-alpha)/alpha).
double stable_positive(double alpha, double unif, double expo) {
  const double pu = std::numbers::pi * unif;
  const double a = std::sin((1.0 - alpha) * pu) *
                   std::pow(std::sin(alpha * pu), alpha / (1.0 - alpha)) /
                   std::pow(std::sin(pu), 1.0 / (1.0 - alpha));
  return std::pow(a / expo, (1.0 - alpha) / alpha);
}

// Rows are indexed globally so any row partition reproduces the sequential
// batch; each leaf family consumes a fixed number of draw slots per row.
void sample_rows(const CopulaModel& model, std::uint64_t key, std::int64_t begin,
                 std::int64_t end, Eigen::MatrixXd& out, const std::vector<int>& cols) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ProductCopula>) {
          const auto m = static_cast<std::uint64_t>(node.dim);
          for (std::int64_t j = begin; j < end; ++j) {
            for (int c = 0; c < node.dim; ++c) {
              out(j, cols[c]) = rng::uniform01(key, static_cast<std::uint64_t>(j) * m + c);
            }
          }
        } else if constexpr (std::is_same_v<T, ComonotoneCopula>) {
          for (std::int64_t j = begin; j < end; ++j) {
            const double v = rng::uniform01(key, static_cast<std::uint64_t>(j));
            for (int c = 0; c < node.dim; ++c) out(j, cols[c]) = v;
          }
        } else if constexpr (std::is_same_v<T, CountermonotonePair>) {
          for (std::int64_t j = begin; j < end; ++j) {
            const double v = rng::uniform01(key, static_cast<std::uint64_t>(j));
            out(j, cols[0]) = v;
            out(j, cols[1]) = interior(1.0 - v);
          }
        } else if constexpr (std::is_same_v<T, GumbelCopula>) {
          const auto slots = static_cast<std::uint64_t>(node.dim) + 2;
          const bool independent = node.delta > 1.0 - 1e-9;
          for (std::int64_t j = begin; j < end; ++j) {
            const std::uint64_t base = static_cast<std::uint64_t>(j) * slots;
            if (independent) {
              for (int c = 0; c < node.dim; ++c) {
                out(j, cols[c]) = rng::uniform01(key, base + 2 + c);
              }
              continue;
            }
            const double frailty =
                stable_positive(node.delta, rng::uniform01(key, base), exponential(key, base + 1));
            for (int c = 0; c < node.dim; ++c) {
              const double e = exponential(key, base + 2 + c);
              out(j, cols[c]) = interior(std::exp(-std::pow(e / frailty, node.delta)));
            }
          }
        } else if constexpr (std::is_same_v<T, MarshallOlkinCopula>) {
          // Exponential shock model, common-shock rate 1, so that
          // alpha_k = 1 / (lambda_k + 1). alpha_k = 0 degenerates to the
          // product copula, alpha_k = 1 pins the coordinate to the shock.
          const bool independent = std::min(node.alpha1, node.alpha2) == 0.0;
          const double rate1 = node.alpha1 > 0.0 ? (1.0 - node.alpha1) / node.alpha1 : 0.0;
          const double rate2 = node.alpha2 > 0.0 ? (1.0 - node.alpha2) / node.alpha2 : 0.0;
          for (std::int64_t j = begin; j < end; ++j) {
            const std::uint64_t base = static_cast<std::uint64_t>(j) * 3;
            if (independent) {
              out(j, cols[0]) = rng::uniform01(key, base + 1);
              out(j, cols[1]) = rng::uniform01(key, base + 2);
              continue;
            }
            const double shock = exponential(key, base);
            double x1 = shock, x2 = shock;
            if (node.alpha1 < 1.0) x1 = std::min(x1, exponential(key, base + 1) / rate1);
            if (node.alpha2 < 1.0) x2 = std::min(x2, exponential(key, base + 2) / rate2);
            out(j, cols[0]) = interior(std::exp(-(rate1 + 1.0) * x1));
            out(j, cols[1]) = interior(std::exp(-(rate2 + 1.0) * x2));
          }
        } else {
          static_assert(std::is_same_v<T, BlockComposition>);
          for (std::size_t b = 0; b < node.blocks.size(); ++b) {
            const auto& block = node.blocks[b];
            std::vector<int> sub(block.coords.size());
            for (std::size_t k = 0; k < block.coords.size(); ++k) sub[k] = cols[block.coords[k]];
            sample_rows(block.model, rng::substream(key, b), begin, end, out, sub);
          }
        }
      },
      model.node());
}

}  // namespace

SampleBatch sample(const CopulaModel& model, std::int64_t n, std::uint64_t seed, int threads) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  if (model.dim() > kMaxDimension) {
    throw std::invalid_argument("model dimension exceeds the cap of " +
                                std::to_string(kMaxDimension));
  }
  SampleBatch batch;
  batch.model = format_model(model);
  batch.seed = seed;
  batch.u.resize(n, model.dim());

  std::vector<int> cols(model.dim());
  for (int i = 0; i < model.dim(); ++i) cols[i] = i;
  const std::uint64_t key = rng::substream(seed, 0);
  parallel_for(n, resolve_threads(threads), [&](std::int64_t begin, std::int64_t end) {
    sample_rows(model, key, begin, end, batch.u, cols);
  });
  return batch;
}

}  // namespace medialcorr
