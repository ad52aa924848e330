#include "alignkit/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "alignkit/error.hpp"
#include "alignkit/kernels.hpp"

namespace alignkit {

void Weights::validate() const {
  for (double w : {w_col, w_fcol, w_embed, w_bias})
    if (!std::isfinite(w)) throw Error(ErrorCode::InvalidConfig, "weights must be finite");
}

std::size_t min_columns(const Alignment& a) {
  std::size_t best = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) best = std::max(best, a.filled_in_row(r));
  return best;
}

double score_columns(const Alignment& a) {
  return static_cast<double>(a.cols()) / static_cast<double>(min_columns(a));
}

double score_filled(const Alignment& a) {
  std::size_t filled = 0;
  for (std::size_t c = 0; c < a.cols(); ++c) filled += !a.column_empty(c);
  return static_cast<double>(filled) / static_cast<double>(min_columns(a));
}

double column_relevance(const Alignment& a, std::size_t col) {
  return static_cast<double>(a.filled_in_column(col)) / static_cast<double>(a.rows());
}

double covariance_trace(std::span<const double* const> vectors, std::size_t dimension,
                        std::span<double> scratch) {
  const std::size_t n = vectors.size();
  if (n < 2) return 0.0;
  std::span<double> centroid = scratch.first(dimension);
  std::fill(centroid.begin(), centroid.end(), 0.0);
  for (const double* v : vectors) kernels::axpy(1.0, {v, dimension}, centroid);
  kernels::scale(1.0 / static_cast<double>(n), centroid);
  double sum = 0.0;
  for (const double* v : vectors) sum += kernels::squared_distance({v, dimension}, centroid);
  return sum / static_cast<double>(n);
}

double column_variance(const Alignment& a, std::size_t col, const EmbeddingProvider& provider) {
  std::vector<EmbeddingVector> vecs;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto& cell = a.cell(r, col);
    if (cell.empty()) continue;
    if (auto v = phrase_vector(cell.tokens, provider, /*normalize=*/false)) vecs.push_back(std::move(*v));
  }
  std::vector<const double*> ptrs;
  for (const auto& v : vecs) ptrs.push_back(v.data());
  std::vector<double> scratch(provider.dimension());
  return covariance_trace(ptrs, provider.dimension(), scratch);
}

double score_embed(const Alignment& a, const EmbeddingProvider& provider) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const double rel = column_relevance(a, c);
    if (rel > 0.0) s += rel * column_variance(a, c, provider);
  }
  return s;
}

double combine(double s_col, double s_fcol, double s_embed, const Weights& w) {
  return -w.w_col * s_col - w.w_fcol * s_fcol - w.w_embed * (s_embed * s_embed) + w.w_bias;
}

ScoreBreakdown total_score(const Alignment& a, const EmbeddingProvider& provider,
                           const Weights& weights) {
  ScoreBreakdown b;
  b.s_col = score_columns(a);
  b.s_fcol = score_filled(a);
  b.s_embed = score_embed(a, provider);
  b.total = combine(b.s_col, b.s_fcol, b.s_embed, weights);
  return b;
}

}  // namespace alignkit
