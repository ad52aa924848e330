#pragma once

#include <cstddef>
#include <span>

#include "alignkit/embeddings.hpp"
#include "alignkit/model.hpp"

namespace alignkit {

struct Weights {
  double w_col = 0.2;
  double w_fcol = 0.2;
  double w_embed = 1.0;
  double w_bias = 5.0;

  /// Throws Error{InvalidConfig} unless every weight is finite.
  void validate() const;
  friend bool operator==(const Weights&, const Weights&) = default;
};

struct ScoreBreakdown {
  double s_col = 0.0;
  double s_fcol = 0.0;
  double s_embed = 0.0;
  double total = 0.0;
  friend bool operator==(const ScoreBreakdown&, const ScoreBreakdown&) = default;
};

/// Filled cells in the fullest row: the narrowest width the alignment could have.
std::size_t min_columns(const Alignment& a);

/// cols / min_columns.
double score_columns(const Alignment& a);

/// (columns holding any text) / min_columns.
double score_filled(const Alignment& a);

/// Fraction of rows with a non-empty cell in `col`.
double column_relevance(const Alignment& a, std::size_t col);

/// Trace of the population covariance of the (unnormalized) phrase vectors of
/// the column's embeddable cells; 0 with fewer than two of them.
double column_variance(const Alignment& a, std::size_t col, const EmbeddingProvider& provider);

/// Sum over columns of relevance * variance.
double score_embed(const Alignment& a, const EmbeddingProvider& provider);

/// -w_col*s_col - w_fcol*s_fcol - w_embed*s_embed^2 + w_bias.
double combine(double s_col, double s_fcol, double s_embed, const Weights& w);

ScoreBreakdown total_score(const Alignment& a, const EmbeddingProvider& provider,
                           const Weights& weights = {});

/// Trace of the population covariance of `vectors` (all of size `dimension`),
/// computed as the mean squared distance to the centroid. `scratch` must hold
/// `dimension` doubles.
double covariance_trace(std::span<const double* const> vectors, std::size_t dimension,
                        std::span<double> scratch);

}  // namespace alignkit
