#pragma once

#include <string>
#include <vector>

#include "alignkit/embeddings.hpp"
#include "alignkit/model.hpp"

namespace alignkit::test {

/// Trace of the population covariance matrix, built entry by entry.
inline double covariance_oracle(const std::vector<std::vector<double>>& xs) {
  const std::size_t n = xs.size(), d = xs[0].size();
  std::vector<double> mean(d, 0.0);
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i) mean[i] += x[i] / static_cast<double>(n);
  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) cov[i][j] += (x[i] - mean[i]) * (x[j] - mean[j]) / static_cast<double>(n);
  double tr = 0;
  for (std::size_t i = 0; i < d; ++i) tr += cov[i][i];
  return tr;
}

/// Plain mean of the token vectors of `text`; every token must be known.
inline std::vector<double> mean_vector(const std::string& text, const EmbeddingProvider& p) {
  std::vector<double> sum(p.dimension(), 0.0), v(p.dimension());
  auto toks = tokenize(text);
  for (const auto& t : toks) {
    p.lookup(t, v);
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
  }
  for (auto& x : sum) x /= static_cast<double>(toks.size());
  return sum;
}

}  // namespace alignkit::test
