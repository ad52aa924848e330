#include "alignkit/initial_align.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "alignkit/error.hpp"
#include "alignkit/kernels.hpp"

namespace alignkit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Mean of the unit phrase vectors of the embeddable texts; nullopt if none.
std::optional<EmbeddingVector> mean_unit_vector(std::span<const std::string> texts,
                                                const EmbeddingProvider& provider) {
  EmbeddingVector mean(provider.dimension(), 0.0);
  std::size_t count = 0;
  for (const auto& text : texts) {
    auto tokens = tokenize(text);
    auto v = phrase_vector(tokens, provider, /*normalize=*/true);
    if (!v) continue;
    kernels::axpy(1.0, *v, mean);
    ++count;
  }
  if (count == 0) return std::nullopt;
  kernels::scale(1.0 / static_cast<double>(count), mean);
  return mean;
}

double levenshtein_score(std::span<const std::string> a, std::span<const std::string> b) {
  double total = 0.0;
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      const auto longest = std::max(ta.size(), tb.size());
      if (longest == 0) continue;
      total += static_cast<double>(levenshtein(ta, tb)) / static_cast<double>(longest);
    }
  }
  return 60.0 * (1.0 - total / static_cast<double>(a.size() * b.size()));
}

std::vector<std::string> column_texts(const Alignment& a, std::size_t col) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!a.cell(r, col).empty()) out.push_back(a.cell(r, col).text());
  return out;
}

enum State : int { kMatch = 0, kOnlyA = 1, kOnlyB = 2 };

}  // namespace

double gap_penalty(std::size_t length) {
  const double l = static_cast<double>(length);
  return -1.0 * (1.0 * std::min(l, 1.0) + 0.1 * std::max(l - 1.0, 0.0));
}

double substitution_score(std::span<const std::string> column_a,
                          std::span<const std::string> column_b, const EmbeddingProvider& provider) {
  if (column_a.empty() || column_b.empty()) return 0.0;
  auto mean_a = mean_unit_vector(column_a, provider);
  auto mean_b = mean_unit_vector(column_b, provider);
  if (mean_a && mean_b) return 10.0 * (6.0 - std::sqrt(kernels::squared_distance(*mean_a, *mean_b)));
  return levenshtein_score(column_a, column_b);
}

Alignment pairwise_align(const Alignment& a, const Alignment& b, const EmbeddingProvider& provider) {
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  const double open = gap_penalty(1);
  const double extend = gap_penalty(2) - gap_penalty(1);

  std::vector<std::vector<std::string>> texts_a(n), texts_b(m);
  for (std::size_t i = 0; i < n; ++i) texts_a[i] = column_texts(a, i);
  for (std::size_t j = 0; j < m; ++j) texts_b[j] = column_texts(b, j);

  Grid<double> sub(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) sub.at(i, j) = substitution_score(texts_a[i], texts_b[j], provider);

  // score[state](i, j): best score of a[0..i) vs b[0..j) whose last column is `state`.
  std::array<Grid<double>, 3> score{Grid<double>(n + 1, m + 1, kNegInf),
                                    Grid<double>(n + 1, m + 1, kNegInf),
                                    Grid<double>(n + 1, m + 1, kNegInf)};
  score[kMatch].at(0, 0) = 0.0;

  // First maximal entry in preference order match, only-a, only-b.
  auto best_of = [](double m0, double m1, double m2) {
    int s = kMatch;
    double v = m0;
    if (m1 > v) { s = kOnlyA; v = m1; }
    if (m2 > v) { s = kOnlyB; v = m2; }
    return std::pair{s, v};
  };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i > 0 && j > 0) {
        auto [s, v] = best_of(score[kMatch].at(i - 1, j - 1), score[kOnlyA].at(i - 1, j - 1),
                              score[kOnlyB].at(i - 1, j - 1));
        score[kMatch].at(i, j) = v + sub.at(i - 1, j - 1);
      }
      if (i > 0) {
        score[kOnlyA].at(i, j) = best_of(score[kMatch].at(i - 1, j) + open,
                                         score[kOnlyA].at(i - 1, j) + extend,
                                         score[kOnlyB].at(i - 1, j) + open).second;
      }
      if (j > 0) {
        score[kOnlyB].at(i, j) = best_of(score[kMatch].at(i, j - 1) + open,
                                         score[kOnlyA].at(i, j - 1) + open,
                                         score[kOnlyB].at(i, j - 1) + extend).second;
      }
    }
  }

  // Traceback, collecting (column of a or npos, column of b or npos) pairs.
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t i = n, j = m;
  int state = best_of(score[kMatch].at(n, m), score[kOnlyA].at(n, m), score[kOnlyB].at(n, m)).first;
  while (i > 0 || j > 0) {
    switch (state) {
      case kMatch:
        pairs.emplace_back(i - 1, j - 1);
        state = best_of(score[kMatch].at(i - 1, j - 1), score[kOnlyA].at(i - 1, j - 1),
                        score[kOnlyB].at(i - 1, j - 1)).first;
        --i;
        --j;
        break;
      case kOnlyA:
        pairs.emplace_back(i - 1, kNone);
        state = best_of(score[kMatch].at(i - 1, j) + open, score[kOnlyA].at(i - 1, j) + extend,
                        score[kOnlyB].at(i - 1, j) + open).first;
        --i;
        break;
      default:
        pairs.emplace_back(kNone, j - 1);
        state = best_of(score[kMatch].at(i, j - 1) + open, score[kOnlyA].at(i, j - 1) + open,
                        score[kOnlyB].at(i, j - 1) + extend).first;
        --j;
        break;
    }
  }
  std::reverse(pairs.begin(), pairs.end());

  Grid<Cell> grid(a.rows() + b.rows(), pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    auto [ca, cb] = pairs[c];
    if (ca != kNone)
      for (std::size_t r = 0; r < a.rows(); ++r) grid.at(r, c) = a.cell(r, ca);
    if (cb != kNone)
      for (std::size_t r = 0; r < b.rows(); ++r) grid.at(a.rows() + r, c) = b.cell(r, cb);
  }
  auto sources = a.source_texts();
  sources.insert(sources.end(), b.source_texts().begin(), b.source_texts().end());
  return Alignment(std::move(sources), std::move(grid));
}

Alignment progressive_align(std::span<const std::string> texts, const EmbeddingProvider& provider) {
  if (texts.empty()) throw Error(ErrorCode::EmptyInput, "empty input");
  for (std::size_t i = 0; i < texts.size(); ++i)
    if (tokenize(texts[i]).empty())
      throw Error(ErrorCode::EmptyText, "text " + std::to_string(i + 1) + " is empty");
  Alignment result = degenerate_alignment(texts[0]);
  for (std::size_t i = 1; i < texts.size(); ++i)
    result = pairwise_align(result, degenerate_alignment(texts[i]), provider);
  return result;
}

}  // namespace alignkit
