#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "alignkit/embeddings.hpp"
#include "alignkit/model.hpp"

namespace alignkit {

/// Penalty for a run of `length` consecutive gap columns:
/// -(min(l, 1) + 0.1 * max(l - 1, 0)).
double gap_penalty(std::size_t length);

/// How well two columns (given as the texts of their non-empty cells) pair up.
///
/// When both sides have at least one embeddable text the score is
/// 10 * (6 - |mean_a - mean_b|) over unit-length phrase vectors, which lies in
/// [40, 60]. Otherwise it is 60 * (1 - mean normalized Levenshtein distance)
/// over all n*m text pairs, in [0, 60]. A side with no texts scores 0.
double substitution_score(std::span<const std::string> column_a,
                          std::span<const std::string> column_b, const EmbeddingProvider& provider);

/// End-to-end column alignment of two alignments with affine gaps. The result
/// stacks a's rows above b's; each input's columns keep their order.
/// DP ties prefer match, then a column of `a` alone, then a column of `b` alone.
Alignment pairwise_align(const Alignment& a, const Alignment& b, const EmbeddingProvider& provider);

/// Folds texts in order: align(align(t1, t2), t3), ...
/// Throws Error{EmptyInput} for no texts and Error{EmptyText} for a blank one.
Alignment progressive_align(std::span<const std::string> texts, const EmbeddingProvider& provider);

}  // namespace alignkit
