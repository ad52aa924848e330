#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "alignkit/model.hpp"

namespace alignkit {

using EmbeddingVector = std::vector<double>;

/// Maps tokens to fixed-dimension vectors. Implementations are immutable and
/// safe to query from several threads.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::size_t dimension() const noexcept = 0;

  /// Writes the vector for `token` into `out` (size dimension()). Tries the
  /// verbatim token first, then its ASCII-lowercased form.
  bool lookup(std::string_view token, std::span<double> out) const;

  bool contains(std::string_view token) const;

 protected:
  virtual bool lookup_exact(std::string_view token, std::span<double> out) const = 0;
};

/// Vectors held in memory, e.g. parsed from a word2vec/fastText text file.
class VectorTable final : public EmbeddingProvider {
 public:
  explicit VectorTable(std::size_t dimension) : dimension_(dimension) {}

  /// Returns false (and keeps the existing entry) for a duplicate token.
  /// Throws Error{MalformedLine} on a dimension mismatch.
  bool insert(std::string token, std::span<const double> vec);

  std::size_t dimension() const noexcept override { return dimension_; }
  std::size_t size() const noexcept { return index_.size(); }

 protected:
  bool lookup_exact(std::string_view token, std::span<double> out) const override;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::size_t dimension_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
  std::vector<double> storage_;
};

/// Every token maps to a pseudo-random unit vector that depends only on
/// (seed, token bytes). Lets the whole pipeline run without a vector file.
class HashedProvider final : public EmbeddingProvider {
 public:
  /// Throws Error{InvalidConfig} when dimension < 2.
  HashedProvider(std::uint64_t seed, std::size_t dimension);

  std::size_t dimension() const noexcept override { return dimension_; }
  std::uint64_t seed() const noexcept { return seed_; }

 protected:
  bool lookup_exact(std::string_view token, std::span<double> out) const override;

 private:
  std::uint64_t seed_;
  std::size_t dimension_;
};

/// Plain-text vectors: optional "count dim" header, then "token c1 ... cd" per
/// line. The first occurrence of a duplicate token wins.
/// Throws Error{IoError}, Error{MalformedLine} or Error{EmptyVocabulary}.
std::unique_ptr<VectorTable> load_vector_file(const std::filesystem::path& path);
std::unique_ptr<VectorTable> parse_vector_text(std::string_view text);

inline constexpr std::size_t kDefaultTestDimension = 32;

std::unique_ptr<HashedProvider> deterministic_test_provider(std::uint64_t seed,
                                                            std::size_t dimension = kDefaultTestDimension);

/// Mean of the in-vocabulary token vectors, optionally scaled to unit length.
/// Out-of-vocabulary tokens are skipped; nullopt when none is in vocabulary.
std::optional<EmbeddingVector> phrase_vector(std::span<const Token> tokens,
                                             const EmbeddingProvider& provider, bool normalize);

/// Unit-cost insert/delete/substitute edit distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace alignkit
