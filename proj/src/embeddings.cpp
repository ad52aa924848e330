#include "alignkit/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "alignkit/error.hpp"
#include "alignkit/kernels.hpp"

namespace alignkit {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// splitmix64 finalizer; a fixed function so vectors are identical on every platform.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool parse_double(std::string_view field, double& out) {
  std::string tmp(field);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size() && std::isfinite(out);
}

}  // namespace

bool EmbeddingProvider::lookup(std::string_view token, std::span<double> out) const {
  if (lookup_exact(token, out)) return true;
  auto lower = ascii_lower(token);
  return lower != token && lookup_exact(lower, out);
}

bool EmbeddingProvider::contains(std::string_view token) const {
  std::vector<double> scratch(dimension());
  return lookup(token, scratch);
}

bool VectorTable::insert(std::string token, std::span<const double> vec) {
  if (vec.size() != dimension_)
    throw Error(ErrorCode::MalformedLine, "vector for '" + token + "' has " +
                                              std::to_string(vec.size()) + " components, expected " +
                                              std::to_string(dimension_));
  if (index_.count(token)) return false;
  index_.emplace(std::move(token), storage_.size());
  storage_.insert(storage_.end(), vec.begin(), vec.end());
  return true;
}

bool VectorTable::lookup_exact(std::string_view token, std::span<double> out) const {
  auto it = index_.find(token);
  if (it == index_.end()) return false;
  std::copy_n(storage_.begin() + static_cast<std::ptrdiff_t>(it->second), dimension_, out.begin());
  return true;
}

HashedProvider::HashedProvider(std::uint64_t seed, std::size_t dimension)
    : seed_(seed), dimension_(dimension) {
  if (dimension < 2) throw Error(ErrorCode::InvalidConfig, "test embedding dimension must be >= 2");
}

bool HashedProvider::lookup_exact(std::string_view token, std::span<double> out) const {
  std::uint64_t state = mix(seed_) ^ fnv1a(token);
  double norm2 = 0.0;
  do {
    for (auto& x : out) {
      state = mix(state);
      // 53 random bits mapped to [-1, 1).
      x = static_cast<double>(state >> 11) * 0x1.0p-52 - 1.0;
    }
    norm2 = kernels::squared_norm(out);
  } while (norm2 < 1e-12);
  kernels::scale(1.0 / std::sqrt(norm2), out);
  return true;
}

std::unique_ptr<VectorTable> parse_vector_text(std::string_view text) {
  std::unique_ptr<VectorTable> table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = tokenize(line);
    if (fields.empty()) continue;
    if (first && fields.size() == 2) {
      // "count dim" header when both fields are integers.
      double count = 0, dim = 0;
      if (parse_double(fields[0], count) && parse_double(fields[1], dim) &&
          fields[0].find_first_not_of("0123456789") == std::string::npos &&
          fields[1].find_first_not_of("0123456789") == std::string::npos) {
        first = false;
        if (dim < 1)
          throw Error(ErrorCode::MalformedLine, "line 1: header dimension must be positive");
        table = std::make_unique<VectorTable>(static_cast<std::size_t>(dim));
        continue;
      }
    }
    first = false;
    if (fields.size() < 2)
      throw Error(ErrorCode::MalformedLine,
                  "line " + std::to_string(line_no) + ": expected a token and its components");
    if (!table) table = std::make_unique<VectorTable>(fields.size() - 1);
    if (fields.size() - 1 != table->dimension())
      throw Error(ErrorCode::MalformedLine,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(table->dimension()) + " components, found " +
                      std::to_string(fields.size() - 1));
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0;
      if (!parse_double(fields[i], v))
        throw Error(ErrorCode::MalformedLine,
                    "line " + std::to_string(line_no) + ": bad number '" + fields[i] + "'");
      values.push_back(v);
    }
    table->insert(fields[0], values);
  }
  if (!table || table->size() == 0) throw Error(ErrorCode::EmptyVocabulary, "no vectors found");
  return table;
}

std::unique_ptr<VectorTable> load_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open vector file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vector_text(buf.str());
}

std::unique_ptr<HashedProvider> deterministic_test_provider(std::uint64_t seed,
                                                            std::size_t dimension) {
  return std::make_unique<HashedProvider>(seed, dimension);
}

std::optional<EmbeddingVector> phrase_vector(std::span<const Token> tokens,
                                             const EmbeddingProvider& provider, bool normalize) {
  const std::size_t d = provider.dimension();
  EmbeddingVector sum(d, 0.0);
  std::vector<double> scratch(d);
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    if (!provider.lookup(t, scratch)) continue;
    kernels::axpy(1.0, scratch, sum);
    ++hits;
  }
  if (hits == 0) return std::nullopt;
  kernels::scale(1.0 / static_cast<double>(hits), sum);
  if (normalize) {
    const double n2 = kernels::squared_norm(sum);
    // A zero mean has no direction; treat it as not embeddable.
    if (n2 <= 0.0) return std::nullopt;
    kernels::scale(1.0 / std::sqrt(n2), sum);
  }
  return sum;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1] ? 1u : 0u)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace alignkit
