#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "alignkit/embeddings.hpp"
#include "alignkit/model.hpp"
#include "alignkit/operators.hpp"

namespace alignkit {

// Test-failure printing.
inline void PrintTo(const EditOp& op, std::ostream* os) { *os << describe(op); }

}  // namespace alignkit

namespace alignkit::test {

inline std::string fixture_path(const std::string& name) { return std::string(ALIGNKIT_FIXTURE_DIR) + "/" + name; }

inline std::string golden_path(const std::string& name) { return std::string(ALIGNKIT_GOLDEN_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

inline std::shared_ptr<const EmbeddingProvider> diabetics_vectors() {
  static std::shared_ptr<const EmbeddingProvider> p = load_vector_file(fixture_path("diabetics.vec"));
  return p;
}

inline const std::vector<std::string>& diabetics_texts() {
  static const std::vector<std::string> t{"23 diabetics with flu", "six diabetic patients", "patients with flu"};
  return t;
}

inline const std::vector<std::string>& usage_texts() {
  static const std::vector<std::string> t{
      "Autism Spectrum Disorders in Toddlers .",
      "toddlers with autism spectrum disorder",
      "Autism Spectrum Disorder in Young Children",
      "children with autism",
      "children with autism spectrum disorders",
      "children and adolescents with autism spectrum disorders",
      "patients diagnosed with autism and previously undetected anxiety",
  };
  return t;
}

/// "" marks an empty cell.
using Rows = std::vector<std::vector<std::string>>;

inline Alignment table(const Rows& rows) { return Alignment::from_cells(rows); }

// Worked examples, 0-based in code.
inline Alignment alignment_1() { return table({{"23", "diabetics", "with", "flu"}, {"six", "diabetic", "patients", ""}}); }
inline Alignment alignment_2() {
  return table({{"23", "diabetics", "with", "flu"}, {"six", "diabetic", "patients", ""}, {"", "patients", "with", "flu"}});
}
inline Alignment alignment_3() {
  return table({{"23", "diabetics", "with", "flu", ""},
                {"six", "diabetic", "patients", "", ""},
                {"", "", "patients", "with", "flu"}});
}
inline Alignment alignment_4() {
  return table({{"23", "diabetics", "", "with", "flu"},
                {"six", "diabetic", "patients", "", ""},
                {"", "", "patients", "with", "flu"}});
}
inline Alignment alignment_5() {
  return table({{"23", "diabetics", "", "with", "flu"},
                {"six", "diabetic", "patients", "", ""},
                {"", "patients", "", "with", "flu"}});
}
inline Alignment alignment_6() {
  return table({{"23", "diabetics", "with", "flu"}, {"six", "diabetic patients", "", ""}, {"", "patients", "with", "flu"}});
}
inline Alignment alignment_7() {
  return table({{"23", "diabetics", "", "with flu"}, {"six", "diabetic patients", "", ""}, {"", "patients", "with", "flu"}});
}
inline Alignment alignment_8() { return alignment_5(); }
inline Alignment alignment_9() {
  return table({{"23", "", "diabetics", "with", "flu"},
                {"six", "diabetic", "patients", "", ""},
                {"", "", "patients", "with", "flu"}});
}
inline Alignment column_10() {
  return table({{"2 young cancer patients"}, {"15 adult cancer patients"}, {"16 adult cancer patients"}, {"2 young participants"}});
}
inline Alignment alignment_11() {
  return table({{"2 young", "cancer patients"},
                {"15 adult", "cancer patients"},
                {"16 adult", "cancer patients"},
                {"", "2 young participants"}});
}
inline Alignment alignment_12() {
  return table({{"2 young", "cancer patients"},
                {"15 adult cancer patients", ""},
                {"16 adult cancer patients", ""},
                {"2 young", "participants"}});
}
inline Alignment alignment_13() {
  return table({{"23", "diabetics", "with", "", "flu"},
                {"six", "diabetic", "patients", "", ""},
                {"", "", "patients", "with", "flu"}});
}
inline Alignment alignment_15() {
  return table({{"20", "", "", "children", "", "with", "COVID"}, {"", "five", "male", "", "adults", "", ""}});
}
inline Alignment alignment_17() {
  return table({{"23", "diabetics", "with", "", "flu infection"},
                {"six", "diabetic patients", "", "", ""},
                {"", "patients", "with", "", "flu"}});
}

/// Random inputs for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return rng_; }

  std::string word() {
    static const std::vector<std::string> vocab{"23",   "six",  "diabetics", "diabetic", "patients", "with",
                                                "flu",  "a",    "b",         "children", "adults",   "young",
                                                "male", "Autism", "cancer",  "and",      "in",       "15"};
    return vocab[size(0, vocab.size() - 1)];
  }

  std::string text(std::size_t max_tokens) {
    std::string t;
    const std::size_t n = size(1, max_tokens);
    for (std::size_t i = 0; i < n; ++i) t += (i ? " " : "") + word();
    return t;
  }

  std::vector<std::string> texts(std::size_t max_rows, std::size_t max_tokens) {
    std::vector<std::string> out(size(1, max_rows));
    for (auto& t : out) t = text(max_tokens);
    return out;
  }

  /// Each row's tokens grouped into cells and scattered over a shared width.
  Alignment alignment(std::size_t max_rows, std::size_t max_tokens) {
    auto sources = texts(max_rows, max_tokens);
    std::vector<std::vector<std::vector<Token>>> rows;
    std::size_t width = 0;
    for (const auto& s : sources) {
      std::vector<std::vector<Token>> cells;
      for (auto& tok : tokenize(s)) {
        if (cells.empty() || coin(0.7)) cells.emplace_back();
        cells.back().push_back(tok);
      }
      std::vector<std::vector<Token>> spread;
      for (auto& c : cells) {
        while (coin(0.25)) spread.emplace_back();
        spread.push_back(std::move(c));
      }
      width = std::max(width, spread.size());
      rows.push_back(std::move(spread));
    }
    width += size(0, 2);
    Grid<Cell> g(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) g.at(r, c) = Cell(rows[r][c]);
    return Alignment(sources, std::move(g));
  }

  ConstraintSet locks(std::size_t cols, double p) {
    ConstraintSet s;
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(p)) s.lock(c);
    return s;
  }

  /// Any op, valid or not, with indices roughly in range.
  EditOp op(const Alignment& a) {
    const std::size_t C = a.cols(), R = a.rows();
    auto col = [&] { return size(0, C - 1); };
    auto dir = [&] { return coin() ? Direction::Left : Direction::Right; };
    auto side = [&] { return coin() ? Side::Left : Side::Right; };
    switch (size(0, 7)) {
      case 0: return NoOp{};
      case 1: {
        std::size_t c = col();
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < R; ++r)
          if (!a.cell(r, c).empty() && coin()) rows.push_back(r);
        if (rows.empty()) rows.push_back(size(0, R - 1));
        return ShiftOp{c, rows, dir(), size(1, 3)};
      }
      case 2: return ColumnInsertOp{size(0, C)};
      case 3: return ColumnDeleteOp{col()};
      case 4: return ColumnMergeOp{col()};
      case 5: return CellMergeOp{size(0, R - 1), col(), dir()};
      case 6: return SingleTokenSplitOp{col(), side()};
      default: return TrieSplitOp{col(), side()};
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Row r's cells, read left to right, equal tokenize(source r).
inline bool rows_preserved(const Alignment& a, const std::vector<std::string>& sources) {
  if (a.rows() != sources.size()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<Token> got;
    for (std::size_t c = 0; c < a.cols(); ++c)
      for (const auto& t : a.cell(r, c).tokens) got.push_back(t);
    if (got != tokenize(sources[r])) return false;
  }
  return true;
}

}  // namespace alignkit::test
