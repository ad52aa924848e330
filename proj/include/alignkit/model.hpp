#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alignkit/grid.hpp"

namespace alignkit {

/// A non-empty whitespace-free string. Produced only by tokenize().
using Token = std::string;

/// Splits on runs of whitespace. Empty input yields an empty list.
std::vector<Token> tokenize(std::string_view text);

struct Cell {
  std::vector<Token> tokens;

  Cell() = default;
  explicit Cell(std::vector<Token> t) : tokens(std::move(t)) {}

  bool empty() const noexcept { return tokens.empty(); }
  /// Tokens joined by single spaces; "" for an empty cell.
  std::string text() const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// R x C table of cells holding R source texts. Immutable once built: every
/// constructor checks rectangularity and that each row's cells, read left to
/// right, reproduce tokenize(source_text) exactly.
class Alignment {
 public:
  /// Throws Error{EmptyText} for a source that tokenizes to nothing and
  /// Error{CorruptGrid} when the grid does not reproduce the sources.
  Alignment(std::vector<std::string> source_texts, Grid<Cell> grid);

  /// Builds from cell strings (each tokenized); the sources are the rows read
  /// left to right. Handy for fixtures: {{"23", "diabetics"}, {"", "x"}}.
  static Alignment from_cells(const std::vector<std::vector<std::string>>& cells);

  std::size_t rows() const noexcept { return grid_.rows(); }
  std::size_t cols() const noexcept { return grid_.cols(); }

  const Cell& cell(std::size_t row, std::size_t col) const { return grid_.at(row, col); }
  const Grid<Cell>& grid() const noexcept { return grid_; }
  const std::vector<std::string>& source_texts() const noexcept { return *sources_; }
  /// tokenize(source_texts()[row]), cached.
  const std::vector<Token>& source_tokens(std::size_t row) const { return (*source_tokens_)[row]; }

  bool column_empty(std::size_t col) const;
  std::size_t filled_in_column(std::size_t col) const;
  std::size_t filled_in_row(std::size_t row) const;

  /// Same sources, different grid; validated like the primary constructor.
  Alignment with_grid(Grid<Cell> grid) const;

  friend bool operator==(const Alignment& a, const Alignment& b) {
    return a.grid_ == b.grid_ && *a.sources_ == *b.sources_;
  }

 private:
  Alignment(std::shared_ptr<const std::vector<std::string>> sources,
            std::shared_ptr<const std::vector<std::vector<Token>>> tokens, Grid<Cell> grid);
  void validate() const;

  std::shared_ptr<const std::vector<std::string>> sources_;
  std::shared_ptr<const std::vector<std::vector<Token>>> source_tokens_;
  Grid<Cell> grid_;
};

/// One row, one token per cell. Throws Error{EmptyText} when text has no tokens.
Alignment degenerate_alignment(std::string_view text);

/// Column indices (0-based) the search must leave untouched.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::set<std::size_t> locked) : locked_(std::move(locked)) {}

  void lock(std::size_t col) { locked_.insert(col); }
  void unlock(std::size_t col) { locked_.erase(col); }
  bool is_locked(std::size_t col) const { return locked_.count(col) != 0; }
  bool empty() const noexcept { return locked_.empty(); }
  const std::set<std::size_t>& columns() const noexcept { return locked_; }

  /// True when some locked column lies in [first, last].
  bool any_locked_in(std::size_t first, std::size_t last) const;
  /// True when every locked index is < cols.
  bool fits(std::size_t cols) const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::set<std::size_t> locked_;
};

enum class TableFormat { Tsv, Json, Html };

/// Throws Error{BadRequest} for an unknown name.
TableFormat parse_table_format(std::string_view name);

/// Deterministic serialization. TSV: one line per row, tab between cells, no
/// trailing newline. JSON: {"grid": [[[tokens...], ...], ...]}. HTML: a table.
std::string render_table(const Alignment& a, TableFormat format);

/// Inverse of the TSV rendering.
Grid<Cell> parse_tsv(std::string_view tsv);

}  // namespace alignkit
