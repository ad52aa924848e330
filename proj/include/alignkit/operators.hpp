#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "alignkit/error.hpp"
#include "alignkit/grid_ops.hpp"
#include "alignkit/model.hpp"

namespace alignkit {

/// Which end of each cell a split works from.
enum class Side { Left, Right };

// All indices are 0-based. The JSON encoding (json_io.hpp) is 1-based.

struct ShiftOp {
  std::size_t col = 0;
  std::vector<std::size_t> rows;  // strictly increasing
  Direction direction = Direction::Right;
  std::size_t distance = 1;
  friend bool operator==(const ShiftOp&, const ShiftOp&) = default;
};

/// Inserts an empty column before current column `position` (0 = left edge,
/// cols() = right edge).
struct ColumnInsertOp {
  std::size_t position = 0;
  friend bool operator==(const ColumnInsertOp&, const ColumnInsertOp&) = default;
};

struct ColumnDeleteOp {
  std::size_t col = 0;
  friend bool operator==(const ColumnDeleteOp&, const ColumnDeleteOp&) = default;
};

/// Merges `col` with `col + 1`.
struct ColumnMergeOp {
  std::size_t col = 0;
  friend bool operator==(const ColumnMergeOp&, const ColumnMergeOp&) = default;
};

struct CellMergeOp {
  std::size_t row = 0;
  std::size_t col = 0;
  Direction direction = Direction::Right;
  friend bool operator==(const CellMergeOp&, const CellMergeOp&) = default;
};

struct SingleTokenSplitOp {
  std::size_t col = 0;
  Side side = Side::Left;
  friend bool operator==(const SingleTokenSplitOp&, const SingleTokenSplitOp&) = default;
};

struct TrieSplitOp {
  std::size_t col = 0;
  Side side = Side::Left;
  friend bool operator==(const TrieSplitOp&, const TrieSplitOp&) = default;
};

struct NoOp {
  friend bool operator==(const NoOp&, const NoOp&) = default;
};

using EditOp = std::variant<NoOp, ShiftOp, ColumnInsertOp, ColumnDeleteOp, ColumnMergeOp,
                            CellMergeOp, SingleTokenSplitOp, TrieSplitOp>;

/// Short human-readable description, e.g. "shift col 3 rows {2,3} right 1" (1-based).
std::string describe(const EditOp& op);

struct Validity {
  bool ok = true;
  ErrorCode reason = ErrorCode::InvalidOp;
  std::string message;

  explicit operator bool() const noexcept { return ok; }
  static Validity valid() { return {}; }
  static Validity invalid(ErrorCode code, std::string msg) { return {false, code, std::move(msg)}; }
};

/// Checks the op's own preconditions and, when `locks` is non-empty, that it
/// neither changes nor renumbers a locked column and moves no cell across one.
Validity is_valid(const Alignment& a, const EditOp& op, const ConstraintSet& locks = {});

/// Old column index -> the column(s) it became (empty when it was deleted).
using ColumnMap = std::vector<std::vector<std::size_t>>;

struct Applied {
  Alignment alignment;
  ColumnMap columns;
};

/// Applies `op`, throwing Error with the variant-specific code when it is
/// invalid. Locks are not consulted.
Alignment apply(const Alignment& a, const EditOp& op);
Applied apply_tracked(const Alignment& a, const EditOp& op);

Alignment shift(const Alignment& a, std::size_t col, std::vector<std::size_t> rows,
                Direction direction, std::size_t distance);
Alignment column_insert(const Alignment& a, std::size_t position);
Alignment column_delete(const Alignment& a, std::size_t col);
Alignment column_merge(const Alignment& a, std::size_t col);
Alignment cell_merge(const Alignment& a, std::size_t row, std::size_t col, Direction direction);
Alignment single_token_split(const Alignment& a, std::size_t col, Side side);
Alignment trie_split(const Alignment& a, std::size_t col, Side side);

/// Word trie over one column's cells, keyed from `side`, with non-branching
/// chains collapsed into multi-token edges. Labels are stored in reading order
/// even for side=Right.
class PhraseTrie {
 public:
  struct Node {
    std::vector<Token> label;
    std::vector<std::size_t> rows;  // rows whose text ends at this node
    std::vector<Node> children;     // in order of first appearance
  };

  /// Throws Error{EmptyColumn} when every cell is empty.
  static PhraseTrie build(const std::vector<std::pair<std::size_t, std::vector<Token>>>& cells,
                          Side side);

  Side side() const noexcept { return side_; }
  const Node& root() const noexcept { return root_; }

  /// Labels of the root's children.
  std::vector<std::vector<Token>> first_level() const;
  /// Token count of the first-level edge on `row`'s path; 0 if the row is absent.
  std::size_t first_level_length(std::size_t row) const;

 private:
  Node root_;
  Side side_ = Side::Left;
};

/// Collects the non-empty cells of `col` and builds their phrase trie.
PhraseTrie build_phrase_trie(const Alignment& a, std::size_t col, Side side);

}  // namespace alignkit
