#include "alignkit/operators.hpp"

#include <algorithm>
#include <sstream>

namespace alignkit {

namespace {

bool cell_is_empty(const Cell& c) { return c.empty(); }

std::string col_str(std::size_t c) { return "column " + std::to_string(c + 1); }

Validity check_col(const Alignment& a, std::size_t col) {
  if (col >= a.cols())
    return Validity::invalid(ErrorCode::BadColumn,
                             col_str(col) + " does not exist (alignment has " +
                                 std::to_string(a.cols()) + " columns)");
  return Validity::valid();
}

Validity check_shift(const Alignment& a, const ShiftOp& op) {
  if (auto v = check_col(a, op.col); !v) return v;
  if (op.rows.empty()) return Validity::invalid(ErrorCode::InvalidShift, "shift names no rows");
  if (op.distance < 1) return Validity::invalid(ErrorCode::InvalidShift, "shift distance must be >= 1");
  for (std::size_t i = 0; i < op.rows.size(); ++i) {
    const auto r = op.rows[i];
    if (r >= a.rows())
      return Validity::invalid(ErrorCode::BadRow, "row " + std::to_string(r + 1) + " does not exist");
    if (i > 0 && op.rows[i - 1] >= r)
      return Validity::invalid(ErrorCode::InvalidShift, "shift rows must be distinct and ascending");
    if (a.cell(r, op.col).empty())
      return Validity::invalid(ErrorCode::InvalidShift, "cell in " + col_str(op.col) + ", row " +
                                                            std::to_string(r + 1) + " is empty");
  }
  return Validity::valid();
}

bool has_multi_token_cell(const Alignment& a, std::size_t col) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (a.cell(r, col).tokens.size() >= 2) return true;
  return false;
}

Validity check_variant(const Alignment& a, const EditOp& op) {
  return std::visit(
      [&](const auto& o) -> Validity {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NoOp>) {
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          return check_shift(a, o);
        } else if constexpr (std::is_same_v<T, ColumnInsertOp>) {
          if (o.position > a.cols())
            return Validity::invalid(ErrorCode::BadColumn,
                                     "insert position " + std::to_string(o.position) + " is past the right edge");
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, ColumnDeleteOp>) {
          if (auto v = check_col(a, o.col); !v) return v;
          if (a.cols() == 1) return Validity::invalid(ErrorCode::LastColumn, "cannot delete the only column");
          if (!a.column_empty(o.col))
            return Validity::invalid(ErrorCode::NonEmptyColumn, col_str(o.col) + " contains text");
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, ColumnMergeOp>) {
          if (auto v = check_col(a, o.col); !v) return v;
          if (o.col + 1 >= a.cols())
            return Validity::invalid(ErrorCode::RightmostColumn, col_str(o.col) + " is the rightmost column");
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, CellMergeOp>) {
          if (auto v = check_col(a, o.col); !v) return v;
          if (o.row >= a.rows())
            return Validity::invalid(ErrorCode::BadRow, "row " + std::to_string(o.row + 1) + " does not exist");
          if (a.cell(o.row, o.col).empty())
            return Validity::invalid(ErrorCode::InvalidOp, "cannot merge an empty cell");
          const bool edge = o.direction == Direction::Left ? o.col == 0 : o.col + 1 == a.cols();
          if (edge) return Validity::invalid(ErrorCode::NoNeighbor, "no neighbouring cell in that direction");
          return Validity::valid();
        } else {
          // SingleTokenSplitOp, TrieSplitOp
          if (auto v = check_col(a, o.col); !v) return v;
          if (!has_multi_token_cell(a, o.col))
            return Validity::invalid(ErrorCode::NoMultiTokenText,
                                     col_str(o.col) + " has no texts with more than one token");
          return Validity::valid();
        }
      },
      op);
}

// Replaces column `col` by two columns built from each cell's token list
// split at `cut(row, tokens)` tokens from the left.
template <class Cut>
Grid<Cell> split_column(const Alignment& a, std::size_t col, Cut cut) {
  Grid<Cell> g(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < col; ++c) g.at(r, c) = a.cell(r, c);
    for (std::size_t c = col + 1; c < a.cols(); ++c) g.at(r, c + 1) = a.cell(r, c);
    const auto& toks = a.cell(r, col).tokens;
    if (toks.empty()) continue;
    const std::size_t k = cut(r, toks);
    g.at(r, col) = Cell({toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(k)});
    g.at(r, col + 1) = Cell({toks.begin() + static_cast<std::ptrdiff_t>(k), toks.end()});
  }
  return g;
}

ColumnMap identity_map(std::size_t cols, std::size_t offset = 0) {
  ColumnMap m(cols);
  for (std::size_t c = 0; c < cols; ++c) m[c] = {c + offset};
  return m;
}

void insert_child(PhraseTrie::Node& node, const std::vector<Token>& key, std::size_t pos,
                  std::size_t row) {
  if (pos == key.size()) {
    node.rows.push_back(row);
    return;
  }
  for (auto& child : node.children) {
    if (child.label.front() == key[pos]) {
      insert_child(child, key, pos + 1, row);
      return;
    }
  }
  node.children.push_back(PhraseTrie::Node{{key[pos]}, {}, {}});
  insert_child(node.children.back(), key, pos + 1, row);
}

void compress(PhraseTrie::Node& node) {
  for (auto& child : node.children) {
    while (child.children.size() == 1 && child.rows.empty()) {
      PhraseTrie::Node only = std::move(child.children.front());
      child.label.insert(child.label.end(), only.label.begin(), only.label.end());
      child.rows = std::move(only.rows);
      child.children = std::move(only.children);
    }
    compress(child);
  }
}

void unreverse_labels(PhraseTrie::Node& node) {
  for (auto& child : node.children) {
    std::reverse(child.label.begin(), child.label.end());
    unreverse_labels(child);
  }
}

bool subtree_has_row(const PhraseTrie::Node& node, std::size_t row) {
  if (std::find(node.rows.begin(), node.rows.end(), row) != node.rows.end()) return true;
  for (const auto& c : node.children)
    if (subtree_has_row(c, row)) return true;
  return false;
}

const char* dir_str(Direction d) { return d == Direction::Left ? "left" : "right"; }
const char* side_str(Side s) { return s == Side::Left ? "left" : "right"; }

}  // namespace

std::string describe(const EditOp& op) {
  std::ostringstream out;
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NoOp>) {
          out << "no-op";
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          out << "shift col " << o.col + 1 << " rows {";
          for (std::size_t i = 0; i < o.rows.size(); ++i) out << (i ? "," : "") << o.rows[i] + 1;
          out << "} " << dir_str(o.direction) << ' ' << o.distance;
        } else if constexpr (std::is_same_v<T, ColumnInsertOp>) {
          out << "insert column at " << o.position;
        } else if constexpr (std::is_same_v<T, ColumnDeleteOp>) {
          out << "delete col " << o.col + 1;
        } else if constexpr (std::is_same_v<T, ColumnMergeOp>) {
          out << "merge col " << o.col + 1;
        } else if constexpr (std::is_same_v<T, CellMergeOp>) {
          out << "merge cell row " << o.row + 1 << " col " << o.col + 1 << ' ' << dir_str(o.direction);
        } else if constexpr (std::is_same_v<T, SingleTokenSplitOp>) {
          out << "single-token split col " << o.col + 1 << ' ' << side_str(o.side);
        } else {
          out << "trie split col " << o.col + 1 << ' ' << side_str(o.side);
        }
      },
      op);
  return out.str();
}

Validity is_valid(const Alignment& a, const EditOp& op, const ConstraintSet& locks) {
  if (auto v = check_variant(a, op); !v) return v;
  if (locks.empty()) return Validity::valid();
  auto conflict = [](const std::string& what) {
    return Validity::invalid(ErrorCode::LockConflict, what + " conflicts with a locked column");
  };
  const std::size_t last = a.cols();  // upper bound for "this column or any to its right"
  return std::visit(
      [&](const auto& o) -> Validity {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NoOp>) {
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          auto shifted = shift_grid(a.grid(), o.col, o.rows, o.direction, o.distance, cell_is_empty);
          if (!shift_respects_locks(shifted, locks)) return conflict(describe(op));
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, ColumnInsertOp>) {
          if (locks.any_locked_in(o.position, last)) return conflict(describe(op));
          return Validity::valid();
        } else if constexpr (std::is_same_v<T, CellMergeOp>) {
          const std::size_t other = o.direction == Direction::Left ? o.col - 1 : o.col + 1;
          if (locks.is_locked(o.col) || locks.is_locked(other)) return conflict(describe(op));
          return Validity::valid();
        } else {
          // Deletes, merges and splits renumber or rewrite `col` and everything right of it.
          if (locks.any_locked_in(o.col, last)) return conflict(describe(op));
          return Validity::valid();
        }
      },
      op);
}

Applied apply_tracked(const Alignment& a, const EditOp& op) {
  if (auto v = check_variant(a, op); !v) throw Error(v.reason, v.message);
  const std::size_t C = a.cols();
  return std::visit(
      [&](const auto& o) -> Applied {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NoOp>) {
          return {a, identity_map(C)};
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          auto shifted = shift_grid(a.grid(), o.col, o.rows, o.direction, o.distance, cell_is_empty);
          return {a.with_grid(std::move(shifted.grid)), identity_map(C, shifted.prepended)};
        } else if constexpr (std::is_same_v<T, ColumnInsertOp>) {
          Grid<Cell> g(a.rows(), C + 1);
          for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < C; ++c) g.at(r, c < o.position ? c : c + 1) = a.cell(r, c);
          ColumnMap m(C);
          for (std::size_t c = 0; c < C; ++c) m[c] = {c < o.position ? c : c + 1};
          return {a.with_grid(std::move(g)), std::move(m)};
        } else if constexpr (std::is_same_v<T, ColumnDeleteOp>) {
          Grid<Cell> g(a.rows(), C - 1);
          for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < C; ++c)
              if (c != o.col) g.at(r, c < o.col ? c : c - 1) = a.cell(r, c);
          ColumnMap m(C);
          for (std::size_t c = 0; c < C; ++c)
            if (c != o.col) m[c] = {c < o.col ? c : c - 1};
          return {a.with_grid(std::move(g)), std::move(m)};
        } else if constexpr (std::is_same_v<T, ColumnMergeOp>) {
          Grid<Cell> g(a.rows(), C - 1);
          for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < C; ++c) {
              if (c == o.col + 1) continue;
              g.at(r, c <= o.col ? c : c - 1) = a.cell(r, c);
            }
            auto& merged = g.at(r, o.col).tokens;
            const auto& right = a.cell(r, o.col + 1).tokens;
            merged.insert(merged.end(), right.begin(), right.end());
          }
          ColumnMap m(C);
          for (std::size_t c = 0; c < C; ++c) m[c] = {c <= o.col ? c : c - 1};
          return {a.with_grid(std::move(g)), std::move(m)};
        } else if constexpr (std::is_same_v<T, CellMergeOp>) {
          Grid<Cell> g = a.grid();
          const std::size_t left = o.direction == Direction::Left ? o.col - 1 : o.col;
          const std::size_t right = left + 1;
          const std::size_t target = o.direction == Direction::Left ? left : right;
          std::vector<Token> joined = g.at(o.row, left).tokens;
          joined.insert(joined.end(), g.at(o.row, right).tokens.begin(), g.at(o.row, right).tokens.end());
          g.at(o.row, o.col) = Cell{};
          g.at(o.row, target) = Cell(std::move(joined));
          return {a.with_grid(std::move(g)), identity_map(C)};
        } else {
          Grid<Cell> g;
          if constexpr (std::is_same_v<T, SingleTokenSplitOp>) {
            g = split_column(a, o.col, [&](std::size_t, const std::vector<Token>& toks) {
              if (toks.size() == 1) return o.side == Side::Left ? std::size_t{1} : std::size_t{0};
              return o.side == Side::Left ? std::size_t{1} : toks.size() - 1;
            });
          } else {
            auto trie = build_phrase_trie(a, o.col, o.side);
            g = split_column(a, o.col, [&](std::size_t row, const std::vector<Token>& toks) {
              const auto near = trie.first_level_length(row);
              return o.side == Side::Left ? near : toks.size() - near;
            });
          }
          ColumnMap m(C);
          for (std::size_t c = 0; c < C; ++c) {
            if (c < o.col) m[c] = {c};
            else if (c == o.col) m[c] = {c, c + 1};
            else m[c] = {c + 1};
          }
          return {a.with_grid(std::move(g)), std::move(m)};
        }
      },
      op);
}

Alignment apply(const Alignment& a, const EditOp& op) { return apply_tracked(a, op).alignment; }

Alignment shift(const Alignment& a, std::size_t col, std::vector<std::size_t> rows,
                Direction direction, std::size_t distance) {
  return apply(a, ShiftOp{col, std::move(rows), direction, distance});
}
Alignment column_insert(const Alignment& a, std::size_t position) {
  return apply(a, ColumnInsertOp{position});
}
Alignment column_delete(const Alignment& a, std::size_t col) { return apply(a, ColumnDeleteOp{col}); }
Alignment column_merge(const Alignment& a, std::size_t col) { return apply(a, ColumnMergeOp{col}); }
Alignment cell_merge(const Alignment& a, std::size_t row, std::size_t col, Direction direction) {
  return apply(a, CellMergeOp{row, col, direction});
}
Alignment single_token_split(const Alignment& a, std::size_t col, Side side) {
  return apply(a, SingleTokenSplitOp{col, side});
}
Alignment trie_split(const Alignment& a, std::size_t col, Side side) {
  return apply(a, TrieSplitOp{col, side});
}

PhraseTrie PhraseTrie::build(const std::vector<std::pair<std::size_t, std::vector<Token>>>& cells,
                             Side side) {
  PhraseTrie trie;
  trie.side_ = side;
  bool any = false;
  for (const auto& [row, tokens] : cells) {
    if (tokens.empty()) continue;
    any = true;
    std::vector<Token> key = tokens;
    if (side == Side::Right) std::reverse(key.begin(), key.end());
    insert_child(trie.root_, key, 0, row);
  }
  if (!any) throw Error(ErrorCode::EmptyColumn, "column has no text to build a trie from");
  compress(trie.root_);
  if (side == Side::Right) unreverse_labels(trie.root_);
  return trie;
}

std::vector<std::vector<Token>> PhraseTrie::first_level() const {
  std::vector<std::vector<Token>> out;
  for (const auto& c : root_.children) out.push_back(c.label);
  return out;
}

std::size_t PhraseTrie::first_level_length(std::size_t row) const {
  for (const auto& c : root_.children)
    if (subtree_has_row(c, row)) return c.label.size();
  return 0;
}

PhraseTrie build_phrase_trie(const Alignment& a, std::size_t col, Side side) {
  if (col >= a.cols()) throw Error(ErrorCode::BadColumn, col_str(col) + " does not exist");
  std::vector<std::pair<std::size_t, std::vector<Token>>> cells;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!a.cell(r, col).empty()) cells.emplace_back(r, a.cell(r, col).tokens);
  return PhraseTrie::build(cells, side);
}

}  // namespace alignkit
