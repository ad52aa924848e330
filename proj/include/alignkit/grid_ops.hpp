#pragma once

// Shape-level grid algorithms, generic over the cell type so the same code
// moves token cells (operators) and interned cell ids (search).

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "alignkit/grid.hpp"
#include "alignkit/model.hpp"

namespace alignkit {

enum class Direction { Left, Right };

struct CellMove {
  std::size_t row;
  std::ptrdiff_t from;  // column before the shift
  std::ptrdiff_t to;    // column after, in pre-shift coordinates (may be < 0)
};

template <class T>
struct ShiftedGrid {
  Grid<T> grid;
  std::size_t prepended = 0;  // empty columns added on the left edge
  std::vector<CellMove> moves;  // every cell whose column changed
};

/// Moves the named cells of `col` by `distance` in `direction`. Non-empty
/// cells in the way are pushed ahead, keeping their order; the grid grows at
/// whichever edge the push overruns. Caller guarantees the named cells exist
/// and are non-empty. Vacated and new slots get `blank`.
template <class T, class IsEmpty>
ShiftedGrid<T> shift_grid(const Grid<T>& g, std::size_t col, std::span<const std::size_t> rows,
                          Direction direction, std::size_t distance, IsEmpty is_empty,
                          const T& blank = T{}) {
  using Pos = std::ptrdiff_t;
  const Pos cols = static_cast<Pos>(g.cols());
  const Pos dist = static_cast<Pos>(distance);

  struct RowPlan {
    std::size_t row;
    std::vector<Pos> from, to;
  };
  std::vector<RowPlan> plans;
  plans.reserve(rows.size());
  Pos lo = 0, hi = cols - 1;
  for (std::size_t r : rows) {
    RowPlan plan{r, {}, {}};
    std::size_t k = 0;
    for (Pos c = 0; c < cols; ++c) {
      if (is_empty(g.at(r, static_cast<std::size_t>(c)))) continue;
      if (c == static_cast<Pos>(col)) k = plan.from.size();
      plan.from.push_back(c);
    }
    plan.to = plan.from;
    if (direction == Direction::Right) {
      plan.to[k] = plan.from[k] + dist;
      for (std::size_t i = k + 1; i < plan.to.size(); ++i)
        plan.to[i] = std::max(plan.from[i], plan.to[i - 1] + 1);
    } else {
      plan.to[k] = plan.from[k] - dist;
      for (std::size_t i = k; i-- > 0;) plan.to[i] = std::min(plan.from[i], plan.to[i + 1] - 1);
    }
    lo = std::min(lo, plan.to.front());
    hi = std::max(hi, plan.to.back());
    plans.push_back(std::move(plan));
  }

  ShiftedGrid<T> out;
  out.prepended = static_cast<std::size_t>(-lo);
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  out.grid = Grid<T>(g.rows(), width, blank);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) out.grid.at(r, c + out.prepended) = g.at(r, c);
  for (const auto& plan : plans) {
    for (std::size_t c = 0; c < g.cols(); ++c) out.grid.at(plan.row, c + out.prepended) = blank;
    for (std::size_t i = 0; i < plan.from.size(); ++i) {
      out.grid.at(plan.row, static_cast<std::size_t>(plan.to[i] - lo)) =
          g.at(plan.row, static_cast<std::size_t>(plan.from[i]));
      if (plan.to[i] != plan.from[i]) out.moves.push_back({plan.row, plan.from[i], plan.to[i]});
    }
  }
  return out;
}

/// A shift honours the locks when it adds no column on the left (that would
/// renumber locked columns) and no cell moves into, out of, or across a
/// locked column.
template <class T>
bool shift_respects_locks(const ShiftedGrid<T>& shifted, const ConstraintSet& locks) {
  if (locks.empty()) return true;
  if (shifted.prepended > 0) return false;
  for (const auto& m : shifted.moves) {
    const auto first = std::max<std::ptrdiff_t>(0, std::min(m.from, m.to));
    const auto last = std::max(m.from, m.to);
    if (locks.any_locked_in(static_cast<std::size_t>(first), static_cast<std::size_t>(last)))
      return false;
  }
  return true;
}

/// Drops fully empty columns at both edges, keeping at least one column. The
/// left edge is trimmed only when nothing is locked (trimming there renumbers
/// every column); a locked column is never dropped.
template <class T, class IsEmpty>
Grid<T> trim_grid_edges(const Grid<T>& g, const ConstraintSet& locks, IsEmpty is_empty) {
  auto column_empty = [&](std::size_t c) {
    for (std::size_t r = 0; r < g.rows(); ++r)
      if (!is_empty(g.at(r, c))) return false;
    return true;
  };
  std::size_t first = 0, last = g.cols();
  if (locks.empty())
    while (last - first > 1 && column_empty(first)) ++first;
  while (last - first > 1 && !locks.is_locked(last - 1) && column_empty(last - 1)) --last;
  if (first == 0 && last == g.cols()) return g;
  Grid<T> out(g.rows(), last - first);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = first; c < last; ++c) out.at(r, c - first) = g.at(r, c);
  return out;
}

}  // namespace alignkit
