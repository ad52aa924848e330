#include "alignkit/search.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "alignkit/error.hpp"
#include "alignkit/grid_ops.hpp"

namespace alignkit {

namespace {

using CellId = std::int32_t;
using IdGrid = Grid<CellId>;
constexpr CellId kEmptyCell = -1;

struct IdGridEmpty {
  bool operator()(CellId id) const { return id == kEmptyCell; }
};

// Every non-empty cell of the starting alignment gets an id. Search moves only
// shift cells, so the set of cells never changes during a run.
class CellIndex {
 public:
  explicit CellIndex(const Alignment& a) : base_(a) {
    grid_ = IdGrid(a.rows(), a.cols(), kEmptyCell);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a.cell(r, c).empty()) continue;
        grid_.at(r, c) = static_cast<CellId>(cells_.size());
        cells_.push_back(&a.cell(r, c));
      }
    }
  }

  const IdGrid& initial() const { return grid_; }
  std::size_t size() const { return cells_.size(); }
  const Cell& cell(CellId id) const { return *cells_[static_cast<std::size_t>(id)]; }

  Alignment to_alignment(const IdGrid& g) const {
    Grid<Cell> cells(g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c)
        if (g.at(r, c) != kEmptyCell) cells.at(r, c) = cell(g.at(r, c));
    return base_.with_grid(std::move(cells));
  }

 private:
  const Alignment& base_;
  IdGrid grid_;
  std::vector<const Cell*> cells_;
};

// Scores id grids with per-cell phrase vectors computed once. Mirrors
// total_score() operation for operation so both give identical doubles.
class IdScorer {
 public:
  IdScorer(const Alignment& a, const CellIndex& index, const EmbeddingProvider& provider,
           const Weights& weights)
      : weights_(weights), dim_(provider.dimension()), rows_(a.rows()) {
    vec_offset_.assign(index.size(), kNoVector);
    for (std::size_t id = 0; id < index.size(); ++id) {
      auto v = phrase_vector(index.cell(static_cast<CellId>(id)).tokens, provider, false);
      if (!v) continue;
      vec_offset_[id] = storage_.size();
      storage_.insert(storage_.end(), v->begin(), v->end());
    }
    for (std::size_t r = 0; r < a.rows(); ++r) min_columns_ = std::max(min_columns_, a.filled_in_row(r));
    scratch_.resize(dim_);
  }

  ScoreBreakdown score(const IdGrid& g) {
    ScoreBreakdown b;
    std::size_t filled_cols = 0;
    double s_embed = 0.0;
    for (std::size_t c = 0; c < g.cols(); ++c) {
      std::size_t filled = 0;
      ptrs_.clear();
      for (std::size_t r = 0; r < g.rows(); ++r) {
        const CellId id = g.at(r, c);
        if (id == kEmptyCell) continue;
        ++filled;
        const auto off = vec_offset_[static_cast<std::size_t>(id)];
        if (off != kNoVector) ptrs_.push_back(storage_.data() + off);
      }
      filled_cols += filled > 0;
      const double rel = static_cast<double>(filled) / static_cast<double>(rows_);
      if (rel > 0.0) s_embed += rel * covariance_trace(ptrs_, dim_, scratch_);
    }
    b.s_col = static_cast<double>(g.cols()) / static_cast<double>(min_columns_);
    b.s_fcol = static_cast<double>(filled_cols) / static_cast<double>(min_columns_);
    b.s_embed = s_embed;
    b.total = combine(b.s_col, b.s_fcol, b.s_embed, weights_);
    return b;
  }

 private:
  static constexpr std::size_t kNoVector = std::numeric_limits<std::size_t>::max();
  Weights weights_;
  std::size_t dim_;
  std::size_t rows_;
  std::size_t min_columns_ = 0;
  std::vector<std::size_t> vec_offset_;
  std::vector<double> storage_;
  std::vector<double> scratch_;
  std::vector<const double*> ptrs_;
};

struct IdCandidate {
  EditOp op;
  IdGrid grid;
};

std::vector<IdCandidate> enumerate(const IdGrid& current, const ConstraintSet& locks,
                                   const SearchConfig& cfg) {
  std::vector<IdCandidate> out;
  std::set<std::pair<std::size_t, std::vector<CellId>>> seen;
  seen.emplace(current.cols(), current.data());
  std::vector<std::size_t> filled;
  for (std::size_t c = 0; c < current.cols(); ++c) {
    filled.clear();
    for (std::size_t r = 0; r < current.rows(); ++r)
      if (current.at(r, c) != kEmptyCell) filled.push_back(r);
    for (std::size_t first = 0; first < filled.size(); ++first) {
      for (std::size_t last = first + 1; last <= filled.size(); ++last) {
        std::vector<std::size_t> rows(filled.begin() + static_cast<std::ptrdiff_t>(first),
                                      filled.begin() + static_cast<std::ptrdiff_t>(last));
        for (Direction dir : {Direction::Left, Direction::Right}) {
          for (std::size_t dist = 1; dist <= cfg.max_shift_distance; ++dist) {
            auto shifted = shift_grid(current, c, rows, dir, dist, IdGridEmpty{}, kEmptyCell);
            if (!shift_respects_locks(shifted, locks)) continue;
            IdGrid result = trim_grid_edges(shifted.grid, locks, IdGridEmpty{});
            // Unchanged results are rejected here too: `seen` starts with the input.
            if (!seen.emplace(result.cols(), result.data()).second) continue;
            out.push_back({ShiftOp{c, rows, dir, dist}, std::move(result)});
          }
        }
      }
    }
  }
  out.push_back({NoOp{}, current});
  return out;
}

struct ScoredStep {
  std::size_t chosen;
  bool improved;
};

// Scores every candidate into `scores`, then picks one.
ScoredStep choose(const std::vector<IdCandidate>& cands, IdScorer& scorer, double current_total,
                  const SearchConfig& cfg, SearchRng& rng, std::vector<ScoreBreakdown>& scores) {
  scores.clear();
  scores.reserve(cands.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    scores.push_back(scorer.score(cands[i].grid));
    if (scores[i].total > scores[best].total) best = i;
  }
  const bool improved = scores[best].total > current_total;
  const bool greedy = rng.uniform() < cfg.greedy_prob;
  const std::size_t chosen = greedy ? best : rng.index(cands.size());
  return {chosen, improved};
}

void check_inputs(const Alignment& a, const ConstraintSet& locks, const SearchConfig& cfg) {
  cfg.validate();
  if (!locks.fits(a.cols()))
    throw Error(ErrorCode::BadColumn, "a locked column lies outside the alignment");
}

}  // namespace

void SearchConfig::validate() const {
  if (!(greedy_prob >= 0.0 && greedy_prob <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "greedy_prob must lie in [0, 1]");
  if (stall_window < 1) throw Error(ErrorCode::InvalidConfig, "stall_window must be >= 1");
  if (max_steps < 1) throw Error(ErrorCode::InvalidConfig, "max_steps must be >= 1");
  if (max_shift_distance < 1) throw Error(ErrorCode::InvalidConfig, "max_shift_distance must be >= 1");
}

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Stalled: return "stalled";
    case StopReason::StepLimit: return "step_limit";
    case StopReason::Cancelled: return "cancelled";
  }
  return "unknown";
}

double SearchRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t SearchRng::index(std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

Alignment trim_empty_edges(const Alignment& a, const ConstraintSet& locks) {
  return a.with_grid(trim_grid_edges(a.grid(), locks, [](const Cell& c) { return c.empty(); }));
}

std::vector<Candidate> candidate_ops(const Alignment& a, const ConstraintSet& locks,
                                     const SearchConfig& cfg) {
  check_inputs(a, locks, cfg);
  CellIndex index(a);
  std::vector<Candidate> out;
  for (auto& c : enumerate(index.initial(), locks, cfg))
    out.push_back({std::move(c.op), index.to_alignment(c.grid)});
  return out;
}

StepResult step(const Alignment& a, const ConstraintSet& locks, const SearchConfig& cfg,
                SearchRng& rng, const ScoreBreakdown& current_score,
                const EmbeddingProvider& provider, const Weights& weights) {
  check_inputs(a, locks, cfg);
  CellIndex index(a);
  IdScorer scorer(a, index, provider, weights);
  auto cands = enumerate(index.initial(), locks, cfg);
  std::vector<ScoreBreakdown> scores;
  auto pick = choose(cands, scorer, current_score.total, cfg, rng, scores);
  return {cands[pick.chosen].op, index.to_alignment(cands[pick.chosen].grid), scores[pick.chosen],
          pick.improved};
}

SearchReport hill_climb(const Alignment& a, const ConstraintSet& locks, const SearchConfig& cfg,
                        const EmbeddingProvider& provider, const Weights& weights,
                        SearchControl* control) {
  check_inputs(a, locks, cfg);
  weights.validate();
  CellIndex index(a);
  IdScorer scorer(a, index, provider, weights);
  SearchRng rng(cfg.seed);

  IdGrid current = index.initial();
  std::vector<EditOp> ops;
  std::vector<ScoreBreakdown> trajectory{scorer.score(current)};
  std::vector<ScoreBreakdown> scores;
  std::size_t stall = 0;
  StopReason reason = StopReason::StepLimit;

  while (ops.size() < cfg.max_steps) {
    if (control && control->cancel.load()) {
      reason = StopReason::Cancelled;
      break;
    }
    auto cands = enumerate(current, locks, cfg);
    auto pick = choose(cands, scorer, trajectory.back().total, cfg, rng, scores);
    ops.push_back(cands[pick.chosen].op);
    trajectory.push_back(scores[pick.chosen]);
    current = std::move(cands[pick.chosen].grid);
    if (control) control->steps_done.store(ops.size());
    stall = pick.improved ? 0 : stall + 1;
    if (stall >= cfg.stall_window) {
      reason = StopReason::Stalled;
      break;
    }
  }
  return SearchReport{ops.size(), std::move(ops), std::move(trajectory), reason,
                      index.to_alignment(current)};
}

}  // namespace alignkit
