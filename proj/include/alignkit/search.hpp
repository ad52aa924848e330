#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "alignkit/embeddings.hpp"
#include "alignkit/heuristic.hpp"
#include "alignkit/model.hpp"
#include "alignkit/operators.hpp"

namespace alignkit {

inline constexpr std::size_t kStandardSearchSteps = 50;
inline constexpr std::size_t kDeepSearchSteps = 200;

struct SearchConfig {
  double greedy_prob = 0.5;
  std::size_t stall_window = 2;
  std::size_t max_steps = kStandardSearchSteps;
  std::size_t max_shift_distance = 3;
  std::uint64_t seed = 0;

  /// Throws Error{InvalidConfig} when a field is out of range.
  void validate() const;
  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

enum class StopReason { Stalled, StepLimit, Cancelled };
std::string_view stop_reason_name(StopReason r);

struct SearchReport {
  std::size_t steps_taken = 0;
  std::vector<EditOp> ops;                  // one per step
  std::vector<ScoreBreakdown> trajectory;   // initial score, then one per step
  StopReason stop_reason = StopReason::StepLimit;
  Alignment final_alignment;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

/// Shared between a running search and its observers.
struct SearchControl {
  std::atomic<bool> cancel{false};
  std::atomic<std::size_t> steps_done{0};
};

/// Portable draws from mt19937_64 (whose output sequence the standard fixes).
class SearchRng {
 public:
  explicit SearchRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) from the top 53 bits of one draw.
  double uniform();
  /// Uniform in [0, n) by rejection; n > 0.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

struct Candidate {
  EditOp op;
  Alignment result;
};

/// Search moves from `a`: for every column, every contiguous run of its filled
/// rows, both directions and distances 1..max_shift_distance, then NoOp.
/// Lock-violating shifts are dropped, results are edge-trimmed, shifts that
/// leave the alignment unchanged are discarded and duplicates of an earlier
/// result are removed. Returned in canonical order: column, row set
/// (lexicographic), left before right, distance; NoOp last.
std::vector<Candidate> candidate_ops(const Alignment& a, const ConstraintSet& locks,
                                     const SearchConfig& cfg);

struct StepResult {
  EditOp op;
  Alignment alignment;
  ScoreBreakdown score;
  bool improved = false;  // best candidate strictly beats current_score
};

/// One hill-climbing move: greedy with probability greedy_prob (first best
/// in canonical order), otherwise uniform over the candidates.
StepResult step(const Alignment& a, const ConstraintSet& locks, const SearchConfig& cfg,
                SearchRng& rng, const ScoreBreakdown& current_score,
                const EmbeddingProvider& provider, const Weights& weights = {});

/// Repeats step() until no candidate has improved for stall_window steps in a
/// row, max_steps steps were taken, or control->cancel is set.
SearchReport hill_climb(const Alignment& a, const ConstraintSet& locks, const SearchConfig& cfg,
                        const EmbeddingProvider& provider, const Weights& weights = {},
                        SearchControl* control = nullptr);

/// Edge trimming applied to every search candidate.
Alignment trim_empty_edges(const Alignment& a, const ConstraintSet& locks);

}  // namespace alignkit
