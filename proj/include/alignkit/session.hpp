#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "alignkit/embeddings.hpp"
#include "alignkit/heuristic.hpp"
#include "alignkit/json_io.hpp"
#include "alignkit/model.hpp"
#include "alignkit/operators.hpp"
#include "alignkit/search.hpp"

namespace alignkit {

enum class SessionStatus { Idle, Aligning, Searching };
std::string_view session_status_name(SessionStatus s);

struct SessionOptions {
  std::size_t history_limit = 100;
};

/// 0-based (row, col).
using CellCoord = std::pair<std::size_t, std::size_t>;

/// A consistent copy of a session's state for readers.
struct SessionView {
  std::string id;
  Alignment alignment;
  ConstraintSet locks;
  Weights weights;
  SearchConfig search_cfg;
  SessionStatus status = SessionStatus::Idle;
  std::size_t progress_done = 0;
  std::size_t progress_limit = 0;
  std::set<CellCoord> changed_cells;
  bool can_undo = false;
  bool can_redo = false;
  std::optional<StopReason> last_stop_reason;
  std::string last_error;  // from a background search that failed
};

/// Cells that differ between two grids after right-padding both to the same
/// width, restricted to `after`'s coordinates. A moved cell shows up at both
/// its old and its new position.
std::set<CellCoord> diff_cells(const Alignment& before, const Alignment& after);

/// Mutable editing session. All mutations are serialized; while a search runs
/// every mutation fails with Error{Busy}.
class Session {
 public:
  /// Aligns the non-blank lines of `texts`, then runs the default search.
  /// Throws Error{EmptyInput} when there is no non-blank line.
  static std::unique_ptr<Session> create(std::string id, const std::vector<std::string>& texts,
                                         std::shared_ptr<const EmbeddingProvider> provider,
                                         Weights weights = {}, SearchConfig cfg = {},
                                         SessionOptions options = {});
  static std::unique_ptr<Session> load(std::string id, SaveDocument doc,
                                       std::shared_ptr<const EmbeddingProvider> provider,
                                       SessionOptions options = {});

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
  ~Session();

  SessionView view() const;
  ScoreBreakdown score() const;
  SaveDocument save() const;
  const EmbeddingProvider& provider() const { return *provider_; }

  /// User edits ignore locks; structural ops carry lock indices along with
  /// their columns. On error the session is unchanged.
  void apply_user_op(const EditOp& op);
  void set_lock(std::size_t col, bool locked);
  void set_locks(ConstraintSet locks);
  void set_config(const std::optional<Weights>& weights, const std::optional<SearchConfig>& cfg);
  void undo();
  void redo();

  /// Runs a search of at most `steps` steps and waits for it.
  void realign(std::size_t steps);
  /// Starts the search on a worker thread and returns immediately.
  void start_realign(std::size_t steps);
  /// Asks a running search to stop at its next step boundary.
  void cancel();
  /// Blocks until no search is running.
  void wait() const;

 private:
  struct Snapshot {
    Alignment alignment;
    ConstraintSet locks;
  };

  Session(std::string id, Alignment alignment, std::shared_ptr<const EmbeddingProvider> provider,
          Weights weights, SearchConfig cfg, SessionOptions options);

  void require_idle() const;
  void push_undo(Snapshot s);
  SearchConfig run_config(std::size_t steps);
  void commit_search(const SearchReport& report, const Snapshot& before);
  void join_worker();

  const std::string id_;
  const std::shared_ptr<const EmbeddingProvider> provider_;
  const SessionOptions options_;

  mutable std::mutex mu_;
  mutable std::condition_variable idle_cv_;
  Alignment alignment_;
  ConstraintSet locks_;
  Weights weights_;
  SearchConfig cfg_;
  SessionStatus status_ = SessionStatus::Idle;
  std::size_t progress_limit_ = 0;
  std::set<CellCoord> changed_cells_;
  std::deque<Snapshot> undo_;
  std::deque<Snapshot> redo_;
  std::size_t search_runs_ = 0;
  std::optional<StopReason> last_stop_reason_;
  std::string last_error_;
  std::shared_ptr<SearchControl> control_;
  std::thread worker_;
};

}  // namespace alignkit
