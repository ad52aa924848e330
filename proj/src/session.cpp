#include "alignkit/session.hpp"

#include "alignkit/error.hpp"
#include "alignkit/initial_align.hpp"

namespace alignkit {

std::string_view session_status_name(SessionStatus s) {
  switch (s) {
    case SessionStatus::Idle: return "idle";
    case SessionStatus::Aligning: return "aligning";
    case SessionStatus::Searching: return "searching";
  }
  return "unknown";
}

std::set<CellCoord> diff_cells(const Alignment& before, const Alignment& after) {
  std::set<CellCoord> out;
  static const Cell kEmpty;
  const std::size_t width = std::max(before.cols(), after.cols());
  for (std::size_t r = 0; r < after.rows(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const Cell& b = c < before.cols() ? before.cell(r, c) : kEmpty;
      const Cell& a = c < after.cols() ? after.cell(r, c) : kEmpty;
      if (!(a == b) && c < after.cols()) out.emplace(r, c);
    }
  }
  return out;
}

Session::Session(std::string id, Alignment alignment, std::shared_ptr<const EmbeddingProvider> provider,
                 Weights weights, SearchConfig cfg, SessionOptions options)
    : id_(std::move(id)),
      provider_(std::move(provider)),
      options_(options),
      alignment_(std::move(alignment)),
      weights_(weights),
      cfg_(cfg) {}

Session::~Session() {
  cancel();
  join_worker();
}

std::unique_ptr<Session> Session::create(std::string id, const std::vector<std::string>& texts,
                                         std::shared_ptr<const EmbeddingProvider> provider,
                                         Weights weights, SearchConfig cfg, SessionOptions options) {
  weights.validate();
  cfg.validate();
  std::vector<std::string> lines;
  for (const auto& t : texts)
    if (!tokenize(t).empty()) lines.push_back(t);
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "empty input");

  auto initial = progressive_align(lines, *provider);
  std::unique_ptr<Session> s(
      new Session(std::move(id), std::move(initial), std::move(provider), weights, cfg, options));
  {
    std::lock_guard lock(s->mu_);
    s->status_ = SessionStatus::Searching;
    s->progress_limit_ = cfg.max_steps;
  }
  auto run_cfg = s->run_config(cfg.max_steps);
  auto report = hill_climb(s->alignment_, s->locks_, run_cfg, *s->provider_, s->weights_);
  std::lock_guard lock(s->mu_);
  s->alignment_ = report.final_alignment;
  s->last_stop_reason_ = report.stop_reason;
  s->status_ = SessionStatus::Idle;
  return s;
}

std::unique_ptr<Session> Session::load(std::string id, SaveDocument doc,
                                       std::shared_ptr<const EmbeddingProvider> provider,
                                       SessionOptions options) {
  if (!doc.locks.fits(doc.alignment.cols()))
    throw Error(ErrorCode::BadColumn, "a locked column lies outside the grid");
  std::unique_ptr<Session> s(new Session(std::move(id), std::move(doc.alignment), std::move(provider),
                                         doc.weights, doc.search_cfg, options));
  s->locks_ = std::move(doc.locks);
  return s;
}

SessionView Session::view() const {
  std::lock_guard lock(mu_);
  SessionView v{id_, alignment_, locks_, weights_, cfg_, status_, 0, progress_limit_, changed_cells_, false, false, last_stop_reason_, last_error_};
  v.progress_done = control_ ? control_->steps_done.load() : 0;
  v.can_undo = !undo_.empty();
  v.can_redo = !redo_.empty();
  return v;
}

ScoreBreakdown Session::score() const {
  auto v = view();
  return total_score(v.alignment, *provider_, v.weights);
}

SaveDocument Session::save() const {
  std::lock_guard lock(mu_);
  return {alignment_, locks_, weights_, cfg_};
}

void Session::require_idle() const {
  if (status_ != SessionStatus::Idle) throw Error(ErrorCode::Busy, "a search is running");
}

void Session::push_undo(Snapshot s) {
  undo_.push_back(std::move(s));
  while (undo_.size() > options_.history_limit) undo_.pop_front();
  redo_.clear();
}

void Session::apply_user_op(const EditOp& op) {
  std::lock_guard lock(mu_);
  require_idle();
  auto applied = apply_tracked(alignment_, op);
  ConstraintSet remapped;
  for (auto c : locks_.columns())
    for (auto n : applied.columns[c]) remapped.lock(n);
  push_undo({alignment_, locks_});
  alignment_ = std::move(applied.alignment);
  locks_ = std::move(remapped);
  changed_cells_.clear();
}

void Session::set_lock(std::size_t col, bool locked) {
  std::lock_guard lock(mu_);
  require_idle();
  if (col >= alignment_.cols())
    throw Error(ErrorCode::BadColumn, "column " + std::to_string(col + 1) + " does not exist");
  if (locked) locks_.lock(col);
  else locks_.unlock(col);
}

void Session::set_locks(ConstraintSet locks) {
  std::lock_guard lock(mu_);
  require_idle();
  if (!locks.fits(alignment_.cols())) throw Error(ErrorCode::BadColumn, "a locked column lies outside the grid");
  locks_ = std::move(locks);
}

void Session::set_config(const std::optional<Weights>& weights, const std::optional<SearchConfig>& cfg) {
  if (weights) weights->validate();
  if (cfg) cfg->validate();
  std::lock_guard lock(mu_);
  require_idle();
  if (weights) weights_ = *weights;
  if (cfg) cfg_ = *cfg;
}

void Session::undo() {
  std::lock_guard lock(mu_);
  require_idle();
  if (undo_.empty()) throw Error(ErrorCode::NothingToUndo, "nothing to undo");
  redo_.push_back({alignment_, locks_});
  alignment_ = std::move(undo_.back().alignment);
  locks_ = std::move(undo_.back().locks);
  undo_.pop_back();
  changed_cells_.clear();
}

void Session::redo() {
  std::lock_guard lock(mu_);
  require_idle();
  if (redo_.empty()) throw Error(ErrorCode::NothingToRedo, "nothing to redo");
  undo_.push_back({alignment_, locks_});
  while (undo_.size() > options_.history_limit) undo_.pop_front();
  alignment_ = std::move(redo_.back().alignment);
  locks_ = std::move(redo_.back().locks);
  redo_.pop_back();
  changed_cells_.clear();
}

// Each run gets its own seed so repeated re-aligns explore differently while
// staying reproducible.
SearchConfig Session::run_config(std::size_t steps) {
  SearchConfig run = cfg_;
  run.max_steps = steps;
  run.seed = cfg_.seed + search_runs_++;
  run.validate();
  return run;
}

void Session::commit_search(const SearchReport& report, const Snapshot& before) {
  push_undo(before);
  changed_cells_ = diff_cells(before.alignment, report.final_alignment);
  alignment_ = report.final_alignment;
  last_stop_reason_ = report.stop_reason;
}

void Session::realign(std::size_t steps) {
  start_realign(steps);
  wait();
}

void Session::start_realign(std::size_t steps) {
  std::unique_lock lock(mu_);
  require_idle();
  auto cfg = run_config(steps);
  Snapshot before{alignment_, locks_};
  auto weights = weights_;
  status_ = SessionStatus::Searching;
  progress_limit_ = steps;
  control_ = std::make_shared<SearchControl>();
  last_error_.clear();
  if (worker_.joinable()) worker_.join();  // previous run already finished
  worker_ = std::thread([this, cfg, weights, before = std::move(before), control = control_] {
    std::optional<SearchReport> report;
    std::string error;
    try {
      report = hill_climb(before.alignment, before.locks, cfg, *provider_, weights, control.get());
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::lock_guard guard(mu_);
    if (report) commit_search(*report, before);
    last_error_ = error;
    status_ = SessionStatus::Idle;
    idle_cv_.notify_all();
  });
}

void Session::cancel() {
  std::lock_guard lock(mu_);
  if (control_) control_->cancel.store(true);
}

void Session::wait() const {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [this] { return status_ == SessionStatus::Idle; });
}

void Session::join_worker() {
  if (worker_.joinable()) worker_.join();
}

}  // namespace alignkit
