#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>

#include <gtest/gtest.h>

#include "alignkit/error.hpp"
#include "alignkit/initial_align.hpp"
#include "alignkit/session.hpp"
#include "support.hpp"

using namespace alignkit;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::NotFound;
}

// Blocks every lookup while closed, so a search can be held mid-flight.
class GatedProvider final : public EmbeddingProvider {
 public:
  explicit GatedProvider(std::shared_ptr<const EmbeddingProvider> inner) : inner_(std::move(inner)) {}
  std::size_t dimension() const noexcept override { return inner_->dimension(); }
  void close() {
    std::lock_guard l(mu_);
    closed_ = true;
  }
  void open() {
    {
      std::lock_guard l(mu_);
      closed_ = false;
    }
    cv_.notify_all();
  }

 protected:
  bool lookup_exact(std::string_view token, std::span<double> out) const override {
    std::unique_lock l(mu_);
    cv_.wait(l, [this] { return !closed_; });
    l.unlock();
    return inner_->lookup(token, out);
  }

 private:
  std::shared_ptr<const EmbeddingProvider> inner_;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  bool closed_ = false;
};

std::unique_ptr<Session> diabetics_session(SearchConfig cfg = {}) {
  return Session::create("s", test::diabetics_texts(), test::diabetics_vectors(), {}, cfg);
}

}  // namespace

TEST(Session, CreateRunsAlignAndSearch) {
  auto s = diabetics_session();
  auto v = s->view();
  EXPECT_EQ(v.status, SessionStatus::Idle);
  EXPECT_TRUE(v.changed_cells.empty());
  EXPECT_FALSE(v.can_undo);
  EXPECT_FALSE(v.can_redo);
  EXPECT_TRUE(test::rows_preserved(v.alignment, test::diabetics_texts()));
  ASSERT_TRUE(v.last_stop_reason.has_value());
  EXPECT_EQ(session_status_name(v.status), "idle");
}

TEST(Session, CreateMatchesDirectPipeline) {
  SearchConfig cfg;
  cfg.seed = 17;
  auto s = diabetics_session(cfg);
  auto p = test::diabetics_vectors();
  auto direct = hill_climb(progressive_align(test::diabetics_texts(), *p), {}, cfg, *p).final_alignment;
  EXPECT_EQ(s->view().alignment, direct);
}

TEST(Session, EmptyInput) {
  EXPECT_EQ(error_of([] { Session::create("s", {"", "   "}, test::diabetics_vectors()); }), ErrorCode::EmptyInput);
  EXPECT_EQ(error_of([] { Session::create("s", {}, test::diabetics_vectors()); }), ErrorCode::EmptyInput);
}

TEST(Session, OpUndoRedo) {
  auto s = diabetics_session();
  const auto before = s->view().alignment;
  s->apply_user_op(ColumnInsertOp{0});
  const auto after = s->view().alignment;
  EXPECT_EQ(after.cols(), before.cols() + 1);
  EXPECT_TRUE(s->view().can_undo);
  s->undo();
  EXPECT_EQ(s->view().alignment, before);
  EXPECT_TRUE(s->view().can_redo);
  s->redo();
  EXPECT_EQ(s->view().alignment, after);
  EXPECT_EQ(error_of([&] { s->redo(); }), ErrorCode::NothingToRedo);
  s->undo();
  EXPECT_EQ(error_of([&] { s->undo(); }), ErrorCode::NothingToUndo);
}

TEST(Session, FailedOpLeavesStateAlone) {
  auto s = diabetics_session();
  const auto v = s->view();
  EXPECT_EQ(error_of([&] { s->apply_user_op(ColumnDeleteOp{0}); }), ErrorCode::NonEmptyColumn);
  EXPECT_EQ(error_of([&] { s->apply_user_op(ColumnMergeOp{99}); }), ErrorCode::BadColumn);
  EXPECT_EQ(s->view().alignment, v.alignment);
  EXPECT_FALSE(s->view().can_undo);
}

TEST(Session, HistoryBound) {
  auto s = Session::create("s", {"a b"}, deterministic_test_provider(1), {}, {}, SessionOptions{100});
  const auto start = s->view().alignment.cols();
  for (int i = 0; i < 101; ++i) s->apply_user_op(ColumnInsertOp{0});
  int undos = 0;
  while (s->view().can_undo) {
    s->undo();
    ++undos;
  }
  EXPECT_EQ(undos, 100);
  EXPECT_EQ(s->view().alignment.cols(), start + 1);
}

TEST(Session, LocksFollowStructuralEdits) {
  auto s = Session::load("s", {test::alignment_13(), {}, {}, {}}, test::diabetics_vectors());
  s->set_lock(2, true);
  s->apply_user_op(ColumnInsertOp{0});
  EXPECT_EQ(s->view().locks, ConstraintSet({3}));
  s->apply_user_op(ColumnMergeOp{2});
  EXPECT_EQ(s->view().locks, ConstraintSet({2}));
  s->apply_user_op(SingleTokenSplitOp{2, Side::Left});
  EXPECT_EQ(s->view().locks, ConstraintSet({2, 3}));
  s->undo();
  EXPECT_EQ(s->view().locks, ConstraintSet({2}));
  EXPECT_EQ(error_of([&] { s->set_lock(40, true); }), ErrorCode::BadColumn);
  EXPECT_EQ(error_of([&] { s->set_locks(ConstraintSet({40})); }), ErrorCode::BadColumn);
  s->set_lock(2, false);
  EXPECT_TRUE(s->view().locks.empty());
}

TEST(Session, RealignIsOneUndoStepAndReportsChangedCells) {
  auto s = Session::load("s", {test::alignment_13(), {}, {}, {}}, test::diabetics_vectors());
  SearchConfig cfg;
  cfg.greedy_prob = 1.0;
  s->set_config(std::nullopt, cfg);
  s->realign(50);
  auto v = s->view();
  EXPECT_NE(v.alignment, test::alignment_13());
  EXPECT_EQ(v.changed_cells, diff_cells(test::alignment_13(), v.alignment));
  EXPECT_FALSE(v.changed_cells.empty());
  EXPECT_GE(s->score().total, total_score(test::alignment_13(), *test::diabetics_vectors()).total);
  s->undo();
  EXPECT_EQ(s->view().alignment, test::alignment_13());
  EXPECT_TRUE(s->view().changed_cells.empty());
}

TEST(Session, RealignRespectsLocks) {
  auto s = Session::load("s", {test::alignment_13(), ConstraintSet({0, 1}), {}, {}}, test::diabetics_vectors());
  s->realign(50);
  auto v = s->view();
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(v.alignment.cell(r, 0), test::alignment_13().cell(r, 0));
    EXPECT_EQ(v.alignment.cell(r, 1), test::alignment_13().cell(r, 1));
  }
}

TEST(Session, DiffCells) {
  auto d = diff_cells(test::alignment_2(), test::alignment_3());
  EXPECT_EQ(d, (std::set<CellCoord>{{2, 1}, {2, 2}, {2, 3}, {2, 4}}));
  EXPECT_TRUE(diff_cells(test::alignment_2(), test::alignment_2()).empty());
  EXPECT_EQ(diff_cells(test::alignment_3(), test::alignment_2()), (std::set<CellCoord>{{2, 1}, {2, 2}, {2, 3}}));
}

TEST(Session, BusyWhileSearchingAndCancel) {
  auto gated = std::make_shared<GatedProvider>(test::diabetics_vectors());
  auto s = Session::load("s", {test::alignment_13(), {}, {}, {}}, gated);
  gated->close();
  s->start_realign(1000);
  auto v = s->view();
  EXPECT_EQ(v.status, SessionStatus::Searching);
  EXPECT_EQ(v.progress_limit, 1000u);
  EXPECT_EQ(error_of([&] { s->apply_user_op(NoOp{}); }), ErrorCode::Busy);
  EXPECT_EQ(error_of([&] { s->start_realign(5); }), ErrorCode::Busy);
  EXPECT_EQ(error_of([&] { s->undo(); }), ErrorCode::Busy);
  EXPECT_EQ(error_of([&] { s->set_lock(0, true); }), ErrorCode::Busy);
  s->cancel();
  gated->open();
  s->wait();
  v = s->view();
  EXPECT_EQ(v.status, SessionStatus::Idle);
  EXPECT_EQ(v.last_stop_reason, StopReason::Cancelled);
  EXPECT_EQ(v.alignment, test::alignment_13());
  EXPECT_TRUE(v.can_undo);
}

TEST(Session, SaveLoadRoundTrip) {
  auto s = diabetics_session();
  s->set_lock(0, true);
  Weights w{0.1, 0.1, 2.0, 4.0};
  s->set_config(w, std::nullopt);
  auto doc = s->save();
  auto t = Session::load("t", doc, test::diabetics_vectors());
  EXPECT_EQ(t->view().alignment, s->view().alignment);
  EXPECT_EQ(t->view().locks, s->view().locks);
  EXPECT_EQ(t->view().weights.w_embed, 2.0);
  EXPECT_EQ(t->score().total, s->score().total);
  EXPECT_EQ(error_of([&] { s->set_config(Weights{HUGE_VAL, 0, 0, 0}, std::nullopt); }), ErrorCode::InvalidConfig);
}

TEST(Session, RepeatedRealignsAreReproducible) {
  auto run = [] {
    auto s = Session::load("s", {test::alignment_3(), {}, {}, {}}, test::diabetics_vectors());
    std::vector<Alignment> seen;
    for (int i = 0; i < 3; ++i) {
      s->realign(20);
      seen.push_back(s->view().alignment);
    }
    return seen;
  };
  EXPECT_EQ(run(), run());
}
