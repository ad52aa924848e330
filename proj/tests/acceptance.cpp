// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "alignkit/heuristic.hpp"
#include "alignkit/initial_align.hpp"
#include "alignkit/operators.hpp"
#include "alignkit/search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace alignkit;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kCases = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool has_op(const std::vector<Candidate>& cands, const EditOp& op) {
  for (const auto& c : cands)
    if (c.op == op) return true;
  return false;
}

bool same_report(const SearchReport& a, const SearchReport& b) {
  if (a.steps_taken != b.steps_taken || a.ops != b.ops || a.stop_reason != b.stop_reason ||
      !(a.final_alignment == b.final_alignment) || a.trajectory.size() != b.trajectory.size())
    return false;
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    const auto &x = a.trajectory[i], &y = b.trajectory[i];
    if (x.s_col != y.s_col || x.s_fcol != y.s_fcol || x.s_embed != y.s_embed || x.total != y.total) return false;
  }
  return true;
}

Outcome c1_gap_penalty() {
  Outcome o;
  auto t0 = Clock::now();
  o.require(gap_penalty(0) == 0.0, "gap_penalty(0)");
  o.require(gap_penalty(1) == -1.0, "gap_penalty(1)");
  o.require(gap_penalty(3) == -1.2, "gap_penalty(3)");
  o.require(seconds_since(t0) < 1.0, "runtime");
  return o;
}

Outcome c2_progressive() {
  Outcome o;
  auto p = test::diabetics_vectors();
  const auto& t = test::diabetics_texts();
  o.require(progressive_align(std::span(t).first(2), *p) == test::alignment_1(), "alignment (1)");
  o.require(progressive_align(t, *p) == test::alignment_2(), "alignment (2)");
  return o;
}

Outcome c3_operator_goldens() {
  Outcome o;
  auto t0 = Clock::now();
  o.require(shift(test::alignment_2(), 1, {2}, Direction::Right, 1) == test::alignment_3(), "(2)->(3)");
  o.require(shift(test::alignment_3(), 2, {0}, Direction::Right, 1) == test::alignment_4(), "(3)->(4)");
  o.require(shift(test::alignment_2(), 2, {0, 2}, Direction::Right, 1) == test::alignment_5(), "(2)->(5)");
  o.require(column_merge(test::alignment_4(), 1) == test::alignment_6(), "(4)->(6)");
  o.require(column_merge(test::alignment_5(), 1) == test::alignment_6(), "(5)->(6)");
  o.require(cell_merge(test::alignment_6(), 0, 2, Direction::Right) == test::alignment_7(), "(6)->(7)");
  o.require(single_token_split(test::alignment_6(), 1, Side::Left) == test::alignment_8(), "(6)->(8)");
  o.require(single_token_split(test::alignment_6(), 1, Side::Right) == test::alignment_9(), "(6)->(9)");
  o.require(trie_split(test::column_10(), 0, Side::Right) == test::alignment_11(), "(10)->(11)");
  o.require(trie_split(test::column_10(), 0, Side::Left) == test::alignment_12(), "(10)->(12)");
  o.require(seconds_since(t0) < 1.0, "runtime");
  return o;
}

Outcome c4_heuristic_arithmetic() {
  Outcome o;
  auto a = test::alignment_17();
  o.require(score_columns(a) == 1.25, "s_col");
  o.require(score_filled(a) == 1.0, "s_fcol");
  const double expected[] = {2.0 / 3.0, 3.0 / 3.0, 2.0 / 3.0, 0.0 / 3.0, 2.0 / 3.0};
  for (std::size_t c = 0; c < 5; ++c) o.require(column_relevance(a, c) == expected[c], "relevance");
  return o;
}

Outcome c5_one_by_one() {
  Outcome o;
  auto p = deterministic_test_provider(0);
  o.require(total_score(test::table({{"a"}}), *p).total == 4.6, "total");
  return o;
}

Outcome c6_candidate_filtering() {
  Outcome o;
  auto a = test::alignment_13();
  auto cands = candidate_ops(a, ConstraintSet({4}), SearchConfig{});
  o.require(!has_op(cands, ShiftOp{2, {1, 2}, Direction::Right, 1}), "group shift kept despite lock");
  o.require(!has_op(cands, ShiftOp{1, {2}, Direction::Left, 1}), "no-effect shift kept");
  o.require(has_op(cands, ShiftOp{2, {1}, Direction::Right, 1}), "example 2 missing");
  o.require(has_op(cands, ShiftOp{2, {0}, Direction::Right, 1}), "example 3 missing");
  o.require(has_op(cands, ShiftOp{3, {2}, Direction::Left, 2}), "example 5 missing");
  for (std::size_t i = 0; i + 1 < cands.size(); ++i) o.require(!(cands[i].result == a), "unchanged result kept");
  auto open = candidate_ops(a, {}, SearchConfig{});
  o.require(has_op(open, ShiftOp{2, {1, 2}, Direction::Right, 1}), "group shift missing without lock");
  return o;
}

Outcome c7_row_preservation() {
  Outcome o;
  test::Gen gen(7001);
  auto p = deterministic_test_provider(0);
  for (int i = 0; i < kCases && o.pass; ++i) {
    Alignment a = gen.coin() ? gen.alignment(8, 12) : progressive_align(gen.texts(8, 12), *p);
    const auto sources = a.source_texts();
    const std::size_t len = gen.size(1, 30);
    for (std::size_t k = 0; k < len; ++k) {
      auto op = gen.op(a);
      if (!is_valid(a, op)) continue;
      a = alignkit::apply(a, op);
      o.require(test::rows_preserved(a, sources), "row lost tokens after " + describe(op));
      o.require(a.grid().data().size() == a.rows() * a.cols() && a.rows() == sources.size(), "not rectangular");
    }
  }
  return o;
}

Outcome c8_greedy_monotone() {
  Outcome o;
  test::Gen gen(8001);
  auto p = deterministic_test_provider(0);
  for (int i = 0; i < kCases && o.pass; ++i) {
    auto a = progressive_align(gen.texts(5, 6), *p);
    SearchConfig cfg;
    cfg.greedy_prob = 1.0;
    cfg.max_steps = 10;
    cfg.seed = static_cast<std::uint64_t>(i);
    auto rep = hill_climb(a, {}, cfg, *p);
    for (std::size_t s = 1; s < rep.trajectory.size(); ++s)
      o.require(rep.trajectory[s].total >= rep.trajectory[s - 1].total, "trajectory decreased");
    o.require(total_score(rep.final_alignment, *p).total >= total_score(a, *p).total, "final below initial");
  }
  return o;
}

Outcome c9_lock_safety() {
  Outcome o;
  test::Gen gen(9001);
  auto p = deterministic_test_provider(0);
  for (int i = 0; i < kCases && o.pass; ++i) {
    auto a = gen.alignment(5, 6);
    auto locks = gen.locks(a.cols(), 0.3);
    SearchConfig cfg;
    cfg.greedy_prob = gen.real(0.0, 1.0);
    cfg.max_steps = 10;
    cfg.stall_window = 3;
    cfg.seed = static_cast<std::uint64_t>(i);
    auto rep = hill_climb(a, locks, cfg, *p);
    for (auto c : locks.columns()) {
      o.require(c < rep.final_alignment.cols(), "locked column vanished");
      if (!o.pass) break;
      for (std::size_t r = 0; r < a.rows(); ++r)
        o.require(rep.final_alignment.cell(r, c) == a.cell(r, c), "locked cell changed");
    }
    Alignment cur = a;
    for (const auto& op : rep.ops) {
      o.require(static_cast<bool>(is_valid(cur, op, locks)), "applied op invalid: " + describe(op));
      if (!o.pass) break;
      if (!std::holds_alternative<NoOp>(op)) cur = trim_empty_edges(alignkit::apply(cur, op), locks);
    }
    o.require(cur == rep.final_alignment, "replay differs");
  }
  return o;
}

Outcome c10_determinism() {
  Outcome o;
  test::Gen gen(10001);
  auto p1 = deterministic_test_provider(5);
  auto p2 = deterministic_test_provider(5);
  for (int i = 0; i < kCases && o.pass; ++i) {
    auto a = gen.alignment(5, 6);
    auto locks = gen.locks(a.cols(), 0.15);
    SearchConfig cfg;
    cfg.greedy_prob = gen.real(0.0, 1.0);
    cfg.max_steps = 8;
    cfg.seed = gen.size(0, 1u << 30);
    o.require(same_report(hill_climb(a, locks, cfg, *p1), hill_climb(a, locks, cfg, *p2)), "reports differ");
  }
  return o;
}

Outcome c11_ranges_and_covariance() {
  Outcome o;
  test::Gen gen(11001);
  auto p = deterministic_test_provider(0);
  auto no_vocab = parse_vector_text("unused 1 0\n");
  for (int i = 0; i < kCases && o.pass; ++i) {
    std::vector<std::string> a(gen.size(1, 4)), b(gen.size(1, 4));
    for (auto& t : a) t = gen.text(3);
    for (auto& t : b) t = gen.text(3);
    const double e = substitution_score(a, b, *p);
    o.require(e >= 40.0 && e <= 60.0, "embedding branch out of [40,60]");
    const double l = substitution_score(a, b, *no_vocab);
    o.require(l >= 0.0 && l <= 60.0, "levenshtein branch out of [0,60]");
    o.require(score_embed(gen.alignment(8, 12), *p) >= 0.0, "s_embed negative");

    const std::size_t n = gen.size(2, 6);
    test::Rows rows;
    std::vector<std::vector<double>> xs;
    for (std::size_t r = 0; r < n; ++r) {
      rows.push_back({gen.text(3)});
      xs.push_back(test::mean_vector(rows.back()[0], *p));
    }
    const double got = column_variance(test::table(rows), 0, *p);
    o.require(std::abs(got - test::covariance_oracle(xs)) <= 1e-9, "covariance differs from oracle");
  }
  return o;
}

Outcome c12_improvement() {
  Outcome o;
  auto p = deterministic_test_provider(0);
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto texts = test::usage_texts();
    SearchRng rng(seed);
    for (std::size_t i = texts.size(); i > 1; --i) std::swap(texts[i - 1], texts[rng.index(i)]);
    auto initial = progressive_align(texts, *p);
    SearchConfig cfg;
    cfg.greedy_prob = 1.0;
    cfg.max_steps = 50;
    cfg.seed = seed;
    auto rep = hill_climb(initial, {}, cfg, *p);
    if (rep.trajectory.back().total > rep.trajectory.front().total) ++improved;
  }
  o.require(improved >= 8, std::to_string(improved) + "/10 improved");
  if (o.pass) o.detail = std::to_string(improved) + "/10 improved";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gap penalty values", c1_gap_penalty},
      {"progressive alignment reproduces (1) and (2)", c2_progressive},
      {"operator goldens", c3_operator_goldens},
      {"heuristic arithmetic on (17)", c4_heuristic_arithmetic},
      {"1x1 default total is 4.6", c5_one_by_one},
      {"candidate filtering on (13) with column 5 locked", c6_candidate_filtering},
      {"row preservation under random op sequences", c7_row_preservation},
      {"greedy monotonicity", c8_greedy_monotone},
      {"lock safety", c9_lock_safety},
      {"search determinism", c10_determinism},
      {"score ranges and covariance oracle", c11_ranges_and_covariance},
      {"improvement on shuffled usage texts", c12_improvement},
  };
  auto t0 = Clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s criterion %2zu: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(start), o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  const double total = seconds_since(t0);
  std::printf("%d of %zu criteria passed in %.2fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
