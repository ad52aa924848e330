#include "alignkit/json_io.hpp"

#include "alignkit/error.hpp"

namespace alignkit {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadRequest, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t one_based(const Json& j, const char* key, ErrorCode code) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  const auto n = v.get<long long>();
  if (n < 1) throw Error(code, std::string("field '") + key + "' must be >= 1");
  return static_cast<std::size_t>(n - 1);
}

Direction direction_from(const Json& j) {
  const auto s = field(j, "direction").get<std::string>();
  if (s == "left") return Direction::Left;
  if (s == "right") return Direction::Right;
  bad("direction must be 'left' or 'right'");
}

Side side_from(const Json& j) {
  const auto s = field(j, "side").get<std::string>();
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  bad("side must be 'left' or 'right'");
}

const char* name(Direction d) { return d == Direction::Left ? "left" : "right"; }
const char* name(Side s) { return s == Side::Left ? "left" : "right"; }

template <class T>
T number_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      bad(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<T>();
}

}  // namespace

Json grid_to_json(const Alignment& a) {
  Json grid = Json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a.cell(r, c).tokens);
    grid.push_back(std::move(row));
  }
  return grid;
}

Json edit_op_to_json(const EditOp& op) {
  return std::visit(
      [](const auto& o) -> Json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NoOp>) {
          return {{"op", "noop"}};
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          Json rows = Json::array();
          for (auto r : o.rows) rows.push_back(r + 1);
          return {{"op", "shift"}, {"col", o.col + 1}, {"rows", rows},
                  {"direction", name(o.direction)}, {"distance", o.distance}};
        } else if constexpr (std::is_same_v<T, ColumnInsertOp>) {
          return {{"op", "column_insert"}, {"position", o.position}};
        } else if constexpr (std::is_same_v<T, ColumnDeleteOp>) {
          return {{"op", "column_delete"}, {"col", o.col + 1}};
        } else if constexpr (std::is_same_v<T, ColumnMergeOp>) {
          return {{"op", "column_merge"}, {"col", o.col + 1}};
        } else if constexpr (std::is_same_v<T, CellMergeOp>) {
          return {{"op", "cell_merge"}, {"row", o.row + 1}, {"col", o.col + 1},
                  {"direction", name(o.direction)}};
        } else if constexpr (std::is_same_v<T, SingleTokenSplitOp>) {
          return {{"op", "single_token_split"}, {"col", o.col + 1}, {"side", name(o.side)}};
        } else {
          return {{"op", "trie_split"}, {"col", o.col + 1}, {"side", name(o.side)}};
        }
      },
      op);
}

EditOp edit_op_from_json(const Json& j) {
  try {
    const auto kind = field(j, "op").get<std::string>();
    if (kind == "noop") return NoOp{};
    if (kind == "shift") {
      ShiftOp op;
      op.col = one_based(j, "col", ErrorCode::BadColumn);
      const Json& rows = field(j, "rows");
      if (!rows.is_array()) bad("'rows' must be an array");
      for (const auto& r : rows) {
        if (!r.is_number_integer()) bad("'rows' must hold integers");
        if (r.get<long long>() < 1) throw Error(ErrorCode::BadRow, "rows are numbered from 1");
        op.rows.push_back(static_cast<std::size_t>(r.get<long long>() - 1));
      }
      std::sort(op.rows.begin(), op.rows.end());
      op.direction = direction_from(j);
      op.distance = j.contains("distance") ? number_or<std::size_t>(j, "distance", 1) : 1;
      return op;
    }
    if (kind == "column_insert") {
      return ColumnInsertOp{number_or<std::size_t>(j, "position", 0)};
    }
    if (kind == "column_delete") return ColumnDeleteOp{one_based(j, "col", ErrorCode::BadColumn)};
    if (kind == "column_merge") return ColumnMergeOp{one_based(j, "col", ErrorCode::BadColumn)};
    if (kind == "cell_merge")
      return CellMergeOp{one_based(j, "row", ErrorCode::BadRow), one_based(j, "col", ErrorCode::BadColumn),
                         direction_from(j)};
    if (kind == "single_token_split")
      return SingleTokenSplitOp{one_based(j, "col", ErrorCode::BadColumn), side_from(j)};
    if (kind == "trie_split") return TrieSplitOp{one_based(j, "col", ErrorCode::BadColumn), side_from(j)};
    bad("unknown op '" + kind + "'");
  } catch (const Json::exception& e) {
    bad(std::string("malformed op: ") + e.what());
  }
}

Json score_to_json(const ScoreBreakdown& s) {
  return {{"s_col", s.s_col}, {"s_fcol", s.s_fcol}, {"s_embed", s.s_embed}, {"total", s.total}};
}

Json weights_to_json(const Weights& w) {
  return {{"w_col", w.w_col}, {"w_fcol", w.w_fcol}, {"w_embed", w.w_embed}, {"w_bias", w.w_bias}};
}

Weights weights_from_json(const Json& j, const Weights& base) {
  if (!j.is_object()) bad("weights must be an object");
  Weights w = base;
  w.w_col = number_or(j, "w_col", w.w_col);
  w.w_fcol = number_or(j, "w_fcol", w.w_fcol);
  w.w_embed = number_or(j, "w_embed", w.w_embed);
  w.w_bias = number_or(j, "w_bias", w.w_bias);
  w.validate();
  return w;
}

Json search_config_to_json(const SearchConfig& c) {
  return {{"greedy_prob", c.greedy_prob},
          {"stall_window", c.stall_window},
          {"max_steps", c.max_steps},
          {"max_shift_distance", c.max_shift_distance},
          {"seed", c.seed}};
}

SearchConfig search_config_from_json(const Json& j, const SearchConfig& base) {
  if (!j.is_object()) bad("search_cfg must be an object");
  SearchConfig c = base;
  c.greedy_prob = number_or(j, "greedy_prob", c.greedy_prob);
  c.stall_window = number_or(j, "stall_window", c.stall_window);
  c.max_steps = number_or(j, "max_steps", c.max_steps);
  c.max_shift_distance = number_or(j, "max_shift_distance", c.max_shift_distance);
  c.seed = number_or(j, "seed", c.seed);
  c.validate();
  return c;
}

Json search_report_to_json(const SearchReport& r) {
  Json ops = Json::array();
  for (const auto& op : r.ops) ops.push_back(edit_op_to_json(op));
  Json traj = Json::array();
  for (const auto& s : r.trajectory) traj.push_back(score_to_json(s));
  return {{"steps_taken", r.steps_taken},
          {"ops", ops},
          {"trajectory", traj},
          {"stop_reason", stop_reason_name(r.stop_reason)},
          {"final", {{"grid", grid_to_json(r.final_alignment)}}}};
}

Json save_document_to_json(const SaveDocument& doc) {
  Json locks = Json::array();
  for (auto c : doc.locks.columns()) locks.push_back(c + 1);
  return {{"version", kSaveDocumentVersion},
          {"source_texts", doc.alignment.source_texts()},
          {"grid", grid_to_json(doc.alignment)},
          {"locked_columns", locks},
          {"weights", weights_to_json(doc.weights)},
          {"search_cfg", search_config_to_json(doc.search_cfg)}};
}

SaveDocument save_document_from_json(const Json& j) {
  if (!j.is_object()) bad("save document must be a JSON object");
  if (!j.contains("version") || !j.at("version").is_number_integer() ||
      j.at("version").get<long long>() != kSaveDocumentVersion)
    throw Error(ErrorCode::SchemaMismatch,
                "unsupported save document version (expected " + std::to_string(kSaveDocumentVersion) + ")");
  try {
    auto sources = field(j, "source_texts").get<std::vector<std::string>>();
    const Json& grid_json = field(j, "grid");
    if (!grid_json.is_array() || grid_json.size() != sources.size())
      throw Error(ErrorCode::CorruptGrid, "grid must have one row per source text");
    std::size_t cols = grid_json.empty() ? 0 : grid_json.at(0).size();
    Grid<Cell> grid(sources.size(), cols);
    for (std::size_t r = 0; r < sources.size(); ++r) {
      const Json& row = grid_json.at(r);
      if (!row.is_array() || row.size() != cols)
        throw Error(ErrorCode::CorruptGrid, "grid rows must all have the same length");
      for (std::size_t c = 0; c < cols; ++c)
        grid.at(r, c) = Cell(row.at(c).get<std::vector<std::string>>());
    }
    Alignment alignment(std::move(sources), std::move(grid));

    ConstraintSet locks;
    if (j.contains("locked_columns")) {
      for (const auto& c : j.at("locked_columns")) {
        const auto n = c.get<long long>();
        if (n < 1 || static_cast<std::size_t>(n) > alignment.cols())
          throw Error(ErrorCode::BadColumn, "locked column " + std::to_string(n) + " is outside the grid");
        locks.lock(static_cast<std::size_t>(n - 1));
      }
    }
    Weights weights = j.contains("weights") ? weights_from_json(j.at("weights")) : Weights{};
    SearchConfig cfg = j.contains("search_cfg") ? search_config_from_json(j.at("search_cfg")) : SearchConfig{};
    return {std::move(alignment), std::move(locks), weights, cfg};
  } catch (const Json::exception& e) {
    bad(std::string("malformed save document: ") + e.what());
  }
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::BadRequest, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace alignkit
