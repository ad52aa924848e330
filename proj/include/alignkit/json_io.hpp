#pragma once

// Wire formats shared by the CLI, the HTTP service and save files. All row and
// column indices on the wire are 1-based.

#include <string>

#include <json.hpp>

#include "alignkit/heuristic.hpp"
#include "alignkit/model.hpp"
#include "alignkit/operators.hpp"
#include "alignkit/search.hpp"

namespace alignkit {

using Json = nlohmann::json;

inline constexpr int kSaveDocumentVersion = 1;

Json grid_to_json(const Alignment& a);

/// {"op": "shift", "col": 3, "rows": [2, 3], "direction": "right", "distance": 1}, etc.
Json edit_op_to_json(const EditOp& op);
/// Throws Error{BadRequest} on a malformed op and Error{BadColumn}/{BadRow}
/// on an index below 1.
EditOp edit_op_from_json(const Json& j);

Json score_to_json(const ScoreBreakdown& s);
Json weights_to_json(const Weights& w);
/// Missing fields keep the values from `base`.
Weights weights_from_json(const Json& j, const Weights& base = {});
Json search_config_to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const Json& j, const SearchConfig& base = {});
Json search_report_to_json(const SearchReport& r);

struct SaveDocument {
  Alignment alignment;
  ConstraintSet locks;
  Weights weights;
  SearchConfig search_cfg;
};

/// {version, source_texts, grid, locked_columns, weights, search_cfg}.
Json save_document_to_json(const SaveDocument& doc);
/// Throws Error{SchemaMismatch} for a missing or different version,
/// Error{CorruptGrid} when the grid is not rectangular or does not reproduce
/// the source texts, Error{BadColumn} for a lock outside the grid and
/// Error{BadRequest} for other structural problems.
SaveDocument save_document_from_json(const Json& j);

/// Sorted keys, two-space indent, trailing newline: stable across save/load.
std::string canonical_dump(const Json& j);

/// Parses text as JSON; Error{BadRequest} on a syntax error.
Json parse_json(std::string_view text);

}  // namespace alignkit
