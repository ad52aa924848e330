#include "alignkit/model.hpp"

#include <json.hpp>

#include "alignkit/error.hpp"

namespace alignkit {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string Cell::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

Alignment::Alignment(std::vector<std::string> source_texts, Grid<Cell> grid)
    : grid_(std::move(grid)) {
  std::vector<std::vector<Token>> toks;
  toks.reserve(source_texts.size());
  for (std::size_t r = 0; r < source_texts.size(); ++r) {
    toks.push_back(tokenize(source_texts[r]));
    if (toks.back().empty())
      throw Error(ErrorCode::EmptyText, "source text " + std::to_string(r + 1) + " is empty");
  }
  sources_ = std::make_shared<const std::vector<std::string>>(std::move(source_texts));
  source_tokens_ = std::make_shared<const std::vector<std::vector<Token>>>(std::move(toks));
  validate();
}

Alignment::Alignment(std::shared_ptr<const std::vector<std::string>> sources,
                     std::shared_ptr<const std::vector<std::vector<Token>>> tokens, Grid<Cell> grid)
    : sources_(std::move(sources)), source_tokens_(std::move(tokens)), grid_(std::move(grid)) {
  validate();
}

void Alignment::validate() const {
  if (sources_->empty()) throw Error(ErrorCode::EmptyInput, "alignment needs at least one row");
  if (grid_.rows() != sources_->size())
    throw Error(ErrorCode::CorruptGrid, "grid has " + std::to_string(grid_.rows()) +
                                            " rows but there are " +
                                            std::to_string(sources_->size()) + " source texts");
  if (grid_.cols() == 0) throw Error(ErrorCode::CorruptGrid, "grid has no columns");
  for (std::size_t r = 0; r < grid_.rows(); ++r) {
    const auto& expected = (*source_tokens_)[r];
    std::size_t k = 0;
    for (std::size_t c = 0; c < grid_.cols(); ++c) {
      for (const auto& t : grid_.at(r, c).tokens) {
        if (k >= expected.size() || expected[k] != t)
          throw Error(ErrorCode::CorruptGrid,
                      "row " + std::to_string(r + 1) + " does not reproduce its source text");
        ++k;
      }
    }
    if (k != expected.size())
      throw Error(ErrorCode::CorruptGrid,
                  "row " + std::to_string(r + 1) + " is missing tokens of its source text");
  }
}

Alignment Alignment::from_cells(const std::vector<std::vector<std::string>>& cells) {
  std::size_t cols = 0;
  for (const auto& row : cells) cols = std::max(cols, row.size());
  Grid<Cell> grid(cells.size(), cols);
  std::vector<std::string> sources;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string src;
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      grid.at(r, c) = Cell(tokenize(cells[r][c]));
      auto text = grid.at(r, c).text();
      if (text.empty()) continue;
      if (!src.empty()) src += ' ';
      src += text;
    }
    sources.push_back(std::move(src));
  }
  return Alignment(std::move(sources), std::move(grid));
}

Alignment Alignment::with_grid(Grid<Cell> grid) const {
  return Alignment(sources_, source_tokens_, std::move(grid));
}

bool Alignment::column_empty(std::size_t col) const { return filled_in_column(col) == 0; }

std::size_t Alignment::filled_in_column(std::size_t col) const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows(); ++r) n += !grid_.at(r, col).empty();
  return n;
}

std::size_t Alignment::filled_in_row(std::size_t row) const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < cols(); ++c) n += !grid_.at(row, c).empty();
  return n;
}

Alignment degenerate_alignment(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw Error(ErrorCode::EmptyText, "text has no tokens");
  Grid<Cell> grid(1, tokens.size());
  for (std::size_t c = 0; c < tokens.size(); ++c) grid.at(0, c) = Cell({tokens[c]});
  return Alignment({std::string(text)}, std::move(grid));
}

bool ConstraintSet::any_locked_in(std::size_t first, std::size_t last) const {
  auto it = locked_.lower_bound(first);
  return it != locked_.end() && *it <= last;
}

bool ConstraintSet::fits(std::size_t cols) const {
  return locked_.empty() || *locked_.rbegin() < cols;
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "tsv") return TableFormat::Tsv;
  if (name == "json") return TableFormat::Json;
  if (name == "html") return TableFormat::Html;
  throw Error(ErrorCode::BadRequest, "unknown format '" + std::string(name) + "'");
}

std::string render_table(const Alignment& a, TableFormat format) {
  switch (format) {
    case TableFormat::Tsv: {
      std::string out;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        if (r) out += '\n';
        for (std::size_t c = 0; c < a.cols(); ++c) {
          if (c) out += '\t';
          out += a.cell(r, c).text();
        }
      }
      return out;
    }
    case TableFormat::Json: {
      nlohmann::json grid = nlohmann::json::array();
      for (std::size_t r = 0; r < a.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a.cell(r, c).tokens);
        grid.push_back(std::move(row));
      }
      return nlohmann::json{{"grid", std::move(grid)}}.dump();
    }
    case TableFormat::Html: {
      std::string out = "<table class=\"alignment\">\n";
      for (std::size_t r = 0; r < a.rows(); ++r) {
        out += "<tr>";
        for (std::size_t c = 0; c < a.cols(); ++c)
          out += "<td>" + html_escape(a.cell(r, c).text()) + "</td>";
        out += "</tr>\n";
      }
      out += "</table>\n";
      return out;
    }
  }
  return {};
}

Grid<Cell> parse_tsv(std::string_view tsv) {
  std::vector<std::vector<Cell>> rows;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    auto end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    auto line = tsv.substr(start, end - start);
    std::vector<Cell> row;
    std::size_t f = 0;
    while (true) {
      auto tab = line.find('\t', f);
      auto field = line.substr(f, tab == std::string_view::npos ? line.size() - f : tab - f);
      row.emplace_back(tokenize(field));
      if (tab == std::string_view::npos) break;
      f = tab + 1;
    }
    rows.push_back(std::move(row));
    start = end + 1;
  }
  std::size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  Grid<Cell> grid(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) grid.at(r, c) = std::move(rows[r][c]);
  return grid;
}

}  // namespace alignkit
