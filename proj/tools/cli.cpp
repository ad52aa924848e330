#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "alignkit/embeddings.hpp"
#include "alignkit/error.hpp"
#include "alignkit/json_io.hpp"
#include "alignkit/search.hpp"
#include "alignkit/service.hpp"
#include "alignkit/session.hpp"

namespace alignkit::cli {
namespace {

struct Options {
  std::string input;
  std::string out_path;
  std::string format;
  std::string embeddings;
  std::optional<std::uint64_t> test_embeddings;
  std::optional<std::size_t> steps;
  std::optional<std::uint64_t> seed;
  std::optional<double> greedy_prob;
  std::optional<std::size_t> stall_window;
  std::optional<std::size_t> max_shift_distance;
  std::string weights;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::shared_ptr<const EmbeddingProvider> make_provider(const Options& o) {
  if (!o.embeddings.empty() && o.test_embeddings)
    throw InputError("choose one of --embeddings and --test-embeddings");
  if (o.test_embeddings) return deterministic_test_provider(*o.test_embeddings);
  std::string path = o.embeddings;
  if (path.empty()) {
    if (const char* env = std::getenv("ALIGNKIT_EMBEDDINGS")) path = env;
  }
  if (path.empty())
    throw InputError("no embedding source: pass --embeddings, --test-embeddings or set ALIGNKIT_EMBEDDINGS");
  return load_vector_file(path);
}

Weights parse_weights(const std::string& text, Weights base) {
  if (text.empty()) return base;
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError("--weights: bad number '" + item + "'");
    values.push_back(v);
  }
  if (values.size() != 4) throw InputError("--weights takes four numbers: w_col,w_fcol,w_embed,w_bias");
  Weights w{values[0], values[1], values[2], values[3]};
  w.validate();
  return w;
}

SearchConfig apply_flags(const Options& o, SearchConfig cfg) {
  if (o.steps) cfg.max_steps = *o.steps;
  if (o.seed) cfg.seed = *o.seed;
  if (o.greedy_prob) cfg.greedy_prob = *o.greedy_prob;
  if (o.stall_window) cfg.stall_window = *o.stall_window;
  if (o.max_shift_distance) cfg.max_shift_distance = *o.max_shift_distance;
  cfg.validate();
  return cfg;
}

std::string read_input(const Options& o, std::istream& in) {
  if (o.input.empty() || o.input == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream f(o.input, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + o.input);
  return {std::istreambuf_iterator<char>(f), {}};
}

void write_output(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty() || o.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + o.out_path);
  f << text;
}

std::string export_text(const SaveDocument& doc, const std::string& format) {
  if (format == "json") return canonical_dump(save_document_to_json(doc));
  return render_table(doc.alignment, parse_table_format(format)) + "\n";
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

int cmd_align(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto provider = make_provider(o);
  auto weights = parse_weights(o.weights, {});
  auto cfg = apply_flags(o, {});
  auto session = Session::create("cli", split_lines(read_input(o, in)), provider, weights, cfg);
  auto doc = session->save();
  write_output(o, out, export_text(doc, o.format.empty() ? "tsv" : o.format));
  err << "score " << score_to_json(total_score(doc.alignment, *provider, weights)).dump() << "\n";
  return 0;
}

SaveDocument load_document(const Options& o, std::istream& in) {
  return save_document_from_json(parse_json(read_input(o, in)));
}

int cmd_score(const Options& o, std::istream& in, std::ostream& out, std::ostream&) {
  auto provider = make_provider(o);
  auto doc = load_document(o, in);
  auto weights = parse_weights(o.weights, doc.weights);
  write_output(o, out, canonical_dump(score_to_json(total_score(doc.alignment, *provider, weights))));
  return 0;
}

int cmd_realign(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto provider = make_provider(o);
  auto doc = load_document(o, in);
  doc.weights = parse_weights(o.weights, doc.weights);
  doc.search_cfg = apply_flags(o, doc.search_cfg);
  if (!o.steps) doc.search_cfg.max_steps = kStandardSearchSteps;
  auto report = hill_climb(doc.alignment, doc.locks, doc.search_cfg, *provider, doc.weights);
  doc.alignment = report.final_alignment;
  write_output(o, out, export_text(doc, o.format.empty() ? "json" : o.format));
  err << "realign " << report.steps_taken << " steps, " << stop_reason_name(report.stop_reason) << "\n";
  return 0;
}

int cmd_serve(const Options& o, std::ostream& err) {
  ServiceOptions so;
  so.provider = make_provider(o);
  so.weights = parse_weights(o.weights, {});
  so.search_cfg = apply_flags(o, {});
  so.static_dir = o.static_dir;
  ApiService service(std::move(so));
  if (!service.bind(o.host, o.port)) {
    err << "error: cannot bind " << o.host << ":" << o.port << "\n";
    return 1;
  }
  err << "listening on http://" << o.host << ":" << service.port() << "\n";
  service.listen_after_bind();
  return 0;
}

void add_embedding_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--embeddings", o.embeddings, "Plain-text vector file");
  cmd->add_option("--test-embeddings", o.test_embeddings, "Seed for the deterministic hashed provider");
  cmd->add_option("--weights", o.weights, "w_col,w_fcol,w_embed,w_bias");
}

void add_search_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--steps", o.steps, "Search step limit")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Search seed");
  cmd->add_option("--greedy-prob", o.greedy_prob, "Probability of taking the best candidate");
  cmd->add_option("--stall-window", o.stall_window, "Stop after this many non-improving steps");
  cmd->add_option("--max-shift-distance", o.max_shift_distance, "Largest shift distance tried");
}

void add_io_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "Input file (default stdin)");
  cmd->add_option("--out", o.out_path, "Output file (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interactive multiple-text alignment"};
  app.require_subcommand(1);
  Options o;

  auto* align = app.add_subcommand("align", "Align one text per input line");
  add_io_flags(align, o);
  add_embedding_flags(align, o);
  add_search_flags(align, o);
  align->add_option("--format", o.format, "tsv, json or html")->check(CLI::IsMember({"tsv", "json", "html"}));

  auto* score = app.add_subcommand("score", "Score a save document");
  add_io_flags(score, o);
  add_embedding_flags(score, o);

  auto* realign = app.add_subcommand("realign", "Search from a save document");
  add_io_flags(realign, o);
  add_embedding_flags(realign, o);
  add_search_flags(realign, o);
  realign->add_option("--format", o.format, "json, tsv or html")->check(CLI::IsMember({"tsv", "json", "html"}));

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  add_embedding_flags(serve, o);
  add_search_flags(serve, o);
  serve->add_option("--port", o.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--static", o.static_dir, "Directory served at /");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*align) return cmd_align(o, in, out, err);
    if (*score) return cmd_score(o, in, out, err);
    if (*realign) return cmd_realign(o, in, out, err);
    if (*serve) return cmd_serve(o, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace alignkit::cli
