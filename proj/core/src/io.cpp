#include "koopnet/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "koopnet/errors.hpp"

namespace koopnet::io {

namespace {

using nlohmann::json;

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "/" + key, "missing field");
  return *it;
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ParseError(where, "expected a non-negative integer");
  const auto i = v.get<long long>();
  if (i < 0) throw ParseError(where, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  return v.get<double>();
}

std::vector<std::vector<std::size_t>> as_table(const json& v, const std::string& where, std::size_t rows,
                                               std::size_t cols, std::size_t bound) {
  if (!v.is_array()) throw ParseError(where, "expected an array of rows");
  if (v.size() != rows)
    throw ParseError(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(v.size()));
  std::vector<std::vector<std::size_t>> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    const json& row = v[r];
    if (!row.is_array()) throw ParseError(rw, "expected an array");
    if (row.size() != cols)
      throw ParseError(rw, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    out[r].reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string cw = rw + "/" + std::to_string(c);
      const std::size_t value = as_index(row[c], cw);
      if (value >= bound) throw ParseError(cw, "index " + std::to_string(value) + " out of range");
      out[r].push_back(value);
    }
  }
  return out;
}

std::vector<double> as_reals(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(v[i], where + "/" + std::to_string(i)));
  return out;
}

ActionTable parse_action(const json& a, const std::string& where) {
  ActionTable t;
  t.num_points = as_index(require(a, "num_points", where), where + "/num_points");
  if (t.num_points == 0) throw ParseError(where + "/num_points", "must be positive");
  const json& table = require(a, "table", where);
  if (!table.is_array() || table.empty()) throw ParseError(where + "/table", "expected a non-empty array of rows");
  t.table = as_table(table, where + "/table", table.size(), t.num_points, t.num_points);
  if (a.contains("origin")) {
    t.origin = as_index(a["origin"], where + "/origin");
    if (t.origin >= t.num_points) throw ParseError(where + "/origin", "point index out of range");
  }
  return t;
}

std::vector<Complex> parse_complex_values(const json& doc) {
  const std::vector<double> re = as_reals(require(doc, "re", ""), "/re");
  std::vector<double> im(re.size(), 0.0);
  if (doc.contains("im")) {
    im = as_reals(doc["im"], "/im");
    if (im.size() != re.size())
      throw ParseError("/im", "has " + std::to_string(im.size()) + " entries, /re has " + std::to_string(re.size()));
  }
  std::vector<Complex> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = Complex(re[i], im[i]);
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupDocument parse_group_document(std::string_view text) {
  const json doc = parse_text(text);
  const std::size_t order = as_index(require(doc, "order", ""), "/order");
  if (order == 0) throw ParseError("/order", "must be positive");
  const auto table = as_table(require(doc, "cayley", ""), "/cayley", order, order, order);

  GroupDocument out;
  out.group = std::make_shared<const FiniteGroup>(build_from_cayley(table));
  if (doc.contains("action")) {
    out.action = parse_action(doc["action"], "/action");
    if (out.action->table.size() != order)
      throw ParseError("/action/table", "expected " + std::to_string(order) + " rows, one per group element");
  }
  return out;
}

GroupDocument load_group_file(const std::filesystem::path& path) {
  return parse_group_document(read_text_file(path));
}

ActionTable parse_action_document(std::string_view text) { return parse_action(parse_text(text), ""); }

GAction bind_action(std::shared_ptr<const FiniteGroup> group, const ActionTable& table) {
  return GAction(std::move(group), table.num_points, table.table, table.origin);
}

FieldFunction parse_function_document(std::string_view text, std::shared_ptr<const InvariantMeasure> measure) {
  const json doc = parse_text(text);
  const std::vector<Complex> values = parse_complex_values(doc);
  if (values.size() != measure->size())
    throw ParseError("/re", "has " + std::to_string(values.size()) + " entries, space has " +
                                std::to_string(measure->size()) + " points");
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return FieldFunction(std::move(measure), std::move(v));
}

affine::SampledSignal parse_signal_document(std::string_view text) {
  const json doc = parse_text(text);
  affine::SampledSignal s;
  s.dx = as_real(require(doc, "dx", ""), "/dx");
  if (!(s.dx > 0.0)) throw ParseError("/dx", "must be positive");
  s.values = parse_complex_values(doc);
  if (s.values.size() < 2) throw ParseError("/re", "need at least two samples");
  s.x0 = doc.contains("x0") ? as_real(doc["x0"], "/x0") : -0.5 * s.dx * static_cast<double>(s.values.size() - 1);
  return s;
}

affine::SampledSignal load_signal_file(const std::filesystem::path& path) {
  return parse_signal_document(read_text_file(path));
}

}  // namespace koopnet::io
