#include "gmoran/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gmoran {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void bad_key(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, "key '" + where + "': " + what);
}

std::string id_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return std::to_string(static_cast<long long>(d));
    return v.dump();
  }
  bad_key(where, "node id must be a string or number");
}

std::string neighbor_id(const json& v, const std::string& where) {
  if (v.is_object()) {
    if (!v.contains("id")) bad_key(where, "missing 'id'");
    return id_text(v["id"], where + ".id");
  }
  return id_text(v, where);
}

}  // namespace

Graph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top-level value must be an object");
  if (!doc.contains("nodes")) bad_key("nodes", "missing");
  const json& nodes = doc["nodes"];
  if (!nodes.is_array()) bad_key("nodes", "must be an array");

  std::vector<std::string> ids;
  ids.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!nodes[i].is_object()) bad_key(where, "must be an object");
    if (!nodes[i].contains("id")) bad_key(where + ".id", "missing");
    ids.push_back(id_text(nodes[i]["id"], where + ".id"));
  }

  std::vector<IdPair> edges;
  if (doc.contains("links")) {
    const json& links = doc["links"];
    if (!links.is_array()) bad_key("links", "must be an array");
    edges.reserve(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string where = "links[" + std::to_string(i) + "]";
      const json& l = links[i];
      if (l.is_array()) {
        if (l.size() != 2) bad_key(where, "pair must have exactly two ids");
        edges.emplace_back(id_text(l[0], where + "[0]"), id_text(l[1], where + "[1]"));
      } else if (l.is_object()) {
        if (!l.contains("source")) bad_key(where + ".source", "missing");
        if (!l.contains("target")) bad_key(where + ".target", "missing");
        edges.emplace_back(id_text(l["source"], where + ".source"), id_text(l["target"], where + ".target"));
      } else {
        bad_key(where, "must be an object or a two-element array");
      }
    }
  } else if (doc.contains("adjacency")) {
    const json& adj = doc["adjacency"];
    if (!adj.is_array()) bad_key("adjacency", "must be an array");
    if (adj.size() != ids.size()) bad_key("adjacency", "length must match 'nodes'");
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const std::string where = "adjacency[" + std::to_string(i) + "]";
      if (!adj[i].is_array()) bad_key(where, "must be an array");
      for (std::size_t k = 0; k < adj[i].size(); ++k) {
        edges.emplace_back(ids[i], neighbor_id(adj[i][k], where + "[" + std::to_string(k) + "]"));
      }
    }
  } else {
    bad_key("links", "missing (expected 'links' or 'adjacency')");
  }
  return build_graph(std::move(ids), edges, false);
}

Graph load_graph_json(const std::filesystem::path& path) { return parse_graph_json(read_text_file(path)); }

std::string graph_to_json(const Graph& g) {
  json doc;
  doc["directed"] = false;
  doc["multigraph"] = false;
  doc["graph"] = json::object();
  json nodes = json::array();
  for (const auto& id : g.node_ids()) nodes.push_back({{"id", id}});
  json links = json::array();
  for (auto [u, v] : g.edges()) links.push_back({{"source", g.id(u)}, {"target", g.id(v)}});
  doc["nodes"] = std::move(nodes);
  doc["links"] = std::move(links);
  return doc.dump(1) + "\n";
}

void write_graph_json(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path.string() + "'");
  out << graph_to_json(g);
}

// ---------------------------------------------------------------------------
// attributes

AttributeTable::AttributeTable(std::vector<std::string> ids, std::vector<std::string> columns, Eigen::MatrixXd values,
                               std::optional<std::string> total_column)
    : ids_(std::move(ids)), columns_(std::move(columns)), values_(std::move(values)), total_(std::move(total_column)) {
  if (values_.rows() != static_cast<Index>(ids_.size()) || values_.cols() != static_cast<Index>(columns_.size())) {
    throw Error(ErrorCode::DimensionMismatch, "attribute values do not match ids and columns");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_)
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate id '" + id + "'");
  if (total_ && std::find(columns_.begin(), columns_.end(), *total_) == columns_.end()) {
    throw Error(ErrorCode::MissingColumn, "total column '" + *total_ + "' not among value columns");
  }
}

Index AttributeTable::raw_index(std::string_view name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c] == name) return static_cast<Index>(c);
  return -1;
}

std::vector<std::string> AttributeTable::available_columns() const {
  std::vector<std::string> out = columns_;
  if (total_)
    for (const auto& c : columns_)
      if (c != *total_) out.push_back(c + "_share");
  return out;
}

bool AttributeTable::has_column(std::string_view name) const {
  const auto all = available_columns();
  return std::find(all.begin(), all.end(), name) != all.end();
}

Eigen::VectorXd AttributeTable::column(std::string_view name) const {
  if (const Index c = raw_index(name); c >= 0) return values_.col(c);
  constexpr std::string_view suffix = "_share";
  if (total_ && name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
    const Index c = raw_index(name.substr(0, name.size() - suffix.size()));
    if (c >= 0 && columns_[static_cast<std::size_t>(c)] != *total_) {
      const Eigen::VectorXd total = values_.col(raw_index(*total_));
      Eigen::VectorXd s(values_.rows());
      for (Index i = 0; i < s.size(); ++i)
        s(i) = total(i) == 0.0 ? std::numeric_limits<double>::quiet_NaN() : values_(i, c) / total(i);
      return s;
    }
  }
  throw Error(ErrorCode::MissingColumn, "no column '" + std::string(name) + "'");
}

std::vector<Index> AttributeTable::zero_total_rows() const {
  std::vector<Index> out;
  if (!total_) return out;
  const Index t = raw_index(*total_);
  for (Index i = 0; i < values_.rows(); ++i)
    if (values_(i, t) == 0.0) out.push_back(i);
  return out;
}

AttributeTable AttributeTable::aligned_to(const Graph& g) const {
  std::unordered_map<std::string, Index> row;
  for (std::size_t i = 0; i < ids_.size(); ++i) row.emplace(ids_[i], static_cast<Index>(i));
  Eigen::MatrixXd out(g.size(), values_.cols());
  std::vector<std::string> missing;
  for (Index v = 0; v < g.size(); ++v) {
    const auto it = row.find(g.id(v));
    if (it == row.end()) {
      missing.push_back(g.id(v));
      continue;
    }
    out.row(v) = values_.row(it->second);
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " graph node(s) have no attribute row:";
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 20); ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw Error(ErrorCode::MissingNode, msg);
  }
  return AttributeTable(g.node_ids(), columns_, std::move(out), total_);
}

namespace {

// RFC 4180 records; quoted fields may contain commas, quotes ("") and line breaks.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (field_started) throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": stray quote in field");
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // handled with the following \n
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  const char* first = t.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

AttributeTable parse_attributes_csv(std::string_view text, const std::string& id_column,
                                    const std::vector<std::string>& value_columns,
                                    const std::optional<std::string>& total_column) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorCode::ParseError, "CSV has no header row");
  std::vector<std::string> header;
  for (const auto& h : records[0]) header.push_back(trim(h));
  auto find = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::MissingColumn, "CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_col = find(id_column);
  std::vector<std::string> cols = value_columns;
  if (cols.empty()) {
    for (const auto& h : header)
      if (h != id_column) cols.push_back(h);
  }
  if (total_column && std::find(cols.begin(), cols.end(), *total_column) == cols.end()) cols.push_back(*total_column);
  std::vector<std::size_t> idx;
  for (const auto& c : cols) idx.push_back(find(c));

  std::vector<std::string> ids;
  Eigen::MatrixXd values(static_cast<Index>(records.size() - 1), static_cast<Index>(cols.size()));
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                             " fields, header has " + std::to_string(header.size()));
    }
    std::string id = trim(rec[id_col]);
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate id '" + id + "' in row " + std::to_string(r));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto v = parse_double(rec[idx[c]]);
      if (!v) {
        throw Error(ErrorCode::NonNumericCell, "row " + std::to_string(r) + ", column '" + cols[c] + "': '" +
                                                   rec[idx[c]] + "' is not a number");
      }
      values(static_cast<Index>(r - 1), static_cast<Index>(c)) = *v;
    }
    ids.push_back(std::move(id));
  }
  return AttributeTable(std::move(ids), std::move(cols), std::move(values), total_column);
}

AttributeTable load_attributes_csv(const std::filesystem::path& path, const std::string& id_column,
                                   const std::vector<std::string>& value_columns,
                                   const std::optional<std::string>& total_column) {
  return parse_attributes_csv(read_text_file(path), id_column, value_columns, total_column);
}

AttributeTable impute_zero_population(const AttributeTable& table, const Graph& g) {
  if (!table.total_column()) throw Error(ErrorCode::MissingColumn, "imputation needs a total column");
  const AttributeTable aligned = table.ids() == g.node_ids() ? table : table.aligned_to(g);
  Eigen::MatrixXd values = aligned.values();
  const auto& cols = aligned.columns();
  const Index t = static_cast<Index>(std::find(cols.begin(), cols.end(), *aligned.total_column()) - cols.begin());

  std::vector<Index> pending = aligned.zero_total_rows();
  while (!pending.empty()) {
    std::vector<Index> still;
    for (Index i : pending) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(values.cols());
      Index count = 0;
      for (Index j : g.neighbors(i)) {
        if (values(j, t) != 0.0) {
          sum += values.row(j);
          ++count;
        }
      }
      if (count == 0) {
        still.push_back(i);
      } else {
        values.row(i) = sum / static_cast<double>(count);
      }
    }
    if (still.size() == pending.size()) {
      std::string msg = "no populated neighbor reachable for:";
      for (std::size_t k = 0; k < std::min<std::size_t>(still.size(), 20); ++k) msg += " " + g.id(still[k]);
      if (still.size() > 20) msg += " ...";
      throw Error(ErrorCode::Unimputable, msg);
    }
    pending = std::move(still);
  }
  return AttributeTable(aligned.ids(), cols, std::move(values), aligned.total_column());
}

// ---------------------------------------------------------------------------
// reports

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  return std::nullopt;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

namespace {

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig12(x);
}

json num_array(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("report missing key '") + key + "'");
  const json& v = j[key];
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

Eigen::VectorXd get_vec(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error(ErrorCode::ParseError, std::string("report missing array '") + key + "'");
  }
  const json& a = j[key];
  Eigen::VectorXd v(static_cast<Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Index>(i)) = a[i].is_null() ? NAN : a[i].get<double>();
  return v;
}

json parse_report(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report JSON: ") + e.what());
  }
}

WeightKind get_kind(const json& j) {
  const auto k = parse_weight_kind(j.value("kind", std::string()));
  if (!k) throw Error(ErrorCode::ParseError, "report has an unknown 'kind'");
  return *k;
}

json interval_json(const std::optional<Interval>& iv) {
  if (!iv) return nullptr;
  return json::array({num(iv->lo), num(iv->hi)});
}

std::optional<Interval> get_interval(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  const json& a = j[key];
  if (!a.is_array() || a.size() != 2) throw Error(ErrorCode::ParseError, std::string("key '") + key + "' must be a pair");
  return Interval{a[0].get<double>(), a[1].get<double>()};
}

RangeMethod parse_method(const std::string& s) {
  for (auto m : {RangeMethod::GeneralizedSymmetric, RangeMethod::LagrangeSymmetrized, RangeMethod::RegularShortcut})
    if (to_string(m) == s) return m;
  throw Error(ErrorCode::ParseError, "unknown range method '" + s + "'");
}

}  // namespace

std::string emit_report(const MoranReport& r, Format f) {
  if (f == Format::Json) {
    json j;
    j["kind"] = std::string(to_string(r.kind));
    j["n"] = r.node_ids.size();
    j["global_i"] = num(r.global_i);
    j["expected_null"] = num(r.expected_null);
    j["p_value"] = r.p_value ? num(*r.p_value) : json(nullptr);
    j["permutations"] = r.permutations ? json(*r.permutations) : json(nullptr);
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    j["local_is_extension"] = r.local_is_extension;
    j["node_ids"] = r.node_ids;
    j["local_i"] = num_array(r.local_i);
    j["lagged"] = num_array(r.lagged);
    return j.dump(1) + "\n";
  }
  std::string out = "# kind=" + std::string(to_string(r.kind)) + " global_i=" + format_number(r.global_i) +
                    " expected_null=" + format_number(r.expected_null);
  if (r.p_value) out += " p_value=" + format_number(*r.p_value);
  if (r.permutations) out += " permutations=" + std::to_string(*r.permutations);
  if (r.seed) out += " seed=" + std::to_string(*r.seed);
  out += "\nnode_id,local_i,lagged\n";
  for (std::size_t i = 0; i < r.node_ids.size(); ++i) {
    const auto k = static_cast<Index>(i);
    out += r.node_ids[i] + "," + format_number(r.local_i(k)) + "," + format_number(r.lagged(k)) + "\n";
  }
  return out;
}

std::string emit_report(const SpectralRange& r, Format f) {
  if (f == Format::Json) {
    json j;
    j["kind"] = std::string(to_string(r.kind));
    j["method"] = std::string(to_string(r.method));
    j["i_min"] = num(r.i_min);
    j["i_max"] = num(r.i_max);
    j["lambda_min"] = num(r.lambda_min);
    j["lambda_max"] = num(r.lambda_max);
    j["scale"] = num(r.scale);
    j["multiplicity_min"] = r.multiplicity_min;
    j["multiplicity_max"] = r.multiplicity_max;
    j["degenerate"] = r.degenerate();
    j["residual_min"] = num(r.residual_min);
    j["residual_max"] = num(r.residual_max);
    j["eigenvalue_bounds"] = interval_json(r.eigenvalue_bounds);
    j["degree_bounds"] = interval_json(r.degree_bounds);
    return j.dump(1) + "\n";
  }
  auto iv = [](const std::optional<Interval>& i, bool hi) { return i ? format_number(hi ? i->hi : i->lo) : std::string(); };
  return "kind,method,i_min,i_max,eigen_lo,eigen_hi,degree_lo,degree_hi,degenerate\n" +
         std::string(to_string(r.kind)) + "," + std::string(to_string(r.method)) + "," + format_number(r.i_min) + "," +
         format_number(r.i_max) + "," + iv(r.eigenvalue_bounds, false) + "," + iv(r.eigenvalue_bounds, true) + "," +
         iv(r.degree_bounds, false) + "," + iv(r.degree_bounds, true) + "," + (r.degenerate() ? "true" : "false") + "\n";
}

std::string emit_report(const WalkDiagnostics& r, Format f) {
  if (f == Format::Json) {
    json j;
    j["sigma0"] = num(r.sigma0);
    j["sigma1"] = num(r.sigma1);
    j["rho"] = num(r.rho);
    j["i_q"] = num(r.i_q);
    j["i_qqt"] = num(r.i_qqt);
    json steps = json::array();
    for (double s : r.steps) steps.push_back(num(s));
    j["steps"] = std::move(steps);
    return j.dump(1) + "\n";
  }
  std::string out = "# sigma0=" + format_number(r.sigma0) + " sigma1=" + format_number(r.sigma1) +
                    " rho=" + format_number(r.rho) + " i_q=" + format_number(r.i_q) +
                    " i_qqt=" + format_number(r.i_qqt) + "\nstep,sigma\n";
  for (std::size_t k = 0; k < r.steps.size(); ++k) out += std::to_string(k) + "," + format_number(r.steps[k]) + "\n";
  return out;
}

std::string emit_scatter_csv(const ScatterData& s) {
  std::string out = "# slope=" + format_number(s.slope) + " intercept=" + format_number(s.intercept) +
                    " slope_is_moran=" + (s.slope_is_moran ? "true" : "false") + "\nv,u\n";
  for (Index i = 0; i < s.v.size(); ++i) out += format_number(s.v(i)) + "," + format_number(s.u(i)) + "\n";
  return out;
}

MoranReport parse_moran_report_json(std::string_view text) {
  const json j = parse_report(text);
  MoranReport r;
  r.kind = get_kind(j);
  r.global_i = get_num(j, "global_i");
  r.expected_null = get_num(j, "expected_null");
  if (j.contains("p_value") && !j["p_value"].is_null()) r.p_value = j["p_value"].get<double>();
  if (j.contains("permutations") && !j["permutations"].is_null()) r.permutations = j["permutations"].get<std::size_t>();
  if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
  r.local_is_extension = j.value("local_is_extension", false);
  if (j.contains("node_ids")) r.node_ids = j["node_ids"].get<std::vector<std::string>>();
  r.local_i = get_vec(j, "local_i");
  r.lagged = get_vec(j, "lagged");
  return r;
}

SpectralRange parse_range_json(std::string_view text) {
  const json j = parse_report(text);
  SpectralRange r;
  r.kind = get_kind(j);
  r.method = parse_method(j.value("method", std::string()));
  r.i_min = get_num(j, "i_min");
  r.i_max = get_num(j, "i_max");
  r.lambda_min = get_num(j, "lambda_min");
  r.lambda_max = get_num(j, "lambda_max");
  r.scale = get_num(j, "scale");
  r.multiplicity_min = j.value("multiplicity_min", Index{1});
  r.multiplicity_max = j.value("multiplicity_max", Index{1});
  r.residual_min = get_num(j, "residual_min");
  r.residual_max = get_num(j, "residual_max");
  r.eigenvalue_bounds = get_interval(j, "eigenvalue_bounds");
  r.degree_bounds = get_interval(j, "degree_bounds");
  return r;
}

WalkDiagnostics parse_walk_json(std::string_view text) {
  const json j = parse_report(text);
  WalkDiagnostics r;
  r.sigma0 = get_num(j, "sigma0");
  r.sigma1 = get_num(j, "sigma1");
  r.rho = get_num(j, "rho");
  r.i_q = get_num(j, "i_q");
  r.i_qqt = get_num(j, "i_qqt");
  const Eigen::VectorXd steps = j.contains("steps") ? get_vec(j, "steps") : Eigen::VectorXd();
  r.steps.assign(steps.data(), steps.data() + steps.size());
  return r;
}

}  // namespace gmoran
