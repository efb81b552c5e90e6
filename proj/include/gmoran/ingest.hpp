#pragma once

#include "gmoran/graph.hpp"
#include "gmoran/moran.hpp"
#include "gmoran/randwalk.hpp"
#include "gmoran/spectral.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gmoran {

// Graph files use the node-link layout:
//   {"nodes": [{"id": "a"}, ...],
//    "links": [{"source": "a", "target": "b"}, ...]}     (or [["a", "b"], ...])
// or, instead of "links", a per-node "adjacency" array parallel to "nodes"
// whose entries are lists of ids or of {"id": ...} objects. Numeric ids are
// read as their decimal text. Other keys are ignored.

/// Throws ParseError (with line and column, or naming the offending key),
/// UnknownNodeId, SelfLoop or DuplicateId.
Graph parse_graph_json(std::string_view text);
Graph load_graph_json(const std::filesystem::path& path);

std::string graph_to_json(const Graph& g);
void write_graph_json(const Graph& g, const std::filesystem::path& path);

/// Numeric columns keyed by node id. When a total column is named, every
/// other column c also has a derived share "c_share" = c / total, which is
/// NaN (pending imputation) where the total is 0.
class AttributeTable {
 public:
  AttributeTable(std::vector<std::string> ids, std::vector<std::string> columns, Eigen::MatrixXd values,
                 std::optional<std::string> total_column = std::nullopt);

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const std::optional<std::string>& total_column() const noexcept { return total_; }
  Index rows() const noexcept { return values_.rows(); }

  /// Raw and derived column names.
  std::vector<std::string> available_columns() const;
  bool has_column(std::string_view name) const;
  /// Raw column or derived share; throws MissingColumn.
  Eigen::VectorXd column(std::string_view name) const;

  /// Rows whose total is 0.
  std::vector<Index> zero_total_rows() const;

  /// Rows reordered to the graph's node order; extra rows are dropped.
  /// Throws MissingNode listing graph nodes without a row.
  AttributeTable aligned_to(const Graph& g) const;

  friend bool operator==(const AttributeTable& a, const AttributeTable& b) {
    return a.ids_ == b.ids_ && a.columns_ == b.columns_ && a.total_ == b.total_ && a.values_ == b.values_;
  }

 private:
  Index raw_index(std::string_view name) const;

  std::vector<std::string> ids_;
  std::vector<std::string> columns_;
  Eigen::MatrixXd values_;
  std::optional<std::string> total_;
};

/// RFC 4180 CSV with a header row. `value_columns` empty means every column
/// except the id column. Throws MissingColumn, NonNumericCell (row and column
/// named), DuplicateId or ParseError for malformed quoting.
AttributeTable parse_attributes_csv(std::string_view text, const std::string& id_column,
                                    const std::vector<std::string>& value_columns = {},
                                    const std::optional<std::string>& total_column = std::nullopt);
AttributeTable load_attributes_csv(const std::filesystem::path& path, const std::string& id_column,
                                   const std::vector<std::string>& value_columns = {},
                                   const std::optional<std::string>& total_column = std::nullopt);

/// Fills rows with total 0 from the mean of their populated neighbors, every
/// raw column at once. Passes run in node order and see values imputed
/// earlier in the same pass; they repeat until no zero total remains.
/// Throws Unimputable when a pass makes no progress.
AttributeTable impute_zero_population(const AttributeTable& table, const Graph& g);

enum class Format { Json, Csv };
std::optional<Format> parse_format(std::string_view name) noexcept;

/// 12 significant digits.
std::string format_number(double x);
double round_sig12(double x);

std::string emit_report(const MoranReport& r, Format f);
std::string emit_report(const SpectralRange& r, Format f);
std::string emit_report(const WalkDiagnostics& r, Format f);
/// "v,u" rows preceded by a "# slope=..." comment line.
std::string emit_scatter_csv(const ScatterData& s);

MoranReport parse_moran_report_json(std::string_view text);
SpectralRange parse_range_json(std::string_view text);
WalkDiagnostics parse_walk_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace gmoran
