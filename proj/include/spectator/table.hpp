#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spectator {

/// Column-oriented result table: numeric, text and flag columns, with
/// missing numeric cells rendered empty in CSV (used for diverged sweep
/// points). CSV output is deterministic: header row, fixed column order,
/// 9 significant digits.
class ResultTable {
 public:
  enum class ColumnKind { kNumber, kText, kFlag };

  int add_column(const std::string& name, ColumnKind kind = ColumnKind::kNumber);
  int add_row();

  void set(int row, int col, double value);
  void set_text(int row, int col, const std::string& value);
  void set_flag(int row, int col, bool value);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }
  const std::string& column_name(int col) const;
  ColumnKind column_kind(int col) const;
  int find_column(const std::string& name) const;  // -1 when absent

  std::optional<double> number(int row, int col) const;
  const std::string* text(int row, int col) const;
  std::optional<bool> flag(int row, int col) const;

  void write_csv(std::ostream& out) const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  struct Column {
    std::string name;
    ColumnKind kind;
    std::vector<std::optional<double>> numbers;
    std::vector<std::string> texts;
    std::vector<std::optional<bool>> flags;
  };

  Column& col_at(int col);
  const Column& col_at(int col) const;

  std::vector<Column> columns_;
  int rows_ = 0;
};

struct SvgSeries {
  int y_col = -1;
  std::string label;  // empty: use the column name
};

struct SvgChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int x_col = 0;
  std::vector<SvgSeries> series;
  int width = 800;
  int height = 500;
};

/// Minimal deterministic line chart; rows with missing values break the
/// polyline.
void write_svg_chart(const ResultTable& table, const SvgChartSpec& spec,
                     const std::filesystem::path& path);

}  // namespace spectator
