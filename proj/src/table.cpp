#include "spectator/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "spectator/errors.hpp"

namespace spectator {

int ResultTable::add_column(const std::string& name, ColumnKind kind) {
  Column col;
  col.name = name;
  col.kind = kind;
  col.numbers.resize(rows_);
  col.texts.resize(rows_);
  col.flags.resize(rows_);
  columns_.push_back(std::move(col));
  return static_cast<int>(columns_.size()) - 1;
}

int ResultTable::add_row() {
  for (auto& col : columns_) {
    col.numbers.emplace_back();
    col.texts.emplace_back();
    col.flags.emplace_back();
  }
  return rows_++;
}

ResultTable::Column& ResultTable::col_at(int col) {
  if (col < 0 || col >= cols()) throw ValidationError("table: column out of range");
  return columns_[static_cast<std::size_t>(col)];
}

const ResultTable::Column& ResultTable::col_at(int col) const {
  if (col < 0 || col >= cols()) throw ValidationError("table: column out of range");
  return columns_[static_cast<std::size_t>(col)];
}

void ResultTable::set(int row, int col, double value) {
  col_at(col).numbers.at(static_cast<std::size_t>(row)) = value;
}

void ResultTable::set_text(int row, int col, const std::string& value) {
  col_at(col).texts.at(static_cast<std::size_t>(row)) = value;
}

void ResultTable::set_flag(int row, int col, bool value) {
  col_at(col).flags.at(static_cast<std::size_t>(row)) = value;
}

const std::string& ResultTable::column_name(int col) const {
  return col_at(col).name;
}

ResultTable::ColumnKind ResultTable::column_kind(int col) const {
  return col_at(col).kind;
}

int ResultTable::find_column(const std::string& name) const {
  for (int c = 0; c < cols(); ++c) {
    if (columns_[static_cast<std::size_t>(c)].name == name) return c;
  }
  return -1;
}

std::optional<double> ResultTable::number(int row, int col) const {
  return col_at(col).numbers.at(static_cast<std::size_t>(row));
}

const std::string* ResultTable::text(int row, int col) const {
  const Column& c = col_at(col);
  if (c.kind != ColumnKind::kText) return nullptr;
  return &c.texts.at(static_cast<std::size_t>(row));
}

std::optional<bool> ResultTable::flag(int row, int col) const {
  return col_at(col).flags.at(static_cast<std::size_t>(row));
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void ResultTable::write_csv(std::ostream& out) const {
  for (int c = 0; c < cols(); ++c) {
    if (c) out << ',';
    out << csv_escape(column_name(c));
  }
  out << '\n';
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols(); ++c) {
      if (c) out << ',';
      const Column& col = columns_[static_cast<std::size_t>(c)];
      switch (col.kind) {
        case ColumnKind::kNumber: {
          const auto& v = col.numbers[static_cast<std::size_t>(r)];
          if (v) out << format_number(*v);
          break;
        }
        case ColumnKind::kText:
          out << csv_escape(col.texts[static_cast<std::size_t>(r)]);
          break;
        case ColumnKind::kFlag: {
          const auto& v = col.flags[static_cast<std::size_t>(r)];
          if (v) out << (*v ? "true" : "false");
          break;
        }
      }
    }
    out << '\n';
  }
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_csv(out);
}

namespace {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  void pad() {
    if (!valid()) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

// 1-2-5 tick spacing covering the range with ~6 steps.
std::vector<double> ticks(const Range& r) {
  const double raw = (r.hi - r.lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-12 * step;
       v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

std::string fmt(double v, const char* format = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b"};

}  // namespace

void write_svg_chart(const ResultTable& table, const SvgChartSpec& spec,
                     const std::filesystem::path& path) {
  const int left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = spec.width - left - right;
  const double plot_h = spec.height - top - bottom;

  Range xr, yr;
  for (int r = 0; r < table.rows(); ++r) {
    const auto x = table.number(r, spec.x_col);
    if (!x) continue;
    bool any = false;
    for (const auto& s : spec.series) {
      const auto y = table.number(r, s.y_col);
      if (y && std::isfinite(*y)) {
        yr.include(*y);
        any = true;
      }
    }
    if (any) xr.include(*x);
  }
  xr.pad();
  yr.pad();

  auto px = [&](double x) {
    return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  auto py = [&](double y) {
    return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h;
  };

  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
      << " " << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << spec.title << "</text>\n";

  for (double t : ticks(xr)) {
    const double x = px(t);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << top + plot_h << "\" x2=\""
        << fmt(x) << "\" y2=\"" << top << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(t) << "</text>\n";
  }
  for (double t : ticks(yr)) {
    const double y = py(t);
    out << "<line x1=\"" << left << "\" y1=\"" << fmt(y) << "\" x2=\""
        << left + plot_w << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(t) << "</text>\n";
  }
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << spec.height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << spec.x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
         " transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& series = spec.series[s];
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    bool open = false;
    auto flush = [&]() {
      if (open && !points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
      }
      points.clear();
      open = false;
    };
    for (int r = 0; r < table.rows(); ++r) {
      const auto x = table.number(r, spec.x_col);
      const auto y = table.number(r, series.y_col);
      if (!x || !y || !std::isfinite(*y)) {
        flush();
        continue;
      }
      points += fmt(px(*x), "%.2f");
      points += ',';
      points += fmt(py(*y), "%.2f");
      points += ' ';
      open = true;
    }
    flush();
    const std::string label =
        series.label.empty() ? table.column_name(series.y_col) : series.label;
    const double ly = top + 16 + 16 * double(s);
    out << "<line x1=\"" << left + plot_w - 130 << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << left + plot_w - 110 << "\" y2=\"" << fmt(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w - 104 << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace spectator
