#pragma once

#include <string>
#include <vector>

#include "steklov/discretize.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

// 17 significant digits: enough to round-trip any double, and byte-stable
// across runs (data files carry no timestamps).
std::string format_value(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& t);
std::string render_table_json(const Table& t);

void write_text_file(const std::string& path, const std::string& content);

// One record per line: "v x y marker", "t a b c", "e a b marker".
std::string render_mesh_text(const Mesh& mesh);
// One value per vertex per line, eliminated vertices as 0.
std::string render_field_text(const Field& f);
// Coordinate form, one "row col value" per line.
std::string render_operator_text(const SymmetricOperator& op);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal hand-emitted line chart (axes, ticks, polylines, legend).
std::string render_svg_chart(const std::string& title,
                             const std::vector<Series>& series, bool log_x,
                             bool log_y);

}  // namespace steklov
