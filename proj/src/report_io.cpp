#include "steklov/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out << ',';
    out << t.columns[c];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  }
  return out.str();
}

std::string render_table_json(const Table& t) {
  auto quote = [](const std::string& s) { return '"' + s + '"'; };
  auto cell = [&quote](const std::string& s) {
    // Numeric cells stay bare; everything else is quoted.
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    const bool numeric = end && *end == '\0' && end != s.c_str();
    return numeric ? s : quote(s);
  };
  std::ostringstream out;
  out << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "  {";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out << ", ";
      out << quote(t.columns[c]) << ": " << cell(t.rows[r][c]);
    }
    out << (r + 1 < t.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::ValidationError, "report: cannot open " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) raise(ErrorCode::ValidationError, "report: write failed for " + path);
}

namespace {

const char* marker_name(BoundaryMarker m) {
  switch (m) {
    case BoundaryMarker::OUTER: return "outer";
    case BoundaryMarker::INNER: return "inner";
    default: return "interior";
  }
}

}  // namespace

std::string render_mesh_text(const Mesh& mesh) {
  std::ostringstream out;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    out << "v " << format_value(mesh.vertices[v][0]) << ' '
        << format_value(mesh.vertices[v][1]) << ' '
        << marker_name(mesh.vertex_markers[v]) << '\n';
  }
  for (const auto& tri : mesh.triangles) {
    out << "t " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
  for (const auto& e : mesh.boundary_edges) {
    out << "e " << e.a << ' ' << e.b << ' ' << marker_name(e.marker) << '\n';
  }
  return out.str();
}

std::string render_field_text(const Field& f) {
  std::ostringstream out;
  for (double v : f.expanded()) out << format_value(v) << '\n';
  return out.str();
}

std::string render_operator_text(const SymmetricOperator& op) {
  std::ostringstream out;
  for (const auto& e : op.entries) {
    out << e.row << ' ' << e.col << ' ' << format_value(e.value) << '\n';
  }
  return out.str();
}

namespace {

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string render_svg_chart(const std::string& title,
                             const std::vector<Series>& series, bool log_x,
                             bool log_y) {
  const double width = 640, height = 420;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  auto tx = [log_x](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [log_y](double v) { return log_y ? std::log10(v) : v; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((log_x && !(s.x[i] > 0)) || (log_y && !(s.y[i] > 0))) continue;
      const double px = tx(s.x[i]), py = ty(s.y[i]);
      if (first) {
        xmin = xmax = px;
        ymin = ymax = py;
        first = false;
      } else {
        xmin = std::min(xmin, px);
        xmax = std::max(xmax, px);
        ymin = std::min(ymin, py);
        ymax = std::max(ymax, py);
      }
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  auto sx = [&](double v) {
    return ml + (tx(v) - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto sy = [&](double v) {
    return height - mb - (ty(v) - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  static const char* colors[] = {"#1f6fb2", "#c23b22", "#3a7d44", "#8052a2",
                                 "#b8860b", "#4a4a4a"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    const double px = ml + (width - ml - mr) * i / nticks;
    const double py = height - mb - (height - mt - mb) * i / nticks;
    const double vx = log_x ? std::pow(10.0, fx) : fx;
    const double vy = log_y ? std::pow(10.0, fy) : fy;
    out << "<line x1=\"" << px << "\" y1=\"" << height - mb << "\" x2=\"" << px
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << height - mb + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << tick_label(vx) << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml
        << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(vy) << "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if ((log_x && !(series[s].x[i] > 0)) || (log_y && !(series[s].y[i] > 0)))
        continue;
      out << sx(series[s].x[i]) << ',' << sy(series[s].y[i]) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << width - mr - 6 << "\" y=\"" << mt + 16 * (s + 1)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\""
        << color << "\">" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace steklov
