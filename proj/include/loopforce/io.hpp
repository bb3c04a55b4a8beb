#ifndef LOOPFORCE_IO_HPP
#define LOOPFORCE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "loopforce/curve.hpp"

namespace loopforce {

// Curve specification (JSON object), one of
//   {"type": "circle",  "radius": R, "center": [cx, cy]}
//   {"type": "ellipse", "a": A, "b": B, "center": [cx, cy]}
//   {"type": "fourier", "x_cos": [...], "x_sin": [...], "y_cos": [...], "y_sin": [...]}
//   {"type": "preset",  "name": "circle" | "ellipse" | "blob"}
// "center" is optional. For "fourier", x_cos[k] multiplies cos(2 pi k t) (k >= 0)
// and x_sin[k] multiplies sin(2 pi (k + 1) t); missing arrays are empty.
// Unknown keys are rejected with ErrorCode::Parse.
ClosedCurve curve_from_json(const std::string& text);
ClosedCurve curve_from_file(const std::string& path);

// Point-list files: one "x y" pair per line, counter-clockwise. Blank lines and
// lines starting with '#' are skipped.
PolygonLoop read_polygon(std::istream& in, double mesh_constant = kDefaultMeshConstant);
PolygonLoop load_polygon(const std::string& path, double mesh_constant = kDefaultMeshConstant);
void write_polygon(std::ostream& out, const PolygonLoop& loop);

// CSV table with a single header row and '#'-prefixed footer lines.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> footer;

  std::string to_csv() const;
};

// Shortest round-trippable decimal form used in every emitted table.
std::string format_number(double value);

}  // namespace loopforce

#endif  // LOOPFORCE_IO_HPP
