#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "loopforce/curve.hpp"
#include "loopforce/error.hpp"
#include "loopforce/io.hpp"
#include "test_util.hpp"

using namespace loopforce;

TEST(CurveJson, Circle) {
  const ClosedCurve c = curve_from_json(R"({"type": "circle", "radius": 2, "center": [1, -1]})");
  EXPECT_NEAR(c.eval(0.0).x, 3.0, 1e-15);
  EXPECT_NEAR(c.eval(0.0).y, -1.0, 1e-15);
  EXPECT_NEAR(c.frame_at(0.3).kappa, -0.5, 1e-14);
}

TEST(CurveJson, EllipseFourierPreset) {
  const ClosedCurve e = curve_from_json(R"({"type": "ellipse", "a": 2, "b": 1})");
  EXPECT_NEAR(e.eval(0.5).x, -2.0, 1e-15);
  const ClosedCurve f = curve_from_json(
      R"({"type": "fourier", "x_cos": [0, 1], "y_sin": [1]})");
  EXPECT_NEAR(f.eval(0.25).y, 1.0, 1e-15);
  EXPECT_NEAR(f.length(), 2.0 * std::acos(-1.0), 1e-12);
  const ClosedCurve b = curve_from_json(R"({"type": "preset", "name": "blob"})");
  EXPECT_NEAR(b.eval(0.0).x, preset_curve("blob").eval(0.0).x, 0.0);
}

TEST(CurveJson, Rejections) {
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "circle", "radius": 1, "extra": 0})"); }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "circle"})"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "square"})"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "circle", "radius": "1"})"); }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "circle", "radius": 1, "center": [1]})"); }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json("{not json"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json("[1, 2]"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "preset", "name": "square"})"); }),
            ErrorCode::InvalidArgument);
  // Clockwise Fourier curve.
  EXPECT_EQ(code_of([] { curve_from_json(R"({"type": "fourier", "x_cos": [0, 1], "y_sin": [-1]})"); }),
            ErrorCode::Curve);
}

TEST(CurveJson, MissingFile) {
  EXPECT_EQ(code_of([] { curve_from_file("/nonexistent/curve.json"); }), ErrorCode::Io);
  EXPECT_EQ(code_of([] { load_polygon("/nonexistent/points.txt"); }), ErrorCode::Io);
}

TEST(PolygonText, RoundTrip) {
  const PolygonLoop loop = sample_polygon(preset_curve("blob"), 97);
  std::stringstream buf;
  write_polygon(buf, loop);
  const PolygonLoop back = read_polygon(buf);
  ASSERT_EQ(back.size(), loop.size());
  for (std::size_t i = 0; i < loop.size(); ++i) EXPECT_EQ(back.points()[i], loop.points()[i]);
}

TEST(PolygonText, CommentsAndErrors) {
  std::istringstream ok("# square\n1 0\n\n0 1\n-1 0\n0 -1\n");
  EXPECT_EQ(read_polygon(ok).size(), 4u);
  std::istringstream bad("1 0\n0 one\n-1 0\n");
  EXPECT_EQ(code_of([&] { read_polygon(bad); }), ErrorCode::Parse);
  std::istringstream cw("1 0\n0 -1\n-1 0\n0 1\n");
  EXPECT_EQ(code_of([&] { read_polygon(cw); }), ErrorCode::Mesh);
}

TEST(PolygonText, FileRoundTrip) {
  const std::string path = ::testing::TempDir() + "loopforce_points.txt";
  const PolygonLoop loop = sample_polygon(ClosedCurve::circle(1.0), 16);
  {
    std::ofstream out(path);
    write_polygon(out, loop);
  }
  EXPECT_EQ(load_polygon(path).size(), 16u);
  std::remove(path.c_str());
}

TEST(Table, CsvLayout) {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{1.0, 0.1}, {-2.5, 1e-300}};
  t.footer = {"note=1"};
  EXPECT_EQ(t.to_csv(), "a,b\n1,0.1\n-2.5,1e-300\n# note=1\n");
}

TEST(FormatNumber, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -6.6928711821781807, 1e-300, 12345678.9}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
}
