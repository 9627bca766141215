#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <graphflow/errors.hpp>
#include <graphflow/io.hpp>

#include "meshes.hpp"
#include "oracles.hpp"

using namespace graphflow;

namespace {

std::string vtk_text(const State& s) {
  std::ostringstream out;
  write_surface_vtk(Snapshot::of(s), out);
  return out.str();
}

oracle::VtkData parse(const std::string& text) {
  std::istringstream in(text);
  return oracle::read_vtk(in);
}

State planar_state_at(double t) {
  const ProblemSpec p = digm_planar();
  const auto space = std::make_shared<const FeSpace>(std::make_shared<const Mesh>(make_mesh(p, 0)));
  SchemeConfig config;
  config.tau = 0.01;
  config.final_time = t;
  return run(p, space, config).final_state;
}

}  // namespace

TEST_CASE("VTK output of a single triangle") {
  const auto space = testmesh::space(testmesh::right_triangle());
  Vector u(3), w(3);
  u << 0.0, 0.5, 1.0;
  w << 1.0, 2.0, 3.0;
  const State s{4, 0.25, FeFunction(space, u), FeFunction(space, w)};
  const oracle::VtkData d = parse(vtk_text(s));
  CHECK(d.title.find("m=4") != std::string::npos);
  REQUIRE(d.points.size() == 3);
  CHECK(d.points[1][0] == 1.0);
  CHECK(d.points[1][1] == 0.0);
  CHECK(d.points[1][2] == 0.5);
  CHECK(d.points[2][2] == 1.0);
  REQUIRE(d.cells.size() == 1);
  CHECK(d.cells[0] == std::vector<int>{0, 1, 2});
  CHECK(d.cell_types == std::vector<int>{5});
  CHECK(d.scalars.at("w") == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(d.scalars.at("u") == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("VTK surface of a constant height") {
  const auto space = std::make_shared<const FeSpace>(std::make_shared<const Mesh>(generate_disk_mesh(0)));
  const State s{0, 0.0, FeFunction::constant(space, 1.0), FeFunction::constant(space, 0.0)};
  const oracle::VtkData d = parse(vtk_text(s));
  REQUIRE(d.points.size() == space->mesh().num_vertices());
  for (const auto& p : d.points) CHECK(p[2] == 1.0);
  CHECK(d.cells.size() == space->mesh().num_triangles());
}

TEST_CASE("VTK round trip of a grain-boundary state") {
  const State s = planar_state_at(0.1);
  CHECK(s.m == 10);
  const std::string text = vtk_text(s);
  const oracle::VtkData d = parse(text);
  const Mesh& mesh = s.u.space().mesh();
  REQUIRE(d.points.size() == mesh.num_vertices());
  double worst = 0.0;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    worst = std::max({worst, std::abs(d.points[i][0] - mesh.vertices[i].x()), std::abs(d.points[i][1] - mesh.vertices[i].y()),
                      std::abs(d.points[i][2] - s.u.values()[i]), std::abs(d.scalars.at("w")[i] - s.w.values()[i]),
                      std::abs(d.scalars.at("u")[i] - s.u.values()[i])});
  }
  CHECK(worst <= 1e-12);
  CHECK(vtk_text(s) == text);
  CHECK(vtk_text(planar_state_at(0.1)) == text);
}

TEST_CASE("VTK argument and path errors") {
  CHECK_THROWS_AS(write_surface_vtk(Snapshot{}, std::cout), ArgumentError);
  const auto space = testmesh::space(testmesh::right_triangle());
  const State s{0, 0.0, FeFunction::constant(space, 0.0), FeFunction::constant(space, 0.0)};
  const auto bad = std::filesystem::temp_directory_path() / "graphflow-missing-dir" / "nested" / "x.vtk";
  CHECK_THROWS_AS(write_surface_vtk(Snapshot::of(s), bad), IoError);
  CHECK_THROWS_AS(write_timeseries_csv({}, bad), IoError);
}

TEST_CASE("timeseries CSV") {
  std::ostringstream empty;
  write_timeseries_csv({}, empty);
  CHECK(empty.str() == "m,t,min_u,max_u,min_w,max_w,l2_w\n");

  TimeseriesRecord r{3, 0.5, -1.0, 2.0, 0.0, 1.5, 0.25};
  std::ostringstream one;
  write_timeseries_csv({r}, one);
  CHECK(one.str() == "m,t,min_u,max_u,min_w,max_w,l2_w\n3,0.5,-1,2,0,1.5,0.25\n");

  const auto space = testmesh::space(testmesh::unit_square());
  const State s{2, 0.2, FeFunction::constant(space, 1.0), FeFunction::constant(space, 2.0)};
  const TimeseriesRecord rec = TimeseriesRecord::of(s);
  CHECK(rec.m == 2);
  CHECK(rec.min_u == 1.0);
  CHECK(rec.max_w == 2.0);
  CHECK(rec.l2_w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("timeseries of a grain-boundary run") {
  const ProblemSpec p = digm_planar();
  const auto space = std::make_shared<const FeSpace>(std::make_shared<const Mesh>(make_mesh(p, 0)));
  SchemeConfig config;
  config.tau = 0.01;
  config.final_time = 0.1;
  std::vector<TimeseriesRecord> records;
  run(p, space, config, {[&](const State& s) { records.push_back(TimeseriesRecord::of(s)); }});
  REQUIRE(records.size() == 11);
  double running = -1.0;
  for (const auto& r : records) {
    CHECK(r.max_w >= running);
    running = std::max(running, r.max_w);
    if (r.m >= 1) CHECK(r.max_w >= 1.0 - 1e-12);
  }
  std::ostringstream out;
  write_timeseries_csv(records, out);
  std::istringstream in(out.str());
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 12);
}

TEST_CASE("snapshot levels") {
  CHECK(is_snapshot_level(0, 0));
  for (int m = 0; m <= 10; ++m) CHECK(is_snapshot_level(m, 10));
  CHECK(is_snapshot_level(4, 100));
  CHECK_FALSE(is_snapshot_level(5, 100));
  CHECK_FALSE(is_snapshot_level(99, 100));
  CHECK(is_snapshot_level(100, 100));
  int count = 0;
  for (int m = 0; m <= 1000; ++m) count += is_snapshot_level(m, 1000);
  CHECK(count >= 30);
  CHECK(count <= 32);
}
