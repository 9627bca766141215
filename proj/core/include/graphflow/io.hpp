#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "graphflow/scheme.hpp"

namespace graphflow {

/// Surface Gamma_h^m = {(x, u_h^m(x))} carrying w_h^m.
struct Snapshot {
  int m = 0;
  double t = 0.0;
  const Mesh* mesh = nullptr;
  const Vector* u = nullptr;
  const Vector* w = nullptr;

  static Snapshot of(const State& state);
};

/// Legacy ASCII VTK (3.0) unstructured grid: points (x1, x2, u), triangle
/// cells, point scalars `w` and `u`. Numbers use 17 significant digits.
void write_surface_vtk(const Snapshot& snapshot, std::ostream& out);
void write_surface_vtk(const Snapshot& snapshot, const std::filesystem::path& path);

struct TimeseriesRecord {
  int m = 0;
  double t = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double min_w = 0.0;
  double max_w = 0.0;
  double l2_w = 0.0;

  static TimeseriesRecord of(const State& state);
};

/// Header `m,t,min_u,max_u,min_w,max_w,l2_w`, one row per record.
void write_timeseries_csv(const std::vector<TimeseriesRecord>& records, std::ostream& out);
void write_timeseries_csv(const std::vector<TimeseriesRecord>& records, const std::filesystem::path& path);

/// Snapshot levels for a run of M steps: every ceil(M/30) steps plus 0 and M.
bool is_snapshot_level(int m, int total_steps);

}  // namespace graphflow
