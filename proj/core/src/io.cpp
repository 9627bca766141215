#include "graphflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "graphflow/errors.hpp"
#include "text_format.hpp"

namespace graphflow {

namespace {

constexpr int kDigits = 17;

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

Snapshot Snapshot::of(const State& state) {
  return {state.m, state.t, &state.u.space().mesh(), &state.u.values(), &state.w.values()};
}

void write_surface_vtk(const Snapshot& s, std::ostream& out) {
  if (!s.mesh || !s.u || !s.w) throw ArgumentError("incomplete snapshot");
  const Mesh& mesh = *s.mesh;
  const auto nv = mesh.num_vertices();
  const auto nt = mesh.num_triangles();
  if (static_cast<std::size_t>(s.u->size()) != nv || static_cast<std::size_t>(s.w->size()) != nv) {
    throw ArgumentError("snapshot arrays do not match the mesh");
  }

  out << "# vtk DataFile Version 3.0\n";
  out << "graphflow surface m=" << s.m << " t=" << format_double(s.t, kDigits) << '\n';
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (std::size_t i = 0; i < nv; ++i) {
    const Vec2& p = mesh.vertices[i];
    out << format_double(p.x(), kDigits) << ' ' << format_double(p.y(), kDigits) << ' '
        << format_double((*s.u)[static_cast<int>(i)], kDigits) << '\n';
  }
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (std::size_t k = 0; k < nt; ++k) out << "5\n";
  out << "POINT_DATA " << nv << '\n';
  for (const auto& [name, values] : {std::pair{"w", s.w}, std::pair{"u", s.u}}) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < nv; ++i) out << format_double((*values)[static_cast<int>(i)], kDigits) << '\n';
  }
}

void write_surface_vtk(const Snapshot& snapshot, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  write_surface_vtk(snapshot, out);
  finish(out, path);
}

TimeseriesRecord TimeseriesRecord::of(const State& state) {
  TimeseriesRecord r;
  r.m = state.m;
  r.t = state.t;
  r.min_u = state.u.values().minCoeff();
  r.max_u = state.u.values().maxCoeff();
  r.min_w = state.w.values().minCoeff();
  r.max_w = state.w.values().maxCoeff();
  r.l2_w = std::sqrt(l2_norm_squared(state.w));
  return r;
}

void write_timeseries_csv(const std::vector<TimeseriesRecord>& records, std::ostream& out) {
  out << "m,t,min_u,max_u,min_w,max_w,l2_w\n";
  for (const auto& r : records) {
    out << r.m << ',' << format_double(r.t, kDigits) << ',' << format_double(r.min_u, kDigits) << ','
        << format_double(r.max_u, kDigits) << ',' << format_double(r.min_w, kDigits) << ','
        << format_double(r.max_w, kDigits) << ',' << format_double(r.l2_w, kDigits) << '\n';
  }
}

void write_timeseries_csv(const std::vector<TimeseriesRecord>& records, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  write_timeseries_csv(records, out);
  finish(out, path);
}

bool is_snapshot_level(int m, int total_steps) {
  if (m == 0 || m == total_steps) return true;
  const int stride = std::max(1, (total_steps + 29) / 30);
  return m % stride == 0;
}

}  // namespace graphflow
