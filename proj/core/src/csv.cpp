#include "fpsir/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "fpsir/errors.hpp"

namespace fpsir::csv {
namespace {

std::string render(double v, std::chars_format fmt, int precision) {
  char buf[64];
  const auto res = precision < 0 ? std::to_chars(buf, buf + sizeof buf, v, fmt)
                                 : std::to_chars(buf, buf + sizeof buf, v, fmt, precision);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  return render(v, std::chars_format::general, 10);
}

std::string exact_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string snapshot_filename(double t, std::string_view stem) {
  return std::string(stem) + "_t" + render(t, std::chars_format::fixed, 4) + ".csv";
}

void write_field(std::ostream& os, const Field2D& field, const GridSpec& grid,
                 std::string_view value_name) {
  check_shape(field, grid);
  os << "x1,x2," << value_name << '\n';
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nx; ++j)
      os << number(grid.coord(i)) << ',' << number(grid.coord(j)) << ','
         << number(field(i, j)) << '\n';
}

void write_controls(std::ostream& os, const ControlTrajectory& u,
                    const GridSpec& grid) {
  os << "t,alpha,v,eta\n";
  for (int k = 0; k < u.size(); ++k)
    os << number(grid.time(k)) << ',' << number(u[k].npi) << ','
       << number(u[k].vaccination) << ',' << number(u[k].treatment) << '\n';
}

void write_trace(std::ostream& os, const SqhTrace& trace) {
  os << "iter,J,tau,eps,accepted,retries\n";
  for (const auto& e : trace.entries)
    os << e.iter << ',' << number(e.J) << ',' << number(e.tau) << ','
       << number(e.eps) << ',' << (e.accepted ? 1 : 0) << ',' << e.retries << '\n';
}

void write_dynamics(std::ostream& os, std::span<const Sir3State> states) {
  os << "t,S,I,R\n";
  for (const auto& s : states)
    os << number(s.t) << ',' << number(s.s) << ',' << number(s.i) << ','
       << number(s.r) << '\n';
}

void write_ensemble(std::ostream& os, const EnsembleSnapshot& snap) {
  os << "path_id,x1,x2\n";
  for (std::size_t p = 0; p < snap.points.size(); ++p)
    os << p << ',' << number(snap.points[p].s) << ',' << number(snap.points[p].i)
       << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open output file " + path.string());
  return os;
}

}  // namespace fpsir::csv
