#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>

#include "fpsir/grid.hpp"
#include "fpsir/mc_oracle.hpp"
#include "fpsir/sqh.hpp"

namespace fpsir::csv {

/// Locale-independent rendering with 10 significant digits.
std::string number(double v);
/// Shortest text that parses back to exactly v.
std::string exact_number(double v);

/// `density_t1.2500.csv` style name for a snapshot time.
std::string snapshot_filename(double t, std::string_view stem = "density");

/// Header `x1,x2,<value_name>`, nodes in row-major order (S outer, I inner).
void write_field(std::ostream& os, const Field2D& field, const GridSpec& grid,
                 std::string_view value_name);
void write_controls(std::ostream& os, const ControlTrajectory& u,
                    const GridSpec& grid);
void write_trace(std::ostream& os, const SqhTrace& trace);
void write_dynamics(std::ostream& os, std::span<const Sir3State> states);
void write_ensemble(std::ostream& os, const EnsembleSnapshot& snap);

/// Opens path for binary writing (LF line endings); throws IoError on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace fpsir::csv
