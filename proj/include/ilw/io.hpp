#ifndef ILW_IO_HPP
#define ILW_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ilw/diagnostics.hpp"
#include "ilw/grid.hpp"
#include "ilw/inequality.hpp"

namespace ilw {

// 17-significant-digit scientific notation; the byte-stable scalar format
// used by every CSV emitted here.
std::string format_scientific(double v);

// Raw little-endian float64 samples. The descriptor (grid size, length, time)
// lives in the per-run checkpoints.json written by write_checkpoint_index.
void write_field_binary(const std::filesystem::path& path, const RealField& u);
RealField read_field_binary(const std::filesystem::path& path, GridPtr grid, double time);

struct CheckpointEntry {
    std::string file;
    double time = 0.0;
};

void write_checkpoint_index(const std::filesystem::path& path, int n_points, double length,
                            const std::vector<CheckpointEntry>& entries);
// Returns grid geometry through the out-parameters.
std::vector<CheckpointEntry> read_checkpoint_index(const std::filesystem::path& path,
                                                   int& n_points, double& length);

// Fixed schema: t, I1..I4, region masses, functionals, weighted norm, both
// smoothing fluxes, boundary mass fraction.
std::string diagnostics_csv_header();
std::string diagnostics_csv_line(const DiagnosticsRow& row);
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRow>& rows);

// One row per inequality case: check, case, lhs, rhs, ratio.
void write_ratio_reports_csv(const std::filesystem::path& path,
                             const std::vector<RatioReport>& reports);

// FNV-1a 64 of a file's bytes, 16 hex digits (manifest checksums).
std::string file_checksum(const std::filesystem::path& path);

// Write text to path via a temporary file plus rename, so a partial write
// never masquerades as a finished file.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace ilw

#endif
