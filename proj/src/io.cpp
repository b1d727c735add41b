#include "ilw/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ilw {

static_assert(std::endian::native == std::endian::little,
              "field binaries are little-endian; byte-swapping is not implemented");

std::string format_scientific(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_field_binary(const std::filesystem::path& path, const RealField& u) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(u.samples.data()),
              static_cast<std::streamsize>(u.samples.size() * sizeof(double)));
    if (!out) throw std::ios_base::failure("short write to " + path.string());
}

RealField read_field_binary(const std::filesystem::path& path, GridPtr grid, double time) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path.string());
    RealField u(grid, time);
    in.read(reinterpret_cast<char*>(u.samples.data()),
            static_cast<std::streamsize>(u.samples.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(u.samples.size() * sizeof(double)))
        throw std::ios_base::failure("truncated field binary " + path.string());
    return u;
}

void write_checkpoint_index(const std::filesystem::path& path, int n_points, double length,
                            const std::vector<CheckpointEntry>& entries) {
    nlohmann::json j;
    j["n_points"] = n_points;
    j["length"] = length;
    j["format"] = "float64-le";
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries) list.push_back({{"file", e.file}, {"time", e.time}});
    j["checkpoints"] = list;
    write_file_atomic(path, j.dump(2) + "\n");
}

std::vector<CheckpointEntry> read_checkpoint_index(const std::filesystem::path& path,
                                                   int& n_points, double& length) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    n_points = j.at("n_points").get<int>();
    length = j.at("length").get<double>();
    std::vector<CheckpointEntry> entries;
    for (const auto& e : j.at("checkpoints"))
        entries.push_back({e.at("file").get<std::string>(), e.at("time").get<double>()});
    return entries;
}

std::string diagnostics_csv_header() {
    return "t,I1,I2,I3,I4,mass_ball_centered,mass_ball_shifted,mass_right,func_I,"
           "func_I_rho,func_J,weighted_norm_alpha,smoothing_flux_half,"
           "smoothing_flux_full,boundary_mass_fraction";
}

std::string diagnostics_csv_line(const DiagnosticsRow& r) {
    const double values[] = {r.t,
                             r.I1,
                             r.I2,
                             r.I3,
                             r.I4,
                             r.mass_ball_centered,
                             r.mass_ball_shifted,
                             r.mass_right,
                             r.func_I,
                             r.func_I_rho,
                             r.func_J,
                             r.weighted_norm_alpha,
                             r.smoothing_flux_half,
                             r.smoothing_flux_full,
                             r.boundary_mass_fraction};
    std::string line;
    for (std::size_t i = 0; i < std::size(values); ++i) {
        if (i) line += ',';
        line += format_scientific(values[i]);
    }
    return line;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRow>& rows) {
    std::string text = diagnostics_csv_header() + "\n";
    for (const auto& r : rows) text += diagnostics_csv_line(r) + "\n";
    write_file_atomic(path, text);
}

void write_ratio_reports_csv(const std::filesystem::path& path,
                             const std::vector<RatioReport>& reports) {
    std::string text = "check,case,lhs,rhs,ratio\n";
    for (const auto& report : reports) {
        for (const auto& c : report.cases)
            text += report.check + "," + c.name + "," + format_scientific(c.lhs) + "," +
                    format_scientific(c.rhs) + "," + format_scientific(c.ratio) + "\n";
        for (const auto& c : report.zero_rhs)
            text += report.check + "," + c.name + "," + format_scientific(c.lhs) + "," +
                    format_scientific(c.rhs) + ",\n";
    }
    write_file_atomic(path, text);
}

std::string file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path.string());
    std::uint64_t hash = 1469598103934665603ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out) throw std::ios_base::failure("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ilw
