#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roistream/raster.hpp"

namespace roistream::io {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Level comes from the ROISTREAM_LOG environment variable
/// (error|warn|info|debug, default warn).
LogLevel log_level();
void log(LogLevel level, const std::string& message);

/// Locale-independent shortest round-trip formatting ('.' decimal separator).
std::string format_double(double value);

/// Binary PGM (P5, maxval 255).
roidet::FrameGray read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const roidet::FrameGray& frame);

/// Minimal CSV support: no quoting, comma separated, first row is a header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};
CsvTable read_csv(const std::filesystem::path& path);

double parse_double(const std::string& s);
long parse_long(const std::string& s);

/// Write via a temp file in the same directory, then rename into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace roistream::io
