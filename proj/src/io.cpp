#include "roistream/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace roistream::io {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("ROISTREAM_LOG");
        if (!env) return LogLevel::warn;
        std::string s(env);
        if (s == "error") return LogLevel::error;
        if (s == "info") return LogLevel::info;
        if (s == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log(LogLevel level, const std::string& message) {
    if (level > log_level()) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[%s] %s\n", names[static_cast<int>(level)], message.c_str());
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("failed to format double");
    return std::string(buf, ptr);
}

namespace {

// Skips whitespace and '#' comment lines between PGM header tokens.
int next_pgm_token(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF) throw std::runtime_error("truncated PGM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

}  // namespace

roidet::FrameGray read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw std::runtime_error(path.string() + ": not a binary PGM (P5)");
    int width = next_pgm_token(in);
    int height = next_pgm_token(in);
    int maxval = next_pgm_token(in);
    if (maxval != 255) throw std::runtime_error(path.string() + ": only maxval 255 supported");
    if (width <= 0 || height <= 0) throw std::runtime_error(path.string() + ": bad dimensions");
    roidet::FrameGray frame;
    frame.width = width;
    frame.height = height;
    frame.data.resize(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(frame.data.data()), static_cast<std::streamsize>(frame.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != frame.data.size())
        throw std::runtime_error(path.string() + ": truncated pixel data");
    return frame;
}

void write_pgm(const std::filesystem::path& path, const roidet::FrameGray& frame) {
    std::string content = "P5\n" + std::to_string(frame.width) + " " + std::to_string(frame.height) + "\n255\n";
    content.append(reinterpret_cast<const char*>(frame.data.data()), frame.data.size());
    atomic_write(path, content);
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != table.header.size())
                throw std::runtime_error(path.string() + ": row " + std::to_string(table.rows.size() + 2) +
                                         " has " + std::to_string(fields.size()) + " fields, expected " +
                                         std::to_string(table.header.size()));
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

double parse_double(const std::string& s) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("not a number: '" + s + "'");
    return value;
}

long parse_long(const std::string& s) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("not an integer: '" + s + "'");
    return value;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace roistream::io
