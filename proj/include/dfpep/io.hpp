#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dfpep/errors.hpp"

namespace dfpep::io {

/// Shortest representation that round-trips the exact double (never more
/// than 17 significant digits).
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// RFC 4180 writer: header row, CRLF records, quoting only where required.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::string out;
        append_record(out, header_);
        for (const auto& row : rows_) {
            append_record(out, row);
        }
        return out;
    }

    std::size_t row_count() const { return rows_.size(); }

  private:
    static void append_record(std::string& out, const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) {
                out.push_back(',');
            }
            append_field(out, fields[i]);
        }
        out += "\r\n";
    }

    static void append_field(std::string& out, const std::string& field) {
        const bool needs_quotes =
            field.find_first_of(",\"\r\n") != std::string::npos;
        if (!needs_quotes) {
            out += field;
            return;
        }
        out.push_back('"');
        for (char c : field) {
            if (c == '"') {
                out.push_back('"');
            }
            out.push_back(c);
        }
        out.push_back('"');
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file: " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw ConfigError("failed writing output file: " + path.string());
    }
}

} // namespace dfpep::io
