#include "csaf/core/csv.hpp"

#include "csaf/core/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace csaf {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::Duplicate: return "duplicate";
    case ErrorCode::TypeMismatch: return "type_mismatch";
    case ErrorCode::UnknownField: return "unknown_field";
    case ErrorCode::VersionUnsupported: return "version_unsupported";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::Conflict: return "conflict";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

namespace csv {

std::string format_number(double value) {
    if (value == 0.0) return "0";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) fail(ErrorCode::InvalidArgument, "cannot format number");
    return std::string(buf.data(), end);
}

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Writer::Writer(std::string_view header) {
    buffer_.append(header);
    buffer_ += '\n';
}

void Writer::separator() {
    if (row_open_) buffer_ += ',';
    row_open_ = true;
}

Writer& Writer::field(double value) {
    separator();
    buffer_ += format_number(value);
    return *this;
}

Writer& Writer::field(long long value) {
    separator();
    buffer_ += std::to_string(value);
    return *this;
}

Writer& Writer::field(std::string_view text) {
    separator();
    buffer_ += quote(text);
    return *this;
}

void Writer::end_row() {
    buffer_ += '\n';
    row_open_ = false;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    fail(ErrorCode::Parse, "missing CSV column '" + std::string(name) + "'");
}

Table parse(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
        record.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_record();
        } else if (c == '\r') {
            // CRLF: the LF closes the record
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) fail(ErrorCode::Parse, "unterminated quoted CSV field");
    if (field_started || !record.empty()) end_record();

    Table table;
    if (records.empty()) fail(ErrorCode::Parse, "empty CSV document");
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size())
            fail(ErrorCode::Parse, "CSV row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                                       " fields, expected " + std::to_string(table.header.size()));
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

double parse_number(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail(ErrorCode::Parse, "not a number: '" + std::string(text) + "'");
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

} // namespace csv
} // namespace csaf
