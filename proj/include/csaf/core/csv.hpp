#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace csaf::csv {

/// Shortest decimal text that round-trips to the same double. Negative zero prints as "0".
std::string format_number(double value);

/// Quotes a field when it contains a separator, quote, or newline.
std::string quote(std::string_view field);

/// Accumulates rows into a string buffer. Output is byte-stable for identical input.
class Writer {
  public:
    explicit Writer(std::string_view header);

    Writer& field(double value);
    Writer& field(long long value);
    Writer& field(int value) { return field(static_cast<long long>(value)); }
    Writer& field(std::string_view text);
    void end_row();

    [[nodiscard]] const std::string& str() const { return buffer_; }

  private:
    void separator();

    std::string buffer_;
    bool row_open_ = false;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index for a header name; throws Parse when absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// RFC 4180 subset: comma separated, double-quote escaping, LF or CRLF line endings.
Table parse(std::string_view text);

double parse_number(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace csaf::csv
