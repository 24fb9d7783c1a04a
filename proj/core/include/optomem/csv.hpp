#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

// CSV emission and artifact checksumming. Output is locale-independent:
// '.' decimal separator, shortest round-trip double formatting, '\n' line
// endings. Identical data therefore serializes to identical bytes.

namespace optomem {

// Shortest decimal string that round-trips the double (%.17g trimmed).
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void row(const std::vector<std::string>& cells);

    // Convenience: formats doubles, passes strings through.
    struct Field {
        std::string text;
        Field(const char* s) : text(s) {}
        Field(const std::string& s) : text(s) {}
        Field(double v) : text(format_double(v)) {}
        Field(int v) : text(std::to_string(v)) {}
        Field(long v) : text(std::to_string(v)) {}
        Field(std::size_t v) : text(std::to_string(v)) {}
    };
    void row(std::initializer_list<Field> cells);

    void close();

private:
    std::ofstream out_;
    std::string path_;
};

// FNV-1a 64-bit digest.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t file_fnv1a64(const std::string& path);
std::string to_hex(std::uint64_t v);

} // namespace optomem
