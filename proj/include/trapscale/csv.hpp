#ifndef TRAPSCALE_CSV_HPP
#define TRAPSCALE_CSV_HPP

#include <charconv>
#include <cstdint>
#include <string>

namespace trapscale::csv {

// Shortest decimal representation that round-trips the exact binary value.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline void append_field(std::string& row, const std::string& v) {
    if (!row.empty()) row.push_back(',');
    row += v;
}

inline void append_field(std::string& row, double v) { append_field(row, format_double(v)); }

inline void append_field(std::string& row, long long v) { append_field(row, std::to_string(v)); }

inline void append_field(std::string& row, std::uint64_t v) { append_field(row, std::to_string(v)); }

inline void append_field(std::string& row, std::size_t v) { append_field(row, std::to_string(v)); }

} // namespace trapscale::csv

#endif
