#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ihpm {

// Formats with 12 significant digits; integral results gain a trailing ".0"
// so columns are unambiguously floating point ("1" -> "1.0"). Negative zero
// collapses to "0.0".
inline std::string fmt_sig(double v) {
    if (v == 0.0) return "0.0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    if (s.find_first_not_of("-0123456789") == std::string::npos) s += ".0";
    return s;
}

inline std::vector<std::string> split_list(std::string_view text, char sep = ',') {
    std::vector<std::string> parts;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t end = text.find(sep, start);
        const std::string_view piece =
            text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
        const size_t a = piece.find_first_not_of(" \t");
        if (a != std::string_view::npos) {
            const size_t b = piece.find_last_not_of(" \t");
            parts.emplace_back(piece.substr(a, b - a + 1));
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return parts;
}

inline std::string join_list(const std::vector<std::string>& parts, std::string_view sep = ",") {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace ihpm
