#include "metabbo/util/text.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "metabbo/util/errors.hpp"

namespace metabbo {

std::string fmt_g17(double x) {
    // 17 significant digits always round-trip an IEEE double. Try shorter
    // representations first so common values stay readable (0.5, 100, ...).
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_sci3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3E", x);
    // Strip exponent zero-padding: 7.689E-09 -> 7.689E-9.
    std::string s(buf);
    auto e = s.find('E');
    if (e != std::string::npos && e + 2 < s.size()) {
        std::size_t d = e + 2; // first digit after the sign
        while (d + 1 < s.size() && s[d] == '0') s.erase(d, 1);
    }
    return s;
}

std::string fmt_fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

double parse_double(std::string_view text, std::string_view field) {
    std::string t(text);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE)
        throw DataError("cannot parse '" + t + "' as a number for field '" + std::string(field) + "'");
    return v;
}

long long parse_int(std::string_view text, std::string_view field) {
    std::string t(text);
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE)
        throw DataError("cannot parse '" + t + "' as an integer for field '" + std::string(field) + "'");
    return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back(sep);
        out += parts[i];
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace metabbo
