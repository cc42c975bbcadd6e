#include "chargeplan/csvio.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chargeplan/errors.hpp"

namespace chargeplan {

std::string trim(const std::string& s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& field, const CsvContext& ctx, const char* what) {
    if (field.empty()) fail(Errc::malformed_file, ctx.where() + ": empty " + std::string(what));
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(field.c_str(), &end);
    if (errno != 0 || end != field.c_str() + field.size() || !std::isfinite(v)) {
        fail(Errc::malformed_file,
             ctx.where() + ": cannot parse " + std::string(what) + " '" + field + "'");
    }
    return v;
}

long long parse_int(const std::string& field, const CsvContext& ctx, const char* what) {
    if (field.empty()) fail(Errc::malformed_file, ctx.where() + ": empty " + std::string(what));
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(field.c_str(), &end, 10);
    if (errno != 0 || end != field.c_str() + field.size()) {
        fail(Errc::malformed_file,
             ctx.where() + ": cannot parse " + std::string(what) + " '" + field + "'");
    }
    return v;
}

namespace {

bool parse_ll(const std::string& s, long long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtoll(s.c_str(), &end, 10);
    return errno == 0 && end == s.c_str() + s.size();
}

} // namespace

bool natural_less(const std::string& a, const std::string& b) {
    long long ia = 0;
    long long ib = 0;
    if (parse_ll(a, ia) && parse_ll(b, ib)) {
        if (ia != ib) return ia < ib;
        return a < b;
    }
    return a < b;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::malformed_file, "cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_json_extension(const std::string& path) {
    auto ends_with = [&](const std::string& suf) {
        return path.size() >= suf.size() &&
               lowercase(path.substr(path.size() - suf.size())) == suf;
    };
    return ends_with(".json") || ends_with(".geojson");
}

} // namespace chargeplan
