#pragma once

#include <string>
#include <vector>

namespace chargeplan {

// Minimal delimited-text support for the comma-separated input formats.
// Fields are trimmed; quoting is not supported (ids and labels must not
// contain commas). Parse errors carry file:line context.

std::vector<std::string> split_fields(const std::string& line, char sep = ',');
std::string trim(const std::string& s);
std::string lowercase(const std::string& s);

struct CsvContext {
    std::string path;
    int line = 0;

    std::string where() const { return path + ":" + std::to_string(line); }
};

double parse_double(const std::string& field, const CsvContext& ctx, const char* what);
long long parse_int(const std::string& field, const CsvContext& ctx, const char* what);

// Natural ordering for identifiers: numeric when both sides parse as
// integers, lexicographic otherwise. Used for all id tie-breaks.
bool natural_less(const std::string& a, const std::string& b);

std::string read_text_file(const std::string& path);
bool has_json_extension(const std::string& path);

} // namespace chargeplan
