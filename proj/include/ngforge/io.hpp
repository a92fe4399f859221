// CLI-facing serialization: complex literals, deterministic number formatting
// and the CSV-with-JSON-manifest table format.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ngforge/fock.hpp"

namespace ngforge {

/// Parses "a+bi" / "a-bi" / "a" / "bi" / "i" (also accepts 'j').
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

/// Shortest round-trippable decimal form; locale-independent, so identical
/// configs produce byte-identical files.
std::string fmt_double(double v);

/// One output table: a '#'-prefixed JSON manifest line, a header line and
/// comma-separated rows.
struct Table {
    nlohmann::json manifest;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    std::string to_json() const;
};

void write_file(const std::string& path, const std::string& contents);

} // namespace ngforge
