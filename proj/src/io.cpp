#include "ngforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ngforge {

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    auto parse_real = [](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad complex literal");
        return v;
    };

    char unit = 0;
    if (s.back() == 'i' || s.back() == 'j') {
        unit = s.back();
        s.pop_back();
    }
    if (unit) {
        // split the remaining text into "real part" and "imaginary coefficient"
        // at the last +/- that is not an exponent sign
        for (size_t k = s.size(); k-- > 0;) {
            if ((s[k] == '+' || s[k] == '-') && k > 0
                && s[k - 1] != 'e' && s[k - 1] != 'E') {
                return {parse_real(s.substr(0, k)), parse_real(s.substr(k))};
            }
        }
        return {0.0, parse_real(s)};
    }
    return {parse_real(s), 0.0};
}

std::string format_complex(Complex z) {
    std::string out = fmt_double(z.real());
    out += (z.imag() < 0 || std::signbit(z.imag())) ? "" : "+";
    out += fmt_double(z.imag());
    out += "i";
    return out;
}

std::string fmt_double(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest representation that still round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char test[40];
        std::snprintf(test, sizeof(test), "%.*g", prec, v);
        double back = 0;
        std::sscanf(test, "%lf", &back);
        if (back == v) return test;
    }
    return buf;
}

std::string Table::to_csv() const {
    std::ostringstream out;
    out << "#" << manifest.dump() << "\n";
    for (size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out << fmt_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
    return out.str();
}

std::string Table::to_json() const {
    nlohmann::json j;
    j["manifest"] = manifest;
    j["columns"] = columns;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << contents;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace ngforge
