#include "ecoroute/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ecoroute {

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), header_(std::move(header)) {
    for (std::size_t i = 0; i < header_.size(); ++i) out_ << (i ? "," : "") << quote(header_[i]);
    out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument("csv: row has " + std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        const Cell& c = cells[i];
        if (const auto* d = std::get_if<double>(&c))
            out_ << format_real(*d);
        else if (const auto* n = std::get_if<long long>(&c))
            out_ << *n;
        else if (const auto* s = std::get_if<std::string>(&c))
            out_ << quote(*s);
    }
    out_ << '\n';
}

}  // namespace ecoroute
