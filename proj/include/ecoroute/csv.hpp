#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ecoroute {

/// Shortest decimal text that parses back to exactly `v` ("nan"/"inf" for non-finite).
std::string format_real(double v);

/// Header-first CSV writer. Reals are written with round-trip precision;
/// an empty cell is written for `std::monostate`.
class CsvWriter {
public:
    using Cell = std::variant<std::monostate, double, long long, std::string>;

    CsvWriter(std::ostream& out, std::vector<std::string> header);

    void row(const std::vector<Cell>& cells);
    std::size_t columns() const { return header_.size(); }

private:
    std::ostream& out_;
    std::vector<std::string> header_;
};

}  // namespace ecoroute
