#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lolab::harness {

struct NA {};

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string, NA>;

/// Fixed-schema table written as RFC 4180 CSV.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    /// Throws ArgumentError if the row width does not match the header.
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    /// Header row first, reals with 17 significant digits, NA for missing values.
    /// A non-empty preamble is written as a single leading `# ` comment line.
    void write_csv(std::ostream& os, const std::string& preamble = {}) const;

    /// Whitespace-separated columns with a `#` header (gnuplot-ready).
    void write_plot(std::ostream& os, const std::string& preamble = {}) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double v);

} // namespace lolab::harness
