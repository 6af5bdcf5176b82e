#include "lolab/harness/report.hpp"

#include "lolab/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace lolab::harness {

std::string format_real(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

namespace {

std::string render(const Cell& c) {
    struct Visitor {
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(NA) const { return "NA"; }
    };
    return std::visit(Visitor{}, c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw ArgumentError(fmt::format("row has {} cells, table has {} columns", row.size(), columns_.size()));
    rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os, const std::string& preamble) const {
    if (!preamble.empty()) os << "# " << preamble << "\r\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_field(columns_[i]);
    os << "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(render(row[i]));
        os << "\r\n";
    }
}

void Table::write_plot(std::ostream& os, const std::string& preamble) const {
    if (!preamble.empty()) os << "# " << preamble << '\n';
    os << '#';
    for (const auto& c : columns_) os << ' ' << c;
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << render(row[i]);
        os << '\n';
    }
}

} // namespace lolab::harness
