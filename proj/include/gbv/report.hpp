#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace gbv {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// A table with one row per grid point. The last column is always
/// "wall_seconds"; everything before it is deterministic.
class ExperimentReport {
public:
    explicit ExperimentReport(std::vector<std::string> columns);

    /// `cells` excludes the wall-time column.
    void add_row(std::vector<Cell> cells, double wall_seconds);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Round-trip decimal form ("%.17g").
std::string format_number(double v);

/// RFC 4180 quoting: wraps fields containing ',', '"' or newlines.
std::string csv_field(const std::string& s);

} // namespace gbv
