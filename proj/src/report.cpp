#include "gbv/report.hpp"

#include "gbv/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace gbv {

ExperimentReport::ExperimentReport(std::vector<std::string> columns) : columns_(std::move(columns)) {
    columns_.push_back("wall_seconds");
}

void ExperimentReport::add_row(std::vector<Cell> cells, double wall_seconds) {
    if (cells.size() + 1 != columns_.size()) throw ValidationError("report row has the wrong width");
    cells.emplace_back(wall_seconds);
    rows_.push_back(std::move(cells));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json cell_json(const Cell& c) {
    struct Visitor {
        nlohmann::json operator()(const std::string& s) const { return s; }
        nlohmann::json operator()(double d) const {
            if (!std::isfinite(d)) return format_number(d);
            return d;
        }
        nlohmann::json operator()(std::int64_t i) const { return i; }
        nlohmann::json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, c);
}

} // namespace

void ExperimentReport::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << csv_field(columns_[i]);
    }
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_field(cell_text(row[i]));
        }
        out << "\n";
    }
}

void ExperimentReport::write_json(std::ostream& out) const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) rec[columns_[i]] = cell_json(row[i]);
        arr.push_back(std::move(rec));
    }
    out << arr.dump(2) << "\n";
}

} // namespace gbv
