#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scarf/cli.hpp"

namespace scarf::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    return std::visit(overloaded{[](std::monostate) { return std::string(); },
                                 [](long long v) { return std::to_string(v); },
                                 [](double v) { return format_double(v); },
                                 [](const std::string& s) {
                                     if (s.find_first_of(",\"\n") == std::string::npos) return s;
                                     std::string q = "\"";
                                     for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                                     return q + "\"";
                                 }},
                      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
    return std::visit(overloaded{[](std::monostate) { return nlohmann::ordered_json(nullptr); },
                                 [](long long v) { return nlohmann::ordered_json(v); },
                                 [](double v) {
                                     // JSON has no NaN; absent values are null.
                                     return v == v ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
                                 },
                                 [](const std::string& s) { return nlohmann::ordered_json(s); }},
                      c);
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table::add_row: column count mismatch");
    rows.push_back(std::move(row));
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& t, const std::string& command, const std::string& summary) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    doc["summary"] = summary;
    return doc.dump(2) + "\n";
}

} // namespace scarf::cli
