#include "report.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace regaudit::cli {

Format parse_format(const std::string& text) {
    if (text == "table") return Format::table;
    if (text == "csv") return Format::csv;
    if (text == "structured") return Format::structured;
    throw input_error(fmt::format("unknown format '{}' (table|csv|structured)", text));
}

Cell::Cell(double value, int decimals) : number(value) {
    if (std::isnan(value)) {
        text = "nan";
    } else if (std::isinf(value)) {
        text = value > 0 ? "inf" : "-inf";
    } else {
        text = fmt::format("{:.{}f}", value, decimals);
        if (text == fmt::format("-{:.{}f}", 0.0, decimals)) {
            text.erase(0, 1);
        }
    }
}

Cell Cell::integer(long value) {
    Cell c(fmt::format("{}", value));
    c.number = static_cast<double>(value);
    return c;
}

Cell Cell::scientific(double value, int digits) {
    Cell c(fmt::format("{:.{}e}", value, digits));
    c.number = value;
    return c;
}

namespace {

void render_table(const Report& report, std::ostream& out) {
    if (!report.title.empty()) {
        out << report.title << '\n';
    }
    std::size_t key_width = 0;
    for (const auto& [key, value] : report.fields) {
        key_width = std::max(key_width, key.size());
    }
    for (const auto& [key, value] : report.fields) {
        out << fmt::format("  {:<{}}  {}\n", key, key_width, value.text);
    }
    for (const auto& table : report.tables) {
        out << '\n';
        if (!table.name.empty()) {
            out << table.name << '\n';
        }
        std::vector<std::size_t> width(table.columns.size());
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            width[c] = table.columns[c].size();
            for (const auto& row : table.rows) {
                width[c] = std::max(width[c], row[c].text.size());
            }
        }
        auto line = [&](auto&& get) {
            std::string s = " ";
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                const std::string& t = get(c);
                // first column left aligned, numbers right aligned
                s += c == 0 ? fmt::format(" {:<{}}", t, width[c]) : fmt::format("  {:>{}}", t, width[c]);
            }
            while (!s.empty() && s.back() == ' ') {
                s.pop_back();
            }
            out << s << '\n';
        };
        line([&](std::size_t c) -> const std::string& { return table.columns[c]; });
        for (const auto& row : table.rows) {
            line([&](std::size_t c) -> const std::string& { return row[c].text; });
        }
    }
    if (!report.flags.empty()) {
        out << '\n';
        for (const auto& f : report.flags) {
            out << "FLAG: " << f << '\n';
        }
    }
    if (!report.notes.empty()) {
        out << '\n';
        for (const auto& n : report.notes) {
            out << "note: " << n << '\n';
        }
    }
}

void render_csv(const Report& report, std::ostream& out) {
    auto row_out = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << io::csv_escape(cells[i]);
        }
        out << '\n';
    };
    if (report.tables.empty()) {
        row_out({"field", "value"});
        for (const auto& [key, value] : report.fields) {
            row_out({key, value.text});
        }
        return;
    }
    for (std::size_t t = 0; t < report.tables.size(); ++t) {
        const auto& table = report.tables[t];
        if (t > 0) {
            out << '\n';
        }
        row_out(table.columns);
        for (const auto& row : table.rows) {
            std::vector<std::string> cells;
            for (const auto& c : row) {
                cells.push_back(c.text);
            }
            row_out(cells);
        }
    }
}

nlohmann::ordered_json to_json(const Cell& c) {
    if (c.number && std::isfinite(*c.number)) {
        return *c.number;
    }
    return c.text;
}

void render_structured(const Report& report, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["title"] = report.title;
    doc["fields"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.fields) {
        doc["fields"][key] = to_json(value);
    }
    doc["tables"] = nlohmann::ordered_json::array();
    for (const auto& table : report.tables) {
        nlohmann::ordered_json t;
        t["name"] = table.name;
        t["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                r[table.columns[c]] = to_json(row[c]);
            }
            t["rows"].push_back(std::move(r));
        }
        doc["tables"].push_back(std::move(t));
    }
    doc["flags"] = report.flags;
    doc["notes"] = report.notes;
    out << doc.dump(2) << '\n';
}

} // namespace

void render(const Report& report, Format format, std::ostream& out) {
    switch (format) {
    case Format::table:
        render_table(report, out);
        break;
    case Format::csv:
        render_csv(report, out);
        break;
    case Format::structured:
        render_structured(report, out);
        break;
    }
}

} // namespace regaudit::cli
