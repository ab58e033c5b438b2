#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace regaudit::cli {

enum class Format { table, csv, structured };

Format parse_format(const std::string& text);

/// One rendered value; `number` is kept so structured output stays numeric.
struct Cell {
    std::string text;
    std::optional<double> number;

    Cell() = default;
    Cell(std::string t) : text(std::move(t)) {}
    Cell(const char* t) : text(t) {}
    Cell(double value, int decimals);
    static Cell integer(long value);
    static Cell scientific(double value, int digits);
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Output of one command. Rendering is a pure function of the contents.
struct Report {
    std::string title;
    std::vector<std::pair<std::string, Cell>> fields;
    std::vector<Table> tables;
    std::vector<std::string> flags;
    std::vector<std::string> notes;

    void field(std::string key, Cell value) { fields.emplace_back(std::move(key), std::move(value)); }
};

void render(const Report& report, Format format, std::ostream& out);

} // namespace regaudit::cli
