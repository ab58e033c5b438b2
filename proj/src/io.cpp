#include "regaudit/io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace regaudit::io {

using nlohmann::json;
using nlohmann::ordered_json;

parse_error::parse_error(const std::string& where, const std::string& what)
    : input_error(fmt::format("{}: {}", where, what)), where_(where) {}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error(path.string(), "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(fmt::format("{}:byte {}", origin, e.byte), "malformed JSON");
    }
}

const json& require(const json& obj, const char* key, const std::string& origin) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw parse_error(origin, fmt::format("missing key '{}'", key));
    }
    return obj.at(key);
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) {
        throw parse_error(where, "expected a number");
    }
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) {
        throw parse_error(where, "expected a string");
    }
    return v.get<std::string>();
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& origin) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return std::nullopt;
    }
    return as_number(obj.at(key), fmt::format("{}:{}", origin, key));
}

double parse_cell(const std::string& cell, const std::string& where) {
    std::string s = cell;
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.pop_back();
    }
    std::size_t start = s.find_first_not_of(" \t");
    if (start == std::string::npos) {
        throw parse_error(where, "empty numeric field");
    }
    s = s.substr(start);
    if (s.front() == '+') {
        s.erase(0, 1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw parse_error(where, fmt::format("'{}' is not a number", cell));
    }
    return value;
}

} // namespace

RegressionModel parse_model(const std::string& text, const std::string& origin) {
    const json doc = parse_json(text, origin);
    if (!doc.is_object()) {
        throw parse_error(origin, "model must be a JSON object");
    }
    const std::string label = as_string(require(doc, "label", origin), origin + ":label");
    const double constant = as_number(require(doc, "constant", origin), origin + ":constant");
    const json& preds = require(doc, "predictors", origin);
    if (!preds.is_array()) {
        throw parse_error(origin + ":predictors", "expected an array");
    }
    std::vector<PredictorSummary> predictors;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const auto where = fmt::format("{}:predictors[{}]", origin, i);
        const json& p = preds[i];
        predictors.push_back({as_string(require(p, "name", where), where + ".name"),
                              as_number(require(p, "coefficient", where), where + ".coefficient"),
                              as_number(require(p, "mean", where), where + ".mean"),
                              as_number(require(p, "sd", where), where + ".sd")});
    }
    ReportedOutcome reported;
    if (doc.contains("reported")) {
        const json& r = doc.at("reported");
        const auto where = origin + ":reported";
        if (!r.is_object()) {
            throw parse_error(where, "expected an object");
        }
        reported.mean = optional_number(r, "mean", where);
        reported.sd = optional_number(r, "sd", where);
        reported.r2 = optional_number(r, "r2", where);
        if (r.contains("n") && !r.at("n").is_null()) {
            if (!r.at("n").is_number_integer()) {
                throw parse_error(where + ":n", "expected an integer");
            }
            reported.n = r.at("n").get<int>();
        }
    }
    try {
        return make_model(label, constant, std::move(predictors), reported);
    } catch (const input_error& e) {
        throw parse_error(origin, e.what());
    }
}

RegressionModel load_model(const std::filesystem::path& path) {
    return parse_model(read_text(path), path.string());
}

std::string model_to_json(const RegressionModel& model) {
    ordered_json doc;
    doc["label"] = model.label;
    doc["constant"] = model.constant;
    doc["predictors"] = ordered_json::array();
    for (const auto& p : model.predictors) {
        ordered_json row;
        row["name"] = p.name;
        row["coefficient"] = p.coefficient;
        row["mean"] = p.mean;
        row["sd"] = p.sd;
        doc["predictors"].push_back(row);
    }
    const auto& r = model.reported;
    if (r.mean || r.sd || r.r2 || r.n) {
        ordered_json rep = ordered_json::object();
        if (r.mean) rep["mean"] = *r.mean;
        if (r.sd) rep["sd"] = *r.sd;
        if (r.r2) rep["r2"] = *r.r2;
        if (r.n) rep["n"] = *r.n;
        doc["reported"] = rep;
    }
    return doc.dump(2) + "\n";
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && record[0].find_first_not_of(" \t") == std::string::npos;
        if (!blank) {
            records.push_back(std::move(record));
        }
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field_started && !field.empty()) {
                throw parse_error(fmt::format("{}:{}", origin, line), "stray quote inside unquoted field");
            }
            in_quotes = true;
            field_started = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            break;
        case '\n':
            end_record();
            ++line;
            break;
        default:
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes) {
        throw parse_error(fmt::format("{}:{}", origin, line), "unterminated quoted field");
    }
    if (!field.empty() || !record.empty()) {
        end_record();
    }
    if (records.empty()) {
        throw parse_error(origin, "no header row");
    }
    CsvTable table;
    table.header = std::move(records.front());
    for (auto& h : table.header) {
        const auto a = h.find_first_not_of(" \t");
        const auto b = h.find_last_not_of(" \t");
        h = a == std::string::npos ? std::string() : h.substr(a, b - a + 1);
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw parse_error(fmt::format("{}:record {}", origin, r + 1),
                              fmt::format("{} fields, header has {}", records[r].size(), table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

CsvTable load_csv(const std::filesystem::path& path) {
    return parse_csv(read_text(path), path.string());
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out += '"';
    return out;
}

ObservationTable to_observations(const CsvTable& csv, std::optional<std::string> outcome, const std::string& origin) {
    std::vector<std::vector<double>> rows;
    rows.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        std::vector<double> row;
        for (std::size_t c = 0; c < csv.header.size(); ++c) {
            row.push_back(parse_cell(csv.rows[r][c], fmt::format("{}:row {} column '{}'", origin, r + 1, csv.header[c])));
        }
        rows.push_back(std::move(row));
    }
    try {
        return make_table(csv.header, std::move(rows), std::move(outcome));
    } catch (const parse_error&) {
        throw;
    } catch (const input_error& e) {
        throw parse_error(origin, e.what());
    }
}

ObservationTable load_observations(const std::filesystem::path& path, std::optional<std::string> outcome) {
    return to_observations(load_csv(path), std::move(outcome), path.string());
}

CovarianceMatrix to_covariance(const CsvTable& csv, const std::string& origin) {
    std::vector<std::string> names = csv.header;
    bool labelled = false;
    if (!names.empty() && csv.rows.size() + 1 == names.size()) {
        labelled = true;
        names.erase(names.begin());
    }
    if (csv.rows.size() != names.size()) {
        throw parse_error(origin, fmt::format("expected {} rows for a square matrix, found {}", names.size(),
                                              csv.rows.size()));
    }
    std::vector<std::vector<double>> entries;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& src = csv.rows[r];
        const std::size_t offset = labelled ? 1 : 0;
        if (labelled && src[0] != names[r]) {
            throw parse_error(fmt::format("{}:row {}", origin, r + 1),
                              fmt::format("row label '{}' does not match column '{}'", src[0], names[r]));
        }
        std::vector<double> row;
        for (std::size_t c = offset; c < src.size(); ++c) {
            row.push_back(parse_cell(src[c], fmt::format("{}:row {} column {}", origin, r + 1, c + 1)));
        }
        entries.push_back(std::move(row));
    }
    try {
        return CovarianceMatrix(std::move(names), std::move(entries));
    } catch (const input_error& e) {
        throw parse_error(origin, e.what());
    }
}

CovarianceMatrix load_covariance(const std::filesystem::path& path) {
    return to_covariance(load_csv(path), path.string());
}

QuantileProfile parse_profile(const std::string& text, const std::string& origin, Interpolation interpolation) {
    const json doc = parse_json(text, origin);
    const std::string label = as_string(require(doc, "label", origin), origin + ":label");
    Direction direction = Direction::higher_is_better;
    if (doc.contains("direction")) {
        try {
            direction = parse_direction(as_string(doc.at("direction"), origin + ":direction"));
        } catch (const parse_error&) {
            throw;
        } catch (const input_error& e) {
            throw parse_error(origin + ":direction", e.what());
        }
    }
    std::optional<int> n;
    if (doc.contains("n") && !doc.at("n").is_null()) {
        if (!doc.at("n").is_number_integer()) {
            throw parse_error(origin + ":n", "expected an integer");
        }
        n = doc.at("n").get<int>();
    }
    const json& pct = require(doc, "percentiles", origin);
    const json& scores = require(doc, "scores", origin);
    if (!pct.is_array() || !scores.is_array() || pct.size() != scores.size()) {
        throw parse_error(origin, "'percentiles' and 'scores' must be arrays of equal length");
    }
    std::vector<PercentilePoint> points;
    for (std::size_t i = 0; i < pct.size(); ++i) {
        const auto where = fmt::format("{}:scores[{}]", origin, i);
        double score = 0.0;
        if (scores[i].is_string()) {
            try {
                score = parse_threshold(scores[i].get<std::string>());
            } catch (const input_error& e) {
                throw parse_error(where, e.what());
            }
        } else {
            score = as_number(scores[i], where);
        }
        points.push_back({as_number(pct[i], fmt::format("{}:percentiles[{}]", origin, i)), score});
    }
    try {
        return QuantileProfile(label, std::move(points), direction, interpolation, n);
    } catch (const input_error& e) {
        throw parse_error(origin, e.what());
    }
}

QuantileProfile load_profile(const std::filesystem::path& path, Interpolation interpolation) {
    return parse_profile(read_text(path), path.string(), interpolation);
}

double parse_threshold(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        return parse_cell(text, fmt::format("'{}'", text));
    }
    const double minutes = parse_cell(text.substr(0, colon), fmt::format("'{}'", text));
    const double seconds = parse_cell(text.substr(colon + 1), fmt::format("'{}'", text));
    if (minutes < 0 || seconds < 0 || seconds >= 60) {
        throw input_error(fmt::format("'{}' is not a valid m:ss time", text));
    }
    return 60.0 * minutes + seconds;
}

ScoringStandard parse_standard(const std::string& text, const std::string& origin) {
    const json doc = parse_json(text, origin);
    const json& events = require(doc, "events", origin);
    if (!events.is_array()) {
        throw parse_error(origin + ":events", "expected an array");
    }
    std::vector<EventStandard> out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto where = fmt::format("{}:events[{}]", origin, i);
        const json& e = events[i];
        EventStandard ev;
        ev.name = as_string(require(e, "name", where), where + ".name");
        ev.units = e.contains("units") ? as_string(e.at("units"), where + ".units") : "";
        if (e.contains("direction")) {
            try {
                ev.direction = parse_direction(as_string(e.at("direction"), where + ".direction"));
            } catch (const parse_error&) {
                throw;
            } catch (const input_error& err) {
                throw parse_error(where + ".direction", err.what());
            }
        }
        const json& anchors = require(e, "anchors", where);
        if (!anchors.is_array()) {
            throw parse_error(where + ".anchors", "expected an array");
        }
        for (std::size_t j = 0; j < anchors.size(); ++j) {
            const auto aw = fmt::format("{}.anchors[{}]", where, j);
            const json& a = anchors[j];
            const json& pts = require(a, "points", aw);
            if (!pts.is_number_integer()) {
                throw parse_error(aw + ".points", "expected an integer");
            }
            const json& thr = require(a, "threshold", aw);
            double threshold = 0.0;
            if (thr.is_string()) {
                try {
                    threshold = parse_threshold(thr.get<std::string>());
                } catch (const input_error& err) {
                    throw parse_error(aw + ".threshold", err.what());
                }
            } else {
                threshold = as_number(thr, aw + ".threshold");
            }
            ev.anchors.push_back({pts.get<int>(), threshold});
        }
        out.push_back(std::move(ev));
    }
    std::map<std::string, int> tiers;
    if (doc.contains("tiers")) {
        const json& t = doc.at("tiers");
        if (!t.is_object()) {
            throw parse_error(origin + ":tiers", "expected an object");
        }
        for (const auto& [name, value] : t.items()) {
            if (!value.is_number_integer()) {
                throw parse_error(origin + ":tiers." + name, "expected an integer");
            }
            tiers[name] = value.get<int>();
        }
    }
    try {
        return make_standard(std::move(out), std::move(tiers));
    } catch (const input_error& e) {
        throw parse_error(origin, e.what());
    }
}

ScoringStandard load_standard(const std::filesystem::path& path) {
    return parse_standard(read_text(path), path.string());
}

Cohort to_cohort(const CsvTable& csv, const std::string& origin) {
    static const std::string prefix = "group:";
    Cohort cohort;
    std::vector<std::size_t> event_idx;
    std::vector<std::size_t> group_idx;
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
        const auto& h = csv.header[c];
        if (h.starts_with(prefix)) {
            cohort.group_columns.push_back(h.substr(prefix.size()));
            group_idx.push_back(c);
        } else {
            cohort.event_columns.push_back(h);
            event_idx.push_back(c);
        }
    }
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        std::vector<double> ev;
        for (auto c : event_idx) {
            ev.push_back(parse_cell(csv.rows[r][c], fmt::format("{}:row {} column '{}'", origin, r + 1, csv.header[c])));
        }
        std::vector<std::string> gr;
        for (auto c : group_idx) {
            gr.push_back(csv.rows[r][c]);
        }
        cohort.events.push_back(std::move(ev));
        cohort.groups.push_back(std::move(gr));
    }
    return cohort;
}

Cohort load_cohort(const std::filesystem::path& path) {
    return to_cohort(load_csv(path), path.string());
}

namespace {

std::map<std::string, double> rate_map(const json& obj, const std::string& where) {
    if (!obj.is_object()) {
        throw parse_error(where, "expected an object of group rates");
    }
    std::map<std::string, double> out;
    for (const auto& [name, value] : obj.items()) {
        out[name] = as_number(value, where + "." + name);
    }
    return out;
}

} // namespace

RateFile parse_rates(const std::string& text, const std::string& origin) {
    const json doc = parse_json(text, origin);
    RateFile file;
    file.label = doc.contains("label") ? as_string(doc.at("label"), origin + ":label") : "";
    file.rates = rate_map(require(doc, "rates", origin), origin + ":rates");
    if (doc.contains("series")) {
        const json& s = doc.at("series");
        if (!s.is_array()) {
            throw parse_error(origin + ":series", "expected an array");
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto where = fmt::format("{}:series[{}]", origin, i);
            file.series.push_back({as_string(require(s[i], "period", where), where + ".period"),
                                   rate_map(require(s[i], "rates", where), where + ".rates")});
        }
    }
    return file;
}

RateFile load_rates(const std::filesystem::path& path) {
    return parse_rates(read_text(path), path.string());
}

CountFile parse_counts(const std::string& text, const std::string& origin) {
    const json doc = parse_json(text, origin);
    CountFile file;
    file.label = doc.contains("label") ? as_string(doc.at("label"), origin + ":label") : "";
    file.baseline = as_string(require(doc, "baseline", origin), origin + ":baseline");
    file.comparison = as_string(require(doc, "comparison", origin), origin + ":comparison");
    const json& counts = require(doc, "counts", origin);
    if (!counts.is_object()) {
        throw parse_error(origin + ":counts", "expected an object");
    }
    for (const auto& [test, groups] : counts.items()) {
        const auto tw = origin + ":counts." + test;
        if (!groups.is_object()) {
            throw parse_error(tw, "expected an object of groups");
        }
        for (const auto& [group, pf] : groups.items()) {
            const auto gw = tw + "." + group;
            const json& pass = require(pf, "pass", gw);
            const json& fail = require(pf, "fail", gw);
            if (!pass.is_number_integer() || !fail.is_number_integer() || pass.get<long>() < 0 ||
                fail.get<long>() < 0) {
                throw parse_error(gw, "pass and fail must be nonnegative integers");
            }
            file.counts[test][group] = {pass.get<long>(), fail.get<long>()};
        }
    }
    for (const auto* test : {&file.baseline, &file.comparison}) {
        if (!file.counts.contains(*test)) {
            throw parse_error(origin, fmt::format("no counts for test '{}'", *test));
        }
    }
    return file;
}

CountFile load_counts(const std::filesystem::path& path) {
    return parse_counts(read_text(path), path.string());
}

} // namespace regaudit::io
