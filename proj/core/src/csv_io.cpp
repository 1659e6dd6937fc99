#include "ngems/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ngems/errors.hpp"

namespace ngems {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double_field(const std::string& field, const std::string& path,
                          std::size_t line_no, const char* name) {
    double value = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        fail(path, line_no, std::string("cannot parse ") + name + " from '" + field + "'");
    }
    return value;
}

std::int64_t parse_int_field(const std::string& field, const std::string& path,
                             std::size_t line_no, const char* name) {
    std::int64_t value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        fail(path, line_no, std::string("cannot parse ") + name + " from '" + field + "'");
    }
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::vector<WeatherRecord> parse_weather_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw DataError(path + ": empty file");
    }
    ++line_no;
    if (strip_cr(line) != "timestamp_epoch_s,measured_wm2,forecast_wm2,horizon_h") {
        fail(path, line_no,
             "expected header 'timestamp_epoch_s,measured_wm2,forecast_wm2,horizon_h'");
    }

    std::vector<WeatherRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            fail(path, line_no,
                 "expected 4 fields, got " + std::to_string(fields.size()));
        }
        WeatherRecord r;
        r.timestamp_s = parse_int_field(fields[0], path, line_no, "timestamp_epoch_s");
        if (!fields[1].empty()) {
            r.measured_wm2 = parse_double_field(fields[1], path, line_no, "measured_wm2");
        }
        if (!fields[2].empty()) {
            r.forecast_wm2 = parse_double_field(fields[2], path, line_no, "forecast_wm2");
        }
        if (!r.measured_wm2 && !r.forecast_wm2) {
            fail(path, line_no, "row carries neither measured nor forecast irradiance");
        }
        r.horizon_h = parse_double_field(fields[3], path, line_no, "horizon_h");
        if (r.horizon_h < 0.0) {
            fail(path, line_no, "horizon_h must be >= 0");
        }
        records.push_back(r);
    }
    if (records.empty()) {
        throw DataError(path + ": no data rows");
    }
    return records;
}

std::vector<LoadRecord> parse_load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw DataError(path + ": empty file");
    }
    ++line_no;
    if (strip_cr(line) != "timestamp_epoch_s,load_kw") {
        fail(path, line_no, "expected header 'timestamp_epoch_s,load_kw'");
    }

    std::vector<LoadRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            fail(path, line_no, "expected 2 fields, got " + std::to_string(fields.size()));
        }
        LoadRecord r;
        r.timestamp_s = parse_int_field(fields[0], path, line_no, "timestamp_epoch_s");
        r.load_kw = parse_double_field(fields[1], path, line_no, "load_kw");
        if (r.load_kw < 0.0) {
            fail(path, line_no, "load_kw must be >= 0 (consumption)");
        }
        records.push_back(r);
    }
    if (records.empty()) {
        throw DataError(path + ": no data rows");
    }
    return records;
}

}  // namespace ngems
