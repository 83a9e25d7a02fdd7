#include "ceda/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ceda {

bool ColumnSchema::is_categorical(const std::string& name) const {
    return std::find(categorical_columns.begin(), categorical_columns.end(), name) !=
           categorical_columns.end();
}

namespace {

std::string trim(const std::string& value) {
    const auto first = value.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = value.find_last_not_of(" \t\r\n");
    return value.substr(first, last - first + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

bool parse_double(const std::string& token, double* out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, *out);
    return result.ec == std::errc{} && result.ptr == end;
}

}  // namespace

RawDataset load_csv(const std::string& path, const ColumnSchema& schema) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("cannot open CSV file: " + path);
    }

    std::string line;
    if (!std::getline(file, line)) {
        throw std::invalid_argument("empty CSV file: " + path);
    }
    const std::vector<std::string> header = split_line(line);

    if (!schema.columns.empty() && header != schema.columns) {
        std::string expected;
        for (const auto& c : schema.columns) expected += c + ",";
        std::string got;
        for (const auto& c : header) got += c + ",";
        throw std::invalid_argument("header/schema mismatch in " + path + ": expected [" +
                                    expected + "] got [" + got + "]");
    }

    std::size_t label_index = header.size();
    if (!schema.label_column.empty()) {
        const auto it = std::find(header.begin(), header.end(), schema.label_column);
        if (it == header.end()) {
            throw std::invalid_argument("label column '" + schema.label_column +
                                        "' not found in " + path);
        }
        label_index = static_cast<std::size_t>(it - header.begin());
    }

    RawDataset data;
    data.labeled = !schema.label_column.empty();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_index) {
            continue;
        }
        RawColumn column;
        column.name = header[c];
        column.categorical = schema.is_categorical(header[c]);
        data.features.push_back(std::move(column));
    }

    while (std::getline(file, line)) {
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            ++data.dropped_rows;
            continue;
        }

        std::vector<double> numeric_values;
        bool parse_ok = true;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == label_index || schema.is_categorical(header[c])) {
                continue;
            }
            double value = 0.0;
            if (!parse_double(cells[c], &value) || !std::isfinite(value)) {
                parse_ok = false;
                break;
            }
            numeric_values.push_back(value);
        }
        if (!parse_ok) {
            ++data.dropped_rows;
            continue;
        }

        std::size_t feature_slot = 0;
        std::size_t numeric_slot = 0;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == label_index) {
                continue;
            }
            RawColumn& column = data.features[feature_slot++];
            if (column.categorical) {
                column.tokens.push_back(cells[c]);
            } else {
                column.numeric.push_back(numeric_values[numeric_slot++]);
            }
        }
        if (data.labeled) {
            data.raw_labels.push_back(cells[label_index]);
        }
        ++data.rows;
    }

    if (data.rows == 0) {
        throw std::invalid_argument("no usable rows in " + path + " (dropped " +
                                    std::to_string(data.dropped_rows) + ")");
    }
    return data;
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

void save_csv(const std::string& path, const RawDataset& data, const std::string& label_column) {
    std::ofstream file(path, std::ios::trunc);
    if (!file) {
        throw std::invalid_argument("cannot open CSV file for writing: " + path);
    }

    for (std::size_t c = 0; c < data.features.size(); ++c) {
        if (c > 0) file << ',';
        file << data.features[c].name;
    }
    if (data.labeled) {
        if (!data.features.empty()) file << ',';
        file << label_column;
    }
    file << '\n';

    for (std::size_t r = 0; r < data.rows; ++r) {
        for (std::size_t c = 0; c < data.features.size(); ++c) {
            if (c > 0) file << ',';
            const RawColumn& column = data.features[c];
            if (column.categorical) {
                file << column.tokens[r];
            } else {
                file << format_double(column.numeric[r]);
            }
        }
        if (data.labeled) {
            if (!data.features.empty()) file << ',';
            file << data.raw_labels[r];
        }
        file << '\n';
    }
}

}  // namespace ceda
