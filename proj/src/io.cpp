#include "frec/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace frec {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos
                            ? std::string()
                            : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_number(const std::string& cell, double& out) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end && !cell.empty();
}

bool is_header_row(const std::vector<std::string>& cells) {
    double prev = -1.0;
    for (const std::string& cell : cells) {
        double v = 0.0;
        if (!parse_number(cell, v)) return false;
        if (!(v >= 0.0 && v <= 1.0 && v > prev)) return false;
        prev = v;
    }
    return true;
}

}  // namespace

FunctionalSample parse_csv(std::istream& in, const std::string& name) {
    std::vector<std::vector<std::string>> raw;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::size_t> line_numbers;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        raw.push_back(split_row(line));
        line_numbers.push_back(line_no);
    }
    if (raw.empty()) {
        throw FormatError(name + ": empty file");
    }

    const std::size_t m = raw.front().size();
    if (m < 2) {
        throw FormatError(name + ": need at least 2 columns");
    }
    for (std::size_t r = 0; r < raw.size(); ++r) {
        if (raw[r].size() != m) {
            throw FormatError(name + ": row " + std::to_string(line_numbers[r]) +
                              " has " + std::to_string(raw[r].size()) +
                              " cells, expected " + std::to_string(m));
        }
    }

    FunctionalSample sample;
    std::size_t first_data = 0;
    if (raw.size() >= 2 && is_header_row(raw.front())) {
        sample.grid.points.resize(m);
        sample.grid.weights.assign(m, 1.0 / static_cast<double>(m));
        for (std::size_t k = 0; k < m; ++k) {
            parse_number(raw.front()[k], sample.grid.points[k]);
        }
        first_data = 1;
    } else {
        sample.grid = uniform_grid(m);
    }

    for (std::size_t r = first_data; r < raw.size(); ++r) {
        Curve c;
        c.values.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            if (!parse_number(raw[r][k], c.values[k])) {
                throw FormatError(name + ": row " + std::to_string(line_numbers[r]) +
                                  ", column " + std::to_string(k + 1) +
                                  ": not a number: '" + raw[r][k] + "'");
            }
        }
        sample.curves.push_back(std::move(c));
    }
    if (sample.curves.empty()) {
        throw FormatError(name + ": no data rows");
    }
    try {
        validate_sample(sample);
    } catch (const std::invalid_argument& e) {
        throw FormatError(name + ": " + e.what());
    }
    return sample;
}

FunctionalSample parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError(path + ": cannot open file");
    }
    return parse_csv(in, path);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const FunctionalSample& sample, std::ostream& out,
               bool with_header) {
    const std::size_t m = sample.grid_size();
    if (with_header) {
        for (std::size_t k = 0; k < m; ++k) {
            out << (k ? "," : "") << format_double(sample.grid.points[k]);
        }
        out << "\n";
    }
    for (const Curve& c : sample.curves) {
        for (std::size_t k = 0; k < m; ++k) {
            out << (k ? "," : "") << format_double(c.values[k]);
        }
        out << "\n";
    }
}

void write_csv(const FunctionalSample& sample, const std::string& path,
               bool with_header) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError(path + ": cannot open file for writing");
    }
    write_csv(sample, out, with_header);
}

ResultDocument::ResultDocument(std::string command) {
    set("schema_version", std::string("1"));
    set("command", command);
}

void ResultDocument::set(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}
void ResultDocument::set(const std::string& key, double value) {
    set(key, format_double(value));
}
void ResultDocument::set(const std::string& key, std::int64_t value) {
    set(key, std::to_string(value));
}
void ResultDocument::set(const std::string& key, std::uint64_t value) {
    set(key, std::to_string(value));
}
void ResultDocument::set(const std::string& key, bool value) {
    set(key, std::string(value ? "true" : "false"));
}

ResultDocument::Table& ResultDocument::add_table(const std::string& name,
                                                 std::vector<std::string> columns) {
    tables_.push_back(Table{name, std::move(columns), {}});
    return tables_.back();
}

std::string ResultDocument::to_string() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries_) {
        out << key << " = " << value << "\n";
    }
    for (const Table& table : tables_) {
        out << "\n[" << table.name << "]\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? " " : "") << table.columns[c];
        }
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? " " : "") << row[c];
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace frec
