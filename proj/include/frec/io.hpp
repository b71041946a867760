#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "frec/core.hpp"

namespace frec {

/// Malformed input data (ragged rows, non-numeric cells, empty files).
/// Maps to exit code 2 in the CLI.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV: one curve per row. If the first row parses as strictly increasing
/// reals in [0,1] it is taken as the grid abscissae (equal quadrature
/// weights); otherwise a uniform grid over the columns is assumed.
FunctionalSample parse_csv(const std::string& path);
FunctionalSample parse_csv(std::istream& in, const std::string& name);

/// Writes values with 17 significant digits so a read-back reproduces the
/// sample bit-exactly. The grid header is written when requested.
void write_csv(const FunctionalSample& sample, const std::string& path,
               bool with_header = true);
void write_csv(const FunctionalSample& sample, std::ostream& out,
               bool with_header = true);

/// Line-oriented result document: `key = value` pairs in insertion order,
/// plus named column tables. Diff-friendly and versioned.
class ResultDocument {
public:
    explicit ResultDocument(std::string command);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, std::uint64_t value);
    void set(const std::string& key, bool value);

    struct Table {
        std::string name;
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;
    };

    Table& add_table(const std::string& name, std::vector<std::string> columns);

    std::string to_string() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::vector<Table> tables_;
};

/// Canonical shortest-round-trip decimal rendering of a double.
std::string format_double(double v);

}  // namespace frec
