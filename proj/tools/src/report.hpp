#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace vctool {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Column {
    std::string name;
    std::string unit; // empty for labels and flags
};

struct Report {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    json extra = json::object();      // tensors, fit parameters, causality
    json diagnostics = json::array(); // quadrature notes per point
    bool converged = true;            // false: exit 2
};

// Unit label for a quantity under the run's unit system.
std::string unit_label(vcorr::Dimension d, const RunConfig& c);
std::string correlation_unit(vcorr::FieldPair p, const RunConfig& c);

json tensor_json(const vcorr::Tensor3& t);

void write_report(std::ostream& os, const Report& r, const RunConfig& c);
void write_config_error(std::ostream& os, const ConfigError& e);

// RFC 4180 quoting; fields without separators, quotes or line breaks pass through.
std::string csv_field(const std::string& s);
// Splits one CSV record, undoing the quoting above.
std::vector<std::string> csv_split(const std::string& line);

} // namespace vctool
