// Minimal RFC 4180 helpers for the report and dump files.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crdiff::csv {

/// Quotes the field if it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// Splits one record. Throws DataError on an unterminated quote.
std::vector<std::string> split(std::string_view line);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Fixed-point with the given number of decimals.
std::string format_fixed(double value, int decimals);

}  // namespace crdiff::csv
