#pragma once

#include <string>
#include <string_view>

#include "crdiff/model.hpp"

namespace crdiff {

/// Parses integer epoch seconds or an ISO-8601 UTC timestamp
/// ("2024-03-04", "2024-03-04T09:30:00Z", "2024-03-04 09:30:00+00:00",
/// optional fractional seconds which are truncated). Throws DataError.
TimeStamp parse_timestamp(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(TimeStamp t);

}  // namespace crdiff
