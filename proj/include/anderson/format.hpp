#pragma once

#include <string>

namespace anderson {

/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits). Locale-independent, so CSV output is byte-stable.
std::string format_double(double value);

}  // namespace anderson
