#pragma once

#include <string>

namespace wentropy {

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double x);

/// Locale-independent decimal string with 17 significant digits; non-finite
/// values print as "nan", "inf", "-inf".
std::string format_sig17(double x);

}  // namespace wentropy
