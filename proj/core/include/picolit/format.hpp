#pragma once

#include <string>

namespace picolit {

/// Fixed 6-decimal rendering used by every exported float. Rounds to nearest,
/// ties to even (on the exact binary value); "-0.000000" is printed as "0.000000".
std::string format_fixed6(double value);

/// The value format_fixed6() prints, as a double.
double round6(double value);

}  // namespace picolit
