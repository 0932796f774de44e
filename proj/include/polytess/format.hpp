#pragma once

#include <string>

namespace polytess {

/// printf-style %.<digits>g rendering, independent of the global locale.
std::string format_number(double x, int digits = 12);

}  // namespace polytess
