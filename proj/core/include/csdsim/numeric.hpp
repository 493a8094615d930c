#pragma once

#include <string>

namespace csdsim {

/// Shortest stable decimal rendering used everywhere a number is written to
/// an output file or payload, so identical runs emit identical bytes.
std::string format_number(double v);

} // namespace csdsim
