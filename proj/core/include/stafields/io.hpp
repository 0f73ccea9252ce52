#pragma once

// Text and JSON fixture forms for multivectors.
//
//  - Text: 16 whitespace-separated decimal reals in canonical blade order,
//    printed with 17 significant digits so round-trips are bit-exact.
//  - JSON: an object keyed by blade name ("1", "g0", ..., "g23", "Ig0", ...,
//    "I") with numeric values; absent blades are zero.  Unknown keys are
//    rejected.

#include <string>

#include "stafields/multivector.hpp"

namespace stf {

// One double with 17 significant digits (shortest exact form of %.17g).
std::string format_double(double x);

std::string to_text(const Multivector& a);
Multivector from_text(const std::string& text);

std::string to_json_string(const Multivector& a);
Multivector from_json_string(const std::string& json_text);

}  // namespace stf
