#include "stafields/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stf {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_text(const Multivector& a) {
  std::string out;
  for (int i = 0; i < 16; ++i) {
    if (i) out += ' ';
    out += format_double(a[i]);
  }
  return out;
}

Multivector from_text(const std::string& text) {
  std::istringstream in(text);
  Multivector m;
  for (int i = 0; i < 16; ++i) {
    std::string tok;
    if (!(in >> tok))
      throw std::invalid_argument(
          "multivector text form requires 16 coefficients");
    char* end = nullptr;
    m[i] = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw std::invalid_argument("bad coefficient in multivector text: " +
                                  tok);
  }
  std::string extra;
  if (in >> extra)
    throw std::invalid_argument("multivector text form has trailing content");
  return m;
}

std::string to_json_string(const Multivector& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (int i = 0; i < 16; ++i)
    if (a[i] != 0.0) j[kBladeName[static_cast<unsigned>(i)]] = a[i];
  return j.dump();
}

Multivector from_json_string(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (!j.is_object())
    throw std::invalid_argument("multivector JSON form must be an object");
  Multivector m;
  for (const auto& [key, value] : j.items()) {
    int index = -1;
    for (int i = 0; i < 16; ++i)
      if (key == kBladeName[static_cast<unsigned>(i)]) index = i;
    if (index < 0)
      throw std::invalid_argument("unknown blade name in multivector JSON: " +
                                  key);
    if (!value.is_number())
      throw std::invalid_argument("blade coefficient must be a number: " + key);
    m[index] = value.get<double>();
  }
  return m;
}

}  // namespace stf
