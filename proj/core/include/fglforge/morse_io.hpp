#pragma once

#include <string>
#include <vector>

#include "fglforge/morse.hpp"

namespace fglforge {

struct FixedPointData {
  long schema = 1;
  std::string name;
  std::vector<FixedComponentDatum> components;
};

// Reads a fixed-point datum document. Moments accept integers or rational
// strings like "-3/2". Errors carry the origin plus the offending component
// index and field.
FixedPointData parse_fixed_point_json(const std::string& text, const std::string& origin);
FixedPointData parse_fixed_point_file(const std::string& path);

}  // namespace fglforge
