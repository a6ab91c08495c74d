#pragma once

#include <string>
#include <string_view>

#include "gadgetlab/structure.hpp"

namespace gadgetlab {

// Line-oriented structure format:
//
//   language: E/2 M/1 ; const c
//   vertices: 3
//   E: (0,1) (1,2)
//   M: (2)
//   const c = 0
//
// `#` starts a comment line. Duplicate tuples collapse.

Structure parse_structure(std::string_view text);
std::string format_structure(const Structure& s);

Structure read_structure_file(const std::string& path);
void write_structure_file(const std::string& path, const Structure& s);

/// Writes to a sibling temporary and renames it into place.
void write_file_atomic(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace gadgetlab
