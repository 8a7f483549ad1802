#pragma once

#include <string>

#include "leibniz/algebra.hpp"

namespace leibniz {

/// JSON algebra files: {format_version, dim, labels, brackets}, where
/// brackets maps "x,y" label pairs to sparse [label, "p/q"] lists and
/// unspecified brackets are zero. Throws ParseError (with byte position)
/// or ValidationError.
LeibnizAlgebra load_algebra(const std::string& path);
LeibnizAlgebra parse_algebra(const std::string& text);

void save_algebra(const LeibnizAlgebra& L, const std::string& path);
std::string serialize_algebra(const LeibnizAlgebra& L);

} // namespace leibniz
