#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "entcont/states.hpp"

namespace entcont {

// Plain-text state format:
//
//   dim dA dB
//   re im        <- dim*dim lines, row-major
//
// Numbers are written with round-trip precision and parsed without
// consulting the global locale.
void write_state(std::ostream& out, const BipartiteState& state);
BipartiteState read_state(std::istream& in);

void save_state(const std::filesystem::path& path, const BipartiteState& state);
BipartiteState load_state(const std::filesystem::path& path);

/// Shortest round-trip decimal representation of `value`.
std::string format_double(double value);

}  // namespace entcont
