#pragma once

#include <cstdio>
#include <string>

namespace speiser {

/// Shortest-round-trip-ish fixed formatting for artifact files: %.17g keeps
/// doubles byte-stable across runs.
std::string fmt_double(double v);
std::string fmt_double(double v, int precision);

/// Writes a file atomically (temp file in the same directory, then rename).
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace speiser
