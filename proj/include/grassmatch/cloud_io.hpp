#pragma once

#include <iosfwd>
#include <string>

#include "grassmatch/grassmann.hpp"

namespace grassmatch {

// Whitespace-separated text, one point per line; the first line fixes the
// dimension. Throws ParseError (with the offending line) on a width change
// or a bad token, EmptyFile when nothing parses.
PointCloud load_cloud(const std::string& path);
PointCloud read_cloud(std::istream& in, const std::string& name);

// One point per line with enough digits for an exact round-trip.
void write_cloud(const PointCloud& cloud, const std::string& path);

} // namespace grassmatch
