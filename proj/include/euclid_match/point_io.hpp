#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "euclid_match/geometry.hpp"

namespace euclid_match {

// Text point format: one point per line, whitespace-separated decimal
// coordinates. Lines starting with '#' and blank lines are ignored.
// Dimension is inferred from the first data line; later lines must match.
struct PointFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);

// Writes with enough digits to round-trip doubles exactly.
void write_points(std::ostream& out, const std::vector<Point>& points);
void write_points_file(const std::string& path, const std::vector<Point>& points);

}  // namespace euclid_match
