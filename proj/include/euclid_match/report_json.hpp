#pragma once

#include <iosfwd>
#include <string>

#include "euclid_match/iterated.hpp"

namespace euclid_match {

// Versioned report schema; see README for the field list.
std::string report_to_json(const RunReport& rep, int indent = 2);

// Matching file format: one "i j" pair per line, ascending.
void write_matching(std::ostream& out, const Matching& m);

}  // namespace euclid_match
