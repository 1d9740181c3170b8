#pragma once

#include <iosfwd>
#include <string>

#include "isopoly/dieudonne.hpp"
#include "isopoly/filisoc.hpp"
#include "isopoly/hnfilt.hpp"

namespace isopoly {

// Structured text formats; each parse-serialize pair round-trips bit-exactly.
// Parse errors carry 1-based line numbers.

FilteredIsocrystalCx parse_object(const std::string& text);
std::string write_object(const FilteredIsocrystalCx& obj);

DieudonneLift parse_model(const std::string& text);
std::string write_model(const DieudonneLift& h);

TorsionProfile parse_profile(const std::string& text);
std::string write_profile(const TorsionProfile& profile);

// Dispatches on the header line: "object", "model" or "profile".
enum class InputKind { object, model, profile };
InputKind classify_input(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace isopoly
