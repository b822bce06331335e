#pragma once

#include <iosfwd>
#include <string>

#include "ats/reduction.hpp"

namespace ats {

/// Hypothesis JSON file: {"H": [[...], ...], "y": [...]}. The reader
/// validates rectangularity and length(y) == rows(H).
Hypothesis read_hypothesis_json(std::istream& in, const std::string& name = "<stream>");
Hypothesis read_hypothesis_json_file(const std::string& path);
void write_hypothesis_json(std::ostream& out, const Hypothesis& h);
void write_hypothesis_json_file(const std::string& path, const Hypothesis& h);

}  // namespace ats
