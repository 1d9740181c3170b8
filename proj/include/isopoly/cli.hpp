#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace isopoly {

// Runs the command-line driver on the given arguments (without argv[0]).
// Exit codes: 0 success, 1 check failure, 2 input error. Identical arguments
// produce byte-identical output.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Built-in inputs addressable by name from every command (the "examples/"
// prefix is accepted and ignored).
std::map<std::string, std::string> builtin_examples(long p);

}  // namespace isopoly
