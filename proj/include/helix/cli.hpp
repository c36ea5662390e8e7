#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "helix/chartab.hpp"

namespace helix {

/// gen:psl2:Q, gen:pgl2:Q, gen:pgl2:Q:brauer3, embedded:NAME, or a file path.
CharacterTable load_table_source(const std::string& source);

/// Resolves a comma-separated character list against the table. "all" (or
/// an empty list) selects every character; a name that is not in the table
/// but prefixes a lettered family (chi121 -> chi121a, chi121b) selects the
/// whole family. Throws DataError for unknown names.
std::vector<std::string> select_characters(const CharacterTable& table, const std::string& spec);

/// Runs the command line (args excludes the program name). Returns the exit
/// status: 0 success, 1 usage or data error, 2 capped or infinite without a
/// decision.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helix
