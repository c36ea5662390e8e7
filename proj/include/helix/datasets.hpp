#pragma once

#include <map>
#include <string>
#include <vector>

#include "helix/chartab.hpp"

namespace helix {

/// Names of the character tables compiled into the library.
std::vector<std::string> embedded_dataset_names();

/// Raw table text; throws DataError for an unknown name.
const std::string& embedded_dataset_text(const std::string& name);

CharacterTable load_embedded(const std::string& name);

namespace detail {
const std::map<std::string, std::string>& dataset_texts();
}

}  // namespace helix
