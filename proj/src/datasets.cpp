#include "helix/datasets.hpp"

namespace helix {

std::vector<std::string> embedded_dataset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::dataset_texts()) out.push_back(name);
  return out;
}

const std::string& embedded_dataset_text(const std::string& name) {
  const auto& texts = detail::dataset_texts();
  auto it = texts.find(name);
  if (it == texts.end()) throw DataError("unknown embedded dataset " + name);
  return it->second;
}

CharacterTable load_embedded(const std::string& name) { return parse_table(embedded_dataset_text(name)); }

}  // namespace helix
