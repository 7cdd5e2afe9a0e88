#pragma once

// Built-in model corpus: .dgca sources embedded at build time. A line of the
// form "# cite: ..." in a source gives the entry's citation.

#include <string>
#include <string_view>
#include <vector>

#include "ratho/dgca.hpp"
#include "ratho/dsl.hpp"

namespace ratho {

struct CorpusEntry {
  std::string name;
  std::string citation;
  std::string source;
  ModelFile model;
  Dgca dgca;  // the last algebra of the file
};

/// All entries, sorted by name. Parsed on first use.
const std::vector<CorpusEntry>& corpus();
/// Throws Error for unknown names.
const CorpusEntry& corpus_entry(std::string_view name);
std::vector<std::string> corpus_names();

}  // namespace ratho
