#include "ratho/corpus.hpp"

#include <algorithm>
#include <sstream>

namespace ratho {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& corpus_sources();
}

namespace {

std::string citation_of(std::string_view source) {
  std::istringstream in{std::string(source)};
  std::string line, out;
  const std::string tag = "# cite:";
  while (std::getline(in, line)) {
    if (line.compare(0, tag.size(), tag) != 0) continue;
    std::string text = line.substr(tag.size());
    text.erase(0, text.find_first_not_of(' '));
    if (!out.empty()) out += " ";
    out += text;
  }
  return out;
}

std::vector<CorpusEntry> load() {
  std::vector<CorpusEntry> out;
  ImportResolver none;
  for (const auto& [name, source] : detail::corpus_sources()) {
    CorpusEntry e;
    e.name = std::string(name);
    e.source = std::string(source);
    e.citation = citation_of(source);
    try {
      e.model = parse_model(source, none);
    } catch (const Error& err) {
      throw Error("corpus entry '" + e.name + "': " + err.what());
    }
    if (e.model.algebras.empty()) throw Error("corpus entry '" + e.name + "' declares no algebra");
    e.dgca = e.model.algebras.back();
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = load();
  return entries;
}

const CorpusEntry& corpus_entry(std::string_view name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw Error("unknown corpus entry '" + std::string(name) + "'");
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : corpus()) out.push_back(e.name);
  return out;
}

}  // namespace ratho
