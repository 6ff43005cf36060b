#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpsolid/error.hpp"

// Nested key-value text used for the catalog and for scenario files.
//
//   # comment
//   key = value        # trailing comment
//   [section.sub]
//   key = value
//
// Entries before the first header belong to the section named "".
namespace dps::kv {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const {
    for (auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
  bool has(const std::string& key) const { return find(key) != nullptr; }
};

struct Document {
  std::vector<Section> sections;

  const Section* find(const std::string& name) const {
    for (auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
};

inline std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline Document parse(const std::string& text) {
  Document doc;
  doc.sections.push_back(Section{"", 0, {}});
  std::set<std::string> seen_sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError("unterminated section header", lineno);
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ValidationError("empty section name", lineno);
      if (!seen_sections.insert(name).second)
        throw ValidationError("duplicate section [" + name + "]", lineno);
      doc.sections.push_back(Section{name, lineno, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("expected 'key = value'", lineno);
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) throw ValidationError("empty key", lineno);
    if (e.value.empty()) throw ValidationError("empty value for '" + e.key + "'", lineno);
    auto& sec = doc.sections.back();
    if (sec.has(e.key))
      throw ValidationError("duplicate key '" + e.key + "' in [" + sec.name + "]", lineno);
    sec.entries.push_back(std::move(e));
  }
  if (doc.sections.front().entries.empty()) doc.sections.erase(doc.sections.begin());
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Rejects keys outside the allowed set.
inline void require_known(const Section& s, const std::set<std::string>& allowed) {
  for (auto& e : s.entries) {
    if (!allowed.count(e.key))
      throw ValidationError("unknown key '" + e.key + "' in [" + s.name + "]", e.line);
  }
}

}  // namespace dps::kv
