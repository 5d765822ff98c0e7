#pragma once

// Minimal XML well-formedness check for generated SVG: balanced tags,
// quoted attributes, no stray '<' or unescaped '&'.

#include <cctype>
#include <string>
#include <vector>

namespace xmlcheck {

struct Result {
  bool ok = true;
  std::string error;
  std::vector<std::string> elements;  // every start tag name, in order
};

inline Result check(const std::string& doc) {
  Result r;
  std::vector<std::string> stack;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    r.ok = false;
    r.error = why + " at offset " + std::to_string(i);
    return r;
  };
  bool root_seen = false;
  while (i < doc.size()) {
    if (doc[i] == '&') {
      static const char* ents[] = {"&amp;", "&lt;", "&gt;", "&quot;", "&apos;"};
      bool good = false;
      for (const char* e : ents)
        if (doc.compare(i, std::char_traits<char>::length(e), e) == 0) good = true;
      if (!good) return fail("bad entity");
      ++i;
      continue;
    }
    if (doc[i] != '<') {
      if (stack.empty() && !std::isspace(static_cast<unsigned char>(doc[i]))) return fail("text outside root");
      ++i;
      continue;
    }
    if (doc.compare(i, 5, "<?xml") == 0) {
      const auto end = doc.find("?>", i);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    if (doc.compare(i, 4, "<!--") == 0) {
      const auto end = doc.find("-->", i);
      if (end == std::string::npos) return fail("unterminated comment");
      i = end + 3;
      continue;
    }
    const bool closing = i + 1 < doc.size() && doc[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    std::string name;
    while (j < doc.size() && (std::isalnum(static_cast<unsigned char>(doc[j])) || doc[j] == ':' || doc[j] == '-' ||
                              doc[j] == '_'))
      name += doc[j++];
    if (name.empty()) return fail("empty tag name");
    if (closing) {
      while (j < doc.size() && std::isspace(static_cast<unsigned char>(doc[j]))) ++j;
      if (j >= doc.size() || doc[j] != '>') return fail("malformed end tag");
      if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
      stack.pop_back();
      i = j + 1;
      continue;
    }
    // Attributes.
    bool self_closing = false;
    while (true) {
      while (j < doc.size() && std::isspace(static_cast<unsigned char>(doc[j]))) ++j;
      if (j >= doc.size()) return fail("unterminated tag");
      if (doc[j] == '>') {
        ++j;
        break;
      }
      if (doc[j] == '/' && j + 1 < doc.size() && doc[j + 1] == '>') {
        self_closing = true;
        j += 2;
        break;
      }
      std::string attr;
      while (j < doc.size() && doc[j] != '=' && !std::isspace(static_cast<unsigned char>(doc[j])) && doc[j] != '>')
        attr += doc[j++];
      if (attr.empty() || j >= doc.size() || doc[j] != '=') return fail("attribute without value");
      ++j;
      if (j >= doc.size() || (doc[j] != '"' && doc[j] != '\'')) return fail("unquoted attribute");
      const char q = doc[j++];
      const auto end = doc.find(q, j);
      if (end == std::string::npos) return fail("unterminated attribute");
      if (doc.substr(j, end - j).find('<') != std::string::npos) return fail("'<' in attribute");
      j = end + 1;
    }
    if (stack.empty() && root_seen) return fail("second root element");
    root_seen = true;
    r.elements.push_back(name);
    if (!self_closing) stack.push_back(name);
    i = j;
  }
  if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
  if (!root_seen) return fail("no root element");
  return r;
}

}  // namespace xmlcheck
