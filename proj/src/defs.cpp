#include "rederiv/defs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace rederiv {

std::string HomTable::image(char c) const {
  auto it = images.find(c);
  if (it != images.end()) return it->second;
  return std::string(1, c);
}

std::string HomTable::apply(std::string_view w) const {
  std::string out;
  for (char c : w) out += image(c);
  return out;
}

bool HomTable::non_erasing(const std::vector<char>& alphabet) const {
  return std::all_of(alphabet.begin(), alphabet.end(),
                     [this](char c) { return !image(c).empty(); });
}

std::size_t HomTable::max_image_len(const std::vector<char>& alphabet) const {
  std::size_t m = 0;
  for (char c : alphabet) m = std::max(m, image(c).size());
  return m;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string decode_word(std::string_view w, int lineno) {
  if (w == "@e") return "";
  for (char c : w)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw defs_error("defs line " + std::to_string(lineno) + ": bad word");
  return std::string(w);
}

void parse_hom_line(std::string_view rest, int lineno, DefinitionsFile& out) {
  auto colon = rest.find(':');
  if (colon == std::string_view::npos)
    throw defs_error("defs line " + std::to_string(lineno) + ": expected ':'");
  std::string name{trim(rest.substr(0, colon))};
  if (name.empty())
    throw defs_error("defs line " + std::to_string(lineno) + ": missing table name");
  HomTable table;
  table.name = name;
  std::string body{rest.substr(colon + 1)};
  std::stringstream ss(body);
  std::string entry;
  while (std::getline(ss, entry, ',')) {
    std::string_view ev = trim(entry);
    if (ev.empty()) continue;
    auto arrow = ev.find("->");
    if (arrow == std::string_view::npos)
      throw defs_error("defs line " + std::to_string(lineno) + ": expected '->'");
    std::string_view lhs = trim(ev.substr(0, arrow));
    std::string_view rhs = trim(ev.substr(arrow + 2));
    if (lhs.size() != 1)
      throw defs_error("defs line " + std::to_string(lineno) +
                       ": table key must be a single symbol");
    table.images[lhs[0]] = decode_word(rhs, lineno);
  }
  if (!out.homs.emplace(name, std::move(table)).second)
    throw defs_error("defs: duplicate table '" + name + "'");
}

}  // namespace

DefinitionsFile DefinitionsFile::parse_text(std::string_view text) {
  DefinitionsFile out;
  bool saw_alphabet = false;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("alphabet:", 0) == 0) {
      if (saw_alphabet) throw defs_error("defs: duplicate alphabet line");
      saw_alphabet = true;
      out.alphabet.clear();
      std::string_view rest = line.substr(9);
      for (char c : rest) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (std::find(out.alphabet.begin(), out.alphabet.end(), c) ==
            out.alphabet.end())
          out.alphabet.push_back(c);
      }
      if (out.alphabet.empty())
        throw defs_error("defs line " + std::to_string(lineno) + ": empty alphabet");
    } else if (line.rfind("hom", 0) == 0 && line.size() > 3 &&
               std::isspace(static_cast<unsigned char>(line[3]))) {
      parse_hom_line(line.substr(4), lineno, out);
    } else {
      throw defs_error("defs line " + std::to_string(lineno) + ": unrecognized line");
    }
  }
  return out;
}

DefinitionsFile DefinitionsFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw defs_error("defs: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

}  // namespace rederiv
