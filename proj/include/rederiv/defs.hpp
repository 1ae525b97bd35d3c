#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rederiv {

struct defs_error : std::runtime_error {
  explicit defs_error(const std::string& what) : std::runtime_error(what) {}
};

/// Symbol-to-word substitution table. Symbols without an entry map to
/// themselves.
struct HomTable {
  std::string name;
  std::map<char, std::string> images;

  std::string image(char c) const;
  std::string apply(std::string_view w) const;
  bool non_erasing(const std::vector<char>& alphabet) const;
  std::size_t max_image_len(const std::vector<char>& alphabet) const;
};

/// Session definitions: the alphabet and named substitution tables.
///
/// Line format (UTF-8, '#' starts a comment):
///   alphabet: a b c
///   hom H: a -> bb, b -> a
/// The empty word in a table is written @e. Without an alphabet line the
/// alphabet defaults to {a, b}.
struct DefinitionsFile {
  std::vector<char> alphabet{'a', 'b'};
  std::map<std::string, HomTable> homs;

  static DefinitionsFile parse_text(std::string_view text);
  static DefinitionsFile load(const std::string& path);
};

}  // namespace rederiv
