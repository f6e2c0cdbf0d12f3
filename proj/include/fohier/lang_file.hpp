#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fohier/alphabet.hpp"
#include "fohier/dfa.hpp"
#include "fohier/regex.hpp"

namespace fohier {

  // Contents of a `.lang` file: a declared alphabet and either a regular
  // expression or an explicit complete DFA.
  struct LanguageFile {
    Alphabet                   alphabet;
    std::optional<std::string> regex_text;
    Dfa                        dfa;  // minimal; built from the regex when given
  };

  LanguageFile parse_language(std::string_view text);
  LanguageFile load_language(std::filesystem::path const& path);

  // Writes `alphabet:` plus the DFA block.
  std::string format_language(Dfa const& d);

  std::string read_file(std::filesystem::path const& path);

}  // namespace fohier
