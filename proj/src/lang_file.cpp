#include "fohier/lang_file.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "fohier/errors.hpp"

namespace fohier {

  namespace {

    std::string trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(" \t\r");
      return std::string(s.substr(b, e - b + 1));
    }

    std::vector<std::string> split_ws(std::string const& s) {
      std::istringstream       in(s);
      std::vector<std::string> out;
      std::string              tok;
      while (in >> tok) {
        out.push_back(tok);
      }
      return out;
    }

    std::size_t parse_index(std::string const& tok, std::size_t line) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (std::exception const&) {
        pos = 0;
      }
      if (pos != tok.size() || tok.empty()) {
        throw ParseError("expected a number, got '" + tok + "' on line " + std::to_string(line));
      }
      return v;
    }

  }  // namespace

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw ParseError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  LanguageFile parse_language(std::string_view text) {
    std::optional<Alphabet>    alphabet;
    std::optional<std::string> regex;
    std::optional<std::size_t> states;
    std::optional<std::size_t> initial;
    std::vector<std::size_t>   finals;
    bool                       saw_final = false;
    std::vector<std::tuple<std::size_t, std::string, std::size_t>> trans;

    std::istringstream in{std::string(text)};
    std::string        raw;
    std::size_t        lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      auto hash = raw.find('#');
      if (hash != std::string::npos) {
        raw.erase(hash);
      }
      auto line = trim(raw);
      if (line.empty()) {
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        throw ParseError("expected 'key: value' on line " + std::to_string(lineno));
      }
      auto key   = trim(std::string_view(line).substr(0, colon));
      auto value = trim(std::string_view(line).substr(colon + 1));
      if (!alphabet && key != "alphabet") {
        throw ParseError("the first line must declare the alphabet (line "
                         + std::to_string(lineno) + ")");
      }
      if (key == "alphabet") {
        if (alphabet) {
          throw ParseError("duplicate alphabet line " + std::to_string(lineno));
        }
        auto letters = split_ws(value);
        if (letters.empty()) {
          throw ParseError("empty alphabet on line " + std::to_string(lineno));
        }
        try {
          alphabet.emplace(letters);
        } catch (InvalidArgument const& e) {
          throw ParseError(std::string(e.what()) + " on line " + std::to_string(lineno));
        }
      } else if (key == "regex") {
        if (regex) {
          throw ParseError("duplicate regex line " + std::to_string(lineno));
        }
        regex = value;
      } else if (key == "states") {
        states = parse_index(value, lineno);
      } else if (key == "initial") {
        initial = parse_index(value, lineno);
      } else if (key == "final") {
        saw_final = true;
        for (auto const& tok : split_ws(value)) {
          finals.push_back(parse_index(tok, lineno));
        }
      } else if (key == "trans") {
        auto toks = split_ws(value);
        if (toks.size() != 3) {
          throw ParseError("trans needs 'q x q2' on line " + std::to_string(lineno));
        }
        trans.emplace_back(
            parse_index(toks[0], lineno), toks[1], parse_index(toks[2], lineno));
      } else {
        throw ParseError("unknown key '" + key + "' on line " + std::to_string(lineno));
      }
    }
    if (!alphabet) {
      throw ParseError("missing alphabet line");
    }
    bool const has_dfa = states || initial || saw_final || !trans.empty();
    if (regex && has_dfa) {
      throw ParseError("a language file holds either a regex or a DFA block, not both");
    }
    if (regex) {
      Regex ast = parse_regex(*regex, *alphabet);
      return LanguageFile{*alphabet, regex, regex_to_dfa(ast, *alphabet)};
    }
    if (!states || !initial) {
      throw ParseError("DFA block needs 'states:' and 'initial:'");
    }
    std::size_t const n = *states;
    std::size_t const k = alphabet->size();
    if (n == 0 || *initial >= n) {
      throw ParseError("DFA initial state out of range");
    }
    std::vector<bool> final_flags(n, false);
    for (auto f : finals) {
      if (f >= n) {
        throw ParseError("final state " + std::to_string(f) + " out of range");
      }
      final_flags[f] = true;
    }
    std::vector<State> table(n * k, 0);
    std::vector<bool>  defined(n * k, false);
    for (auto const& [q, x, r] : trans) {
      auto xi = alphabet->index_of(x);
      if (!xi) {
        throw ParseError("transition letter '" + x + "' not in alphabet");
      }
      if (q >= n || r >= n) {
        throw ParseError("transition state out of range");
      }
      if (defined[q * k + *xi]) {
        throw ParseError("duplicate transition for state " + std::to_string(q) + " letter " + x);
      }
      defined[q * k + *xi] = true;
      table[q * k + *xi]   = static_cast<State>(r);
    }
    for (std::size_t i = 0; i < defined.size(); ++i) {
      if (!defined[i]) {
        throw ParseError("DFA is not total: missing transition for state "
                         + std::to_string(i / k) + " letter " + alphabet->name(i % k));
      }
    }
    Dfa d(*alphabet, n, static_cast<State>(*initial), final_flags, table);
    return LanguageFile{*alphabet, std::nullopt, d.minimized()};
  }

  LanguageFile load_language(std::filesystem::path const& path) {
    return parse_language(read_file(path));
  }

  std::string format_language(Dfa const& d) {
    std::string out = "# fmt 1\nalphabet:";
    for (auto const& l : d.alphabet().names()) {
      out += ' ' + l;
    }
    return out + "\n" + format_dfa_block(d);
  }

}  // namespace fohier
