#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fohier/decide.hpp"

namespace fohier::cli {

  // Exit codes.
  inline constexpr int exit_ok       = 0;
  inline constexpr int exit_expect   = 1;
  inline constexpr int exit_usage    = 2;
  inline constexpr int exit_resource = 3;
  inline constexpr int exit_internal = 4;

  // `args` excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

  std::string report_text(Verdict const& v);
  std::string report_json(Verdict const& v);

}  // namespace fohier::cli
