#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fohier/chains.hpp"

namespace fohier {

  // Exhaustive consistency checks on saturated juncture sets. Each returns a
  // description of the first failure, or nothing.

  // Stored maximals are closed under product, sub-junctures and the
  // idempotent insertion step of saturation.
  std::optional<std::string> audit_juncture_closure(JunctureSet const& j);

  // levels[n-1] holds length n. Diagonal chains are present, deleting an entry
  // gives a chain one shorter, repeating an entry gives one longer, and each
  // length is closed under coordinatewise product.
  std::optional<std::string>
  audit_chain_facts(std::vector<std::shared_ptr<JunctureSet const>> const& levels);

}  // namespace fohier
