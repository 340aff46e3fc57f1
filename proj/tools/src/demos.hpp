#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace aqt::cli {

struct Demo {
  std::string label;  // used as the scenario source
  std::string text;   // scenario document
};

/// Built-in scenarios for one kind, in a fixed order.
const std::vector<Demo>& demos(Kind k);

}  // namespace aqt::cli
