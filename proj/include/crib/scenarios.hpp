#pragma once

#include <string>
#include <vector>

namespace crib {

struct Scenario {
  std::string name;
  std::string description;
  std::string config;  // JSON text, parseable by parseConfig
};

const std::vector<Scenario>& bundledScenarios();
const Scenario* findScenario(const std::string& name);

}  // namespace crib
