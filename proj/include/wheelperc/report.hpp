#pragma once

#include <string>
#include <vector>

namespace wheelperc {

// Named check result: how many checks ran and what failed.
struct Report {
  std::string name;
  long checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) mismatches.push_back(what);
  }
};

}  // namespace wheelperc
