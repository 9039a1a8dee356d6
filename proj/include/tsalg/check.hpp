#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace tsalg {

// One verdict of a verification run. A failure always carries a witness.
struct Check {
  std::string name;
  std::string subject;  // group or instance descriptor
  bool pass = false;
  std::string detail;
  std::string witness;
  double seconds = 0;
};

using Checks = std::vector<Check>;

inline bool all_pass(const Checks& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace tsalg
