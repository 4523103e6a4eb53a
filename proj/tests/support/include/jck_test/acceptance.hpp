#pragma once

// The seven acceptance criteria as library calls, shared by the acceptance
// test binary and `jck selftest`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jck::acceptance {

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriteria = 7;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

Result run_criterion(int id, std::uint64_t seed);
std::vector<Result> run_all(std::uint64_t seed);

/// `PASS criterion 3 (saturation oracle equivalence): ...`
std::string format_line(const Result& r);

/// Runs everything, printing one line per criterion; true when all pass.
bool run_and_report(std::uint64_t seed, std::ostream& out);

}  // namespace jck::acceptance
