#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lens/core_lattice.hpp"

namespace lens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;

enum class Command { kSpectrum, kNl, kGamma, kVerify, kCompare, kParity, kBench };
enum class Format { kCsv, kJson };

struct SpaceArgs {
  std::int64_t p = 0;
  std::vector<std::int64_t> q;
};

struct RunConfig {
  Command command = Command::kSpectrum;
  SpaceArgs space;
  SpaceArgs other;  // compare's second space
  std::int64_t i_max = 10;
  std::optional<std::int64_t> h;
  std::int64_t h_max = 20;
  std::optional<std::int64_t> s;
  std::optional<std::vector<std::int64_t>> subset;  // one-based indices
  // verify grid
  std::int64_t p_min = 1;
  std::int64_t p_max = 8;
  std::vector<int> ms{2, 3};
  bool deep = false;
  bool single_case = false;
  // bench
  std::int64_t stride = 1;
  Format format = Format::kCsv;
  std::string output;  // empty: standard output
};

/// "1,2,3" -> {1, 2, 3}. Throws std::invalid_argument on malformed input.
std::vector<std::int64_t> parse_integers(std::string_view text);

/// "p:q1,q2,..." as used by compare.
SpaceArgs parse_space(std::string_view text);

/// Runs an already parsed configuration; returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lens::cli
