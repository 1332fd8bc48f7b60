#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fixset {

enum class OutputFormat { kCsv, kJson };

// Returns the enum for "csv" / "json", or nullopt for anything else.
std::optional<OutputFormat> parse_output_format(const std::string& name);
std::string format_name(OutputFormat format);

// Run-wide knobs shared by the command-line tools. Values are resolved in
// the order: built-in defaults, then an optional key=value config file, then
// the FIXSET_SEED environment variable (seed only), then explicit flags.
struct RunConfig {
  std::uint32_t enumeration_cap = 50;
  std::uint64_t tuple_budget = 10'000'000;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100'000;
  OutputFormat output_format = OutputFormat::kCsv;
};

// Parses a config file of `key = value` lines ('#' starts a comment, blank
// lines ignored, values may be double-quoted). Recognized keys are exactly
// the RunConfig fields: enumeration_cap, tuple_budget, seed, trials,
// output_format. Throws Error on unreadable files, unknown keys, or values
// that do not parse / violate the invariants.
void apply_config_file(RunConfig& config, const std::string& path);

// Applies FIXSET_SEED from the environment (decimal 64-bit unsigned) if set.
// Throws Error when the variable is set but not parseable.
void apply_env(RunConfig& config);

// Enforces the invariants: positive caps, positive trial count.
void validate(const RunConfig& config);

}  // namespace fixset
