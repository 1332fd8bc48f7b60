#include "fixset/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <string_view>

#include "fixset/errors.hpp"

namespace fixset {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view value, const std::string& what) {
  std::uint64_t out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out, 10);
  if (ec != std::errc() || ptr != end)
    throw Error(what + " must be a decimal unsigned integer, got '" +
                std::string(value) + "'");
  return out;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  return std::nullopt;
}

std::string format_name(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "json";
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw Error("config file '" + path + "' line " + std::to_string(line_no) +
                  ": expected key = value");
    std::string key(trim(view.substr(0, eq)));
    std::string_view value = trim(view.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);

    if (key == "enumeration_cap") {
      std::uint64_t v = parse_u64(value, key);
      if (v == 0 || v > 0xFFFFFFFFull)
        throw Error("enumeration_cap out of range");
      config.enumeration_cap = static_cast<std::uint32_t>(v);
    } else if (key == "tuple_budget") {
      config.tuple_budget = parse_u64(value, key);
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "trials") {
      config.trials = parse_u64(value, key);
    } else if (key == "output_format") {
      auto fmt = parse_output_format(std::string(value));
      if (!fmt)
        throw Error("output_format must be 'csv' or 'json', got '" +
                    std::string(value) + "'");
      config.output_format = *fmt;
    } else {
      throw Error("config file '" + path + "' line " + std::to_string(line_no) +
                  ": unknown key '" + key + "'");
    }
  }
  validate(config);
}

void apply_env(RunConfig& config) {
  const char* seed = std::getenv("FIXSET_SEED");
  if (seed == nullptr) return;
  config.seed = parse_u64(seed, "FIXSET_SEED");
}

void validate(const RunConfig& config) {
  if (config.enumeration_cap == 0) throw Error("enumeration_cap must be positive");
  if (config.tuple_budget == 0) throw Error("tuple_budget must be positive");
  if (config.trials == 0) throw Error("trials must be positive");
}

}  // namespace fixset
