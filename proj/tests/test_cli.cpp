// End-to-end tests of the command-line tool: output formats, determinism,
// option precedence, exit codes, and the error contract on stderr.
//
// The binary under test is located via the FIXSET_CLI_PATH compile
// definition (set by the build system); an environment variable of the same
// name overrides it for standalone runs.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "fixset/blocksys.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* cli_path() {
  if (const char* p = std::getenv("FIXSET_CLI_PATH")) return p;
#ifdef FIXSET_CLI_PATH
  return FIXSET_CLI_PATH;
#else
  REQUIRE_MESSAGE(false, "FIXSET_CLI_PATH must point at the binary");
  return nullptr;
#endif
}

// Runs the tool with the given arguments. `env_prefix` may add variables
// (e.g. "FIXSET_SEED=55"); the ambient FIXSET_SEED is always scrubbed first
// so results do not depend on the caller's environment.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int serial = 0;
  const std::string out_path =
      "/tmp/fixset_cli_out_" + std::to_string(++serial) + ".txt";
  const std::string err_path =
      "/tmp/fixset_cli_err_" + std::to_string(serial) + ".txt";
  std::string cmd = "env -u FIXSET_SEED " + env_prefix + " '" +
                    std::string(cli_path()) + "' " + args + " > " + out_path +
                    " 2> " + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("exact-i: CSV header and quoting of list-valued cells") {
  RunResult r = run_cli("exact-i --n 4 --k 2,2 --d 1,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "n,k,d,p\n4,\"2,2\",\"1,1\",5/12\n");
  CHECK(r.err.empty());
}

TEST_CASE("exact-i: JSON object shape") {
  RunResult r = run_cli("exact-i --n 4 --k 2,2 --d 1,1 --format json");
  CHECK(r.exit_code == 0);
  json rows = json::parse(r.out);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["n"] == 4);
  CHECK(rows[0]["k"] == json::array({2, 2}));
  CHECK(rows[0]["d"] == json::array({1, 1}));
  CHECK(rows[0]["p"] == "5/12");
}

TEST_CASE("same seed means byte-identical output, regardless of threads") {
  const std::string args = "mc-I --n 12 --nu 2 --trials 4000 --seed 7";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  RunResult c = run_cli(args + " --threads 3");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("option precedence: defaults < config file < FIXSET_SEED < flags") {
  const std::string base = "mc-i --n 4 --k 2,2 --d 1,1 --trials 2000";
  RunResult want = run_cli(base + " --seed 7");
  REQUIRE(want.exit_code == 0);

  SUBCASE("config file supplies the seed") {
    std::ofstream("/tmp/fixset_cfg1.ini") << "seed=7\n";
    RunResult got = run_cli(base + " --config /tmp/fixset_cfg1.ini");
    CHECK(got.out == want.out);
  }
  SUBCASE("environment overrides the config file") {
    std::ofstream("/tmp/fixset_cfg2.ini") << "seed=99\n";
    RunResult got =
        run_cli(base + " --config /tmp/fixset_cfg2.ini", "FIXSET_SEED=7");
    CHECK(got.out == want.out);
  }
  SUBCASE("flags override both, for seed and format alike") {
    std::ofstream("/tmp/fixset_cfg3.ini") << "seed=99\noutput_format=json\n";
    RunResult got = run_cli(
        base + " --config /tmp/fixset_cfg3.ini --seed 7 --format csv",
        "FIXSET_SEED=55");
    CHECK(got.out == want.out);
  }
  SUBCASE("unknown config keys are rejected as usage errors") {
    std::ofstream("/tmp/fixset_cfg4.ini") << "sneed=7\n";
    RunResult got = run_cli(base + " --config /tmp/fixset_cfg4.ini");
    CHECK(got.exit_code == 2);
  }
}

TEST_CASE("delta subcommand agrees with the library to 12 significant digits") {
  RunResult r = run_cli("delta --m 2..5 --format json");
  REQUIRE(r.exit_code == 0);
  json rows = json::parse(r.out);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    const auto m = row["m"].get<std::uint32_t>();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", fixset::delta(m));
    CHECK(row["delta"].get<std::string>() == buf);
  }
}

TEST_CASE("dominant --nu 5 reports the two-part shape with exponent 3/4") {
  RunResult r = run_cli("dominant --nu 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("5,\"(4,1)\",0.75,1,0") != std::string::npos);
}

TEST_CASE("exit codes and the JSON error object on stderr") {
  SUBCASE("usage error: unknown flag") {
    RunResult r = run_cli("exact-i --n 4 --k 2,2 --d 1,1 --bogus");
    CHECK(r.exit_code == 2);
    json e = json::parse(r.err);
    CHECK(e["error"] == "usage");
  }
  SUBCASE("usage error: missing subcommand") {
    RunResult r = run_cli("");
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.err)["error"] == "usage");
  }
  SUBCASE("cap error: tuple budget exhausted") {
    RunResult r = run_cli("lset --m 3 --c 2,1 --tuple-budget 2");
    CHECK(r.exit_code == 3);
    json e = json::parse(r.err);
    CHECK(e["error"] == "cap");
    CHECK_FALSE(e["message"].get<std::string>().empty());
    CHECK(r.out.empty());
  }
  SUBCASE("domain error: block size equal to the degree") {
    RunResult r = run_cli("exact-I --n 6 --nu 6");
    CHECK(r.exit_code == 4);
    json e = json::parse(r.err);
    CHECK(e["error"] == "domain");
    CHECK(r.out.empty());
  }
}

TEST_CASE("--help succeeds for the tool and for each subcommand") {
  CHECK(run_cli("--help").exit_code == 0);
  for (const char* sub :
       {"exact-i", "mc-i", "exact-I", "mc-I", "lset", "gbound", "fdiv",
        "delta", "dominant", "gf-bound", "sieve-count", "kset-cycles",
        "wreath", "min-degree", "local-global", "oracle-suite"}) {
    RunResult r = run_cli(std::string(sub) + " --help");
    CHECK_MESSAGE(r.exit_code == 0, sub);
    CHECK_FALSE(r.out.empty());
  }
}
