#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "updown/trace_io.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the built binary through the shell, capturing stdout.
CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(UPDOWN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  std::array<char, 512> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WEXITSTATUS(status);
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("cli act") {
  const CliResult r = run_cli("act --word 'd3 u2' --partition '3,1'");
  CHECK(r.code == 0);
  CHECK(r.out == "2,2\n");

  const CliResult zero = run_cli("act --word 'd1 d3 u2' --partition '3,1'");
  CHECK(zero.code == 0);
  CHECK(zero.out == "0\n");

  const CliResult empty = run_cli("act --word 'd1' --partition '1'");
  CHECK(empty.code == 0);
  CHECK(empty.out == "\n");  // the empty partition, distinct from 0

  const CliResult js = run_cli("--json act --word 'd3 u2' --partition '3,1'");
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["result"] == "2,2");
  CHECK(nlohmann::json::parse(run_cli("--json act --word 'd1' --partition '1'").out)["result"] ==
        "");
  CHECK(nlohmann::json::parse(
            run_cli("--json act --word 'd1 d3 u2' --partition '3,1'").out)["result"]
            .is_null());
}

TEST_CASE("cli fingerprint") {
  const CliResult r = run_cli("fingerprint --word 'u1 u1 d3 d3 d2 u3 u2 d1 u2 u1'");
  CHECK(r.code == 0);
  CHECK(r.out == "w: {1: 2, 2: 1, 3: -1}; alpha: {1: 2, 3: 1}\n");

  const auto j = nlohmann::json::parse(
      run_cli("--json fingerprint --word 'd2 u2'").out);
  CHECK(j["w"].empty());
  CHECK(j["alpha"]["1"] == 1);
}

TEST_CASE("cli equiv exit codes") {
  const CliResult eq = run_cli("equiv --x 'd2 u2' --y 'u1 d1'");
  CHECK(eq.code == 0);
  CHECK(eq.out == "equivalent\n");

  const CliResult ne = run_cli("equiv --x 'u1' --y 'u2'");
  CHECK(ne.code == 1);
  CHECK(ne.out == "not-equivalent\n");
}

TEST_CASE("cli normalize writes a certificate that verify-trace accepts") {
  const auto path = temp_file("updown_norm_trace.json");
  const CliResult r =
      run_cli("normalize --word 'd2 u2' --trace " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out == "u1 d1\n");

  const CliResult v = run_cli("verify-trace --file " + path.string());
  CHECK(v.code == 0);
  CHECK(v.out == "ok\n");

  SECTION("tampering is detected and the failing step is named") {
    auto j = nlohmann::json::parse(std::ifstream(path));
    j["steps"][0]["i"] = 2;  // cite SLIDE(2) instead of SLIDE(1)
    std::ofstream(path) << j.dump();
    const CliResult bad = run_cli("verify-trace --file " + path.string());
    CHECK(bad.code == 1);
    CHECK(bad.out.find("step 0") != std::string::npos);
    const auto jj = nlohmann::json::parse(
        run_cli("--json verify-trace --file " + path.string()).out);
    CHECK(jj["ok"] == false);
    CHECK(jj["step"] == 0);
  }

  SECTION("unknown fields are rejected as a parse error") {
    auto j = nlohmann::json::parse(std::ifstream(path));
    j["note"] = "tampered";
    std::ofstream(path) << j.dump();
    CHECK(run_cli("verify-trace --file " + path.string()).code == 2);
  }
}

TEST_CASE("cli certify round-trips through a separate verify invocation") {
  const auto path = temp_file("updown_cert_trace.json");
  const CliResult r =
      run_cli("certify --x 'u1 u2 u1' --y 'u2 u1 u1' --trace " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent\n");
  CHECK(run_cli("verify-trace --file " + path.string()).code == 0);

  // the written trace really connects x to y
  const auto j = nlohmann::json::parse(std::ifstream(path));
  CHECK(j["start"] == "u1 u2 u1");
  CHECK(j["end"] == "u2 u1 u1");

  const CliResult ne =
      run_cli("certify --x 'u1' --y 'u2' --trace " + path.string());
  CHECK(ne.code == 1);
  CHECK(ne.out == "not-equivalent\n");
}

TEST_CASE("cli chain") {
  CHECK(run_cli("chain --t 2 --rho 1 --word 'u2 u2' --pos 0").out == "0\n");
  CHECK(run_cli("chain --t 2 --rho 3 --word 'u2' ").out == "1\n");  // --pos defaults to 0
  CHECK(run_cli("chain --t 2 --rho 3 --word 'u2' --json").out.find("\"pos\":1") !=
        std::string::npos);  // --json accepted after the subcommand too
  CHECK(run_cli("chain --t 2 --rho 2 --word 'd2 u2' --pos 0").out == "0\n");
  CHECK(run_cli("chain --t 2 --rho 2 --word 'u2' --pos 1").out == "2\n");

  const auto j =
      nlohmann::json::parse(run_cli("--json chain --t 2 --rho 1 --word 'u2 u2' --pos 0").out);
  CHECK(j["zero"] == true);
  const auto j2 =
      nlohmann::json::parse(run_cli("--json chain --t 2 --rho 2 --word 'd2 u2' --pos 0").out);
  CHECK(j2["zero"] == false);
  CHECK(j2["pos"] == 0);

  const CliResult ann = run_cli("chain --t 2 --rho 1 --word 'u2 u2' --annihilates");
  CHECK(ann.code == 0);
  CHECK(ann.out == "yes\n");
  const CliResult nann = run_cli("chain --t 2 --rho 2 --word 'u2 u2' --annihilates");
  CHECK(nann.code == 1);
  CHECK(nann.out == "no\n");
}

TEST_CASE("cli graph") {
  const CliResult r = run_cli("graph --t 2 --word 'u2 u2 d2 d2 d2 d2 u2 u2 u2'");
  CHECK(r.code == 0);
  const std::string expected =
      "(0, 0)\n(-1, 1)\n(-2, 2)\n(-3, 3)\n(-4, 2)\n(-5, 1)\n(-6, 0)\n"
      "(-7, -1)\n(-8, 0)\n(-9, 1)\n"
      "peak=3 valley=-1 endpoint=1 alpha[t-1]=3 alpha[t]=1 w[t]=1\n";
  CHECK(r.out == expected);
}

TEST_CASE("cli oracle-check") {
  const CliResult eq = run_cli("oracle-check --x 'd2 u2' --y 'u1 d1'");
  CHECK(eq.code == 0);
  CHECK(eq.out == "equal\n");
  const CliResult ne = run_cli("oracle-check --x 'u1' --y 'd1'");
  CHECK(ne.code == 1);
  CHECK(ne.out == "not-equal\n");
}

TEST_CASE("cli certify, equiv and oracle-check agree") {
  const auto path = temp_file("updown_agree_trace.json");
  const std::array<std::pair<std::string, std::string>, 4> pairs = {
      std::pair{"d2 u2", "u1 d1"},
      std::pair{"u1 u3", "u3 u1"},
      std::pair{"u1 d2", "d2 u1"},
      std::pair{"u1 u2", "u2 u1"}};  // this one is NOT equivalent
  for (const auto& [x, y] : pairs) {
    const int e = run_cli("equiv --x '" + x + "' --y '" + y + "'").code;
    const int o = run_cli("oracle-check --x '" + x + "' --y '" + y + "'").code;
    const int c =
        run_cli("certify --x '" + x + "' --y '" + y + "' --trace " + path.string()).code;
    CHECK(e == o);
    CHECK(e == c);
  }
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(run_cli("act --word 'u1'").code == 2);           // missing --partition
  CHECK(run_cli("act --word 'q9' --partition ''").code == 2);
  CHECK(run_cli("act --word 'u0' --partition ''").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("verify-trace --file /nonexistent/trace.json").code == 2);
  CHECK(run_cli("graph --t 2 --word 'u3'").code == 2);   // foreign letter
}
