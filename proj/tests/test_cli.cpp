#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "spikit/json_io.hpp"

// End-to-end checks of the installed binary: exit-code trichotomy, stdin
// input, and certificate round-trips through --verify.

namespace {

std::string bin() {
  const char* b = std::getenv("SPIKIT_BIN");
  REQUIRE(b != nullptr);
  return b;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  std::string dir = "/tmp/spikit_cli_test";
  if (std::system(("mkdir -p " + dir).c_str()) != 0) REQUIRE(false);
  std::string cmd = bin() + " " + args;
  if (!stdin_data.empty()) {
    std::ofstream f(dir + "/stdin.txt");
    f << stdin_data;
    f.close();
    cmd += " < " + dir + "/stdin.txt";
  }
  cmd += " 2>" + dir + "/err.txt";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string dir = "/tmp/spikit_cli_test";
  if (std::system(("mkdir -p " + dir).c_str()) != 0) REQUIRE(false);
  std::string path = dir + "/" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("cli: generate, reduce, and pipe from stdin") {
  auto gen = run("gen seaway");
  REQUIRE(gen.exit_code == 0);
  std::string seaway = write_file("seaway.json", gen.out);
  auto reduced = run("reduce " + seaway);
  REQUIRE(reduced.exit_code == 0);
  auto j = spikit::parse_json_text(reduced.out);
  CHECK(j["game"]["actions"][0] == spikit::json::array({"PA", "PN"}));
  // stdin via "-"
  auto via_stdin = run("reduce -", gen.out);
  CHECK(via_stdin.exit_code == 0);
  CHECK(via_stdin.out == reduced.out);
}

TEST_CASE("cli: exit-code trichotomy") {
  auto gen = run("gen seaway");
  std::string seaway = write_file("seaway.json", gen.out);
  CHECK(run("spi check " + seaway + " " + seaway).exit_code == 1);  // decision: no
  CHECK(run("token correlated " + seaway).exit_code == 0);          // decision: yes
  std::string broken = write_file("broken.json", "{\"players\": [}");
  CHECK(run("reduce " + broken).exit_code == 2);                    // parse error
  auto neg = run("gen negotiation");
  std::string negotiation = write_file("negotiation.json", neg.out);
  CHECK(run("disarm search " + negotiation + " --max-subsets 4").exit_code == 3);  // cap refusal
}

TEST_CASE("cli: every emitted certificate passes --verify") {
  std::string seaway = write_file("seaway.json", run("gen seaway").out);
  std::string negotiation = write_file("negotiation.json", run("gen negotiation").out);
  std::string temptation = write_file("temptation.json", run("gen temptation").out);
  std::string psi = write_file("psi.json", "{\"T1\": \"R1\", \"T2\": \"R2\"}");

  auto check_verifies = [&](const std::string& args) {
    auto res = run(args);
    REQUIRE(res.exit_code == 0);
    std::string cert = write_file("cert.json", res.out);
    auto v = run("--verify " + cert);
    CHECK(v.exit_code == 0);
    return res.out;
  };
  check_verifies("token correlated " + seaway);
  check_verifies("remap omni " + seaway + " --mode pure");
  check_verifies("remap omni " + seaway + " --mode correlated");
  check_verifies("remap uni " + temptation + " --psi " + psi);
  check_verifies("disarm verify " + negotiation + " --remove \"1:l,f,m,f,h,f\"");
  // composite outputs: search results and optimization reports
  check_verifies("disarm search " + negotiation + " --unilateral 1");
  check_verifies("remap uni " + temptation);
  std::string weights = write_file("weights.json", "[[1,1],[1,1],[1,1],[1,1]]");
  check_verifies("token correlated " + seaway + " --optimize " + weights);
  check_verifies("remap omni " + seaway + " --mode correlated --optimize " + weights);

  // mutation: perturbing a reduced-region payoff in an emitted certificate
  // breaks it ((PA,PA) is part of the reduced seaway game)
  auto cert = spikit::parse_json_text(run("token correlated " + seaway).out);
  cert["game"]["payoffs"][2][2][0] = 3;
  std::string mutated = write_file("mutated.json", cert.dump());
  CHECK(run("--verify " + mutated).exit_code == 1);
}

TEST_CASE("cli: removal specs") {
  std::string seaway = write_file("seaway.json", run("gen seaway").out);
  // the documented spec syntax, including an empty player section
  auto res = run("disarm verify " + seaway + " --remove \"1:FA,FN;2:\"");
  CHECK(res.exit_code == 1);  // both reduced games coincide: not an SPI
  auto bad = run("disarm verify " + seaway + " --remove \"1:XX\"");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: gpr pipeline") {
  std::string c5 = write_file("c5.json", R"({"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]})");
  auto inst = run("gen gpr-graph " + c5);
  REQUIRE(inst.exit_code == 0);
  std::string inst_path = write_file("c5inst.json", inst.out);
  CHECK(run("token gpr " + inst_path).exit_code == 0);
  CHECK(run("oracle coloring " + c5).exit_code == 0);

  std::string w6 = write_file("w6.json",
      R"({"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4],[0,5],[1,5],[2,5],[3,5],[4,5]]})");
  auto winst = run("gen gpr-graph " + w6);
  std::string winst_path = write_file("w6inst.json", winst.out);
  CHECK(run("token gpr " + winst_path).exit_code == 1);
  CHECK(run("oracle coloring " + w6).exit_code == 1);
}

TEST_CASE("cli: oracle subcommands agree with the solvers") {
  std::string seaway = write_file("seaway.json", run("gen seaway").out);
  auto reduced = run("reduce " + seaway);
  std::string reduced_game = write_file("reduced.json",
                                         spikit::parse_json_text(reduced.out)["game"].dump());
  CHECK(run("oracle is-spi " + seaway + " " + reduced_game).exit_code == 1);
  CHECK(run("oracle pure-token " + seaway).exit_code == 1);
  auto iso = run("iso " + reduced_game + " " + reduced_game);
  CHECK(iso.exit_code == 0);
}
