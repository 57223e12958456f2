#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mixsum/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mixsum::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("verify reports exceptions and exits 1") {
  const auto r = run({"verify", "--form", "pT1", "--from", "0", "--to", "10^4"});
  CHECK(r.code == 1);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["n"] == "216");
  CHECK(recs[0]["status"] == "exception");
  CHECK(recs[0]["form"] == "pT1");
  CHECK(run({"verify", "--form", "pFF", "--to", "1000"}).code == 0);
}

TEST_CASE("verify accepts expressions and emits witnesses") {
  const auto r = run({"--json", "verify", "--form", "odd_prime + F[i>=2] + F[j>=2] : odd(1)|odd(2) ; n>4", "--from",
                      "5", "--to", "20", "--emit-witnesses"});
  CHECK(r.code == 0);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 17);
  CHECK(recs[0]["n"] == "5");
  CHECK(recs[0]["p"] == "3");
  CHECK(recs[0]["terms"][0]["seq"] == "F");
  CHECK(recs.back()["record"] == "report");
  CHECK(recs.back()["verified_count"] == 16);
}

TEST_CASE("count") {
  const auto r = run({"count", "--form", "pP2P_count0", "--n", "10"});
  CHECK(r.code == 0);
  const auto j = lines(r.out).at(0);
  CHECK(j["r"] == 4);
  CHECK(j["n"] == "10");
  CHECK(j["form"] == "pP2P_count0");
  const auto dump = run({"count", "pP2P_count0", "10", "--dump-witnesses"});
  CHECK(lines(dump.out).size() == 5);
  CHECK(run({"count", "pFF", "3", "--strict-domain"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--form", "pFF"}).code == 2);
  CHECK(run({"verify", "--form", "bogus[", "--to", "10"}).code == 2);
  CHECK(run({"count", "pFF", "10^"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--form", "prime%4=0 + F[i>=0]", "--to", "10"}).code == 2);
}

TEST_CASE("theorem subcommands") {
  const auto uau = run({"theorem", "uau", "--a", "2", "--max-index", "30"});
  CHECK(uau.code == 0);
  CHECK(uau.out.find("x=4") != std::string::npos);
  CHECK(run({"theorem", "uau", "--a", "3"}).code == 0);
  CHECK(run({"theorem", "p22", "--part", "i", "--m", "2", "--n", "3"}).code == 0);
  CHECK(run({"theorem", "p22", "--part", "ii", "--m", "3", "--n", "4"}).code == 0);
  const auto n2 = run({"--json", "theorem", "p22", "--part", "ii", "--m", "2", "--n", "2", "--a", "3", "--b", "1",
                       "--allow-n2"});
  CHECK(n2.code == 1);
  CHECK(lines(n2.out).at(0)["value_is_prime"] == true);
  const auto code = run({"theorem", "pellcode", "--m", "3", "--n", "1"});
  CHECK(code.out == "7\n");
  CHECK(run({"theorem", "pellcode", "--x", "7"}).out == "3 1\n");
  CHECK(run({"theorem", "pellcode", "--x", "8"}).code == 1);
}

TEST_CASE("seq dump") {
  CHECK(run({"seq", "dump", "--seq", "P", "--bound", "100"}).out == "0 0\n1 1\n2 2\n3 5\n4 12\n5 29\n6 70\n");
  CHECK(run({"seq", "dump", "--seq", "C", "--count", "4"}).out == "0 1\n1 1\n2 2\n3 5\n");
}

TEST_CASE("output is byte-identical across worker counts") {
  std::string first;
  for (const char* w : {"1", "2", "8"}) {
    const auto r = run({"--json", "--stable-output", "--workers", w, "--segment-bits", "10", "verify", "--form",
                        "pPP", "--from", "2", "--to", "200000", "--emit-witnesses"});
    CHECK(r.code == 1);
    if (first.empty()) first = r.out;
    CHECK(r.out == first);
  }
}

TEST_CASE("scan-s resumes without re-emitting rows") {
  const auto path = (std::filesystem::temp_directory_path() / "mixsum_cli_scan.json").string();
  std::filesystem::remove(path);
  const auto full = run({"scan-s", "--form", "pP2P_count", "--base", "10^20", "--from", "0", "--to", "9"});
  CHECK(full.code == 0);
  const auto part1 = run({"--checkpoint", path, "scan-s", "--form", "pP2P_count", "--base", "10^20", "--from", "0",
                          "--to", "9"});
  CHECK(part1.out == full.out);
  // Rewind the checkpoint to offset 4 as if the run had stopped there.
  json cp = json::parse(std::ifstream(path));
  cp["next_offset"] = 4;
  std::ofstream(path) << cp.dump();
  const auto part2 = run({"--checkpoint", path, "--resume", "scan-s", "--form", "pP2P_count", "--base", "10^20",
                          "--from", "0", "--to", "9"});
  std::istringstream in(full.out);
  std::string line, tail;
  for (int i = 0; std::getline(in, line); ++i)
    if (i >= 5) tail += line + "\n";
  CHECK(part2.out == tail);
  std::filesystem::remove(path);
}

TEST_CASE("verify resumes from a checkpoint") {
  const auto path = (std::filesystem::temp_directory_path() / "mixsum_cli_verify.json").string();
  std::filesystem::remove(path);
  const auto a = run({"--checkpoint", path, "--checkpoint-every", "1", "--segment-bits", "8", "verify", "--form",
                      "pT1", "--to", "10^4"});
  CHECK(a.code == 1);
  const auto b = run({"--checkpoint", path, "--resume", "verify", "--form", "pT1", "--to", "10^4"});
  CHECK(b.code == 1);  // the exception found earlier is still reported in the summary
  CHECK(b.out.empty());
  std::filesystem::remove(path);
}
