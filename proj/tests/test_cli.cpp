#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "disco/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string log;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"disco_rmt"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, log;
  Run r;
  r.code = disco::cli::run(static_cast<int>(argv.size()), argv.data(), out, log);
  r.out = out.str();
  r.log = log.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "disco_rmt_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("exact moments as rationals and decimals") {
  const Run r = run({"exact", "--orders", "2,4,6,3"});
  CHECK(r.code == 0);
  CHECK(r.out == "order,rational,decimal\n2,1,1\n4,9/4,2.25\n6,7,7\n3,0,0\n");
}

TEST_CASE("exact class table") {
  const Run r = run({"exact", "--class-table", "--max-order", "8"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "order,a_count,b_count,weighted_count,contribution,contribution_decimal\n"
        "4,2,2,4,1,1\n6,2,4,15,15/8,1.875\n6,4,2,21,21/8,2.625\n8,2,6,56,7/2,3.5\n8,4,4,112,7,7\n8,6,2,144,9,9\n");
}

TEST_CASE("bounds: counterexample and suite") {
  const Run c = run({"bounds", "--counterexample"});
  CHECK(c.code == 0);
  CHECK(c.log.find("REFUTED at matrix level") != std::string::npos);
  CHECK(c.out.find("counterexample,mixed,1336343790") != std::string::npos);
  const Run s = run({"bounds", "--suite", "--max-order", "12", "--format", "json"});
  CHECK(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["suite"]["holds"] == "true");
  CHECK(j["suite_8"]["moment"] == "431/16");
}

TEST_CASE("bounds: Hoelder sweep") {
  const Run r = run({"bounds", "--holder", "--trials", "200", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.log.find("200/200 hold") != std::string::npos);
}

TEST_CASE("moments, simulate, gaps and kron produce their tables") {
  const Run m = run({"moments", "--ensemble", "rs", "--dim", "32", "--trials", "4", "--orders", "2,4"});
  CHECK(m.code == 0);
  CHECK(m.out.rfind("order,value,stderr,trials,dim\n", 0) == 0);

  const Run s = run({"simulate", "--disco", "pst,rs", "--dim", "32", "--bins", "10"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("bin_lo,bin_hi,count,density,gauss_pdf,semicircle_pdf\n", 0) == 0);

  const Run g = run({"gaps", "--ensemble", "rs", "--dim", "40"});
  CHECK(g.code == 0);
  std::size_t lines = 0;
  for (char ch : g.out) lines += ch == '\n';
  CHECK(lines == 40);  // header + 39 gaps

  const Run k = run({"kron", "--dims", "6,6", "--orders", "2,4"});
  CHECK(k.code == 0);
  const Run id = run({"kron", "--a", "identity", "--b", "rs"});
  CHECK(id.code == 0);
}

TEST_CASE("same seed gives byte-identical files, different seed does not") {
  const auto a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.json");
  CHECK(run({"moments", "--disco", "pst,rs", "--dim", "16", "--trials", "5", "--seed", "3", "-o", a.string()}).code == 0);
  CHECK(run({"moments", "--disco", "pst,rs", "--dim", "16", "--trials", "5", "--seed", "3", "-o", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run({"moments", "--disco", "pst,rs", "--dim", "16", "--trials", "5", "--seed", "4", "-o", b.string()}).code == 0);
  CHECK(slurp(a) != slurp(b));
  CHECK(run({"simulate", "--dim", "16", "--format", "json", "-o", c.string(), "--seed", "9"}).code == 0);
  const std::string first = slurp(c);
  const std::string first_manifest = slurp(c.string() + ".manifest.json");
  CHECK(run({"simulate", "--dim", "16", "--format", "json", "-o", c.string(), "--seed", "9"}).code == 0);
  CHECK(slurp(c) == first);
  CHECK(slurp(c.string() + ".manifest.json") == first_manifest);
}

TEST_CASE("manifest schema") {
  const auto out = scratch("m.csv");
  const auto man = scratch("m.manifest.json");
  CHECK(run({"exact", "--orders", "2", "-o", out.string(), "--manifest", man.string(), "--timing"}).code == 0);
  const auto j = nlohmann::json::parse(slurp(man));
  for (const char* key : {"command", "flags", "seed", "versions", "outputs", "elapsed_ms"}) CHECK(j.contains(key));
  CHECK(j["command"] == "exact");
  CHECK(j["outputs"][0] == out.string());
  CHECK(j["elapsed_ms"].is_number());
  CHECK(j["flags"]["orders"] == "2");
  CHECK(j["seed"] == disco::cli::kDefaultSeed);
}

TEST_CASE("seed from the environment") {
  const auto out = scratch("env.csv");
  ::setenv("DISCO_RMT_SEED", "77", 1);
  const Run r = run({"exact", "--orders", "2", "-o", out.string()});
  ::unsetenv("DISCO_RMT_SEED");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(j["seed"] == 77);
}

TEST_CASE("errors map to exit codes") {
  CHECK(run({}).code == disco::cli::kUsage);
  CHECK(run({"exact", "--bogus"}).code == disco::cli::kUsage);
  CHECK(run({"moments", "--ensemble", "toeplitz"}).code == disco::cli::kUsage);
  CHECK(run({"moments", "--ensemble", "pst", "--disco", "pst,rs"}).code == disco::cli::kUsage);
  CHECK(run({"exact", "--orders", "20"}).code == disco::cli::kUsage);
  CHECK(run({"exact", "-o", "/nonexistent-dir/x.csv"}).code == disco::cli::kIo);
  CHECK(run({"exact", "--help"}).code == disco::cli::kOk);
}
