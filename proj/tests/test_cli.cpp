#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eulersum/cli.hpp"
#include "eulersum/reduction.hpp"
#include "support/closed_forms.hpp"

using namespace eulersum;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_dir() { return std::string(EULERSUM_SOURCE_DIR) + "/data"; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("eulersum_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("expand") {
  auto r = run({"expand", "S(1,1,1,9)"});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "S(1,1,1,9) = 6*z(9,1,1,1) + 3*z(9,1,2) + 3*z(9,2,1) + z(9,3) + 6*z(10,1,1) + 3*z(10,2) + 3*z(11,1) + z(12)\n");
  CHECK(run({"expand", "--engine", "t2", "S(2,3)"}).out == "S(2,3) = -z(2,3) + z(2)*z(3)\n");
  CHECK(run({"expand", "--output", "latex", "S(1,1,-3)"}).out ==
        "S_{1^2,\\bar{3}} = -2 \\zeta(\\bar{3},1,1) - \\zeta(\\bar{3},2) - 2 \\zeta(\\bar{4},1) - \\zeta(\\bar{5})\n");
  auto j = nlohmann::json::parse(run({"expand", "--output", "json", "S(2,2,3)"}).out);
  CHECK(j["weight"] == 7);
  CHECK(j["degree"] == 2);
  CHECK(j["engine"] == "t1+t2");
  CHECK(j["index"]["outer"] == 3);
  CHECK(j["conditionally_convergent"] == false);
  CHECK(j["term_count"] == j["terms"].size());
  auto jb = nlohmann::json::parse(run({"expand", "--output", "json", "S(1,-1)"}).out);
  CHECK(jb["conditionally_convergent"] == true);
  CHECK(jb["engine"] == "t1");
  CHECK(run({"expand", "--jobs", "3", "S(1,2,3,4)"}).out == run({"expand", "S(1,2,3,4)"}).out);
}

TEST_CASE("exit codes") {
  CHECK(run({"expand", "S(1,1)"}).code == kExitDivergent);
  CHECK(run({"expand", "S(1,x)"}).code == kExitParse);
  CHECK(run({"expand", "--engine", "t2", "S(1,2)"}).code == kExitPrecondition);
  CHECK(run({"expand", "--engine", "t9", "S(1,2)"}).code == kExitParse);
  CHECK(run({"verify", "--tol", "1e-12", "S(1,2)"}).code == kExitParse);
  CHECK(run({"verify", "--tol", "1e-2", "S(1,2)"}).code == kExitParse);
  CHECK(run({"frobnicate"}).code == kExitParse);
  CHECK(run({}).code == kExitParse);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"expand", "S(1,1,1,1,1,1,1,1,1,1,1,2)"}).code == kExitPrecondition);
  auto cap = run({"eval", "100000000000000000000000000000000000000000000000000*z(2)"});
  CHECK(cap.code == kExitCapacity);
  CHECK(cap.err.find("achieved bound") != std::string::npos);
  CHECK(run({"reduce", "--require-tables", "--table", "/nonexistent.jsonl", "S(1,2)"}).code == kExitTables);
  CHECK(run({"reduce", "--require-tables", "S(1,2)"}).code == kExitTables);
}

TEST_CASE("reduce") {
  CHECK(run({"reduce", "S(-1,-1,-1)"}).out == "S(-1,-1,-1) = -1/2*z(3) - 3/2*z(-1)*z(2) - 1/3*z(-1)^3\n");
  CHECK(run({"reduce", "--output", "latex", "S(-1,-1,-1)"}).out ==
        "S_{\\bar{1}^2,\\bar{1}} = -\\frac{1}{2} \\zeta(3) + \\frac{3}{2} \\zeta(2) \\ln 2 + \\frac{1}{3} \\ln^{3}2\n");
  auto r = run({"reduce", "S(1,1,-3)"});
  CHECK(r.out.find("unresolved: z(-3,1,1)") != std::string::npos);
  auto t = run({"reduce", "--trace", "S(2,3)"});
  CHECK(t.out == "S(2,3) = -9/2*z(5) + 3*z(2)*z(3)\ntrace: depth2-odd-weight z(3,2)\n");
  auto j = nlohmann::json::parse(run({"reduce", "--output", "json", "--trace", "S(5,-1)"}).out);
  CHECK(j["unresolved"] == nlohmann::json::array({"z(-1,5)"}));
  CHECK(j["trace"].size() >= 1);
  auto odd = nlohmann::json::parse(run({"reduce", "--output", "json", "S(8,9)"}).out);
  CHECK(odd["unresolved"].empty());
  CHECK(odd["weight"] == 17);
}

TEST_CASE("verify") {
  auto r = run({"verify", "S(2,6)"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run({"verify", "--tol", "1e-6", "--against", "1285/32*z(8) - 60*z(3)*z(5) + 9*z(2)*z(3)^2 + 31/2*S(2,6)",
             "S(2,2,2,2)"})
            .code == kExitOk);
  auto wrong = run({"verify", "--against", "2*z(3) + 1/1000000", "S(1,2)"});
  CHECK(wrong.code == kExitFail);
  CHECK(wrong.out.find("FAIL") != std::string::npos);
  for (const auto& f : closed::weight_six_table()) {
    if (f.index != "S(1,1,1,1,1,-1)") continue;
    CHECK(run({"verify", "--tol", "1e-5", "--against", f.expr, f.index}).code == kExitOk);
  }
  auto j = nlohmann::json::parse(run({"verify", "--output", "json", "S(1,-1)"}).out);
  CHECK(j["pass"] == true);
  CHECK(j["conditionally_convergent"] == true);
  // with a table the reduction is compared as well
  auto withtab = run({"verify", "--table", data_dir() + "/starter_table.jsonl", "S(1,2,3)"});
  CHECK(withtab.code == kExitOk);
  CHECK(withtab.out.find("reduction") != std::string::npos);
}

TEST_CASE("batch verify") {
  auto p = temp_file("batch.txt", "# comment\nS(2,6)\nS(1,2) = 2*z(3)\n\nS(1,2) = 3*z(3)\nS(1,1)\n");
  auto r = run({"verify", "--jobs", "2", "--file", p.string()});
  CHECK(r.code == kExitFail);
  CHECK(r.out.rfind("PASS S(2,6)", 0) == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> v;
  for (std::string l; std::getline(lines, l);) v.push_back(l.substr(0, l.find(' ', l.find(' ') + 1)));
  CHECK(v == std::vector<std::string>{"PASS S(2,6)", "PASS S(1,2)", "FAIL S(1,2)", "ERROR S(1,1)"});
  auto ok = temp_file("batch_ok.txt", "S(2,6)\nS(1,2) = 2*z(3)\nS(1,1,-3)\n");
  CHECK(run({"verify", "--jobs", "3", "--file", ok.string()}).code == kExitOk);
}

TEST_CASE("eval and JSON round trip") {
  CHECK(run({"eval", "z(2)"}).out.rfind("1.6449340668482264364724151666", 0) == 0);
  auto zero = nlohmann::json::parse(run({"eval", "--output", "json", "S(1,2) - 2*z(3)"}).out);
  CHECK(std::abs(std::stod(zero["value"].get<std::string>())) < 1e-40);
  for (std::string idx : {"S(1,2,3)", "S(1,1,-3)", "S(-2,3,-1)"}) {
    auto expanded = run({"expand", "--output", "json", idx});
    auto p = temp_file("expansion.json", expanded.out);
    auto e = nlohmann::json::parse(run({"eval", "--output", "json", "--file", p.string()}).out);
    auto v = nlohmann::json::parse(run({"verify", "--output", "json", idx}).out);
    INFO(idx);
    CHECK(e["value"] == v["expansion"]["value"]);
    CHECK(run({"eval", expanded.out}).code == kExitOk);
  }
  CHECK(run({"eval", "{not json"}).code == kExitParse);
  CHECK(run({"eval", "[{\"factors\":[\"z(1)\"],\"coeff\":\"1\"}]"}).code == kExitParse);
}

TEST_CASE("tables") {
  CHECK(run({"table-check", "--verify-table", data_dir() + "/starter_table.jsonl"}).code == kExitOk);
  auto bad = temp_file("bad.jsonl",
                       "{\"lhs\": \"z(2,1)\", \"rhs\": [{\"factors\": [\"z(3)\"], \"coeff\": \"2\"}]}\n");
  auto unchecked = run({"table-check", bad.string()});
  CHECK(unchecked.code == kExitOk);
  auto checked = run({"table-check", "--verify-table", bad.string()});
  CHECK(checked.code == kExitTables);
  CHECK(checked.err.find("numeric mismatch") != std::string::npos);
  CHECK(run({"reduce", "--require-tables", "--verify-table", "--table", bad.string(), "S(1,2)"}).code ==
        kExitTables);

  // relative names resolve under EULERSUM_TABLE_DIR
  ::setenv("EULERSUM_TABLE_DIR", data_dir().c_str(), 1);
  auto r = run({"reduce", "--require-tables", "--trace", "--table", "starter_table.jsonl", "S(1,2,3)"});
  ::unsetenv("EULERSUM_TABLE_DIR");
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("table:starter_table.jsonl") != std::string::npos);
  // the starter table only holds identities the rules derive anyway
  auto plain = run({"reduce", "S(1,2,3)"});
  CHECK(r.out.substr(0, r.out.find('\n')) == plain.out.substr(0, plain.out.find('\n')));
}

TEST_CASE("bundled starter table matches its generator") {
  std::ifstream in(data_dir() + "/starter_table.jsonl");
  REQUIRE(in);
  std::string shipped((std::istreambuf_iterator<char>(in)), {});
  std::ostringstream fresh;
  write_identity_table(fresh, build_starter_table(12));
  CHECK(shipped == fresh.str());
}
