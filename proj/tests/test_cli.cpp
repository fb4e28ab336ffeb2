#include "comlearn/cli.hpp"
#include "comlearn/serialize.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace comlearn;

namespace {

struct Run {
  int status;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int status = cli::run(args, in, out, err);
  return {status, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(COMLEARN_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("comlearn_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

} // namespace

TEST_CASE("check exit codes") {
  auto r = run({"check", "--model", "baseline", data("example1.csv")});
  CHECK(r.status == 1);
  CHECK(r.json()["verdict"] == "cycle");
  CHECK(r.json()["cycle"]["period_t1"] == "t1");

  r = run({"check", "--model", "comonotone-varying", data("example1.csv")});
  CHECK(r.status == 0);
  CHECK(r.json()["verdict"] == "rationalizable");

  r = run({"check", "--model", "general", data("example2.csv")});
  CHECK(r.status == 1);
  CHECK(r.json()["verdict"] == "all permutations blocked");
  CHECK(r.json()["blocked_combinations"].size() == 4);

  r = run({"check", "--model", "comonotone-invariant", data("example1.csv")});
  CHECK(r.status == 1);
  CHECK(r.json()["cycle"]["kind"] == "consecutive");

  r = run({"check", "--model", "baseline", data("example3.csv"), "--emit-witness"});
  CHECK(r.status == 0);
  CHECK(r.json()["witness"]["model"] == "common-belief");
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({"check", "/nonexistent/file.csv"}).status == 2);
  CHECK(run({"check", "-"}, "period,a\n1,q\n").status == 2);
  CHECK(run({"check", "--model", "nonsense", data("example1.csv")}).status == 2);
  CHECK(run({"check", "--model", "baseline", "--cutoffs", "1/2,1/2", data("example1.csv")}).status == 2);
  CHECK(run({"check", "--model", "comonotone-varying", "--cutoffs", "1/2", data("example1.csv")}).status == 2);
  CHECK(run({"check", "--model", "comonotone-varying", "--cutoffs", "1/2,1", data("example1.csv")}).status == 2);
  CHECK(run({"check", "--model", "baseline"}, "#alternatives:a,b,c\nperiod,i\n1,a\n").status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"check", "--help"}).status == 0);
}

TEST_CASE("stdin and json input") {
  auto r = run({"check", "--format", "json"}, R"({"agents":["i","j"],"periods":["a","b"],"choices":[["x","y"],["y","x"]]})");
  CHECK(r.status == 1);
  r = run({"check", "--model", "multi"}, "#alternatives:a,b,c\nperiod,i,j\n1,a,b\n2,b,c\n");
  CHECK(r.status == 0);
}

TEST_CASE("witness then verify") {
  for (std::string model : {"baseline", "comonotone-invariant", "comonotone-varying"}) {
    auto w = run({"witness", "--model", model, data("example3.csv")});
    REQUIRE(w.status == 0);
    auto path = temp_file(model + ".json", w.out);
    auto v = run({"verify", "--witness", path, data("example3.csv")});
    CHECK(v.status == 0);
    CHECK(v.json()["verdict"] == "accepted");

    auto doc = w.json();
    if (model == "comonotone-varying")
      doc["periods"][0]["reset_belief"] = "1/3";
    else
      doc["prior"] = "1/3";
    auto bad = temp_file(model + "_bad.json", doc.dump());
    v = run({"verify", "--witness", bad, data("example3.csv")});
    CHECK(v.status == 1);
    CHECK(v.json()["verdict"] == "rejected");
  }
  auto junk = temp_file("junk.json", "{not json");
  CHECK(run({"verify", "--witness", junk, data("example3.csv")}).status == 2);
  CHECK(run({"witness", "--model", "general", data("example3.csv")}).status == 2);
}

TEST_CASE("discriminate") {
  auto r = run({"discriminate", "--key", "sex", "--favored", "m", data("table1.csv")});
  CHECK(r.status == 0);
  CHECK(r.json()["taste_flag"]["value"] == true);
  CHECK(r.json()["full_sample"]["cycle"]["period_t1"] == "m2");
  CHECK(run({"discriminate", "--key", "age", "--favored", "m", data("table1.csv")}).status == 2);
  CHECK(run({"discriminate", "--key", "sex", "--favored", "m"}, "period,a,#covariate:sex\n1,x,m\n2,y,m\n").status == 2);
}

TEST_CASE("predict") {
  auto r = run({"predict", data("example3.csv")});
  CHECK(r.status == 0);
  CHECK(r.json()["profiles"].size() == 4);
  r = run({"predict", "--fix", "j=y", data("example3.csv")});
  CHECK(r.json()["profiles"].size() == 2);
  r = run({"predict", "--any-of", "i=y", "--any-of", "j=y", data("example3.csv")});
  CHECK(r.json()["profiles"].size() == 2);
  CHECK(run({"predict", "--fix", "q=y", data("example3.csv")}).status == 2);
  CHECK(run({"predict", "--fix", "jy", data("example3.csv")}).status == 2);
  CHECK(run({"predict", data("example1.csv")}).status == 1);
}

TEST_CASE("text output and determinism") {
  auto a = run({"check", "--model", "comonotone-invariant", "--emit-witness", "--enumerate-joint", data("example3.csv")});
  auto b = run({"check", "--model", "comonotone-invariant", "--emit-witness", "--enumerate-joint", data("example3.csv")});
  CHECK(a.out == b.out);
  auto t = run({"check", "--output", "text", data("example1.csv")});
  CHECK(t.status == 1);
  CHECK(t.out.find("verdict: cycle") != std::string::npos);
}
