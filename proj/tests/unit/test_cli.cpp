#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "pstcli/cli.hpp"
#include "pstkit/graph_io.hpp"

using json = nlohmann::json;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pstcli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, pstcli::kExitOk) << r.err;
  return json::parse(r.out);
}

std::set<std::string> keys(const json& j) {
  std::set<std::string> k;
  for (const auto& [key, value] : j.items()) k.insert(key);
  return k;
}

}  // namespace

TEST(Cli, ScanWeakProduct) {
  const auto j = run_json({"scan", "--expr", "weak(Q:2,K:4)", "--from", "0", "--to", "12", "--tmax", "6.2832"});
  EXPECT_EQ(keys(j), (std::set<std::string>{"source", "target", "t_max", "steps", "t_star", "fmax", "reading"}));
  EXPECT_NEAR(j["t_star"].get<double>(), pi / 2, 1e-8);
  EXPECT_GE(j["fmax"].get<double>(), 1 - 1e-9);
  EXPECT_EQ(j["reading"], "numeric PST");
  EXPECT_EQ(j["target"], 12);
}

TEST(Cli, CertifyHypercube) {
  const auto j = run_json({"certify", "--expr", "Q:3", "--from", "0", "--to", "7"});
  EXPECT_EQ(keys(j), (std::set<std::string>{"verdict", "time_num", "time_exact", "support", "support_eigenvalues",
                                            "signs", "reason", "fidelity_at_time"}));
  EXPECT_EQ(j["verdict"], "yes");
  EXPECT_EQ(j["time_exact"]["a"], 1);
  EXPECT_EQ(j["time_exact"]["b"], 2);
  EXPECT_EQ(j["time_exact"]["text"], "pi/2");
  EXPECT_EQ(j["signs"], json({0, 1, 0, 1}));
  // Labels work as vertex names.
  const auto k = run_json({"certify", "--expr", "Q:3", "--from", "000", "--to", "111"});
  EXPECT_EQ(k["verdict"], "yes");
  const auto no = run_json({"certify", "--expr", "K:3", "--from", "0", "--to", "1"});
  EXPECT_EQ(no["verdict"], "no");
  EXPECT_TRUE(no["time_exact"].is_null());
}

TEST(Cli, BuildRoundTrips) {
  const auto r = run({"build", "--expr", "cart(K:2, Q:2)"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(pst::parse_graph(r.out).adjacency(), pst::make_hypercube(3).adjacency());
  const auto j = run_json({"build", "--expr", "P:3", "--format", "json"});
  EXPECT_EQ(j["adjacency"].size(), 3u);
}

TEST(Cli, SpectrumAndFidelity) {
  const auto s = run_json({"spectrum", "--expr", "Q:2"});
  EXPECT_EQ(keys(s), (std::set<std::string>{"eigenvalues", "groups", "integral", "n"}));
  EXPECT_EQ(s["groups"].size(), 3u);
  EXPECT_TRUE(s["integral"].get<bool>());

  const auto f = run({"fidelity", "--expr", "K:2", "--from", "0", "--to", "1", "--tmax", "0.5", "--pi-units",
                      "--steps", "3"});
  ASSERT_EQ(f.code, 0) << f.err;
  std::istringstream in(f.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,re,im,abs");
  std::string last;
  while (std::getline(in, line)) last = line;
  EXPECT_EQ(last.substr(0, last.find(',')), pst::format_real(pi / 2));
  EXPECT_NEAR(std::stod(last.substr(last.rfind(',') + 1)), 1.0, 1e-12);
  const auto fj = run_json({"fidelity", "--expr", "K:2", "--from", "0", "--to", "1", "--format", "json"});
  EXPECT_EQ(keys(fj), (std::set<std::string>{"source", "target", "t", "re", "im", "abs"}));
  EXPECT_EQ(fj["t"].size(), 1000u);
}

TEST(Cli, Collapse) {
  const auto j = run_json({"collapse", "--expr", "weak(K:2,K:4)", "--from", "0", "--to", "4"});
  EXPECT_EQ(keys(j), (std::set<std::string>{"cells", "degrees", "quotient", "max_deviation", "scaled_p4"}));
  EXPECT_LE(j["max_deviation"].get<double>(), 1e-9);
  EXPECT_NEAR(j["scaled_p4"]["scale"].get<double>(), std::sqrt(3.0), 1e-12);
}

TEST(Cli, Conditions) {
  struct Case {
    std::vector<std::string> args;
    bool holds;
  };
  const std::vector<Case> cases{
      {{"condition", "weak", "--g", "Q:2", "--h", "K:4", "--t", "0.5", "--pi-units"}, true},
      {{"condition", "weak", "--g", "K:2", "--h", "K:4", "--t", "0.5", "--pi-units"}, false},
      {{"condition", "lex-clique", "--g", "Q:2", "--h", "Q:2", "--t", "pi/2"}, true},
      {{"condition", "lex-std", "--g", "K:2", "--h", "Q:2", "--t", "pi/2"}, true},
      {{"condition", "doublecone", "--expr", "scale(K:3; sqrt(2))", "--alpha", "sqrt(3)"}, true},
      {{"condition", "doublecone", "--lambda0", "2", "--alpha", "1"}, false},
      {{"condition", "gluedcone", "--n", "15", "--k", "6", "--gamma", "8"}, true},
      {{"condition", "p4", "--gamma", "2/sqrt(3)", "--kappa", "0"}, true},
      {{"condition", "p4", "--gamma", "1", "--kappa", "0"}, false},
  };
  for (const auto& c : cases) {
    const auto j = run_json(c.args);
    EXPECT_EQ(keys(j), (std::set<std::string>{"holds", "failure", "witness", "detail", "ratios", "time_num",
                                              "time_exact", "integer_form"}))
        << c.args[1];
    EXPECT_EQ(j["holds"].get<bool>(), c.holds) << c.args[1] << " " << j.dump();
  }
  const auto dc = run_json({"condition", "doublecone", "--expr", "scale(K:3; sqrt(2))", "--alpha", "sqrt(3)"});
  EXPECT_EQ(dc["time_exact"]["text"], "pi/sqrt(2)");
  EXPECT_EQ(dc["ratios"][0]["class"], "Q10");
  const auto cyl = run_json({"condition", "cylcone", "--n", "3", "--k", "2", "--m", "1"});
  EXPECT_TRUE(cyl["contradiction"].get<bool>());
  EXPECT_FALSE(cyl["steps"].empty());
}

TEST(Cli, Table) {
  const auto r = run({"table"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
  const auto j = run_json({"table", "--format", "json"});
  ASSERT_EQ(j.size(), 8u);
  for (const auto& row : j) EXPECT_TRUE(row["matches"].get<bool>()) << row.dump();
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, pstcli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, pstcli::kExitUsage);
  EXPECT_EQ(run({"build", "--expr", "weak(Q:2"}).code, pstcli::kExitUsage);
  EXPECT_NE(run({"build", "--expr", "weak(Q:2"}).err.find("offset 8"), std::string::npos);
  EXPECT_EQ(run({"certify", "--expr", "K:3", "--from", "0", "--to", "9"}).code, pstcli::kExitUsage);
  EXPECT_EQ(run({"scan", "--expr", "K:3", "--from", "0", "--to", "1", "--format", "xml"}).code, pstcli::kExitUsage);
  EXPECT_EQ(run({"condition", "nope"}).code, pstcli::kExitUsage);
  EXPECT_EQ(run({"certify", "--expr", "K:3", "--from", "0", "--to", "0"}).code, pstcli::kExitDomain);
  EXPECT_EQ(run({"collapse", "--expr", "P:4", "--from", "1", "--to", "2"}).code, pstcli::kExitDomain);
  EXPECT_EQ(run({"build", "--expr", "file:/nonexistent/graph.txt"}).code, pstcli::kExitDomain);
  EXPECT_EQ(run({"--help"}).code, pstcli::kExitOk);
}

TEST(Cli, OutWritesAtomically) {
  const auto dir = fs::temp_directory_path() / ("pstcli_out_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto target = dir / "cert.json";
  const auto r = run({"certify", "--expr", "Q:3", "--from", "0", "--to", "7", "--out", target.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(target);
  const auto j = json::parse(in);
  EXPECT_EQ(j["verdict"], "yes");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_EQ(run({"table", "--out", (dir / "missing" / "t.txt").string()}).code, pstcli::kExitDomain);
  fs::remove_all(dir);
}
