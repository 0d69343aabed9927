#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "condlen/cli.hpp"

using namespace condlen;
namespace fs = std::filesystem;

namespace {

const std::string kData = CONDLEN_TEST_DATA;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "condlen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "condlen_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Json, SystemRoundTripIsBitExact) {
  const DegreeProfile p(2, {3, 2});
  CounterRng rng(1, 0);
  const PolySystem f = gaussian_system(p, std::nullopt, 1.0, rng);
  const PolySystem g = system_from_json(Json::parse(to_json(f).dump()));
  ASSERT_TRUE(g.profile() == p);
  for (int i = 0; i < p.n(); ++i) EXPECT_EQ(f[i].coeffs(), g[i].coeffs());
  CVector v(3);
  v << Complex(0.1, -0.2), Complex(1.0 / 3.0, 0.0), Complex(0.0, 1e-300);
  // reading a point renormalizes it, which may move the last bit
  EXPECT_LT((point_from_json(Json::parse(to_json(ProjPoint(v)).dump())).rep() - ProjPoint(v).rep()).norm(), 1e-15);
}

TEST(Json, ErrorsNameTheEntry) {
  try {
    system_from_json(read_json_file(kData + "/bad_degree.json"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("polys[1][0]"), std::string::npos) << e.what();
  }
  Json j = to_json(ubar(DegreeProfile(1, {2})));
  j["polys"][0][1]["exponents"] = {1, 0, 1};
  try {
    system_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("polys[0][1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_json_file(kData + "/missing.json"), ParseError);
}

TEST(Json, NonFiniteBecomesNull) {
  EXPECT_TRUE(number(std::numeric_limits<double>::infinity()).is_null());
  EXPECT_EQ(number(1.5).get<double>(), 1.5);
}

TEST(Files, AtomicWriteLeavesNoTemporary) {
  const fs::path p = scratch("atomic.txt");
  write_file_atomic(p.string(), "hello\n");
  write_file_atomic(p.string(), "world\n");
  EXPECT_EQ(slurp(p), "world\n");
  EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST(Csv, TrialTableAndTrace) {
  TrialTable t({"a", "b"}, 2);
  t.row(0)[0] = 1.0;
  t.row(0)[1] = 0.5;
  t.valid[0] = 1;
  EXPECT_EQ(to_csv(t), "trial,valid,a,b\n0,1,1,0.5\n1,0,,\n");
  std::vector<TraceRow> rows(1);
  rows[0].s = 0.25;
  EXPECT_EQ(to_csv(rows).substr(0, 25), "s,t,mu,mu_F,ds,residual\n0");
}

TEST(Cli, DeterministicSolveOnUbarFixture) {
  const CliRun r = cli({"solve", "--input", kData + "/ubar_2_2.json", "--algo", "det"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["track"]["status"], "SUCCESS");
  const ProjPoint z = point_from_json(j["track"]["final_point"]);
  EXPECT_LT(projective_distance(z, ubar_zeros(DegreeProfile(2, {2, 2})).front()), 1e-12);
}

TEST(Cli, TraceAndOutFiles) {
  const fs::path out = scratch("solve.json"), trace = scratch("trace.csv");
  const CliRun r = cli({"solve", "--input", kData + "/ubar_2_2.json", "--seed", "4", "--out", out.string(), "--trace",
                     trace.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Json j = Json::parse(slurp(out));
  EXPECT_EQ(j["seed"], 4);
  const std::string csv = slurp(trace);
  EXPECT_EQ(csv.rfind("s,t,mu,mu_F,ds,residual\n", 0), 0u);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Cli, ReportsAreIdenticalExceptMeta) {
  auto strip = [](const std::string& s) {
    Json j = Json::parse(s);
    j.erase("meta");
    return j.dump();
  };
  const std::vector<std::string> args{"experiment", "sphere-muF", "--n", "1", "--degrees", "2", "--trials", "64", "--seed", "3"};
  const CliRun a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_TRUE(Json::parse(a.out).contains("meta"));
}

TEST(Cli, ExperimentCsv) {
  const fs::path csv = scratch("trials.csv");
  const CliRun r = cli({"experiment", "polar-moment", "--m", "4", "--p", "2", "--trials", "32", "--csv", csv.string()});
  EXPECT_NE(r.code, kExitUsage) << r.err;
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("trial,valid,norm_pow\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 33);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"experiment", "sphere-muF", "--n", "1"}).code, kExitUsage);
  EXPECT_EQ(cli({"experiment", "sphere-muF", "--n", "2", "--degrees", "2"}).code, kExitUsage);
  EXPECT_EQ(cli({"experiment", "no-such"}).code, kExitUsage);
  EXPECT_EQ(cli({"solve", "--input", kData + "/bad_degree.json"}).code, kExitUsage);
  EXPECT_EQ(cli({"solve"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
}

TEST(Cli, HelpListsFlags) {
  const CliRun top = cli({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  for (const char* s : {"solve", "all-roots", "sample-pair", "condition", "experiment"})
    EXPECT_NE(top.out.find(s), std::string::npos) << s;
  const CliRun sub = cli({"experiment", "--help"});
  EXPECT_EQ(sub.code, kExitOk);
  for (const char* s : {"--trials", "--seed", "--degrees", "--center", "--csv", "--strategy", "randomized-steps"})
    EXPECT_NE(sub.out.find(s), std::string::npos) << s;
}

TEST(Cli, SamplePairAndCondition) {
  const fs::path sys = scratch("pair.json"), pt = scratch("point.json");
  const CliRun a = cli({"sample-pair", "--n", "2", "--degrees", "2,3", "--seed", "5"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const Json j = Json::parse(a.out);
  std::ofstream(sys) << j["system"].dump();
  std::ofstream(pt) << j["zero"].dump();
  const CliRun c = cli({"condition", "--input", sys.string(), "--point", pt.string()});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  const Json k = Json::parse(c.out);
  const PolySystem f = system_from_json(j["system"]);
  EXPECT_NEAR(k["mu"].get<double>(), mu(f, point_from_json(j["zero"])), 1e-12 * k["mu"].get<double>());
}

TEST(Cli, AllRootsOnFixture) {
  const CliRun r = cli({"all-roots", "--input", kData + "/ubar_2_2.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["count"], 4);
  EXPECT_EQ(j["complete"], true);
}
