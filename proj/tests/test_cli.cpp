#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "test_helpers.hpp"

namespace sc = spectral_complexity;

namespace {

const std::filesystem::path work = test_support::scratch_dir() / "cli";

int run(const std::string& args, const std::string& log = "cli.log") {
  std::filesystem::create_directories(work);
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " > " + (work / log).string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path blobs_csv() {
  const auto ds = test_support::blobs({{0, 0}, {40, 0}, {0, 40}}, 60, 0.5, 51);
  std::ostringstream out;
  out.precision(17);
  out << "f0,f1,y\n";
  const char* names[] = {"red", "green", "blue"};
  for (Eigen::Index i = 0; i < ds.features.rows(); ++i)
    out << ds.features(i, 0) << ',' << ds.features(i, 1) << ',' << names[ds.labels[static_cast<std::size_t>(i)]]
        << '\n';
  std::filesystem::create_directories(work);
  const auto path = work / "blobs.csv";
  std::ofstream(path) << out.str();
  return path;
}

bool xml_well_formed(const std::filesystem::path& p) {
  const std::string python = PYTHON_BINARY;
  if (python.empty()) return true;
  const auto cmd = python + " -c \"import sys, xml.dom.minidom; xml.dom.minidom.parse(sys.argv[1])\" " + p.string();
  return std::system(cmd.c_str()) == 0;
}

} // namespace

TEST(Cli, HelpListsFlagsWithDefaults) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("complexity --help", "help.log"), 0);
  const auto help = read(work / "help.log");
  for (const char* flag : {"--input", "--label-col", "--reduce", "--M", "--E", "--k", "--seed", "--no-row-normalize",
                           "--metric", "--threads", "--spectrum-svg", "--out"})
    EXPECT_NE(help.find(flag), std::string::npos) << flag;
  EXPECT_NE(help.find("100"), std::string::npos);
  EXPECT_NE(help.find("42"), std::string::npos);
  EXPECT_EQ(run("benchmark --help", "bhelp.log"), 0);
  EXPECT_NE(read(work / "bhelp.log").find("--separations"), std::string::npos);
}

TEST(Cli, ComplexityOnSeparatedBlobs) {
  const auto csv = blobs_csv();
  const auto out = work / "r.json";
  const auto svg = work / "spectrum.svg";
  ASSERT_EQ(run("complexity --input " + csv.string() + " --label-col y --reduce passthrough --out " + out.string() +
                " --spectrum-svg " + svg.string()),
            0)
      << read(work / "cli.log");
  const auto report = sc::load_report(out);
  EXPECT_LT(report.scores.cmsauls, 0.05);
  EXPECT_EQ(report.params.seed, 42u);
  EXPECT_EQ(report.dataset.class_names, (std::vector<std::string>{"red", "green", "blue"}));
  EXPECT_TRUE(xml_well_formed(svg));
}

TEST(Cli, InputErrorsExitTwo) {
  const auto missing = (work / "does-not-exist.csv").string();
  EXPECT_EQ(run("complexity --input " + missing + " --label-col y", "missing.log"), 2);
  EXPECT_NE(read(work / "missing.log").find(missing), std::string::npos);
  const auto csv = blobs_csv();
  EXPECT_EQ(run("complexity --input " + csv.string() + " --label-col y --k 200 --E 100"), 2);
  EXPECT_EQ(run("complexity --input " + csv.string() + " --label-col nope"), 2);
  EXPECT_EQ(run("complexity --input " + csv.string() + " --label-col y --reduce tsne"), 2);
  EXPECT_EQ(run("complexity --bogus-flag"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST(Cli, NumericFailureExitsThree) {
  std::filesystem::create_directories(work);
  const auto flat = work / "flat.csv";
  std::ofstream(flat) << "a,b,y\n1,1,p\n1,1,q\n1,1,p\n";
  EXPECT_EQ(run("complexity --input " + flat.string() + " --label-col y --reduce pca:1 --k 1 --M 3 --E 3"), 3);
}

TEST(Cli, DescriptorsOnSeparatedBlobs) {
  const auto csv = blobs_csv();
  const auto out = work / "desc.json";
  ASSERT_EQ(run("descriptors --input " + csv.string() + " --label-col y --out " + out.string()), 0);
  const auto j = sc::Json::parse(read(out));
  EXPECT_EQ(j["n3"].get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(j["t2"].get<double>(), 90.0);
}

TEST(Cli, MdsFromReport) {
  const auto csv = blobs_csv();
  const auto report = work / "for-mds.json";
  ASSERT_EQ(run("complexity --input " + csv.string() + " --label-col y --out " + report.string()), 0);
  const auto svg = work / "map.svg";
  const auto coords = work / "map.json";
  ASSERT_EQ(run("mds --from-report " + report.string() + " --svg " + svg.string() + " --out " + coords.string()), 0)
      << read(work / "cli.log");
  const auto text = read(svg);
  std::regex circle("<circle ");
  EXPECT_EQ(std::distance(std::sregex_iterator(text.begin(), text.end(), circle), std::sregex_iterator()), 3);
  for (const char* name : {"red", "green", "blue"}) EXPECT_NE(text.find(name), std::string::npos);
  EXPECT_TRUE(xml_well_formed(svg));
  EXPECT_EQ(sc::Json::parse(read(coords))["points"].size(), 3u);
}

TEST(Cli, BenchmarkEndToEnd) {
  const auto out = work / "bench.json";
  const auto svg = work / "bench.svg";
  ASSERT_EQ(run("benchmark --classes 10 --dim 3 --separations 8,5,3,2,1,0.5 --seed 7 --per-class 60 --M 40 --E 40 "
                "--trials 20000 --out " + out.string() + " --svg " + svg.string()),
            0)
      << read(work / "cli.log");
  const auto j = sc::Json::parse(read(out));
  EXPECT_EQ(j["datasets"].size(), 6u);
  for (const char* metric : {"cmsauls", "csg", "auls"}) {
    const double r = j["correlations"][metric]["pearson"]["r"].get<double>();
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_EQ(j["correlations"][metric]["pearson"]["m"], 6);
  }
  EXPECT_TRUE(xml_well_formed(svg));
}

TEST(Cli, ThreadsFromEnvironmentDoNotChangeOutput) {
  const auto csv = blobs_csv();
  const auto a = work / "env-a.json";
  const auto b = work / "env-b.json";
  ASSERT_EQ(run("complexity --input " + csv.string() + " --label-col y --out " + a.string()), 0);
  ASSERT_EQ(run("complexity --input " + csv.string() + " --label-col y --out " + b.string() + " --threads 3"), 0);
  ASSERT_EQ(::setenv("SPECTRAL_COMPLEXITY_THREADS", "4", 1), 0);
  const auto c = work / "env-c.json";
  ASSERT_EQ(run("complexity --input " + csv.string() + " --label-col y --out " + c.string()), 0);
  ::unsetenv("SPECTRAL_COMPLEXITY_THREADS");
  auto body = [](const std::filesystem::path& p) {
    auto j = sc::Json::parse(read(p));
    j.erase("generated_at");
    j.erase("tool_version");
    return j.dump();
  };
  EXPECT_EQ(body(a), body(b));
  EXPECT_EQ(body(a), body(c));
}
