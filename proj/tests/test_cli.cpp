#include <json.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(RENORM_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("renorm-cli-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, TransformI0) {
  Result r = run("transform --what i0 --max-deg 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "t0 + t0*t1 + t0*t1^2 + 1/2*t0^2*t2\n");
}

TEST(Cli, TransformTAtVanishingI0) {
  Result r = run("transform --what t --n 1 --at-i0-zero");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "I1\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("transform --what i0 --max-deg 0").code, 2);
  EXPECT_EQ(run("compute --model 1d --genus -1").code, 2);
  EXPECT_EQ(run("compute --model 5d --genus 2").code, 2);
  EXPECT_EQ(run("compute --model hmm-fat").code, 2);
  EXPECT_EQ(run("verify --suite nonsense").code, 2);
  EXPECT_EQ(run("verify --suite tables --inject-fault nonsense").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, ComputeForms) {
  EXPECT_EQ(run("compute --model 1d --genus 2").out, "1/8*v^2*I3 + 5/24*v^3*I2^2\n");
  EXPECT_EQ(run("compute --model hmm --genus 2 --eval-N 1").out, "1/8*v^2*I3 + 5/24*v^3*I2^2\n");
  EXPECT_EQ(run("compute --model 2d --genus 2 --form tilde").out, "29/5760*I2*I3 + 7/1440*I2^3 + 1/1152*I4\n");
  EXPECT_EQ(run("compute --model 1d --genus 0 --order 4").out,
            "1/2*I0^2 - 1/2*I0^2*I1 + 1/6*I0^3*I2 - 1/24*I0^4*I3 + 1/120*I0^5*I4\n");
  EXPECT_EQ(run("compute --model 2d --genus 1").out, "1/24*log(1/(1-I1))\n");
  Result latex = run("compute --model 1d --genus 2 --latex");
  EXPECT_NE(latex.out.find("\\frac{5}{24}"), std::string::npos);
}

TEST(Cli, ComputeJsonIncludesCorrelators) {
  Result r = run("compute --model 2d --genus 2 --form json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("correlators").at("tau4").get<std::string>(), "1/1152");
  EXPECT_EQ(j.at("correlators").at("tau2^3").get<std::string>(), "7/240");
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* args : {"compute --model hmm --genus 4 --form json", "curve --model 2d --coords t --orders -6..6",
                           "verify --suite tables"}) {
    Result a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Cli, VerifyPassesAndWritesReport) {
  auto dir = fresh_dir("report");
  auto path = dir / "report.json";
  Result r = run("verify --suite all --report " + path.string());
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j.at("pass").get<bool>());
  for (const char* s : {"tables", "virasoro", "homogeneity", "curves"}) EXPECT_TRUE(j.at("suites").at(s).at("pass").get<bool>()) << s;
  std::filesystem::remove_all(dir);
}

TEST(Cli, InjectedFaultFailsVerification) {
  auto dir = fresh_dir("fault");
  auto path = dir / "report.json";
  EXPECT_EQ(run("verify --suite virasoro --inject-fault 2d-f2 --report " + path.string()).code, 1);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  EXPECT_FALSE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("fault").get<std::string>(), "2d-f2");
  EXPECT_EQ(run("verify --suite homogeneity --inject-fault degree").code, 1);
  EXPECT_EQ(run("verify --suite tables --inject-fault hmm-f2").code, 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheIsKeyedAndReused) {
  auto dir = fresh_dir("cache");
  std::string env = "RENORM_CACHE_DIR=" + dir.string();
  Result a = run("compute --model 2d --genus 3 --form json", env);
  ASSERT_EQ(a.code, 0);
  std::size_t files = 0;
  std::filesystem::path entry;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    entry = e.path();
  }
  ASSERT_EQ(files, 1u);
  Result b = run("compute --model 2d --genus 3 --form json", env);
  EXPECT_EQ(a.out, b.out);
  // a hit is served from the file: a marker written into it comes back verbatim
  { std::ofstream(entry) << "cached\n"; }
  EXPECT_EQ(run("compute --model 2d --genus 3 --form json", env).out, "cached\n");
  // the engine-version hash is part of the name
  auto j = nlohmann::json::parse(a.out);
  EXPECT_NE(entry.filename().string().find(j.at("engine").get<std::string>()), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CurveCoefficients) {
  Result r = run("curve --model 1d --coords t --orders -2..1 --max-var 1 --max-deg 2");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("coefficients").at(0).at("exponent").get<std::string>(), "-2");
  EXPECT_EQ(j.at("coefficients").at(0).at("coefficient").get<std::string>(), "t0 + t0*t1");
  EXPECT_EQ(run("curve --model 1d --orders 3..1").code, 2);
}
