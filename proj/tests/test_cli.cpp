#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "conelab/cli.hpp"

namespace cli = conelab::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Minimal RFC-4180 field splitter for one record.
std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += '"', ++i;
      else if (c == '"') quoted = false;
      else out.back() += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

class SeedEnv {
 public:
  explicit SeedEnv(const char* v) { setenv("CONELAB_SEED", v, 1); }
  ~SeedEnv() { unsetenv("CONELAB_SEED"); }
};

}  // namespace

TEST(Cli, GalleryTableShape) {
  const auto r = run({"gallery", "prop37"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 101u);
  const auto header = csv_fields(ls[0]);
  EXPECT_EQ(header.front(), "schema");
  EXPECT_EQ(header.back(), "pass");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = csv_fields(ls[i]);
    ASSERT_EQ(f.size(), header.size());
    EXPECT_EQ(f[0], "conelab.gallery.prop37.v1");
    EXPECT_EQ(std::stol(f[1]), static_cast<long>(i));
    EXPECT_EQ(f.back(), "true");
  }
  EXPECT_EQ(lines(run({"gallery", "ex34"}).out).size(), 100u);
}

TEST(Cli, ReRunsAreByteIdentical) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"gallery", "prop33", "--nmax", "30"},
        std::vector<std::string>{"certify", "--instance", "square2d", "--epsilon", "0.6", "--format", "json"},
        std::vector<std::string>{"check", "--instance", "kflat", "--N", "4"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SeventeenSignificantDigits) {
  const auto f = csv_fields(lines(run({"gallery", "prop37", "--nmax", "2"}).out)[2]);
  EXPECT_EQ(f[4], "0.35355339059327373");
  EXPECT_EQ(std::stod(f[4]), 1.0 / (2.0 * std::sqrt(2.0)));
}

TEST(Cli, VectorCellsAreQuoted) {
  const auto r = run({"check", "--instance", "kflat", "--N", "2", "--functional", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_NE(ls[1].find("\"1,1\""), std::string::npos);
  const auto header = csv_fields(ls[0]);
  const auto row = csv_fields(ls[1]);
  ASSERT_EQ(row.size(), header.size());
  auto col = [&](const std::string& name) {
    return row[static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin())];
  };
  EXPECT_EQ(col("maximal"), "true");
  EXPECT_EQ(col("pos"), "false");
  EXPECT_EQ(col("f"), "1,1");
  EXPECT_EQ(col("replay_ok"), "true");
}

TEST(Cli, JsonMetadataAndRows) {
  const auto r = run({"certify", "--instance", "square2d", "--epsilon", "0.6", "--format", "json", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "conelab.certify.v1");
  EXPECT_EQ(j["metadata"]["program"], "conelab");
  EXPECT_EQ(j["metadata"]["version"], cli::kVersion);
  EXPECT_EQ(j["metadata"]["seed"], 7);
  EXPECT_EQ(j["metadata"]["config"]["epsilon"], 0.6);
  EXPECT_FALSE(j["metadata"].contains("wall_time_s"));
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_NEAR(j["rows"][0]["delta"].get<double>(), 0.2 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(j["rows"][0]["violations"], 0);
  EXPECT_TRUE(j["pass"].get<bool>());
  const json t = json::parse(run({"gallery", "prop37", "--nmax", "2", "--format", "json", "--timing"}).out);
  EXPECT_TRUE(t["metadata"]["wall_time_s"].is_number());
}

TEST(Cli, SeedEnvironmentOverride) {
  SeedEnv env("42");
  const json j = json::parse(run({"gallery", "prop37", "--nmax", "2", "--format", "json", "--seed", "7"}).out);
  EXPECT_EQ(j["metadata"]["seed"], 42);
}

TEST(Cli, BadSeedEnvironmentIsAConfigError) {
  SeedEnv env("-3");
  EXPECT_EQ(run({"gallery", "prop37"}).code, 2);
}

TEST(Cli, ConfigErrorsExitTwoAndNameThePrecondition) {
  struct Case {
    std::vector<std::string> args;
    std::string needle;
  };
  const std::vector<Case> cases = {
      {{"gallery", "prop99"}, "prop99"},
      {{"gallery", "prop37", "--nmax", "200", "--N", "100"}, "--N"},
      {{"modulus", "--instance", "kflat"}, "epsilon"},
      {{"certify", "--instance", "square2d"}, "epsilon"},
      {{"check", "--instance", "torus"}, "torus"},
      {{"abb", "--instance", "disk2d", "--schedule", "geom:0.45:2:3"}, "schedule"},
      {{"gallery", "prop37", "--tol", "-1"}, "tol"},
      {{"gallery", "prop37", "--format", "xml"}, "format"},
      {{}, ""},
  };
  for (const auto& c : cases) {
    const auto r = run(c.args);
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_NE(r.err.find(c.needle), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, UnwritableOutputExitsThree) {
  EXPECT_EQ(run({"gallery", "prop37", "--output", "/nonexistent-dir/x.csv"}).code, 3);
}

TEST(Cli, OutputFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "conelab_cli_test.csv";
  const auto a = run({"gallery", "prop36", "--nmax", "20", "--output", path.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  std::ifstream in(path);
  const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(file, run({"gallery", "prop36", "--nmax", "20"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, AbbDiskTrace) {
  const auto r = run({"abb", "--instance", "disk2d", "--target", "1,0", "--schedule", "geom:0.45:0.5:20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 21u);
  const auto header = csv_fields(ls[0]);
  const auto dcol = static_cast<std::size_t>(std::find(header.begin(), header.end(), "distance") - header.begin());
  EXPECT_LT(std::stod(csv_fields(ls.back())[dcol]), 1e-3);
}

TEST(Cli, AbbSweepShowsDegradation) {
  const auto r = run({"abb", "--instance", "kflat", "--sweep", "--nlist", "4,8", "--schedule", "geom:0.45:0.5:5",
                      "--max-iter", "3000", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "conelab.abb.sweep.v1");
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_LT(j["rows"][0]["first_k_below_half"].get<long>(), j["rows"][1]["first_k_below_half"].get<long>());
}

TEST(Cli, ModulusSweeps) {
  const auto a = run({"modulus", "--instance", "kflat", "--epsilon", "0.7", "--nlist", "4,8,16"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(lines(a.out).size(), 4u);
  EXPECT_EQ(run({"modulus", "--instance", "kminusp", "--epsilon", "0.4", "--nlist", "4,8,16"}).code, 0);
}

TEST(Cli, FailingRowExitsOne) {
  // A dominated target cannot be separated from the cone base.
  const auto r = run({"certify", "--instance", "square2d", "--epsilon", "0.6", "--point", "-1,-1"});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_NE(r.out.find("false"), std::string::npos);
}

TEST(Cli, ToolBinaryExitStatus) {
  const std::string tool = CONELAB_TOOL;
  const int ok = std::system((tool + " gallery prop33 --nmax 5 > /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(ok));
  EXPECT_EQ(WEXITSTATUS(ok), 0);
  const int bad = std::system((tool + " gallery prop33 --nmax oops > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), 2);
}
