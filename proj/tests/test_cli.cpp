// Copyright 2026 The swq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "swq_cli.hpp"

namespace swq {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("swq_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    static std::string slurp(const std::string& path) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

TEST_F(CliTest, KernelGenQubit) {
    const Result r = run({"kernel", "gen", "--n", "2", "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_NEAR(j["spectrum"][0].get<double>(), (1 + std::sqrt(3.0)) / 2, 1e-12);
    EXPECT_NEAR(j["spectrum"][1].get<double>(), (1 - std::sqrt(3.0)) / 2, 1e-12);
    EXPECT_TRUE(j["admissible"].get<bool>());
    EXPECT_EQ(j["matrix"]["dim"], 2);
}

TEST_F(CliTest, KernelGenRejectsN1) { EXPECT_EQ(run({"kernel", "gen", "--n", "1"}).code, 2); }

TEST_F(CliTest, KernelGenComposite) {
    const Result r = run({"kernel", "gen", "--n", "4", "--composite", "--dims", "2x2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_LT(j["composite"]["eq8_a"].get<double>(), 1e-10);
    EXPECT_LT(j["composite"]["eq8_b"].get<double>(), 1e-10);
    EXPECT_TRUE(j["composite"]["admissible"].get<bool>());
    EXPECT_EQ(run({"kernel", "gen", "--n", "6", "--composite", "--dims", "2x2"}).code, 2);
    EXPECT_EQ(run({"kernel", "gen", "--composite", "--dims", "2by2"}).code, 2);
}

TEST_F(CliTest, VerifyExitCodes) {
    const std::string good = dir_ / "good.json";
    ASSERT_EQ(run({"kernel", "gen", "--composite", "--dims", "2x3", "--seed", "4", "--out", good}).code, 0);
    EXPECT_EQ(run({"composite", "verify", good, "--dims", "2x3"}).code, 0);
    EXPECT_EQ(run({"kernel", "verify", good}).code, 0);

    const std::string mixed = write("mixed.json", matrix_to_json(identity(4) / 4.0).dump());
    const Result r = run({"kernel", "verify", mixed});
    EXPECT_EQ(r.code, 1);
    EXPECT_NEAR(json::parse(r.out)["purity_residual"].get<double>(), 3.75, 1e-12);
    EXPECT_EQ(run({"composite", "verify", mixed, "--dims", "2x2"}).code, 1);

    const std::string truncated = write("trunc.json", "{\"dim\": 2, \"data\": [[1, 0], [0");
    EXPECT_EQ(run({"kernel", "verify", truncated}).code, 2);
    EXPECT_EQ(run({"kernel", "verify", (dir_ / "missing.json").string()}).code, 2);
    EXPECT_EQ(run({"composite", "verify", good, "--dims", "2x2"}).code, 2);
}

TEST_F(CliTest, WignerEval) {
    const std::string st = write("st.json", matrix_to_json(identity(2) / 2.0).dump());
    const Result r = run({"wigner", "eval", "--state", st});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(json::parse(r.out)["w"].get<double>(), 0.5, 1e-14);
    const Result s = run({"wigner", "eval", "--dims", "2x2", "--keep", "B"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_LT(json::parse(s.out)["subsystem"]["path_difference"].get<double>(), 1e-12);
    const std::string k = write("k.json", matrix_to_json(identity(2)).dump());
    EXPECT_EQ(run({"wigner", "eval", "--state", st, "--kernel", k}).code, 1);
}

TEST_F(CliTest, ReconstructTable) {
    const Result r = run({"reconstruct", "--n", "4", "--samples", "1000,10000,100000", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_LT(j["exact_residual"].get<double>(), 1e-12);
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_NEAR(j["loglog_slope"].get<double>(), -0.5, 0.15);
    const Result c = run({"reconstruct", "--samples", "1", "--format", "csv", "--seed", "3"});
    EXPECT_EQ(c.out, run({"reconstruct", "--samples", "1", "--format", "csv", "--seed", "3"}).out);
    EXPECT_EQ(c.out.substr(0, 8), "samples,");
    EXPECT_EQ(run({"reconstruct", "--samples", "10,x"}).code, 2);
}

TEST_F(CliTest, ModuliScan) {
    const Result z = run({"moduli", "scan", "--n", "1", "--zero-params", "--format", "csv"});
    ASSERT_EQ(z.code, 0) << z.err;
    EXPECT_NE(z.out.find(",degenerate,0,"), std::string::npos);

    const std::string p1 = dir_ / "a.csv", p2 = dir_ / "b.csv";
    ASSERT_EQ(run({"moduli", "scan", "--n", "200", "--seed", "3", "--format", "csv", "--out", p1}).code, 0);
    ASSERT_EQ(run({"moduli", "scan", "--n", "200", "--seed", "3", "--format", "csv", "--out", p2}).code, 0);
    EXPECT_EQ(slurp(p1), slurp(p2));

    const Result j = run({"moduli", "scan", "--n", "2", "--range", "-1,1", "--level", "0.2666666666666667"});
    ASSERT_EQ(j.code, 0) << j.err;
    for (const auto& rec : json::parse(j.out))
        for (int k = 1; k <= 3; ++k) EXPECT_LE(std::abs(rec["a" + std::to_string(k)].get<double>()), 1.0);

    EXPECT_EQ(run({"moduli", "scan", "--out", (dir_ / "no" / "such" / "dir.csv").string()}).code, 2);
    EXPECT_EQ(run({"moduli", "scan", "--range", "1,-1"}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"kernel"}).code, 2);
    EXPECT_EQ(run({"kernel", "gen", "--bogus"}).code, 2);
    EXPECT_EQ(run({"kernel", "gen", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    const Result h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("moduli"), std::string::npos);
}

}  // namespace
}  // namespace swq
