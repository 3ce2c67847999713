// Copyright 2026 The qent Authors
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

// End-to-end runs of the qent executable.

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef QENT_CLI_PATH
#error "QENT_CLI_PATH must name the qent executable"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("qent_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p) {
        std::ifstream f(p);
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    CliResult exec(const std::string& args) const {
        const std::string out = path("stdout.txt");
        const std::string err = path("stderr.txt");
        const std::string cmd = std::string(QENT_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
        const int status = std::system(cmd.c_str());
        CliResult r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    fs::path dir_;
};

TEST_F(Cli, GenWhtSixteen) {
    const auto r = exec("gen wht 16 " + path("w.jsonl") + " --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["rotation_count"], 32);
    EXPECT_LE(j["digest"].get<double>(), 1e-10);
    std::ifstream f(path("w.jsonl"));
    std::string line;
    int rot = 0;
    while (std::getline(f, line)) rot += line.find("\"rot\"") != std::string::npos;
    EXPECT_EQ(rot, 32);
}

TEST_F(Cli, GenRejectsBadSize) {
    const auto r = exec("gen wht 3 " + path("w.jsonl"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("n must be a power of 2"), std::string::npos);
}

TEST_F(Cli, GenDftOrderOneIsEmpty) {
    ASSERT_EQ(exec("gen dft 1 " + path("d.jsonl")).code, 0);
    EXPECT_EQ(slurp(path("d.jsonl")), "{\"version\":1,\"dim\":2,\"io_dim\":2,\"transform\":\"dft\"}\n");
}

TEST_F(Cli, AnalyzeMatchesGenDigestAndIsDeterministic) {
    const auto g = exec("gen dft 8 " + path("d.jsonl") + " --json");
    ASSERT_EQ(g.code, 0) << g.err;
    const auto a1 = exec("analyze " + path("d.jsonl") + " --json --seed 3 --csv " + path("t.csv"));
    ASSERT_EQ(a1.code, 0) << a1.err;
    const auto a2 = exec("analyze " + path("d.jsonl") + " --json --seed 3");
    EXPECT_EQ(a1.out, a2.out);
    const auto j = json::parse(a1.out);
    EXPECT_EQ(j["digest"], json::parse(g.out)["digest"]);
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(slurp(path("t.csv")).rfind("step,gate_kind,phi,phi_n,kappa\n", 0), 0u);
}

TEST_F(Cli, AnalyzeWhtSixteen) {
    ASSERT_EQ(exec("gen wht 16 " + path("w.jsonl")).code, 0);
    const auto r = exec("analyze " + path("w.jsonl") + " --exact-cond --out " + path("a.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(slurp(path("a.json")));
    EXPECT_NEAR(j["phi_final"].get<double>(), 64.0, 1e-9);
    EXPECT_NEAR(j["uniform_condition"]["value"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(j["rotation_count"], 32);
    EXPECT_TRUE(j["lower_bound_reference"].contains("C"));
    EXPECT_TRUE(j["lower_bound_reference"].contains("R"));
}

TEST_F(Cli, AnalyzeEmptyAndMalformed) {
    write("e.jsonl", "{\"version\":1,\"dim\":3,\"io_dim\":3}\n");
    const auto r = exec("analyze " + path("e.jsonl") + " --json");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["phi_final"], 0.0);
    write("bad.jsonl", "{\"version\":1,\"dim\":3,\"io_dim\":3}\n{\"g\":\"flip\",\"k\":1}\n");
    const auto b = exec("analyze " + path("bad.jsonl"));
    EXPECT_EQ(b.code, 2);
    EXPECT_NE(b.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, CompileQrIdentityAndSvdDiag) {
    write("id.csv", "1,0,0\n0,1,0\n0,0,1\n");
    const auto q = exec("compile " + path("id.csv") + " " + path("id.jsonl") + " qr --json");
    ASSERT_EQ(q.code, 0) << q.err;
    const auto jq = json::parse(q.out);
    EXPECT_EQ(jq["rotation_count"], 0);
    EXPECT_EQ(jq["constant_count"], 0);
    EXPECT_EQ(jq["reconstruction_error"], 0.0);

    write("d.csv", "2,0\n0,1\n");
    ASSERT_EQ(exec("compile " + path("d.csv") + " " + path("d.jsonl") + " svd").code, 0);
    const auto a = exec("analyze " + path("d.jsonl") + " --exact-cond --json");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NEAR(json::parse(a.out)["uniform_condition"]["value"].get<double>(), 2.0, 1e-9);
}

TEST_F(Cli, CompileRejections) {
    write("s.csv", "1,2\n2,4\n");
    const auto s = exec("compile " + path("s.csv") + " " + path("s.jsonl") + " svd");
    EXPECT_EQ(s.code, 2);
    EXPECT_NE(s.err.find("numerically singular"), std::string::npos);
    write("r.csv", "1,2,3\n4,5,6\n");
    EXPECT_EQ(exec("compile " + path("r.csv") + " " + path("r.jsonl") + " qr").code, 2);
    write("n.csv", "1,1\n0,1\n");
    EXPECT_EQ(exec("compile " + path("n.csv") + " " + path("n.jsonl") + " qr").code, 2);
}

TEST_F(Cli, VerifyDeltaOnWht) {
    ASSERT_EQ(exec("gen wht 16 " + path("w.jsonl")).code, 0);
    const auto r = exec("verify delta --circuit " + path("w.jsonl") + " --C 1.0 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["details"]["violations"], 0);
    for (const char* key : {"lemma", "verdict", "value", "bound", "witness", "seed", "samples", "grid"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST_F(Cli, VerifyDeltaViolationExitsOne) {
    ASSERT_EQ(exec("gen wht 16 " + path("w.jsonl")).code, 0);
    EXPECT_EQ(exec("verify delta --circuit " + path("w.jsonl") + " --C 0.1").code, 1);
}

TEST_F(Cli, VerifyLemma1) {
    const auto r = exec("verify lemma1 --samples 100000 --grid 1024 --seed 7 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_LE(j["value"].get<double>(), 2.0);
    EXPECT_GE(j["value"].get<double>(), 1.0);
    EXPECT_EQ(j["seed"], 7);
}

TEST_F(Cli, VerifyAppendixA) {
    const auto a = exec("verify appendixA --samples 5000 --seed 2 --json");
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = exec("verify appendixA --samples 5000 --seed 2 --json");
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["details"]["violations"], 0);
}

TEST_F(Cli, VerifyAppendixB) {
    const auto r = exec("verify appendixB --n 256 --trials 10000 --seed 7 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_GT(j["value"].get<double>(), 0.05);
    EXPECT_NEAR(j["value"].get<double>(), 0.294, 1e-3);
}

TEST_F(Cli, VerifyExtraSpaceCases) {
    const auto clean = exec("verify extra-space --n 64 --N 384 --json");
    ASSERT_EQ(clean.code, 0) << clean.err;
    EXPECT_EQ(json::parse(clean.out)["verdict"], "pass");
    const auto pert = exec("verify extra-space --case perturbed --n 16 --N 8 --perturbation 0.01 --seed 4 --json");
    EXPECT_EQ(json::parse(pert.out)["verdict"], "pass");
    const auto id = exec("verify extra-space --case identity --n 16 --N 8 --json");
    EXPECT_EQ(id.code, 0);
    EXPECT_EQ(json::parse(id.out)["verdict"], "hypothesis-violation");
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(exec("").code, 2);
    EXPECT_EQ(exec("frobnicate").code, 2);
    EXPECT_EQ(exec("gen fft 8 x.jsonl").code, 2);
    EXPECT_EQ(exec("verify delta").code, 2);
    EXPECT_EQ(exec("--help").code, 0);
}

} // namespace
