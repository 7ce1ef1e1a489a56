#include "cli.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace framecraft;
using namespace framecraft::testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
    Json error() const { return Json::parse(err); }
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "framecraft");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("framecraft_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string file(const std::string& name, const Json& content) {
        const std::string path = (dir_ / name).string();
        write_json_file(path, content);
        return path;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, DesignMinimizer) {
    const Result r = run_cli({"design", "minimizer", "--a", "4,1,1,1", "--d", "2", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    const Frame f = frame_from_json(j);
    EXPECT_LE(max_abs(frame_operator(f) - diag({4, 3})), 1e-12);
    EXPECT_TRUE(j["verification"]["passed"].get<bool>());
}

TEST_F(CliTest, DesignTightAndInfeasible) {
    const Result ok = run_cli({"design", "tight", "--a", "1,1,1", "--d", "2"});
    ASSERT_EQ(ok.code, 0);
    EXPECT_TRUE(frame_bounds(frame_from_json(ok.json())).tight);

    const Result bad = run_cli({"design", "tight", "--a", "4,1,1,1", "--d", "2"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.error()["error"], "infeasible-tight");
    EXPECT_TRUE(bad.out.empty());
}

TEST_F(CliTest, DesignSchurHornAndCgu) {
    const Result sh = run_cli({"design", "schur-horn", "--a", "1,1,1", "--lambda", "2,1", "--verify"});
    ASSERT_EQ(sh.code, 0) << sh.err;
    EXPECT_TRUE(sh.json()["verification"]["passed"].get<bool>());
    EXPECT_EQ(run_cli({"design", "schur-horn", "--a", "1.5,0.5", "--lambda", "1,1"}).code, 2);

    const Result cgu = run_cli({"design", "cgu-minimizer", "--a", "4,1,1", "--d", "4", "--n", "2", "--verify"});
    ASSERT_EQ(cgu.code, 0) << cgu.err;
    EXPECT_EQ(cgu.json()["m"], 6);
    EXPECT_TRUE(cgu.json()["verification"]["passed"].get<bool>());

    CMat swap = CMat::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    const std::string gen = file("gen.json", matrix_to_json(swap));
    const Result sw = run_cli({"design", "cgu-minimizer", "--a", "1,1", "--d", "2", "--n", "2", "--in", gen});
    ASSERT_EQ(sw.code, 0) << sw.err;
    EXPECT_LE(max_abs(frame_operator(frame_from_json(sw.json())) - 2.0 * CMat::Identity(2, 2)), 1e-12);
}

TEST_F(CliTest, DesignWritesOutFile) {
    const std::string out = path("frame.json");
    const Result r = run_cli({"design", "tight", "--a", "1,1", "--d", "2", "--out", out});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(frame_from_json(read_json_file(out)).size(), 2u);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"design", "banana", "--a", "1"}).code, 1);
    EXPECT_EQ(run_cli({"design", "tight", "--a", "1,x", "--d", "1"}).code, 1);
    EXPECT_EQ(run_cli({"design", "tight", "--a", "1,2", "--d", "1"}).code, 1);
    EXPECT_EQ(run_cli({"verify", "--in", path("missing.json")}).code, 1);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, PotentialReport) {
    const std::string mb = file("mb.json", frame_to_json(mercedes_benz()));
    const Result r = run_cli({"potential", "--in", mb, "--f", "bf"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_NEAR(j["value"].get<double>(), 4.5, 1e-13);
    EXPECT_NEAR(j["welch_ratio"].get<double>(), 0.5, 1e-13);
    EXPECT_TRUE(j["attained"].get<bool>());
    EXPECT_TRUE(j["bounds"]["trace"]["attained"].get<bool>());

    const std::string e1 = file("e1.json", frame_to_json(real_frame({{1, 0}, {1, 0}})));
    EXPECT_NEAR(run_cli({"potential", "--in", e1, "--f", "power:3"}).json()["value"].get<double>(), 8.0, 1e-13);

    const std::string scaled = file("scaled.json", frame_to_json(Frame(CMat(CMat::Identity(3, 3) / std::sqrt(3.0)))));
    EXPECT_NEAR(run_cli({"potential", "--in", scaled, "--f", "xlogx"}).json()["value"].get<double>(), -std::log(3.0), 1e-13);

    EXPECT_EQ(run_cli({"potential", "--in", mb, "--f", "cosh"}).code, 1);
}

TEST_F(CliTest, BoundCommand) {
    const Json j = run_cli({"bound", "--a", "4,1,1,1", "--d", "2"}).json();
    EXPECT_EQ(j["r"], 1);
    EXPECT_NEAR(j["lower"].get<double>(), 25.0, 1e-12);
    const Json c = run_cli({"bound", "--a", "4,1,1", "--d", "4", "--n", "2"}).json();
    EXPECT_EQ(c["r"], 1);
    EXPECT_EQ(c["r0"], 2);
    EXPECT_EQ(run_cli({"bound", "--a", "4,1,1", "--d", "3", "--n", "2"}).code, 1);
}

TEST_F(CliTest, PerturbPolar) {
    const std::string mb = file("mb.json", frame_to_json(mercedes_benz()));
    const std::string same = file("same.json", matrix_to_json(frame_operator(mercedes_benz())));
    const Result r = run_cli({"perturb", "polar", "--in", mb, "--target", same});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(vv_distance(frame_from_json(r.json()["frame"]), mercedes_benz()), 0.0);

    const std::string wrong = file("wrong.json", matrix_to_json(diag({2, 2})));
    EXPECT_EQ(run_cli({"perturb", "polar", "--in", mb, "--target", wrong}).code, 1);
}

TEST_F(CliTest, PerturbNormPreserving) {
    const std::string mb = file("mb.json", frame_to_json(mercedes_benz()));
    const std::string near = file("near.json", matrix_to_json(diag({1.51, 1.49})));
    const Result r = run_cli({"perturb", "norm-preserving", "--in", mb, "--target", near});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_TRUE(j["report"]["converged"].get<bool>());
    EXPECT_FALSE(j.contains("warning"));
    const Frame g = frame_from_json(j["frame"]);
    EXPECT_LE((g.squared_norms() - RVec::Ones(3)).cwiseAbs().maxCoeff(), 1e-10);

    const std::string onb2 = file("onb.json", frame_to_json(onb(2)));
    const std::string tgt = file("tgt.json", matrix_to_json(diag({1.1, 0.9})));
    const Result bad = run_cli({"perturb", "norm-preserving", "--in", onb2, "--target", tgt});
    EXPECT_EQ(bad.code, 3);
    EXPECT_EQ(bad.json()["report"]["warning"], "reducible");
    EXPECT_EQ(bad.error()["error"], "no-convergence");
}

TEST_F(CliTest, ProbeCommand) {
    const std::string sub = file("sub.json", frame_to_json(real_frame({{1, 0}, {1, 0}, {0, 1}})));
    const Result r = run_cli({"probe", "--in", sub, "--f", "bf", "--samples", "400", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.json()["descent_found"].get<bool>());
    EXPECT_EQ(r.out, run_cli({"probe", "--in", sub, "--f", "bf", "--samples", "400", "--seed", "5"}).out);

    const std::string minimizer = file("min.json", frame_to_json(minimizer_frame(NormProfile(make_rvec({4, 1, 1, 1})), 2)));
    EXPECT_FALSE(run_cli({"probe", "--in", minimizer, "--samples", "400"}).json()["descent_found"].get<bool>());
    EXPECT_FALSE(run_cli({"probe", "--in", sub, "--radius", "0"}).json()["descent_found"].get<bool>());
    EXPECT_EQ(run_cli({"probe", "--in", sub, "--constraint", "C"}).code, 1);
}

TEST_F(CliTest, VerifyCommand) {
    const std::string f = file("f.json", frame_to_json(real_frame({{1, 0}, {1, 0}, {0, 1}})));
    const Json j = run_cli({"verify", "--in", f}).json();
    EXPECT_TRUE(j["is_frame"].get<bool>());
    EXPECT_FALSE(j["tight"].get<bool>());
    EXPECT_FALSE(j["irreducible"].get<bool>());
    EXPECT_EQ(j["components"], Json::parse("[[0, 1], [2]]"));
}

TEST(CliTolerance, FlagBeatsEnvironment) {
    ::unsetenv("FRAMECRAFT_TOL");
    EXPECT_EQ(cli::resolve_tolerance(std::nullopt), 1e-10);
    ::setenv("FRAMECRAFT_TOL", "1e-8", 1);
    EXPECT_EQ(cli::resolve_tolerance(std::nullopt), 1e-8);
    EXPECT_EQ(cli::resolve_tolerance(1e-12), 1e-12);
    ::setenv("FRAMECRAFT_TOL", "soon", 1);
    EXPECT_THROW(cli::resolve_tolerance(std::nullopt), Error);
    ::unsetenv("FRAMECRAFT_TOL");
}
