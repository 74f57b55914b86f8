#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "qdegen/cli.hpp"

namespace fs = std::filesystem;
using qdegen::Json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(QDEGEN_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("qdegen_test_" + name); }

}  // namespace

TEST(Cli, BuildSo3) {
    auto r = cli("build --so3 --l 1 --q 1");
    ASSERT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("dimension"), 3);
    EXPECT_EQ(j.at("config").at("q"), 1.0);
}

TEST(Cli, BuildDegenerateIsDeterministic) {
    const std::string args = "build --degenerate --r 3 --s 3 --epsilon 0 --lambda-re 1/2 --cutoff 4";
    auto a = cli(args), b = cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = Json::parse(a.out);
    EXPECT_EQ(j.at("dimension"), 1 + 19 + 85);  // levels 0, 2, 4
}

TEST(Cli, VerifyCompact) {
    EXPECT_EQ(cli("verify --compact --n-max 5 --m-max 3").code, 0);
}

TEST(Cli, VerifyPrincipalStar) {
    EXPECT_EQ(cli("verify --r 4 --s 4 --lambda-re 3 --lambda-im-t 1/2 --primed --star --metric").code, 0);
}

TEST(Cli, VerifyStandardStarFails) {
    EXPECT_EQ(cli("verify --r 4 --s 4 --lambda-re 7/10 --star").code, 2);
}

TEST(Cli, DumpRoundTripAndCorruption) {
    const auto path = temp("dump.json");
    ASSERT_EQ(cli("rep dump --r 3 --s 4 --epsilon 1 --lambda-re 7/10 --cutoff 5 --out " + path.string()).code, 0);
    EXPECT_EQ(cli("verify --in " + path.string()).code, 0);

    Json j;
    {
        std::ifstream in(path);
        j = Json::parse(in);
    }
    auto& t = j["generators"][static_cast<std::size_t>(3 - 1)]["triplets"][5];
    t[2] = t[2].get<double>() + 0.1;
    const auto bad = temp("corrupt.json");
    {
        std::ofstream out(bad);
        out << j.dump();
    }
    EXPECT_EQ(cli("verify --in " + bad.string()).code, 2);

    const auto junk = temp("junk.json");
    {
        std::ofstream out(junk);
        out << "{ not json";
    }
    EXPECT_EQ(cli("verify --in " + junk.string()).code, 3);
    fs::remove(path);
    fs::remove(bad);
    fs::remove(junk);
}

TEST(Cli, ClassifyLadder) {
    auto r = cli("classify --r 4 --s 4 --epsilon 0 --lambda-re 2 --json");
    ASSERT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    const auto& c = j.at("classification");
    EXPECT_FALSE(c.at("irreducible").get<bool>());
    EXPECT_TRUE(c.at("ladder").get<bool>());
    EXPECT_EQ(c.at("constituents").size(), 3u);
    EXPECT_TRUE(j.contains("config"));
}

TEST(Cli, FloatingLambdaNeedsSnap) {
    EXPECT_EQ(cli("classify --r 4 --s 4 --lambda-re 2 --lambda-im 0.5").code, 3);
    EXPECT_EQ(cli("classify --r 4 --s 4 --lambda-re 1.4142135 --snap").code, 0);
}

TEST(Cli, ScanHasNoDisagreements) {
    auto r = cli("scan --r 3 --s 4 --lambda-from -4 --lambda-to 8 --json");
    ASSERT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("disagreements"), 0);
    EXPECT_EQ(j.at("rows").size(), 13u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("classify --r 2 --s 4 --lambda-re 1").code, 3);
    EXPECT_EQ(cli("verify --r 4 --s 4 --epsilon 5").code, 3);
    EXPECT_EQ(cli("build --so3 --class1").code, 3);
    EXPECT_EQ(cli("frobnicate").code, 3);
    EXPECT_EQ(cli("verify --in /nonexistent/file.json").code, 3);
}

TEST(CliLibrary, SnapToRational) {
    EXPECT_EQ(qdegen::cli::snap_to_rational(0.3333333333), qdegen::Rational(1, 3));
    EXPECT_EQ(qdegen::cli::snap_to_rational(-2.5), qdegen::Rational(-5, 2));
}

TEST(CliLibrary, ReportEmbedsConfig) {
    qdegen::cli::RunConfig c;
    c.command = "classify";
    c.r = 4;
    c.s = 5;
    c.lambda_re = "7/3";
    auto res = qdegen::cli::run(c);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_EQ(res.report.at("config").at("r"), 4);
    EXPECT_EQ(res.report.at("config").at("lambda_re"), "7/3");
}
