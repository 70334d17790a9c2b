#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "lcss/dataset.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = lcss::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ComputeTorsionTable)
{
    const Result r = run({"compute", "--dataset", "tmf-N-p2", "--ideal", "B"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("   65 | (Z/2)^2 | eta_1*kappabar^2, nu_2*kappa"), std::string::npos);
    EXPECT_NE(r.out.find("    3 | Z/8 | nu"), std::string::npos);
}

TEST(Cli, ComputeKoHasNoTorsion)
{
    const Result r = run({"compute", "--dataset", "ko-p2", "--ideal", "B"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("## H^0\n    0\n## H^1"), std::string::npos);
}

TEST(Cli, ComputeThreeAdic)
{
    const Result r = run({"compute", "--dataset", "tmf-N-p3", "--ideal", "3,B", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"24\""), std::string::npos);
    EXPECT_NE(r.out.find("\"B_2/B\""), std::string::npos);
}

TEST(Cli, VerifyExitCodes)
{
    EXPECT_EQ(run({"verify", "--dataset", "tmf-N-p2", "--ideal", "B", "--mode", "anderson", "--shift", "171"}).code, 0);
    EXPECT_EQ(run({"verify", "--dataset", "tmf-N-p2", "--ideal", "2,B", "--mode", "bc", "--shift", "170"}).code, 0);
    const Result bad = run({"verify", "--dataset", "tmf-N-p2", "--ideal", "2,B", "--mode", "bc", "--shift", "169"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
    EXPECT_EQ(run({"verify", "--dataset", "ko-p2", "--mode", "anderson", "--shift=-5"}).code, 0);
}

TEST(Cli, InputErrors)
{
    EXPECT_EQ(run({"compute", "--dataset", "nope"}).code, 2);
    EXPECT_EQ(run({"compute", "--dataset", "ko-p2", "--ideal", "3,B"}).code, 2);
    EXPECT_EQ(run({"compute", "--dataset", "ko-p2", "--window", "5:1"}).code, 2);
    EXPECT_EQ(run({"verify", "--dataset", "ko-p2"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const Result help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("verify"), std::string::npos);
}

TEST(Cli, ValidateAndFiles)
{
    EXPECT_EQ(run({"validate", "--dataset", "tmf-N-p2"}).code, 0);
    const auto dir = std::filesystem::temp_directory_path() / "lcss-cli-test";
    std::filesystem::create_directories(dir);
    const auto bad = dir / "bad.module";
    std::ofstream(bad) << "module bad\nprime 2\nwindow 0 4\nstability 0\noperator B 2\ngen x 9 1\n";
    const Result r = run({"validate", "--file", bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 6"), std::string::npos);

    const auto good = dir / "ko.module";
    std::ofstream(good) << lcss::read_file(lcss::data_dir() / "modules" / "ko-p2.module");
    EXPECT_EQ(run({"compute", "--file", good.string(), "--ideal", "B"}).code, 0);
    const auto out = dir / "chart.svg";
    EXPECT_EQ(run({"chart", "--dataset", "ko-p2", "--ideal", "2,B", "--output", out.string()}).code, 0);
    EXPECT_EQ(lcss::read_file(out).rfind("<svg", 0) == 0 || lcss::read_file(out).rfind("<?xml", 0) == 0, true);
    std::filesystem::remove_all(dir);
}

TEST(Cli, ChartAndPage)
{
    const Result a = run({"chart", "--dataset", "tmf-N-p3", "--ideal", "3,B", "--format", "ascii"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, run({"chart", "--dataset", "tmf-N-p3", "--ideal", "3,B", "--format", "ascii", "--threads", "4"}).out);
    const Result p = run({"page", "--dataset", "tmf-N-p3", "--ideal", "3,B", "--page", "3"});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.out.find("| nu |"), std::string::npos);
    EXPECT_EQ(run({"chart", "--dataset", "ko-p2", "--page", "abutment"}).code, 0);
    EXPECT_EQ(run({"page", "--dataset", "ko-p2", "--page", "1"}).code, 2);
}

TEST(Cli, GorensteinShift)
{
    const Result r = run({"shift", "--degrees", "8,12"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "-22\n");
    EXPECT_EQ(run({"shift", "--degrees", "2", "--target", "fp"}).out, "-4\n");
}
