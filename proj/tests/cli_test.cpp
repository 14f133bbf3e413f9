#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stdout only; stderr is dropped
Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(E8CM_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST(Cli, IsE8Changemaker) {
    auto r = run("is-e8cm --s-star 0,0,1,0,0,0,0,0 --sigma \"\"");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"e8_changemaker\":true}\n");
    // same tau through a file
    auto t = write_temp("witness.json", R"({"s_star":[0,0,1,0,0,0,0,0],"sigma":[]})");
    EXPECT_EQ(run("is-e8cm --tau " + t).out, r.out);
    EXPECT_EQ(run("is-e8cm --tau " + t + " --s-star 0,0,1,0,0,0,0,0").code, 2);
}

TEST(Cli, IsChangemaker) {
    EXPECT_EQ(parse(run("is-changemaker --sigma 1,1,2,4"))["changemaker"], true);
    EXPECT_EQ(parse(run("is-changemaker --sigma 1,3"))["changemaker"], false);
    EXPECT_EQ(run("is-changemaker --sigma 1,x").code, 2);
}

TEST(Cli, RecognizeSample) {
    auto r = run("recognize --gram " E8CM_SAMPLES "/lambda_27_16.json");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"summands\":[[27,16]]}\n");
}

TEST(Cli, RecognizeNotLinear) {
    // D4 has a trivalent vertex
    auto g = write_temp("d4.json", R"({"rank":4,"gram":[[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[0,-1,0,2]]})");
    auto r = run("recognize --gram " + g);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "\"not-linear\"\n");
}

TEST(Cli, ComplementRoundTripsThroughRecognize) {
    auto c = parse(run("complement --s-star 1,0,0,1,0,0,0,0 --sigma \"\""));
    EXPECT_EQ(c["rank"], 7);
    EXPECT_EQ(c["discriminant"], 54);
    nlohmann::json g{{"rank", c["rank"]}, {"gram", c["gram"]}};
    auto path = write_temp("comp.json", g.dump());
    EXPECT_EQ(run("recognize --gram " + path).out, "{\"summands\":[[27,16],[2,1]]}\n");
}

TEST(Cli, Congruence) {
    EXPECT_EQ(run("congruence --p 7 --rhs 4").out, "{\"solutions\":[2,5]}\n");
    EXPECT_EQ(parse(run("congruence --p 27 --rhs 14"))["solutions"], nlohmann::json({11, 16}));
    EXPECT_EQ(run("congruence --p 1 --rhs 0").code, 2);
}

TEST(Cli, Knot) {
    auto t = write_temp("tau.json", R"({"s_star":[0,1,0,0,0,0,0,0],"sigma":[]})");
    auto k = parse(run("knot --tau " + t));
    EXPECT_EQ(k["p"], 8);
    EXPECT_EQ(k["genus"], 4);
    EXPECT_EQ(k["torsion"], nlohmann::json({2, 1, 1, 1, 0}));
    EXPECT_EQ(k["alexander"], nlohmann::json({-1, 1, 0, -1, 1}));
}

TEST(Cli, Family) {
    auto r = run("family --name A1- --j 2 --verify");
    EXPECT_EQ(r.code, 0);
    auto f = parse(r);
    EXPECT_EQ(f["p"], 43);
    EXPECT_EQ(f["verified"], true);
    EXPECT_EQ(run("family --name J- --j 1").code, 2);
    EXPECT_EQ(run("family --name nosuch --j 2").code, 2);
    EXPECT_EQ(parse(run("family --list")).size(), 38u);
}

TEST(Cli, EnumerateCountsAndDeterminism) {
    auto all = run("enumerate --n -1");
    EXPECT_EQ(all.code, 0);
    EXPECT_EQ(std::count(all.out.begin(), all.out.end(), '\n'), 1003);
    auto capped = run("enumerate --n 0");
    EXPECT_EQ(std::count(capped.out.begin(), capped.out.end(), '\n'), 27721);
    auto three = run("enumerate --n 1 --limit 3");
    EXPECT_EQ(three.code, 0);
    EXPECT_EQ(std::count(three.out.begin(), three.out.end(), '\n'), 3);
    EXPECT_EQ(run("enumerate --n 0 --jobs 3").out, capped.out);
    EXPECT_EQ(run("enumerate --sigma 1,1 --norm-cap 300").out, run("enumerate --sigma 1,1 --norm-cap 300 --jobs 2").out);
}

TEST(Cli, Basis) {
    auto r = run("basis --s-star 0,0,1,0,0,0,0,0 --sigma 1,1,2");
    EXPECT_EQ(r.code, 0);
    auto b = parse(r);
    EXPECT_EQ(b["checks"]["pass"], true);
    EXPECT_EQ(b["basis"].size(), 10u);  // rank 8 + 3 - 1
}

TEST(Cli, Roots) {
    auto r = parse(run("roots"));
    EXPECT_EQ(r["count"], 240);
    EXPECT_EQ(r["positive"].size(), 120u);
    auto tsv = run("roots --format tsv").out;
    EXPECT_NE(tsv.find("lower\tupper"), std::string::npos);
}

TEST(Cli, VerifyAndExitCodes) {
    auto r = run("verify roots240 --no-timing");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse(r)["pass"], true);
    EXPECT_EQ(r.out, run("verify roots240 --no-timing").out);
    auto c = parse(run("verify congruences"));
    EXPECT_TRUE(c.contains("millis"));
    EXPECT_EQ(run("verify no_such_claim").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("enumerate --n 9").code, 2);
    EXPECT_EQ(run("is-e8cm --s-star 1,2,3 --sigma \"\"").code, 2);
}
