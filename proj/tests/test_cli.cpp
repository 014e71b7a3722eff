#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(UQH_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST_CASE("describe") {
    Run r = cli("describe --type A --rank 1 --ell 4");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "describe");
    CHECK(j["session"]["type"] == "A");
    CHECK(j["session"]["rank"] == 1);
    CHECK(j["session"]["ell"] == 4);
    CHECK(j["session"]["N"] == 8);
    CHECK(j["r"] == 2);
    CHECK(j["positive_roots"].size() == 1);
}

TEST_CASE("typical reports the witness") {
    Run r = cli("typical --type A --rank 1 --ell 4 --weight 2");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["typical"] == false);
    CHECK(j["roots"][0]["witness"]["k"] == 1);
}

TEST_CASE("module commands") {
    CHECK(json::parse(cli("verma --type A --rank 2 --ell 3 --weight 1/3,0").out)["dim"] == 27);
    CHECK(json::parse(cli("cover --type A --rank 1 --ell 4 --weight 0").out)["dim"] == 4);
    CHECK(json::parse(cli("gram --type A --rank 1 --ell 4 --weight 2 --eta 1").out)["ok"] == true);
    CHECK(cli("bgg --type A --rank 1 --ell 4 --weight 0").code == 0);
    CHECK(cli("selfdual --type A --rank 1 --ell 4 --weight 2").code == 0);
    CHECK(cli("tensor --type A --rank 1 --ell 5 --weight 1/3 --weight2 -2/3").code == 0);
    CHECK(cli("ribbon --type A --rank 1 --ell 4 --weight 1 --weight2 1/3").code == 0);
    CHECK(cli("verma --type A --rank 1 --ell 4 --weight 1/3 --denom-bound 6").code == 0);
}

TEST_CASE("suite on a small cell") {
    Run r = cli("suite --type A --rank 1 --ell 4");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["criteria"].size() == 8);
}

TEST_CASE("output is byte-identical across runs") {
    for (std::string a : {"describe --type B --rank 2 --ell 3", "verma --type A --rank 2 --ell 4 --weight 1/2,0",
                          "ribbon --type A --rank 1 --ell 5 --weight 1 --weight2 1/3 --out text"}) {
        CAPTURE(a);
        Run x = cli(a), y = cli(a);
        CHECK(x.code == 0);
        CHECK(x.out == y.out);
        CHECK_FALSE(x.out.empty());
    }
}

TEST_CASE("text output") {
    Run r = cli("describe --type A --rank 2 --ell 3 --out text");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("describe  A2  ell=3  N=", 0) == 0);
}

TEST_CASE("usage and parameter errors exit 1") {
    Run u = cli("describe --type A --rank 1 --ell 4 --bogus", true);
    CHECK(u.code == 1);
    CHECK(u.out.find("--type") != std::string::npos);
    CHECK(cli("").code == 1);
    CHECK(cli("frobnicate --type A --rank 1 --ell 4").code == 1);
    CHECK(cli("describe --type A --rank 1").code == 1);
    CHECK(cli("describe --type A --rank 1 --ell 2").code == 1);
    CHECK(cli("verma --type A --rank 1 --ell 4 --weight 0.5").code == 1);
    CHECK(cli("verma --type A --rank 1 --ell 4 --weight 1/3 --denom-bound 2").code == 1);
    CHECK(cli("describe --type A --rank 1 --ell 4 --out xml").code == 1);
}
