#include <doctest.h>

#include "uqh/report.hpp"

using namespace uqh;
using nlohmann::json;

namespace {

ReportRequest req(const std::string& cmd, char t, int n, int ell, std::optional<std::string> w = {},
                  std::optional<std::string> w2 = {}) {
    ReportRequest q;
    q.command = cmd;
    q.type = t;
    q.rank = n;
    q.ell = ell;
    q.weight = w;
    q.weight2 = w2;
    return q;
}

// rationals travel as "p/q" strings, never a JSON number with a fraction
bool no_floats(const json& j) {
    if (j.is_number_float()) return false;
    if (j.is_structured())
        for (auto& x : j)
            if (!no_floats(x)) return false;
    return true;
}

}  // namespace

TEST_CASE("rationals print as p/q") {
    CHECK(rational_json(Rational(1, 3)) == "1/3");
    CHECK(rational_json(Rational(-4, 6)) == "-2/3");
    CHECK(rational_json(Rational(5)) == "5/1");
    CHECK(weight_json(Weight({Rational(1, 2), Rational(0)})) == json({"1/2", "0/1"}));
}

TEST_CASE("describe sl2 at ell = 4") {
    Report r = make_report(req("describe", 'A', 1, 4));
    CHECK(r.body["r"] == 2);
    CHECK(r.body["num_positive"] == 1);
    CHECK(r.body["pbw_dim"] == 2);
    CHECK(r.body["session"]["type"] == "A");
    CHECK(r.body["session"]["rank"] == 1);
    CHECK(r.body["session"]["ell"] == 4);
    CHECK(r.body["session"]["N"] == 8);
    std::string s = render_json(r);
    // the header comes first
    CHECK(s.find("\"command\"") < s.find("\"session\""));
    CHECK(s.find("\"session\"") < s.find("\"cartan\""));
}

TEST_CASE("typicality report names the witness") {
    Report r = make_report(req("typical", 'A', 1, 4, "2"));
    CHECK(r.body["typical"] == false);
    REQUIRE(r.body["roots"].size() == 1);
    CHECK_FALSE(r.violation);
    CHECK(r.body["roots"][0]["lambda_alpha"] == "3/1");
    CHECK(r.body["roots"][0]["witness"]["k"] == 1);
}

TEST_CASE("reports are deterministic and float free") {
    for (auto& q : {req("verma", 'A', 2, 3, "1/3,0"), req("gram", 'A', 2, 4, "1,0"), req("tensor", 'A', 1, 5, "1/3", "-2/3"),
                    req("ribbon", 'A', 1, 4, "1", "1/2"), req("cover", 'A', 1, 4, "0"), req("bgg", 'A', 1, 4, "0"),
                    req("selfdual", 'A', 1, 4, "2")}) {
        CAPTURE(q.command);
        Report a = make_report(q), b = make_report(q);
        CHECK(render_json(a) == render_json(b));
        CHECK(render_text(a) == render_text(b));
        CHECK(no_floats(a.body));
        CHECK_FALSE(a.violation);
        CHECK(a.body["ok"] == true);
    }
}

TEST_CASE("verma and cover dimensions") {
    CHECK(make_report(req("verma", 'A', 2, 3, "0,0")).body["dim"] == 27);
    CHECK(make_report(req("cover", 'A', 1, 4, "0")).body["dim"] == 4);
    Report t = make_report(req("tensor", 'A', 1, 5, "1/3", "-2/3"));
    CHECK(t.body["generic"] == true);
    CHECK(t.body["summands"].size() == 5);
}

TEST_CASE("text rendering carries the header") {
    std::string s = render_text(make_report(req("describe", 'B', 2, 3)));
    CHECK(s.rfind("describe  B2  ell=3  N=", 0) == 0);
    CHECK(s.find("pbw_dim: 81") != std::string::npos);
}

TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(make_report(req("verma", 'A', 2, 3, "1")), Error);
    CHECK_THROWS_AS(make_report(req("verma", 'A', 1, 3, "0.5")), Error);
    CHECK_THROWS_AS(make_report(req("nonsense", 'A', 1, 3)), Error);
    CHECK_THROWS_AS(make_report(req("describe", 'A', 1, 2)), Error);
    CHECK_THROWS_AS(make_report(req("describe", 'Q', 1, 3)), Error);
    ReportRequest q = req("verma", 'A', 1, 4, "1/3");
    q.denom_bound = 2;
    CHECK_THROWS_AS(make_report(q), Error);
    q.denom_bound = 6;
    CHECK_NOTHROW(make_report(q));
    ReportRequest g = req("gram", 'A', 1, 4, "0");
    g.eta = "-1";
    CHECK_THROWS_AS(make_report(g), Error);
}
