#include <doctest.h>

#include <cstdlib>
#include <string>

#include <json.hpp>

#include "uqh/uqh.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    uqh_string_free(s);
    return out;
}

uqh_request request(const char* cmd, char type, int rank, int ell, const char* w = nullptr, const char* w2 = nullptr) {
    uqh_request r{};
    r.command = cmd;
    r.type = type;
    r.rank = rank;
    r.ell = ell;
    r.weight = w;
    r.weight2 = w2;
    return r;
}

}  // namespace

TEST_CASE("sessions and Verma modules through the C interface") {
    const char* ws[] = {"1/3,0"};
    uqh_session* s = nullptr;
    REQUIRE(uqh_session_create('A', 2, 3, 0, ws, 1, &s) == UQH_OK);
    CHECK(uqh_session_order(s) % 6 == 0);
    CHECK(uqh_session_pbw_dimension(s) == 27);

    uqh_module* v = nullptr;
    REQUIRE(uqh_verma(s, "1/3,0", &v) == UQH_OK);
    CHECK(uqh_module_dim(v) == 27);
    char* ch = nullptr;
    REQUIRE(uqh_module_character(v, &ch) == UQH_OK);
    json c = json::parse(take(ch));
    long mass = 0;
    for (auto& [k, m] : c.items()) mass += m.get<long>();
    CHECK(mass == 27);
    char* viol = nullptr;
    REQUIRE(uqh_module_violations(v, &viol) == UQH_OK);
    CHECK(take(viol).empty());

    uqh_module *l = nullptr, *t = nullptr, *d = nullptr;
    REQUIRE(uqh_simple(s, "0,0", &l) == UQH_OK);
    CHECK(uqh_module_dim(l) == 1);
    REQUIRE(uqh_tensor(v, l, &t) == UQH_OK);
    CHECK(uqh_module_dim(t) == 27);
    REQUIRE(uqh_dual(v, 1, &d) == UQH_OK);
    CHECK(uqh_module_dim(d) == 27);
    CHECK(uqh_dual(v, 7, &d) == UQH_INVALID_ARGUMENT);

    uqh_module_free(d);
    uqh_module_free(t);
    uqh_module_free(l);
    uqh_module_free(v);
    uqh_session_free(s);
}

TEST_CASE("errors come back as status codes") {
    uqh_session* s = nullptr;
    CHECK(uqh_session_create('A', 1, 2, 0, nullptr, 0, &s) != UQH_OK);
    CHECK(s == nullptr);
    CHECK(std::string(uqh_last_error()).size() > 0);
    CHECK(uqh_session_create('A', 1, 4, 0, nullptr, 0, nullptr) == UQH_INVALID_ARGUMENT);
    REQUIRE(uqh_session_create('A', 1, 4, 0, nullptr, 0, &s) == UQH_OK);
    uqh_module* v = nullptr;
    CHECK(uqh_verma(s, "0.5", &v) == UQH_INVALID_ARGUMENT);
    CHECK(uqh_verma(s, "1,2", &v) == UQH_INVALID_ARGUMENT);
    CHECK(uqh_verma(s, nullptr, &v) == UQH_INVALID_ARGUMENT);
    // thirds are not in the field of this session
    CHECK(uqh_verma(s, "1/3", &v) != UQH_OK);
    CHECK(v == nullptr);
    CHECK(uqh_verma(s, "2", &v) == UQH_OK);
    CHECK(std::string(uqh_status_name(UQH_OK)).size() > 0);
    CHECK(std::string(uqh_status_name(UQH_INVARIANT_VIOLATION)) != uqh_status_name(UQH_OK));
    uqh_module_free(v);
    uqh_session_free(s);
    uqh_module_free(nullptr);
    uqh_session_free(nullptr);
}

TEST_CASE("reports through the C interface") {
    uqh_request r = request("describe", 'A', 1, 4);
    char* out = nullptr;
    int viol = -1;
    REQUIRE(uqh_report(&r, UQH_FORMAT_JSON, &out, &viol) == UQH_OK);
    json j = json::parse(take(out));
    CHECK(viol == 0);
    CHECK(j["r"] == 2);
    CHECK(j["session"]["N"] == 8);

    uqh_request t = request("typical", 'A', 1, 4, "2");
    REQUIRE(uqh_report(&t, UQH_FORMAT_TEXT, &out, &viol) == UQH_OK);
    std::string text = take(out);
    CHECK(text.rfind("typical  A1  ell=4", 0) == 0);

    uqh_request bad = request("frobnicate", 'A', 1, 4);
    CHECK(uqh_report(&bad, UQH_FORMAT_JSON, &out, &viol) == UQH_INVALID_ARGUMENT);
    CHECK(uqh_report(nullptr, UQH_FORMAT_JSON, &out, &viol) == UQH_INVALID_ARGUMENT);
}
