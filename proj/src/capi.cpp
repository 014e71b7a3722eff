#include "uqh/uqh.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "uqh/report.hpp"
#include "uqh/session.hpp"
#include "uqh/wmod.hpp"

struct uqh_session {
    uqh::SessionPtr S;
};

struct uqh_module {
    uqh::ModulePtr M;
};

namespace {

thread_local std::string last_error;

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
uqh_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return UQH_OK;
    } catch (const uqh::Error& e) {
        last_error = e.what();
        return static_cast<uqh_status>(static_cast<int>(e.kind()));
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return UQH_RESOURCE_LIMIT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return UQH_INTERNAL;
    }
}

uqh_status null_argument() {
    last_error = "null argument";
    return UQH_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* uqh_last_error(void) { return last_error.c_str(); }

const char* uqh_status_name(uqh_status s) {
    if (s == UQH_OK) return "ok";
    if (s < UQH_INVALID_ORDER || s > UQH_INTERNAL) return "unknown";
    return uqh::error_kind_name(static_cast<uqh::ErrorKind>(static_cast<int>(s)));
}

uqh_status uqh_session_create(char type, int rank, int ell, long denom_bound, const char* const* weights,
                              size_t n_weights, uqh_session** out) {
    if (!out || (n_weights && !weights)) return null_argument();
    *out = nullptr;
    return guarded([&] {
        uqh::SessionPtr S;
        if (denom_bound > 0) {
            S = uqh::Session::with_bound(type, rank, ell, denom_bound);
        } else {
            std::vector<uqh::Weight> ws;
            for (size_t i = 0; i < n_weights; ++i) {
                if (!weights[i]) uqh::fail(uqh::ErrorKind::InvalidArgument, "null weight string");
                ws.push_back(uqh::parse_weight(weights[i], rank));
            }
            S = uqh::Session::for_weights(type, rank, ell, ws);
        }
        *out = new uqh_session{S};
    });
}

void uqh_session_free(uqh_session* s) { delete s; }

int uqh_session_order(const uqh_session* s) { return s ? s->S->field().N() : 0; }

long uqh_session_pbw_dimension(const uqh_session* s) { return s ? s->S->roots().pbw_dimension() : 0; }

uqh_status uqh_verma(const uqh_session* s, const char* weight, uqh_module** out) {
    if (!s || !weight || !out) return null_argument();
    *out = nullptr;
    return guarded([&] {
        auto M = uqh::build_verma(s->S, uqh::parse_weight(weight, s->S->rank()));
        *out = new uqh_module{M};
    });
}

uqh_status uqh_simple(const uqh_session* s, const char* weight, uqh_module** out) {
    if (!s || !weight || !out) return null_argument();
    *out = nullptr;
    return guarded([&] {
        auto M = uqh::simple_module(s->S, uqh::parse_weight(weight, s->S->rank()));
        *out = new uqh_module{M};
    });
}

uqh_status uqh_tensor(const uqh_module* a, const uqh_module* b, uqh_module** out) {
    if (!a || !b || !out) return null_argument();
    *out = nullptr;
    return guarded([&] { *out = new uqh_module{uqh::tensor_module(a->M, b->M)}; });
}

uqh_status uqh_dual(const uqh_module* m, int kind, uqh_module** out) {
    if (!m || !out) return null_argument();
    *out = nullptr;
    if (kind != 0 && kind != 1) {
        last_error = "dual kind must be 0 or 1";
        return UQH_INVALID_ARGUMENT;
    }
    return guarded([&] {
        auto D = uqh::dual_module(m->M, kind == 0 ? uqh::DualKind::Star : uqh::DualKind::Check);
        *out = new uqh_module{D};
    });
}

void uqh_module_free(uqh_module* m) { delete m; }

int uqh_module_dim(const uqh_module* m) { return m ? m->M->dim() : 0; }

uqh_status uqh_module_character(const uqh_module* m, char** out) {
    if (!m || !out) return null_argument();
    *out = nullptr;
    return guarded([&] {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (auto& [w, mult] : uqh::character(*m->M)) j[w.str()] = mult;
        *out = dup_string(j.dump());
    });
}

uqh_status uqh_module_violations(const uqh_module* m, char** out) {
    if (!m || !out) return null_argument();
    *out = nullptr;
    return guarded([&] {
        std::string s;
        for (auto& v : uqh::module_invariant_violations(*m->M)) s += v + "\n";
        *out = dup_string(s);
    });
}

uqh_status uqh_report(const uqh_request* req, uqh_format fmt, char** out, int* violation) {
    if (!req || !req->command || !out) return null_argument();
    *out = nullptr;
    if (violation) *violation = 0;
    return guarded([&] {
        uqh::ReportRequest q;
        q.command = req->command;
        q.type = req->type;
        q.rank = req->rank;
        q.ell = req->ell;
        if (req->weight) q.weight = req->weight;
        if (req->weight2) q.weight2 = req->weight2;
        if (req->eta) q.eta = req->eta;
        q.denom_bound = req->denom_bound;
        uqh::Report r = uqh::make_report(q);
        std::string s = fmt == UQH_FORMAT_TEXT ? uqh::render_text(r) : uqh::render_json(r);
        if (violation) *violation = r.violation ? 1 : 0;
        *out = dup_string(s);
    });
}

void uqh_string_free(char* s) { std::free(s); }

}  // extern "C"
