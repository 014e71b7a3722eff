#include "uqh/report.hpp"

#include <algorithm>
#include <sstream>

#include "uqh/homalg.hpp"
#include "uqh/ribbon.hpp"
#include "uqh/shapovalov.hpp"

namespace uqh {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json rational_json(const Rational& x) { return rational_string(x); }

json weight_json(const Weight& w) { return w.strings(); }

json session_json(const Session& S) {
    const RootDatum& R = S.roots();
    return {{"type", std::string(1, R.type())}, {"rank", R.rank()}, {"ell", R.ell()}, {"N", S.field().N()}};
}

json cell_json(const CellResult& c) {
    json out;
    out["type"] = std::string(1, c.type);
    out["rank"] = c.rank;
    out["ell"] = c.ell;
    out["ok"] = c.ok();
    json cs = json::array();
    for (auto& k : c.criteria) {
        json j = {{"id", k.id}, {"name", k.name}, {"status", status_name(k.status)}, {"failures", k.failures}, {"detail", k.detail}};
        if (!k.note.empty()) j["note"] = k.note;
        cs.push_back(j);
    }
    out["criteria"] = cs;
    return out;
}

namespace {

json character_json(const Character& ch) {
    json a = json::array();
    for (auto& [w, m] : ch) a.push_back({{"weight", weight_json(w)}, {"mult", m}});
    return a;
}

json weights_json(const std::vector<Weight>& ws) {
    json a = json::array();
    for (auto& w : ws) a.push_back(weight_json(w));
    return a;
}

json matrix_json(const Matrix& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).is_zero() ? std::string("0") : m(i, j).str());
        a.push_back(row);
    }
    return a;
}

json certificate_json(const LocalityCertificate& c) {
    json sc = json::array();
    for (auto& s : c.scalars) sc.push_back(s.str());
    return {{"end_dim", c.end_dim}, {"radical_dim", c.radical_dim}, {"local", c.local},
            {"minimal_polynomials_ok", c.minimal_polynomials_ok}, {"scalars", sc}, {"degrees", c.degrees}};
}

Weight weight_arg(const ReportRequest& q, const std::optional<std::string>& s) {
    return s ? parse_weight(*s, q.rank) : Weight::zero(q.rank);
}

SessionPtr make_session(const ReportRequest& q, const std::vector<Weight>& declared) {
    if (q.denom_bound > 0) {
        for (auto& w : declared)
            if (q.denom_bound % static_cast<long>(w.denominator()) != 0)
                fail(ErrorKind::InvalidArgument, "weight " + w.str() + " exceeds the denominator bound " +
                                                     std::to_string(q.denom_bound));
        return Session::with_bound(q.type, q.rank, q.ell, q.denom_bound);
    }
    return Session::for_weights(q.type, q.rank, q.ell, declared);
}

json describe(const Session& S) {
    const RootDatum& R = S.roots();
    json roots = json::array();
    for (int k = 0; k < R.num_positive(); ++k)
        roots.push_back({{"root", R.root(k)}, {"d_alpha", R.d_alpha(k)}, {"r_alpha", R.r_alpha(k)}, {"g_alpha", R.g_alpha(k)}});
    std::vector<int> w0;
    for (int i : R.w0_word()) w0.push_back(i + 1);
    std::vector<std::vector<int>> m(R.rank(), std::vector<int>(R.rank()));
    for (int i = 0; i < R.rank(); ++i)
        for (int j = 0; j < R.rank(); ++j) m[i][j] = R.m(i, j);
    return {{"cartan", R.cartan()},
            {"symmetrizers", R.symmetrizers()},
            {"cartan_det", R.cartan_det()},
            {"braid_orders", m},
            {"r", R.r()},
            {"positive_roots", roots},
            {"num_positive", R.num_positive()},
            {"w0_word", w0},
            {"rho", weight_json(R.rho())},
            {"pbw_dim", R.pbw_dimension()},
            {"phi", S.field().phi()}};
}

Report verma_report(const SessionPtr& S, const Weight& la) {
    Report r;
    const RootDatum& R = S->roots();
    ModulePtr V = build_verma(S, la);
    json spaces = json::array();
    bool dims_ok = V->dim() == R.pbw_dimension();
    for (size_t b = 0; b < V->weights.size(); ++b) {
        auto coords = R.root_coordinates(la - V->weights[b]);
        RootVec eta;
        for (auto& x : coords) eta.push_back(static_cast<int>(boost::multiprecision::numerator(x)));
        long par = partition_count(R, eta);
        if (par != V->block_dim(static_cast<int>(b))) dims_ok = false;
        spaces.push_back({{"eta", eta}, {"dim", V->block_dim(static_cast<int>(b))}, {"partitions", par}});
    }
    auto viol = module_invariant_violations(*V);
    r.body["lambda"] = weight_json(la);
    r.body["dim"] = V->dim();
    r.body["pbw_dim"] = R.pbw_dimension();
    r.body["weight_spaces"] = spaces;
    r.body["dims_match"] = dims_ok;
    r.body["typical"] = is_typical(R, la);
    r.body["composition_factors"] = weights_json(composition_factors(V));
    r.body["relation_violations"] = viol;
    r.violation = !dims_ok || !viol.empty();
    return r;
}

Report gram_report(const SessionPtr& S, const Weight& la, const std::optional<RootVec>& only) {
    Report r;
    ModulePtr V = build_verma(S, la);
    GramTables G = contravariant_form(V);
    bool typ = is_typical(S->roots(), la);
    json pieces = json::array();
    bool zero_sets = true;
    for (auto& p : G.pieces) {
        if (only && p.eta != *only) continue;
        Cyclotomic closed = gram_det_closed(*S, la, p.eta);
        bool agree = p.det.is_zero() == closed.is_zero();
        zero_sets = zero_sets && agree;
        json j = {{"eta", p.eta},
                  {"partitions", static_cast<long>(p.exponents.size())},
                  {"rank", p.rank},
                  {"corank", p.radical_dim},
                  {"det", p.det.str()},
                  {"closed", closed.str()},
                  {"zero_sets_agree", agree}};
        if (!p.det.is_zero() && !closed.is_zero()) j["ratio"] = (p.det / closed).str();
        pieces.push_back(j);
    }
    if (only && pieces.empty())
        fail(ErrorKind::InvalidArgument, "eta " + rootvec_str(*only) + " is not a degree of the negative part");
    bool consistent = (G.radical_total() == 0) == typ;
    r.body["lambda"] = weight_json(la);
    r.body["typical"] = typ;
    r.body["corank_total"] = G.radical_total();
    r.body["corank_matches_typicality"] = consistent;
    r.body["pieces"] = pieces;
    r.violation = !zero_sets || !consistent;
    return r;
}

Report typical_report(const RootDatum& R, const Weight& la) {
    Report r;
    Typicality T = typicality(R, la);
    json roots = json::array();
    for (auto& t : T.roots) {
        json j = {{"root", t.root}, {"lambda_alpha", rational_json(t.lambda_alpha)}, {"typical", t.typical_by_sets}};
        if (!t.typical_by_congruence) j["witness"] = {{"k", t.witness_k}, {"n", t.witness_n}};
        roots.push_back(j);
    }
    r.body["lambda"] = weight_json(la);
    r.body["typical"] = T.typical;
    r.body["roots"] = roots;
    return r;
}

Report tensor_report(const SessionPtr& S, const Weight& la, const Weight& mu) {
    Report r;
    const RootDatum& R = S->roots();
    ModulePtr A = simple_module(S, la), B = simple_module(S, mu);
    ModulePtr T = tensor_module(A, B);
    r.body["lambda"] = weight_json(la);
    r.body["mu"] = weight_json(mu);
    r.body["dims"] = {A->dim(), B->dim(), T->dim()};
    bool generic = is_typical(R, la) && is_typical(R, mu);
    if (generic)
        for (auto& [nu, m] : character(*T))
            if (!is_typical(R, nu)) {
                generic = false;
                break;
            }
    r.body["generic"] = generic;
    json parts = json::array();
    if (generic) {
        SemisimpleSplitting sp = decompose_semisimple_tensor(T, A, B);
        for (size_t k = 0; k < sp.highest_weights.size(); ++k)
            parts.push_back({{"top", weight_json(sp.highest_weights[k])}, {"dim", sp.dims[k]}, {"simple", true}});
        r.body["character_conserved"] = sp.character_conserved;
        r.body["direct"] = sp.direct && sp.spans;
        r.violation = !sp.ok();
    } else {
        Decomposition D = decompose(T);
        for (auto& s : D.summands)
            parts.push_back({{"tops", weights_json(s.tops)},
                             {"socles", weights_json(s.socles)},
                             {"dim", s.module->dim()},
                             {"class", s.multiplicity_class},
                             {"local", s.cert.local}});
        r.body["character_conserved"] = D.character_conserved;
        r.body["idempotents_ok"] = D.idempotents_ok;
        bool local = true;
        for (auto& s : D.summands) local = local && s.cert.local;
        r.violation = !D.character_conserved || !D.idempotents_ok || !local;
    }
    r.body["summands"] = parts;
    return r;
}

Report ribbon_report(const SessionPtr& S, const Weight& la, const Weight& mu) {
    Report r;
    const FieldContext& F = S->field();
    ModulePtr A = simple_module(S, la), B = simple_module(S, mu);
    Cyclotomic closed = twist_scalar_closed(*S, la);
    SparseMatrix th = A->dim() <= 40 ? twist(A) : twist_expanded(A);
    bool twist_ok = th == SparseMatrix::identity(F, A->dim()).scaled(closed);
    Cyclotomic dbl = double_braiding_on_top(A, la, B, mu);
    Cyclotomic dbl_closed = double_braiding_scalar(*S, la, mu);
    std::vector<std::string> viol = duality_violations(A);
    for (auto& s : antipode_square_violations(A)) viol.push_back(s);
    r.body["lambda"] = weight_json(la);
    r.body["mu"] = weight_json(mu);
    r.body["dims"] = {A->dim(), B->dim()};
    r.body["twist"] = {{"closed", closed.str()}, {"matches", twist_ok}};
    if (auto k = closed.root_of_unity_exponent()) r.body["twist"]["zeta_exponent"] = *k;
    r.body["double_braiding"] = {{"computed", dbl.str()}, {"closed", dbl_closed.str()}, {"matches", dbl == dbl_closed}};
    bool ok = twist_ok && dbl == dbl_closed && viol.empty();
    if (static_cast<long>(A->dim()) * B->dim() <= 100) {
        bool bal = twist_balance_holds(A, B);
        auto piv = pivot_monoidal_violations(A, B);
        r.body["balance"] = bal;
        for (auto& s : piv) viol.push_back(s);
        ok = ok && bal && piv.empty();
    }
    if (static_cast<long>(A->dim()) * A->dim() * B->dim() <= 512) {
        bool ybe = yang_baxter_holds(A, B, A);
        r.body["yang_baxter"] = ybe;
        ok = ok && ybe;
    }
    r.body["violations"] = viol;
    auto w = transparency_witness(S->roots(), la);
    r.body["transparency_witness"] = w ? weight_json(*w) : json("none");
    r.violation = !ok;
    return r;
}

json cover_json(const ProjectiveCover& pc) {
    return {{"lambda", weight_json(pc.lambda)},
            {"typical", pc.typical},
            {"tau", weight_json(pc.tau)},
            {"mu", weight_json(pc.mu)},
            {"source", pc.source},
            {"source_dim", pc.source_module ? pc.source_module->dim() : 0},
            {"source_summands", pc.source_summands},
            {"candidates", pc.candidates},
            {"dim", pc.P->dim()},
            {"hom_to_simple", pc.hom_to_simple},
            {"retraction_ok", pc.retraction_ok},
            {"locality", certificate_json(pc.cert)},
            {"character", character_json(character(*pc.P))}};
}

Report cover_report(const SessionPtr& S, const Weight& la) {
    Report r;
    ProjectiveCover pc = projective_cover(S, la);
    auto tops = top_weights(pc.P), socs = socle_weights(pc.P);
    r.body = cover_json(pc);
    r.body["top"] = weights_json(tops);
    r.body["socle"] = weights_json(socs);
    bool ok = pc.retraction_ok && pc.cert.local && tops == std::vector<Weight>{la} && socs == std::vector<Weight>{la};
    r.violation = !ok;
    return r;
}

Report bgg_report_json(const SessionPtr& S, const Weight& la) {
    Report r;
    ProjectiveCover pc = projective_cover(S, la);
    BggReport b = bgg_report(pc);
    json lines = json::array();
    for (auto& l : b.lines)
        lines.push_back({{"mu", weight_json(l.mu)}, {"standard", l.standard}, {"composition", l.composition}, {"equal", l.equal()}});
    r.body["lambda"] = weight_json(la);
    r.body["dim"] = b.dim;
    r.body["lines"] = lines;
    r.body["all_equal"] = b.all_equal;
    r.body["character_determines"] = b.character_determines;
    r.violation = !b.all_equal || !pc.retraction_ok;
    return r;
}

Report selfdual_report(const SessionPtr& S, const Weight& la) {
    Report r;
    ProjectiveCover pc = projective_cover(S, la);
    SelfDuality sd = self_duality_check(pc.P);
    r.body["lambda"] = weight_json(la);
    r.body["dim"] = pc.P->dim();
    r.body["characters_equal"] = sd.characters_equal;
    r.body["self_dual"] = sd.iso;
    if (sd.iso) r.body["certificate"] = matrix_json(to_sparse(sd.certificate, *sd.dual, *pc.P).dense());
    r.violation = !sd.iso || !sd.characters_equal;
    return r;
}

void render_value(std::ostringstream& o, const json& v, int indent);

void render_entry(std::ostringstream& o, const std::string& key, const json& v, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    bool scalar_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) {
        return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); }));
    });
    if (v.is_primitive() || scalar_array || v.empty()) {
        o << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        return;
    }
    o << pad << key << ":\n";
    render_value(o, v, indent + 1);
}

void render_value(std::ostringstream& o, const json& v, int indent) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) render_entry(o, it.key(), it.value(), indent);
    } else if (v.is_array()) {
        int k = 0;
        for (auto& x : v) render_entry(o, "[" + std::to_string(k++) + "]", x, indent);
    } else {
        o << std::string(static_cast<size_t>(indent) * 2, ' ') << v.dump() << "\n";
    }
}

}  // namespace

Report make_report(const ReportRequest& q) {
    Report r;
    const std::string& c = q.command;
    if (c == "suite") {
        CellResult cell = run_cell(q.type, q.rank, q.ell);
        SessionPtr S = Session::create(q.type, q.rank, q.ell, 1);
        r.body = cell_json(cell);
        r.violation = !cell.ok();
        r.body["session"] = session_json(*S);
        r.body["command"] = c;
        return r;
    }
    Weight la = weight_arg(q, q.weight);
    Weight mu = q.weight2 ? parse_weight(*q.weight2, q.rank) : la;
    std::vector<Weight> declared = {la};
    if (q.weight2) declared.push_back(mu);
    SessionPtr S = make_session(q, declared);
    if (c == "describe") r.body = describe(*S);
    else if (c == "verma") r = verma_report(S, la);
    else if (c == "gram") {
        std::optional<RootVec> eta;
        if (q.eta) {
            Weight e = parse_weight(*q.eta, q.rank);
            RootVec v;
            for (auto& x : e.h) {
                if (!is_integer(x) || x < 0) fail(ErrorKind::InvalidArgument, "eta must have nonnegative integer entries");
                v.push_back(static_cast<int>(boost::multiprecision::numerator(x)));
            }
            eta = v;
        }
        r = gram_report(S, la, eta);
    } else if (c == "typical") r = typical_report(S->roots(), la);
    else if (c == "tensor") r = tensor_report(S, la, mu);
    else if (c == "ribbon") r = ribbon_report(S, la, mu);
    else if (c == "cover") r = cover_report(S, la);
    else if (c == "bgg") r = bgg_report_json(S, la);
    else if (c == "selfdual") r = selfdual_report(S, la);
    else fail(ErrorKind::InvalidArgument, "unknown command '" + c + "'");
    r.body["session"] = session_json(*S);
    r.body["command"] = c;
    r.body["ok"] = !r.violation;
    return r;
}

std::string render_json(const Report& r) {
    ordered o;
    o["command"] = r.body.at("command");
    o["session"] = r.body.at("session");
    for (auto it = r.body.begin(); it != r.body.end(); ++it)
        if (it.key() != "command" && it.key() != "session") o[it.key()] = it.value();
    return o.dump(2) + "\n";
}

std::string render_text(const Report& r) {
    std::ostringstream o;
    const json& s = r.body.at("session");
    o << r.body.at("command").get<std::string>() << "  " << s.at("type").get<std::string>() << s.at("rank") << "  ell=" << s.at("ell")
      << "  N=" << s.at("N") << "\n";
    json rest = r.body;
    rest.erase("command");
    rest.erase("session");
    render_value(o, rest, 0);
    return o.str();
}

}  // namespace uqh
