#include "uqh/algebra.hpp"

#include <sstream>

namespace uqh {

std::string Generator::str() const {
    switch (kind) {
    case E: return "E" + std::to_string(index + 1);
    case F: return "F" + std::to_string(index + 1);
    case H: return "H" + std::to_string(index + 1);
    case K: return "K" + rootvec_str(gamma);
    }
    return "?";
}

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += w[i].str();
    }
    return s;
}

Word normalize_word(const Word& w) {
    Word out;
    for (const auto& g : w) {
        if (g.kind == Generator::K) {
            bool zero = true;
            for (int x : g.gamma)
                if (x) zero = false;
            if (zero) continue;
            if (!out.empty() && out.back().kind == Generator::K) {
                out.back().gamma = rootvec_add(out.back().gamma, g.gamma);
                bool z = true;
                for (int x : out.back().gamma)
                    if (x) z = false;
                if (z) out.pop_back();
                continue;
            }
        }
        out.push_back(g);
    }
    return out;
}

AlgebraElement AlgebraElement::scalar(const FieldContext& F, const Cyclotomic& c) {
    AlgebraElement a(F);
    a.add_term(Word{}, c);
    return a;
}

AlgebraElement AlgebraElement::gen(const FieldContext& F, const Generator& g) {
    AlgebraElement a(F);
    a.add_term(Word{g}, F.one());
    return a;
}

void AlgebraElement::add_term(const Word& w, const Cyclotomic& c) {
    if (c.is_zero()) return;
    Word n = normalize_word(w);
    auto it = terms_.find(n);
    if (it == terms_.end()) {
        terms_.emplace(std::move(n), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (!F_.valid()) F_ = o.F_;
    for (auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    if (!F_.valid()) F_ = o.F_;
    for (auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r(a.F_.valid() ? a.F_ : b.F_);
    for (auto& [w1, c1] : a.terms_)
        for (auto& [w2, c2] : b.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add_term(w, c1 * c2);
        }
    return r;
}

AlgebraElement AlgebraElement::scaled(const Cyclotomic& c) const {
    AlgebraElement r(F_);
    if (c.is_zero()) return r;
    for (auto& [w, x] : terms_) r.terms_.emplace(w, x * c);
    return r;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(-F_.one()); }

AlgebraElement AlgebraElement::pow(int n) const {
    AlgebraElement r = one(F_);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (auto& [w, c] : terms_) {
        if (!first) o << " + ";
        first = false;
        bool unit = c.is_one();
        if (!unit) o << '(' << c.str() << ')';
        if (!w.empty()) {
            if (!unit) o << '*';
            o << word_str(w);
        } else if (unit) {
            o << '1';
        }
    }
    return o.str();
}

nlohmann::json AlgebraElement::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [w, c] : terms_) {
        nlohmann::json word = nlohmann::json::array();
        for (auto& g : w) word.push_back(g.str());
        arr.push_back({{"coefficient", c.coefficient_strings()}, {"word", word}});
    }
    return arr;
}

Cyclotomic q_difference(const RootDatum& R, const FieldContext& F, int d) {
    (void)R;
    Cyclotomic v = F.q_pow(static_cast<long>(d)) - F.q_pow(-static_cast<long>(d));
    if (v.is_zero())
        fail(ErrorKind::DegenerateParameter,
             "q^" + std::to_string(d) + " - q^-" + std::to_string(d) + " vanishes at ell=" + std::to_string(F.ell()));
    return v;
}

namespace {

Cyclotomic inverse_factorial(const RootDatum& R, const FieldContext& F, int i, int t) {
    Cyclotomic f = F.bracket_factorial(t, R.d(i));
    if (f.is_zero())
        fail(ErrorKind::DegenerateParameter, "divided power needs [" + std::to_string(t) + "]_" + std::to_string(i + 1) +
                                                 "! != 0, but it vanishes at ell=" + std::to_string(R.ell()) +
                                                 " (simple root " + std::to_string(i + 1) + ")");
    return f.inv();
}

AlgebraElement divided_power(const RootDatum& R, const FieldContext& F, int i, int t, bool positive) {
    AlgebraElement x = positive ? AlgebraElement::E(F, i) : AlgebraElement::Fm(F, i);
    return x.pow(t).scaled(inverse_factorial(R, F, i, t));
}

}  // namespace

AlgebraElement braid_generator(const RootDatum& R, const FieldContext& F, int i, const Generator& g) {
    int n = R.rank();
    RootVec ai = unit_root(n, i);
    switch (g.kind) {
    case Generator::K:
        return AlgebraElement::K(F, R.reflect(i, g.gamma));
    case Generator::H: {
        int j = g.index;
        AlgebraElement r = AlgebraElement::H(F, j);
        r -= AlgebraElement::H(F, i).scaled(F.from_int(R.a(j, i)));
        return r;
    }
    case Generator::E: {
        int j = g.index;
        if (j == i) return (AlgebraElement::Fm(F, i) * AlgebraElement::K(F, ai)).scaled(-F.one());
        int m = -R.a(i, j);
        AlgebraElement r(F);
        for (int t = 0; t <= m; ++t) {
            Cyclotomic c = F.q_pow(-static_cast<long>(R.d(i)) * t);
            if ((t + m) % 2) c = -c;
            r += (divided_power(R, F, i, m - t, true) * AlgebraElement::E(F, j) * divided_power(R, F, i, t, true))
                     .scaled(c);
        }
        return r;
    }
    case Generator::F: {
        int j = g.index;
        if (j == i)
            return (AlgebraElement::K(F, rootvec_scale(ai, -1)) * AlgebraElement::E(F, i)).scaled(-F.one());
        int m = -R.a(i, j);
        AlgebraElement r(F);
        for (int t = 0; t <= m; ++t) {
            Cyclotomic c = F.q_pow(static_cast<long>(R.d(i)) * t);
            if ((t + m) % 2) c = -c;
            r += (divided_power(R, F, i, t, false) * AlgebraElement::Fm(F, j) * divided_power(R, F, i, m - t, false))
                     .scaled(c);
        }
        return r;
    }
    }
    fail(ErrorKind::Internal, "unknown generator");
}

AlgebraElement braid_apply(const RootDatum& R, int i, const AlgebraElement& e) {
    const FieldContext& F = e.field();
    std::map<Generator, AlgebraElement> cache;
    AlgebraElement out(F);
    for (auto& [w, c] : e.terms()) {
        AlgebraElement prod = AlgebraElement::scalar(F, c);
        for (auto& g : w) {
            auto it = cache.find(g);
            if (it == cache.end()) it = cache.emplace(g, braid_generator(R, F, i, g)).first;
            prod = prod * it->second;
            if (prod.size() > 200000) fail(ErrorKind::ResourceLimit, "braid image expansion exceeds 200000 terms");
        }
        out += prod;
        if (out.size() > 200000) fail(ErrorKind::ResourceLimit, "braid image expansion exceeds 200000 terms");
    }
    return out;
}

AlgebraElement k_normal_form(const RootDatum& R, const AlgebraElement& e) {
    const FieldContext& F = e.field();
    AlgebraElement out(F);
    int n = R.rank();
    for (auto& [w, c] : e.terms()) {
        // move every K to the right end: K_g X = q^{<g, deg X>} X K_g
        Word rest;
        RootVec g(n, 0);
        long expo = 0;
        for (const Generator& x : w) {
            if (x.kind == Generator::K) {
                g = rootvec_add(g, x.gamma);
                continue;
            }
            if (x.kind == Generator::E || x.kind == Generator::F) {
                long p = 0;
                for (int i = 0; i < n; ++i) p += static_cast<long>(R.d(i)) * g[i] * R.a(i, x.index);
                expo += x.kind == Generator::E ? p : -p;
            }
            rest.push_back(x);
        }
        rest.push_back(Generator::k(g));
        out.add_term(rest, c * F.q_pow(expo));
    }
    return out;
}

AlgebraElement root_vector(const RootDatum& R, const FieldContext& F, int k, int sign) {
    if (k < 0 || k >= R.num_positive()) fail(ErrorKind::InvalidArgument, "root index out of range");
    int ik = R.w0_word()[k];
    AlgebraElement e = sign > 0 ? AlgebraElement::E(F, ik) : AlgebraElement::Fm(F, ik);
    for (int j = k - 1; j >= 0; --j) {
        e = k_normal_form(R, braid_apply(R, R.w0_word()[j], e));
        if (e.size() > 200000)
            fail(ErrorKind::ResourceLimit, "root vector expansion exceeds 200000 terms");
    }
    return e;
}

namespace {

AlgebraElement omega_gen(const FieldContext& F, const Generator& g) {
    switch (g.kind) {
    case Generator::E: return AlgebraElement::Fm(F, g.index);
    case Generator::F: return AlgebraElement::E(F, g.index);
    case Generator::K: return AlgebraElement::K(F, rootvec_scale(g.gamma, -1));
    case Generator::H: return AlgebraElement::H(F, g.index).scaled(-F.one());
    }
    fail(ErrorKind::Internal, "unknown generator");
}

AlgebraElement antipode_gen(const RootDatum& R, const FieldContext& F, const Generator& g) {
    RootVec ai = g.kind == Generator::K ? RootVec{} : unit_root(R.rank(), g.index);
    switch (g.kind) {
    case Generator::E:
        return (AlgebraElement::E(F, g.index) * AlgebraElement::K(F, rootvec_scale(ai, -1))).scaled(-F.one());
    case Generator::F:
        return (AlgebraElement::K(F, ai) * AlgebraElement::Fm(F, g.index)).scaled(-F.one());
    case Generator::K: return AlgebraElement::K(F, rootvec_scale(g.gamma, -1));
    case Generator::H: return AlgebraElement::H(F, g.index).scaled(-F.one());
    }
    fail(ErrorKind::Internal, "unknown generator");
}

}  // namespace

AlgebraElement symmetry_map(const RootDatum& R, Symmetry kind, const AlgebraElement& e) {
    const FieldContext& F = e.field();
    if (kind == Symmetry::AntipodeSquared)
        return symmetry_map(R, Symmetry::Antipode, symmetry_map(R, Symmetry::Antipode, e));
    AlgebraElement out(F);
    for (auto& [w, c] : e.terms()) {
        AlgebraElement prod = AlgebraElement::scalar(F, c);
        if (kind == Symmetry::Omega) {
            for (auto& g : w) prod = prod * omega_gen(F, g);
        } else {
            for (auto it = w.rbegin(); it != w.rend(); ++it) prod = prod * antipode_gen(R, F, *it);
        }
        out += prod;
    }
    return out;
}

std::vector<TensorTerm> coproduct_image(const RootDatum& R, const FieldContext& F, const Generator& g) {
    AlgebraElement one = AlgebraElement::one(F);
    switch (g.kind) {
    case Generator::K: {
        AlgebraElement k = AlgebraElement::K(F, g.gamma);
        return {{k, k}};
    }
    case Generator::E: {
        AlgebraElement x = AlgebraElement::E(F, g.index);
        return {{one, x}, {x, AlgebraElement::K(F, unit_root(R.rank(), g.index))}};
    }
    case Generator::F: {
        AlgebraElement y = AlgebraElement::Fm(F, g.index);
        return {{AlgebraElement::K(F, rootvec_scale(unit_root(R.rank(), g.index), -1)), y}, {y, one}};
    }
    case Generator::H: {
        AlgebraElement h = AlgebraElement::H(F, g.index);
        return {{one, h}, {h, one}};
    }
    }
    fail(ErrorKind::Internal, "unknown generator");
}

Cyclotomic counit(const AlgebraElement& e) {
    Cyclotomic s = e.field().zero();
    for (auto& [w, c] : e.terms()) {
        bool only_k = true;
        for (auto& g : w)
            if (g.kind != Generator::K) only_k = false;
        if (only_k) s += c;
    }
    return s;
}

AlgebraElement bracket_K(const RootDatum& R, const FieldContext& F, int i, long n) {
    RootVec ai = unit_root(R.rank(), i);
    Cyclotomic inv = q_difference(R, F, R.d(i)).inv();
    AlgebraElement r = AlgebraElement::K(F, ai).scaled(F.q_pow(n) * inv);
    r -= AlgebraElement::K(F, rootvec_scale(ai, -1)).scaled(F.q_pow(-n) * inv);
    return r;
}

AlgebraElement cartan_commutator(const RootDatum& R, const FieldContext& F, int i) { return bracket_K(R, F, i, 0); }

AlgebraElement serre_relator(const RootDatum& R, const FieldContext& F, int i, int j, int sign) {
    int m = 1 - R.a(i, j);
    AlgebraElement xi = sign > 0 ? AlgebraElement::E(F, i) : AlgebraElement::Fm(F, i);
    AlgebraElement xj = sign > 0 ? AlgebraElement::E(F, j) : AlgebraElement::Fm(F, j);
    AlgebraElement r(F);
    for (int k = 0; k <= m; ++k) {
        Cyclotomic c = F.binomial(m, k, R.d(i));
        if (k % 2) c = -c;
        r += (xi.pow(m - k) * xj * xi.pow(k)).scaled(c);
    }
    return r;
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) { return a * b - b * a; }

}  // namespace uqh
