#include "uqh/session.hpp"

#include <numeric>

namespace uqh {

std::unique_ptr<NegativePart> build_negative_part(const Session& S);

namespace {
std::mutex g_neg_mutex;
}

std::shared_ptr<const Session> Session::create(char type, int rank, int ell, long E) {
    auto s = std::make_shared<Session>();
    s->R_ = RootDatum::build(type, rank, ell);
    s->F_ = FieldContext::create(ell, E);
    s->E_ = E;
    return s;
}

long exponent_denominator_for(const RootDatum& R, const std::vector<Weight>& declared) {
    Integer E = 1;
    std::vector<Weight> all = declared;
    all.push_back(R.rho());
    auto absorb = [&](const Rational& x) { E = boost::multiprecision::lcm(E, boost::multiprecision::denominator(x)); };
    for (const Weight& w : declared) {
        if (w.size() != R.rank()) fail(ErrorKind::InvalidArgument, "declared weight has wrong rank");
        for (int i = 0; i < R.rank(); ++i) absorb(w.h[i] * R.d(i));
    }
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a; b < all.size(); ++b) absorb(R.pairing(all[a], all[b]));
    if (E > 100000) fail(ErrorKind::ResourceLimit, "declared weights need an exponent denominator of " + E.str());
    return static_cast<long>(E);
}

std::shared_ptr<const Session> Session::for_weights(char type, int rank, int ell, const std::vector<Weight>& declared) {
    RootDatum R = RootDatum::build(type, rank, ell);
    return create(type, rank, ell, exponent_denominator_for(R, declared));
}

std::shared_ptr<const Session> Session::with_bound(char type, int rank, int ell, long D) {
    if (D < 1) fail(ErrorKind::InvalidArgument, "denominator bound must be positive");
    RootDatum R = RootDatum::build(type, rank, ell);
    return create(type, rank, ell, R.cartan_det() * D * D);
}

const AlgebraElement& Session::root_vector(int k, int sign) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(k, sign > 0 ? 1 : -1);
    auto it = rv_.find(key);
    if (it != rv_.end()) return it->second;
    AlgebraElement e = uqh::root_vector(R_, F_, k, sign);
    return rv_.emplace(key, std::move(e)).first->second;
}

const NegativePart& Session::negative_part() const {
    std::lock_guard<std::mutex> lock(g_neg_mutex);
    if (!neg_) neg_ = build_negative_part(*this);
    return *neg_;
}

Cyclotomic Session::k_eigenvalue(const RootVec& gamma, const Weight& mu) const {
    return F_.q_pow(R_.pairing(gamma, mu));
}

}  // namespace uqh
