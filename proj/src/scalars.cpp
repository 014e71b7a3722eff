#include "uqh/scalars.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace uqh {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidOrder: return "invalid-order";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::ContextMismatch: return "context-mismatch";
    case ErrorKind::FieldResolution: return "field-resolution";
    case ErrorKind::DegenerateParameter: return "degenerate-parameter";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::GradingViolation: return "grading-violation";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

std::string rational_string(const Rational& x) {
    std::ostringstream o;
    o << boost::multiprecision::numerator(x) << '/' << boost::multiprecision::denominator(x);
    return o.str();
}

Rational parse_rational(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (c != ' ') s.push_back(c);
    auto bad = [&]() -> Rational { fail(ErrorKind::InvalidArgument, "not a rational number: '" + s0 + "'"); };
    if (s.empty()) return bad();
    auto parse_int = [&](const std::string& t) -> Integer {
        size_t i = 0;
        if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        if (i == t.size()) bad();
        for (size_t j = i; j < t.size(); ++j)
            if (t[j] < '0' || t[j] > '9') bad();
        return Integer(t);
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer p = parse_int(s.substr(0, slash));
        Integer q = parse_int(s.substr(slash + 1));
        if (q == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + s0 + "'");
        return Rational(p, q);
    }
    return Rational(parse_int(s));
}

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

namespace {

using Poly = std::vector<std::int64_t>;

Poly poly_divide_exact(Poly a, const Poly& b) {
    // b monic
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    Poly q(std::max(0, da - db + 1), 0);
    for (int i = da; i >= db; --i) {
        std::int64_t c = a[i];
        q[i - db] = c;
        if (c != 0)
            for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

Poly cyclotomic_poly(int n, std::map<int, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divide_exact(p, cyclotomic_poly(d, memo));
    memo[n] = p;
    return p;
}

std::unique_ptr<FieldData> build_field(int N, int ell) {
    auto f = std::make_unique<FieldData>();
    f->N = N;
    f->ell = ell;
    f->r = (ell % 2 == 1) ? ell : ell / 2;
    f->qstep = N / ell;
    std::map<int, Poly> memo;
    f->cyclo = cyclotomic_poly(N, memo);
    f->phi = static_cast<int>(f->cyclo.size()) - 1;
    int phi = f->phi;
    int kmax = std::max(2 * phi, N);
    std::vector<Poly> red(kmax, Poly(phi, 0));
    for (int k = 0; k < kmax; ++k) {
        if (k < phi) {
            red[k][k] = 1;
            continue;
        }
        // x^k = x * x^{k-1}
        const Poly& prev = red[k - 1];
        Poly cur(phi, 0);
        std::int64_t top = prev[phi - 1];
        for (int j = phi - 1; j >= 1; --j) cur[j] = prev[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (int j = 0; j < phi; ++j) cur[j] -= top * f->cyclo[j];
        red[k] = cur;
    }
    f->reduce.assign(red.begin(), red.begin() + 2 * phi);
    f->powers.assign(red.begin(), red.begin() + N);
    return f;
}

std::mutex g_field_mutex;
std::map<std::pair<int, int>, std::unique_ptr<FieldData>>& field_registry() {
    static std::map<std::pair<int, int>, std::unique_ptr<FieldData>> reg;
    return reg;
}

const FieldData* intern_field(int N, int ell) {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto& reg = field_registry();
    auto key = std::make_pair(N, ell);
    auto it = reg.find(key);
    if (it != reg.end()) return it->second.get();
    auto f = build_field(N, ell);
    const FieldData* p = f.get();
    reg.emplace(key, std::move(f));
    return p;
}

void check_same(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.field() && b.field() && a.field() != b.field())
        fail(ErrorKind::ContextMismatch, "operands live in different cyclotomic fields (N=" +
                                             std::to_string(a.field()->N) + " vs N=" +
                                             std::to_string(b.field()->N) + ")");
}

}  // namespace

// ---- Cyclotomic ----

void Cyclotomic::adopt(const Cyclotomic& o) {
    if (!f_) f_ = o.f_;
}

void Cyclotomic::normalize() {
    if (num_.empty()) {
        den_ = 1;
        return;
    }
    bool allzero = true;
    for (auto& c : num_)
        if (c != 0) {
            allzero = false;
            break;
        }
    if (allzero) {
        num_.clear();
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    Integer g = den_;
    for (auto& c : num_) {
        if (c != 0) g = boost::multiprecision::gcd(g, c);
        if (g == 1) return;
    }
    if (g != 1) {
        den_ /= g;
        for (auto& c : num_) c /= g;
    }
}

bool Cyclotomic::is_one() const {
    if (num_.empty() || den_ != 1 || num_[0] != 1) return false;
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) fail(ErrorKind::InvalidArgument, "value is not rational: " + str());
    if (num_.empty()) return Rational(0);
    return Rational(num_[0], den_);
}

Rational Cyclotomic::coeff(int k) const {
    if (num_.empty() || k < 0 || k >= static_cast<int>(num_.size())) return Rational(0);
    return Rational(num_[k], den_);
}

std::vector<Rational> Cyclotomic::coefficients() const {
    int phi = f_ ? f_->phi : 1;
    std::vector<Rational> out(phi, Rational(0));
    for (int k = 0; k < static_cast<int>(num_.size()); ++k) out[k] = Rational(num_[k], den_);
    return out;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::uint64_t residue(const Integer& x, std::uint64_t p) {
    Integer m = x % p;
    if (m < 0) m += p;
    return static_cast<std::uint64_t>(m);
}

}  // namespace

bool Cyclotomic::reduce_mod(std::uint64_t p, const std::vector<std::uint64_t>& zpow, std::uint64_t& out) const {
    out = 0;
    if (num_.empty()) return true;
    std::uint64_t d = residue(den_, p);
    if (d == 0) return false;
    for (size_t k = 0; k < num_.size(); ++k)
        if (num_[k] != 0) out = (out + residue(num_[k], p) * zpow[k]) % p;
    out = out * powmod(d, p - 2, p) % p;
    return true;
}

const ModularImage& modular_image(int N) {
    static std::mutex mu;
    static std::map<int, ModularImage> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<std::uint64_t> qs;  // prime divisors of N
    for (int m = N, f = 2; m > 1; ++f)
        if (m % f == 0) {
            qs.push_back(static_cast<std::uint64_t>(f));
            while (m % f == 0) m /= f;
        }
    auto is_prime = [](std::uint64_t x) {
        if (x < 2) return false;
        for (std::uint64_t f = 2; f * f <= x; ++f)
            if (x % f == 0) return false;
        return true;
    };
    // p < 2^31 keeps products inside 64 bits
    std::uint64_t k = ((1ULL << 31) - 1) / static_cast<std::uint64_t>(N);
    while (!is_prime(k * N + 1)) --k;
    ModularImage im;
    im.p = k * N + 1;
    std::uint64_t z = 0;
    for (std::uint64_t a = 2; !z; ++a) {
        std::uint64_t x = powmod(a, (im.p - 1) / N, im.p);
        bool primitive = true;
        for (auto q : qs)
            if (powmod(x, N / q, im.p) == 1) primitive = false;
        if (primitive) z = x;
    }
    im.zpow.resize(N);
    im.zpow[0] = 1;
    for (int j = 1; j < N; ++j) im.zpow[j] = im.zpow[j - 1] * z % im.p;
    return cache.emplace(N, std::move(im)).first->second;
}

std::vector<std::string> Cyclotomic::coefficient_strings() const {
    std::vector<std::string> out;
    for (auto& c : coefficients()) out.push_back(rational_string(c));
    return out;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check_same(*this, o);
    adopt(o);
    if (o.num_.empty()) return *this;
    if (num_.empty()) {
        num_ = o.num_;
        den_ = o.den_;
        return *this;
    }
    if (den_ == o.den_) {
        for (size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
    } else {
        for (size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    check_same(a, b);
    Cyclotomic r;
    r.f_ = a.f_ ? a.f_ : b.f_;
    if (a.num_.empty() || b.num_.empty()) return r;
    const FieldData* f = r.f_;
    int phi = f->phi;
    std::vector<Integer> conv(2 * phi - 1);
    for (int i = 0; i < phi; ++i) {
        if (a.num_[i] == 0) continue;
        for (int j = 0; j < phi; ++j)
            if (b.num_[j] != 0) conv[i + j] += a.num_[i] * b.num_[j];
    }
    r.num_.assign(conv.begin(), conv.begin() + phi);
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (conv[k] == 0) continue;
        const auto& red = f->reduce[k];
        for (int j = 0; j < phi; ++j)
            if (red[j] != 0) r.num_[j] += conv[k] * red[j];
    }
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    *this = *this * o;
    return *this;
}

Cyclotomic Cyclotomic::inv() const {
    if (num_.empty()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    const FieldData* f = f_;
    int phi = f->phi;
    if (is_rational()) {
        Cyclotomic r;
        r.f_ = f;
        r.num_.assign(phi, Integer(0));
        r.num_[0] = den_;
        r.den_ = num_[0];
        r.normalize();
        return r;
    }
    // Solve (mult-by-num) x = den * e_0 over Q.
    std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1, Rational(0)));
    for (int j = 0; j < phi; ++j) {
        // column j: num * x^j
        std::vector<Integer> col(phi, Integer(0));
        for (int i = 0; i < phi; ++i) {
            if (num_[i] == 0) continue;
            const auto& red = f->reduce[i + j];
            for (int k = 0; k < phi; ++k)
                if (red[k] != 0) col[k] += num_[i] * red[k];
        }
        for (int k = 0; k < phi; ++k) m[k][j] = Rational(col[k]);
    }
    m[0][phi] = Rational(den_);
    for (int c = 0; c < phi; ++c) {
        int p = -1;
        for (int i = c; i < phi; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) fail(ErrorKind::Internal, "singular multiplication matrix");
        std::swap(m[p], m[c]);
        Rational pv = m[c][c];
        for (int j = c; j <= phi; ++j) m[c][j] /= pv;
        for (int i = 0; i < phi; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational fct = m[i][c];
            for (int j = c; j <= phi; ++j) m[i][j] -= fct * m[c][j];
        }
    }
    std::vector<Rational> sol(phi);
    for (int i = 0; i < phi; ++i) sol[i] = m[i][phi];
    Integer l = 1;
    for (auto& s : sol) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(s));
    Cyclotomic r;
    r.f_ = f;
    r.num_.resize(phi);
    for (int i = 0; i < phi; ++i)
        r.num_[i] = boost::multiprecision::numerator(sol[i]) * (l / boost::multiprecision::denominator(sol[i]));
    r.den_ = l;
    r.normalize();
    return r;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) {
    *this = *this * o.inv();
    return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.num_.empty() || b.num_.empty()) return a.num_.empty() && b.num_.empty();
    check_same(a, b);
    return a.den_ == b.den_ && a.num_ == b.num_;
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclotomic result;
    result.f_ = f_;
    if (f_) {
        result.num_.assign(f_->phi, Integer(0));
        result.num_[0] = 1;
    }
    Cyclotomic base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Cyclotomic Cyclotomic::scaled(const Rational& c) const {
    if (num_.empty() || c == 0) {
        Cyclotomic z;
        z.f_ = f_;
        return z;
    }
    Cyclotomic r = *this;
    Integer p = boost::multiprecision::numerator(c), q = boost::multiprecision::denominator(c);
    for (auto& x : r.num_) x *= p;
    r.den_ *= q;
    r.normalize();
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    if (num_.empty()) return *this;
    const FieldData* f = f_;
    int phi = f->phi, N = f->N;
    Cyclotomic r;
    r.f_ = f;
    r.num_.assign(phi, Integer(0));
    for (int k = 0; k < phi; ++k) {
        if (num_[k] == 0) continue;
        const auto& p = f->powers[(N - k) % N];
        for (int j = 0; j < phi; ++j)
            if (p[j] != 0) r.num_[j] += num_[k] * p[j];
    }
    r.den_ = den_;
    r.normalize();
    return r;
}

std::optional<int> Cyclotomic::root_of_unity_exponent() const {
    if (num_.empty() || den_ != 1 || !f_) return std::nullopt;
    for (int k = 0; k < f_->N; ++k) {
        const auto& p = f_->powers[k];
        bool eq = true;
        for (int j = 0; j < f_->phi && eq; ++j)
            if (num_[j] != p[j]) eq = false;
        if (eq) return k;
    }
    return std::nullopt;
}

std::string Cyclotomic::str() const {
    if (num_.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (size_t k = 0; k < num_.size(); ++k) {
        if (num_[k] == 0) continue;
        Rational c(num_[k], den_);
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            o << (neg ? "-" : "");
        else
            o << (neg ? " - " : " + ");
        first = false;
        bool unit = (c == 1);
        if (k == 0 || !unit) {
            if (is_integer(c))
                o << boost::multiprecision::numerator(c);
            else
                o << rational_string(c);
        }
        if (k > 0) {
            if (!unit) o << '*';
            o << 'z';
            if (k > 1) o << '^' << k;
        }
    }
    return o.str();
}

// ---- FieldContext ----

FieldContext FieldContext::create(int ell, long E) {
    if (ell < 3) fail(ErrorKind::InvalidOrder, "root-of-unity order must be at least 3, got " + std::to_string(ell));
    if (E < 1) fail(ErrorKind::InvalidArgument, "exponent denominator must be positive");
    long N = std::lcm(2L * ell, static_cast<long>(ell) * E);
    if (N > 4096) fail(ErrorKind::ResourceLimit, "cyclotomic order " + std::to_string(N) + " too large");
    return FieldContext(intern_field(static_cast<int>(N), ell));
}

FieldContext FieldContext::with_order(int ell, int N) {
    if (ell < 3) fail(ErrorKind::InvalidOrder, "root-of-unity order must be at least 3, got " + std::to_string(ell));
    if (N % ell != 0 || N % 2 != 0)
        fail(ErrorKind::InvalidArgument, "cyclotomic order must be an even multiple of ell");
    return FieldContext(intern_field(N, ell));
}

Cyclotomic FieldContext::zero() const {
    Cyclotomic z;
    z.f_ = d_;
    return z;
}

Cyclotomic FieldContext::from_int(long v) const { return from_rational(Rational(v)); }

Cyclotomic FieldContext::one() const { return from_int(1); }

Cyclotomic FieldContext::from_rational(const Rational& v) const {
    Cyclotomic c;
    c.f_ = d_;
    if (v == 0) return c;
    c.num_.assign(d_->phi, Integer(0));
    c.num_[0] = boost::multiprecision::numerator(v);
    c.den_ = boost::multiprecision::denominator(v);
    return c;
}

Cyclotomic FieldContext::from_coefficients(const std::vector<Rational>& co) const {
    Cyclotomic acc = zero();
    for (size_t k = 0; k < co.size(); ++k)
        if (co[k] != 0) acc += zeta(static_cast<long>(k)).scaled(co[k]);
    return acc;
}

Cyclotomic FieldContext::zeta(long k) const {
    long N = d_->N;
    long m = ((k % N) + N) % N;
    Cyclotomic c;
    c.f_ = d_;
    const auto& p = d_->powers[m];
    c.num_.resize(d_->phi);
    for (int j = 0; j < d_->phi; ++j) c.num_[j] = p[j];
    return c;
}

bool FieldContext::has_q_pow(const Rational& x) const { return is_integer(x * d_->qstep); }

Cyclotomic FieldContext::q_pow(const Rational& x) const {
    Rational e = x * d_->qstep;
    if (!is_integer(e)) {
        Integer den = boost::multiprecision::denominator(x);
        fail(ErrorKind::FieldResolution, "q^(" + rational_string(x) + ") is not in Q(zeta_" + std::to_string(d_->N) +
                                             "); an exponent denominator divisible by " +
                                             den.str() + " is required");
    }
    Integer n = boost::multiprecision::numerator(e) % d_->N;
    return zeta(static_cast<long>(n));
}

Cyclotomic FieldContext::brace(const Rational& x, int d) const {
    return q_pow(x * d) - q_pow(-x * d);
}

Cyclotomic FieldContext::bracket(const Rational& x, int d) const {
    if (is_integer(x)) {
        long n = static_cast<long>(boost::multiprecision::numerator(x));
        long a = n < 0 ? -n : n;
        Cyclotomic s = zero();
        for (long k = 0; k < a; ++k) s += q_pow(static_cast<long>(d) * (a - 1 - 2 * k));
        return n < 0 ? -s : s;
    }
    Cyclotomic den = brace(Rational(1), d);
    if (den.is_zero()) fail(ErrorKind::DivisionByZero, "q_d - q_d^-1 vanishes for d=" + std::to_string(d));
    return brace(x, d) / den;
}

Cyclotomic FieldContext::bracket_factorial(long n, int d) const {
    Cyclotomic p = one();
    for (long k = 1; k <= n; ++k) p *= bracket(Rational(k), d);
    return p;
}

Cyclotomic FieldContext::brace_factorial(long n, int d) const {
    Cyclotomic p = one();
    for (long k = 1; k <= n; ++k) p *= brace(Rational(k), d);
    return p;
}

Cyclotomic FieldContext::binomial(long n, long m, int d) const {
    if (n < 0 || m < 0 || m > n) return zero();
    // Laurent polynomials in t = q^d, offset representation: exponent e stored at e + n*n
    long off = n * n + 1;
    using LP = std::vector<long>;
    auto mk = [&]() { return LP(2 * off + 1, 0); };
    std::vector<LP> row(1, mk());
    row[0][off] = 1;  // [0,0] = 1
    for (long k = 1; k <= n; ++k) {
        std::vector<LP> next(k + 1, mk());
        for (long j = 0; j <= k; ++j) {
            // [k,j] = t^j [k-1,j] + t^{j-k} [k-1,j-1]
            if (j <= k - 1)
                for (long e = 0; e < 2 * off + 1; ++e)
                    if (row[j][e] != 0) next[j][e + j] += row[j][e];
            if (j >= 1)
                for (long e = 0; e < 2 * off + 1; ++e)
                    if (row[j - 1][e] != 0) next[j][e + j - k] += row[j - 1][e];
        }
        row = std::move(next);
    }
    Cyclotomic s = zero();
    for (long e = 0; e < 2 * off + 1; ++e)
        if (row[m][e] != 0) s += q_pow(static_cast<long>(d) * (e - off)).scaled(Rational(row[m][e]));
    return s;
}

Cyclotomic FieldContext::jq(long j, long e) const {
    Cyclotomic s = zero();
    for (long k = 0; k < j; ++k) s += q_pow(e * k);
    return s;
}

Cyclotomic FieldContext::jq_factorial(long j, long e) const {
    Cyclotomic p = one();
    for (long i = 1; i <= j; ++i) p *= jq(i, e);
    return p;
}

}  // namespace uqh
