#include "nlbound/field.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace nlbound {

namespace {

// ---- polynomial arithmetic over F2 on packed uint64 words ----

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f, int n) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> n) & 1) a ^= f;
    }
    return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    int db = 63 - __builtin_clzll(b);
    while (a && (63 - __builtin_clzll(a)) >= db)
        a ^= b << ((63 - __builtin_clzll(a)) - db);
    return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = poly_mod(a, b);
        a = b;
        b = t;
    }
    return a;
}

std::vector<int> prime_factors_of(std::uint64_t m) {
    std::vector<int> out;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            out.push_back(int(d));
            while (m % d == 0) m /= d;
        }
    if (m > 1) out.push_back(int(m));
    return out;
}

// Rabin irreducibility test: f (degree n) is irreducible over F2 iff
// x^(2^n) == x (mod f) and gcd(x^(2^(n/p)) - x, f) = 1 for every prime p | n.
bool is_irreducible(std::uint64_t f, int n) {
    if (n < 1 || (f >> n) != 1 || !(f & 1)) return false;
    std::uint64_t t = 2;
    for (int i = 0; i < n; ++i) t = poly_mulmod(t, t, f, n);
    if (t != 2) return false;
    for (int p : prime_factors_of(std::uint64_t(n))) {
        t = 2;
        for (int i = 0; i < n / p; ++i) t = poly_mulmod(t, t, f, n);
        if (poly_gcd(t ^ 2, f) != 1) return false;
    }
    return true;
}

// Lexicographically smallest irreducible polynomial of degree n (as the
// little-endian integer encoding), for 2 <= n <= 32.
constexpr std::uint64_t kDefaultModulus[33] = {
    0, 0,
    0x7,         // n=2:  x^2+x+1
    0xB,         // n=3:  x^3+x+1
    0x13,        // n=4:  x^4+x+1
    0x25,        // n=5:  x^5+x^2+1
    0x43,        // n=6:  x^6+x+1
    0x83,        // n=7:  x^7+x+1
    0x11B,       // n=8:  x^8+x^4+x^3+x+1
    0x203,       // n=9
    0x409,       // n=10
    0x805,       // n=11
    0x1009,      // n=12
    0x201B,      // n=13
    0x4021,      // n=14
    0x8003,      // n=15
    0x1002B,     // n=16
    0x20009,     // n=17
    0x40009,     // n=18
    0x80027,     // n=19
    0x100009,    // n=20
    0x200005,    // n=21
    0x400003,    // n=22
    0x800021,    // n=23
    0x100001B,   // n=24
    0x2000009,   // n=25
    0x400001B,   // n=26
    0x8000027,   // n=27
    0x10000003,  // n=28
    0x20000005,  // n=29
    0x40000003,  // n=30
    0x80000009,  // n=31
    0x10000008D, // n=32
};

const std::map<int, std::uint64_t>& modulus_env_overrides() {
    static std::map<int, std::uint64_t> table = [] {
        std::map<int, std::uint64_t> t;
        const char* path = std::getenv("NLBOUND_MODULUS_TABLE");
        if (path) {
            std::ifstream in(path);
            int n;
            std::string hex;
            while (in >> n >> hex)
                t[n] = std::stoull(hex, nullptr, 16);
        }
        return t;
    }();
    return table;
}

} // namespace

std::uint64_t FieldCtx::default_modulus(int n) {
    if (n < 2 || n > 32) throw std::invalid_argument("field degree must be in [2, 32]");
    const auto& env = modulus_env_overrides();
    if (auto it = env.find(n); it != env.end()) return it->second;
    return kDefaultModulus[n];
}

FieldCtx::FieldCtx(int n) : FieldCtx(n, default_modulus(n)) {}

FieldCtx::FieldCtx(int n, std::uint64_t modulus) : n_(n), mod_(modulus) {
    if (n < 2 || n > 32) throw std::invalid_argument("field degree must be in [2, 32]");
    if (((mod_ >> n) & 1) == 0 || (mod_ & 1) == 0 || (mod_ >> (n + 1)) != 0)
        throw std::invalid_argument("modulus must have bit n and bit 0 set and degree exactly n");
    if (!is_irreducible(mod_, n))
        throw std::invalid_argument("modulus polynomial is reducible over F2");
    init();
}

void FieldCtx::init() {
    const std::uint64_t m = group_order();
    for (int p : prime_factors_of(m)) order_primes_.push_back(std::uint64_t(p));

    // find a multiplicative generator: g with g^(m/p) != 1 for every prime p | m
    for (std::uint64_t c = 2; ; ++c) {
        FieldElement g(c);
        bool ok = true;
        for (std::uint64_t p : order_primes_)
            if (pow(g, m / p).is_one()) { ok = false; break; }
        if (ok) { gen_ = c; break; }
    }

    // trace is F2-linear: a single mask carries the traces of the basis
    for (int i = 0; i < n_; ++i) {
        std::uint64_t acc = 0, cu = std::uint64_t(1) << i;
        for (int s = 0; s < n_; ++s) {
            acc ^= cu;
            cu = poly_mulmod(cu, cu, mod_, n_);
        }
        trace_mask_ |= (acc & 1) << i;
    }

    if (n_ <= 16) {
        const std::uint64_t size = field_size();
        std::vector<std::uint32_t> alog(size_t(m), 0), log(size_t(size), 0);
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i < m; ++i) {
            alog[size_t(i)] = std::uint32_t(cur);
            log[size_t(cur)] = std::uint32_t(i);
            cur = poly_mulmod(cur, gen_, mod_, n_);
        }
        alog_ = std::move(alog);
        log_ = std::move(log);
    }
}

FieldElement FieldCtx::element(std::uint64_t bits) const {
    if (bits >> n_) throw std::invalid_argument("element bits exceed field degree");
    return FieldElement(bits);
}

FieldElement FieldCtx::mul(FieldElement a, FieldElement b) const {
    if (!log_.empty() && !a.is_zero() && !b.is_zero()) {
        std::uint64_t s = std::uint64_t(log_[size_t(a.bits())]) + log_[size_t(b.bits())];
        const std::uint64_t m = group_order();
        if (s >= m) s -= m;
        return FieldElement(alog_[size_t(s)]);
    }
    return FieldElement(poly_mulmod(a.bits(), b.bits(), mod_, n_));
}

FieldElement FieldCtx::pow(FieldElement a, std::uint64_t e) const {
    if (a.is_zero()) return e == 0 ? one() : zero();
    const std::uint64_t m = group_order();
    e %= m;
    if (!log_.empty()) {
        // single table hop: a^e = g^(log(a)*e mod m)
        unsigned __int128 le = (unsigned __int128)log_[size_t(a.bits())] * e;
        return FieldElement(alog_[size_t(std::uint64_t(le % m))]);
    }
    FieldElement r(1), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElement FieldCtx::inverse(FieldElement a) const {
    if (a.is_zero()) throw std::invalid_argument("zero has no multiplicative inverse");
    return pow(a, group_order() - 1);
}

int FieldCtx::trace(FieldElement a) const {
    return std::popcount(a.bits() & trace_mask_) & 1;
}

FieldElement FieldCtx::rel_trace(int r, FieldElement a) const {
    if (r < 1 || n_ % r != 0) throw std::invalid_argument("relative trace requires r | n");
    FieldElement acc(0), cur = a;
    for (int i = 0; i < n_ / r; ++i) {
        acc += cur;
        for (int s = 0; s < r; ++s) cur = sqr(cur);
    }
    return acc;
}

bool FieldCtx::is_power_residue(FieldElement a, std::uint64_t d) const {
    if (a.is_zero()) throw std::invalid_argument("power residue test requires a != 0");
    const std::uint64_t m = group_order();
    std::uint64_t e = d % m;
    if (e == 0) return a.is_one(); // y^d = 1 for every nonzero y
    std::uint64_t g = std::gcd(e, m);
    return pow(a, m / g).is_one();
}

// Discrete log base generator() via baby-step giant-step; m <= 2^32-1 so the
// tables stay around sqrt(m) <= 65536 entries.
std::uint64_t FieldCtx::dlog(FieldElement a) const {
    if (!log_.empty()) return log_[size_t(a.bits())];
    const std::uint64_t m = group_order();
    std::uint64_t s = 1;
    while (s * s < m) ++s;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(size_t(s) * 2);
    FieldElement g(gen_), cur(1);
    for (std::uint64_t j = 0; j < s; ++j) {
        baby.emplace(cur.bits(), j);
        cur = mul(cur, g);
    }
    FieldElement giant = pow(g, m - s); // g^(-s)
    FieldElement y = a;
    for (std::uint64_t i = 0; i <= m / s; ++i) {
        if (auto it = baby.find(y.bits()); it != baby.end())
            return i * s + it->second;
        y = mul(y, giant);
    }
    throw std::logic_error("discrete log not found for nonzero element");
}

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    long long t0 = 0, t1 = 1;
    long long r0 = (long long)m, r1 = (long long)(a % m);
    while (r1) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        long long t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    return std::uint64_t((t0 % (long long)m + (long long)m) % (long long)m);
}

} // namespace

std::vector<FieldElement> FieldCtx::dth_roots(FieldElement a, std::uint64_t d) const {
    if (d == 0) throw std::invalid_argument("dth_roots requires d >= 1");
    if (a.is_zero()) return {zero()}; // 0 is the only y with y^d = 0
    const std::uint64_t m = group_order();
    std::uint64_t e = d % m;
    if (e == 0) {
        // y^d = 1 for every nonzero y
        std::vector<FieldElement> all;
        if (a.is_one())
            for (std::uint64_t v = 1; v < field_size(); ++v) all.push_back(FieldElement(v));
        return all;
    }
    std::uint64_t g = std::gcd(e, m);
    if (!pow(a, m / g).is_one()) return {};
    // with L = dlog(a), solve e*x ≡ L (mod m); g | L and gcd(e/g, m/g) = 1
    std::uint64_t L = dlog(a);
    if (L % g != 0) throw std::logic_error("power residue check and dlog disagree");
    std::uint64_t mg = m / g;
    std::uint64_t x0 = std::uint64_t(((unsigned __int128)mod_inverse((e / g) % mg, mg) * ((L / g) % mg)) % mg);
    std::vector<FieldElement> roots;
    roots.reserve(size_t(g));
    for (std::uint64_t t = 0; t < g; ++t)
        roots.push_back(pow(generator(), (x0 + t * mg) % m));
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace nlbound
