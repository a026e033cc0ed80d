#include "nlbound/bounds.hpp"

#include "nlbound/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nlbound {

namespace {

using u128 = unsigned __int128;

u128 isqrt_u128(u128 x) {
    if (x == 0) return 0;
    u128 r = 0, bit = u128(1) << 126;
    while (bit > x) bit >>= 2;
    while (bit) {
        if (x >= r + bit) {
            x -= r + bit;
            r = (r >> 1) + bit;
        } else {
            r >>= 1;
        }
        bit >>= 2;
    }
    return r;
}

u128 pow2(int e) { return u128(1) << e; }

BoundEntry finish(std::string name, std::string provenance, int n, u128 radicand,
                  long long scale, bool applicable, std::string reason) {
    BoundEntry e;
    e.name = std::move(name);
    e.provenance = std::move(provenance);
    e.radicand = radicand;
    e.scale = scale;
    e.applicable = applicable;
    e.reason = std::move(reason);
    const long double half = (long double)(std::uint64_t(1) << (n - 1));
    const long double root = sqrtl((long double)radicand);
    e.real_value = double(half - root / (2.0L * scale));
    // ceil(A - x) = A - floor(x); floor(sqrt(M)/q) = floor(isqrt(M)/q)
    e.integer_bound = (long long)(std::uint64_t(1) << (n - 1)) -
                      (long long)(isqrt_u128(radicand) / (u128)(2 * scale));
    e.display_round = llroundl(half - root / (2.0L * scale));
    e.vacuous = e.real_value <= 0.0;
    return e;
}

} // namespace

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

BoundEntry bound_carlet_cubic(int n) {
    if (n < 1) throw std::invalid_argument("bound_carlet_cubic requires n >= 1");
    if (n < 2) { // 2^(n-1) shift below needs n >= 1; keep the value form anyway
        BoundEntry e;
        e.name = "carlet_cubic";
        e.applicable = false;
        e.reason = "degenerate n";
        return e;
    }
    // 2^(n-1) - 2^(n-3/2) = 2^(n-1) - sqrt(2^(2n-1))/2
    BoundEntry e = finish("carlet_cubic", "generic cubic bound (no affine derivatives)", n,
                          pow2(2 * n - 1), 1, true, "");
    if (n < 5) {
        e.soundness_caveat = true;
        e.reason = "printed form drops +2^(n-1) under the radical; loose for n < 5";
    }
    return e;
}

BoundEntry bound_mesnager_max(int n, const std::map<int, std::uint64_t>& hist) {
    if (hist.empty()) throw std::invalid_argument("bound_mesnager_max: empty histogram");
    std::uint64_t q = 0;
    for (auto [r, c] : hist) {
        if (r < 0 || r > n || ((n + r) & 1))
            throw std::invalid_argument("bound_mesnager_max: dimension with wrong parity or range");
        q += c;
    }
    const int rmin = hist.begin()->first;
    // first branch: 2^(n-2) - 2^((n+rmin)/2 - 2), always an exact integer here
    const long long branch1 = (long long)(std::uint64_t(1) << (n - 2)) -
                              (long long)(std::uint64_t(1) << ((n + rmin) / 2 - 2));
    // second branch radicand: 2^(2n) - q 2^n + sum_a 2^((n+r_a)/2)
    u128 radicand = pow2(2 * n) - u128(q) * pow2(n);
    for (auto [r, c] : hist) radicand += u128(c) * pow2((n + r) / 2);
    BoundEntry e = finish("radical_histogram_max", "max-form bound from the r_a distribution", n,
                          radicand, 1, true, "");
    if ((double)branch1 > e.real_value) {
        e.real_value = double(branch1);
        e.integer_bound = branch1;
        e.display_round = branch1;
        e.reason = "first branch (min r_a) dominates";
        e.vacuous = branch1 <= 0;
    } else {
        e.reason = "second branch (sum over r_a) dominates";
    }
    return e;
}

BoundEntry bound_gode_f(int n, int i) {
    if (i < 1 || n < 2) throw std::invalid_argument("bound_gode_f requires n >= 2, i >= 1");
    const int e = (n % 2 == 0) ? (n + 2 * i) / 2 : (n + 2 * i - 1) / 2;
    const bool ok = n > 2 * i;
    if (e >= 2 * n) { // radicand would dominate 2^(2n); value meaningless
        BoundEntry b;
        b.name = "gode_gangopadhyay_f";
        b.provenance = "monomial bound via r_a <= 2i";
        b.applicable = false;
        b.vacuous = true;
        b.reason = "requires n > 2i";
        return b;
    }
    u128 radicand = pow2(n) + (pow2(n) - 1) * pow2(e);
    return finish("gode_gangopadhyay_f", "monomial bound via r_a <= 2i", n, radicand, 1, ok,
                  ok ? "" : "requires n > 2i");
}

BoundEntry bound_gode_g(int n) {
    if (n < 2) throw std::invalid_argument("bound_gode_g requires n >= 2");
    const int e = (n % 2 == 0) ? (n + 4) / 2 : (n + 3) / 2;
    const bool ok = n > 3;
    u128 radicand = pow2(n) + (pow2(n) - 1) * pow2(e);
    return finish("gode_gangopadhyay_g", "bound for Tr(mu x^(2^(2r)+2^r+1)), gcd(n,r)=1", n,
                  radicand, 1, ok, ok ? "" : "requires n > 3");
}

BoundEntry bound_lihugao(int n, int s, int t, int t1) {
    if (!(0 < s && s <= t && t < n))
        throw std::invalid_argument("bound_lihugao requires 0 < s <= t < n");
    const char* prov = "bound from the quadratic-part index range";
    u128 radicand;
    std::string reason;
    bool ok = true;
    if (n < s + t) {
        radicand = pow2(n) + (pow2(n) - 1) * pow2(t);
        reason = "case 1: n < s+t";
    } else if (2 * t > n) { // n >= s+t here
        radicand = pow2(n) + (pow2(n) - 1) * pow2(n - s);
        reason = "case 2: 2t > n >= s+t";
    } else if (n == 2 * t && s != t) {
        if (t1 < 1) {
            BoundEntry b;
            b.name = "li_hu_gao_f";
            b.provenance = prov;
            b.applicable = false;
            b.reason = "case 3 needs t1 (no second index)";
            return b;
        }
        const int p = std::min(n - 2 * s, 2 * t1);
        radicand = pow2(n) + (pow2(n) - 1) * pow2((n + p) / 2);
        reason = "case 3: n = 2t, s != t (t1 read as the largest index != t)";
    } else if (n > 2 * t) {
        const int p = (n % 2 == 0) ? std::min(n - 2 * s, 2 * t) : std::min(n - 2 * s, 2 * t - 1);
        radicand = pow2(n) + (pow2(n) - 1) * pow2((n + p) / 2);
        reason = n % 2 == 0 ? "case 4: n > 2t even" : "case 4: n > 2t odd";
    } else { // n == 2t && s == t
        BoundEntry b;
        b.name = "li_hu_gao_f";
        b.provenance = prov;
        b.applicable = false;
        b.reason = "undefined for n = 2t with s = t";
        return b;
    }
    return finish("li_hu_gao_f", prov, n, radicand, 1, ok, reason);
}

BoundEntry bound_lihugao_g(int n, int t) {
    if (t < 1) throw std::invalid_argument("bound_lihugao_g requires t >= 1");
    const int e = (n % 2 == 0) ? (n + 2 * t) / 2 : (n + 2 * t - 1) / 2;
    const bool ok = n >= 2 * t;
    if (e >= 2 * n) {
        BoundEntry b;
        b.name = "li_hu_gao_g";
        b.provenance = "t-only bound for gcd-structured exponents";
        b.applicable = false;
        b.vacuous = true;
        b.reason = "requires n >= 2t";
        return b;
    }
    u128 radicand = pow2(n) + (pow2(n) - 1) * pow2(e);
    return finish("li_hu_gao_g", "t-only bound for gcd-structured exponents", n, radicand, 1, ok,
                  ok ? "" : "requires n >= 2t");
}

BoundEntry bound_main(int n, std::uint64_t q_size, int v) {
    if (v < 0 || v > n) throw std::invalid_argument("bound_main requires 0 <= v <= n");
    if (q_size > (std::uint64_t(1) << n) - 1)
        throw std::invalid_argument("bound_main requires q_size <= 2^n - 1");
    // 2^(2n) - 2 q (2^(n-1) - 2^(floor((n+v)/2)-1)) = 2^(2n) - q 2^n + q 2^floor((n+v)/2)
    u128 radicand = pow2(2 * n) - u128(q_size) * pow2(n) + u128(q_size) * pow2((n + v) / 2);
    return finish("root_number_v", "bound from the minimized root-number exponent V", n, radicand,
                  1, true, "");
}

BoundEntry bound_gmu_coprime(int n, std::optional<std::uint64_t> wt_f7) {
    if (n < 2) throw std::invalid_argument("bound_gmu_coprime requires n >= 2");
    const char* prov = "n mod 6 case bounds for Tr(mu x^(2^(2r)+2^r+1)), gcd(n,r)=1";
    const int m = n % 6;
    u128 radicand;
    long long scale = 1;
    std::string reason;
    bool ok = true;
    if (m == 2 || m == 4) {
        // 2^n + (7/3) 2^(3n/2) - (10/3) 2^(n/2), scaled by 9 under the radical
        radicand = 9 * pow2(n) + 21 * pow2(3 * n / 2) - 30 * pow2(n / 2);
        scale = 3;
        reason = "n = 2,4 mod 6";
        ok = n >= 4;
    } else if (m == 0) {
        radicand = 9 * pow2(n) + 24 * pow2(3 * n / 2) - 24 * pow2(n / 2);
        scale = 3;
        reason = "n = 0 mod 6";
        ok = n >= 4;
    } else if (m == 1 || m == 5) {
        radicand = pow2(n) + 3 * pow2((3 * n + 1) / 2) - pow2((n + 3) / 2);
        reason = "n = 1,5 mod 6";
        ok = n >= 5;
    } else { // m == 3
        if (!wt_f7)
            throw std::invalid_argument("bound_gmu_coprime: wt(f7) required when n = 3 mod 6");
        radicand = pow2(n) + (pow2(n) - 1) * pow2((n + 3) / 2) - u128(*wt_f7) * pow2((n + 1) / 2);
        reason = "n = 3 mod 6 (uses wt(f7))";
        ok = n >= 5;
    }
    auto e = finish("gmu_coprime_mod6", prov, n, radicand, scale, ok,
                    ok ? reason : reason + "; requires n >= " + (m % 2 ? "5" : "4"));
    return e;
}

BoundEntry bound_gmu_noncoprime(int n, int r) {
    if (r < 1 || n < 2) throw std::invalid_argument("bound_gmu_noncoprime requires n >= 2, r >= 1");
    const int g = std::gcd(n, r);
    const char* prov = "2-adic case bounds for Tr(mu x^(2^(2r)+2^r+1)), gcd(n,r) > 1";
    u128 radicand;
    long long scale = 1;
    std::string reason;
    bool ok = g > 1 && n >= 4;
    if (n == 3 * r) {
        radicand = pow2(n) + (pow2(n) - 1) * pow2(2 * r);
        reason = "n = 3r (assumes the relative trace of mu to GF(2^r) is nonzero)";
    } else if (std::countr_zero(unsigned(n)) <= std::countr_zero(unsigned(r))) {
        // ||n||_2 >= ||r||_2
        radicand = pow2(n) + (pow2(n) - 1) * pow2((n + 3 * g) / 2);
        reason = "||n||_2 >= ||r||_2 branch";
    } else {
        // 2^n + (2^n-1) 2^(n/2) 2^(2g+1)/(2^g+1), n even in this branch
        const u128 den = pow2(g) + 1;
        const u128 num = den * pow2(n) + (pow2(n) - 1) * pow2(n / 2) * pow2(2 * g + 1);
        radicand = num * den;
        scale = (long long)(std::uint64_t(den));
        reason = "||n||_2 < ||r||_2 branch";
    }
    if (!ok) reason += (g > 1 ? "; requires n >= 4" : "; requires gcd(n,r) > 1");
    return finish("gmu_noncoprime_2adic", prov, n, radicand, scale, ok, reason);
}

// ---- orchestration ----

namespace {

struct MonomialShape {
    bool is_monomial = false;
    int i = 0, j = 0;   // normalized exponent 2^i + 2^j + 1
    int gamma = 0;      // gcd(i, j); the g_mu family has i = 2 gamma, j = gamma
};

MonomialShape classify(const TracePolynomial& f) {
    MonomialShape m;
    if (f.terms().size() != 1) return m;
    std::uint64_t e = f.terms()[0].exponent;
    if (std::popcount(e) != 3) return m;
    e >>= std::countr_zero(e);
    m.is_monomial = true;
    m.i = 63 - std::countl_zero(e);
    m.j = std::countr_zero(e & (e - 1));
    m.gamma = std::gcd(m.i, m.j);
    return m;
}

} // namespace

BoundReport compare_report(const TracePolynomial& f) {
    const auto& ctx = f.ctx();
    const int n = ctx.degree();
    BoundReport rep;
    rep.n = n;
    rep.function = f.to_string();
    {
        std::ostringstream mh;
        mh << "0x" << std::hex << std::uppercase << ctx.modulus();
        rep.modulus_hex = mh.str();
    }

    ExponentSet delta = delta_set(f);
    rep.delta = delta.exps;
    rep.vres = minimize_v(delta);

    const MonomialShape mono = classify(f);

    // |Q_f|: exhaustive for n <= 16, else the no-affine-derivative criterion
    // for monomials (n not in {i+j, 2i-j}), else assumed full
    std::string q_note;
    if (n <= 16) {
        rep.q_size = q_set_size(f);
        rep.q_exact = true;
    } else if (mono.is_monomial) {
        rep.q_exact = (n != mono.i + mono.j) && (n != 2 * mono.i - mono.j);
        rep.q_size = (std::uint64_t(1) << n) - 1;
        q_note = rep.q_exact ? "no affine derivative (monomial criterion)"
                             : "monomial has affine derivatives; |Q| overstated";
    } else {
        rep.q_size = (std::uint64_t(1) << n) - 1;
        rep.q_exact = false;
        q_note = "assumes no affine derivatives (exhaustive sweep capped at n <= 16)";
    }
    const bool q_full = rep.q_size == (std::uint64_t(1) << n) - 1 &&
                        (rep.q_exact || !mono.is_monomial ||
                         ((n != mono.i + mono.j) && (n != 2 * mono.i - mono.j)));

    // generic cubic bound
    {
        BoundEntry e = bound_carlet_cubic(n);
        if (!q_full) {
            e.applicable = false;
            e.reason = "f has affine derivatives";
        }
        rep.entries.push_back(std::move(e));
    }

    // monomial bounds
    if (mono.is_monomial) {
        BoundEntry e = bound_gode_f(n, mono.i);
        if (!q_full) { e.applicable = false; e.reason = "f has affine derivatives"; }
        rep.entries.push_back(std::move(e));
        if (mono.i == 2 * mono.j) {
            BoundEntry eg = bound_gode_g(n);
            if (!q_full || std::gcd(n, mono.j) != 1) {
                eg.applicable = false;
                eg.reason = std::gcd(n, mono.j) != 1 ? "requires gcd(n,r) = 1" : "f has affine derivatives";
            }
            rep.entries.push_back(std::move(eg));
        }
        if (mono.gamma >= 2) {
            BoundEntry eg = bound_lihugao_g(n, mono.i / mono.gamma);
            if (std::gcd(n, mono.gamma) != 1) {
                // stated for gcd(n,r)=1; outside that the t-only exponent can
                // undercut the true radical dimension
                eg.applicable = false;
                eg.reason = "requires gcd(n,r) = 1";
            }
            if (!q_full) { eg.applicable = false; eg.reason = "f has affine derivatives"; }
            rep.entries.push_back(std::move(eg));
        }
    }

    // index-range bound from the positive half of delta
    {
        std::vector<int> pos;
        for (int e : delta.exps)
            if (e > 0) pos.push_back(e);
        if (!pos.empty()) {
            int t = *std::max_element(pos.begin(), pos.end());
            int s = *std::min_element(pos.begin(), pos.end());
            int t1 = -1;
            for (int e : pos)
                if (e != t) t1 = std::max(t1, e);
            BoundEntry e = bound_lihugao(n, s, t, t1);
            if (!q_full) { e.applicable = false; e.reason = "f has affine derivatives"; }
            rep.entries.push_back(std::move(e));
        }
    }

    // the root-number bound
    {
        BoundEntry e = bound_main(n, rep.q_size, int(rep.vres.v));
        if (!rep.q_exact) {
            e.reason = q_note;
            if (mono.is_monomial && !q_full) e.applicable = false;
        }
        rep.entries.push_back(std::move(e));
    }

    // g_mu family bounds
    if (mono.is_monomial && mono.i == 2 * mono.j) {
        const int r = mono.j;
        if (std::gcd(n, r) == 1) {
            std::optional<std::uint64_t> wt;
            if (n % 6 == 3 && n <= 24) {
                TracePolynomial f7(ctx, {{ctx.one(), 7}});
                wt = truth_table(f7).weight();
            }
            if (n % 6 == 3 && !wt) {
                BoundEntry e;
                e.name = "gmu_coprime_mod6";
                e.applicable = false;
                e.reason = "wt(f7) needs a truth table (n <= 24)";
                rep.entries.push_back(std::move(e));
            } else {
                rep.entries.push_back(bound_gmu_coprime(n, wt));
            }
        } else {
            rep.entries.push_back(bound_gmu_noncoprime(n, r));
        }
    }

    // radical-histogram bound when the exhaustive sweep is in reach
    if (n <= 16) {
        RadicalDistribution dist = radical_distribution(f);
        if (!dist.counts.empty())
            rep.entries.push_back(bound_mesnager_max(n, dist.counts));
    }

    // ordering claim: main >= li_hu_gao >= gode on exact radicands (scale 1)
    auto find = [&](const char* name) -> const BoundEntry* {
        for (const auto& e : rep.entries)
            if (e.name == name && e.applicable) return &e;
        return nullptr;
    };
    const BoundEntry* main_e = find("root_number_v");
    const BoundEntry* lhg = find("li_hu_gao_f");
    const BoundEntry* lhg_g = find("li_hu_gao_g");
    const BoundEntry* gode = find("gode_gangopadhyay_f");
    const BoundEntry* gode_g = find("gode_gangopadhyay_g");
    auto require_leq = [](const BoundEntry* lo, const BoundEntry* hi) {
        // same radicand shape, scale 1: smaller radicand = larger bound
        if (lo && hi && hi->radicand > lo->radicand)
            throw std::logic_error("ordering violation: " + hi->name + " below " + lo->name);
    };
    require_leq(lhg, main_e);
    require_leq(lhg_g, main_e);
    require_leq(gode, lhg);
    require_leq(gode, main_e);
    require_leq(gode_g, lhg_g);

    // desk-scale soundness: every applicable bound stays at or below exact nl2
    if (n <= 6) {
        rep.nl2 = nl2_exact(truth_table(f));
        for (const auto& e : rep.entries)
            if (e.applicable && !e.soundness_caveat && !e.vacuous &&
                e.integer_bound > *rep.nl2)
                throw std::logic_error("soundness violation: bound " + e.name +
                                       " exceeds exact nl2");
    }
    return rep;
}

} // namespace nlbound
