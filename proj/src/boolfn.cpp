#include "nlbound/boolfn.hpp"

#include "nlbound/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nlbound {

// ---- TracePolynomial ----

TracePolynomial::TracePolynomial(const FieldCtx& ctx, std::vector<TraceTerm> terms, bool affine_const)
    : ctx_(&ctx), affine_const_(affine_const) {
    std::map<std::uint64_t, FieldElement> merged;
    for (const auto& t : terms) {
        if (t.exponent < 1 || t.exponent > ctx.group_order())
            throw std::invalid_argument("trace term exponent must lie in [1, 2^n-1]");
        if (t.coeff.bits() >> ctx.degree())
            throw std::invalid_argument("trace term coefficient outside the field");
        merged[t.exponent] += t.coeff;
    }
    for (auto& [e, c] : merged)
        if (!c.is_zero()) terms_.push_back({c, e});
}

int TracePolynomial::evaluate(FieldElement x) const {
    int acc = affine_const_ ? 1 : 0;
    for (const auto& t : terms_)
        acc ^= ctx_->trace(ctx_->mul(t.coeff, ctx_->pow(x, t.exponent)));
    return acc;
}

int TracePolynomial::max_exponent_weight() const {
    int w = 0;
    for (const auto& t : terms_)
        w = std::max(w, std::popcount(t.exponent));
    return w;
}

TracePolynomial TracePolynomial::parse(const FieldCtx& ctx, std::string_view spec) {
    std::vector<TraceTerm> terms;
    std::string s(spec);
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("function term must look like 'coeffhex:exponent'");
        std::uint64_t coeff = std::stoull(tok.substr(0, colon), nullptr, 16);
        std::uint64_t expo = std::stoull(tok.substr(colon + 1), nullptr, 10);
        terms.push_back({ctx.element(coeff), expo});
    }
    if (terms.empty()) throw std::invalid_argument("empty function spec");
    return TracePolynomial(ctx, std::move(terms));
}

std::string TracePolynomial::to_string() const {
    if (terms_.empty() && !affine_const_) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << ",";
        first = false;
        out << std::hex << t.coeff.bits() << std::dec << ":" << t.exponent;
    }
    if (affine_const_) out << (first ? "" : ",") << "+1";
    return out.str();
}

// ---- TruthTable ----

TruthTable::TruthTable(const FieldCtx& ctx)
    : ctx_(&ctx), n_(ctx.degree()), words_(size_t(((std::uint64_t(1) << n_) + 63) / 64), 0) {}

std::uint64_t TruthTable::weight() const {
    std::uint64_t w = 0;
    for (auto word : words_) w += std::uint64_t(std::popcount(word));
    return w;
}

TruthTable truth_table(const TracePolynomial& f) {
    const auto& ctx = f.ctx();
    if (ctx.degree() > 24) throw CapExceeded("truth_table capped at n <= 24");
    TruthTable tt(ctx);
    const int const_bit = f.affine_const() ? 1 : 0;
    if (f.terms().empty()) {
        for (std::uint64_t x = 0; x < tt.size(); ++x) tt.set(x, const_bit);
        return tt;
    }
    tt.set(0, const_bit);
    // walk x through generator powers; each term advances by one multiplication
    const FieldElement g = ctx.generator();
    std::vector<FieldElement> val, step;
    val.reserve(f.terms().size());
    step.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        val.push_back(t.coeff); // coeff * x^d at x = 1
        step.push_back(ctx.pow(g, t.exponent));
    }
    FieldElement x(1);
    for (std::uint64_t k = 0; k < ctx.group_order(); ++k) {
        int bit = const_bit;
        for (const auto& v : val) bit ^= ctx.trace(v);
        tt.set(x.bits(), bit);
        x = ctx.mul(x, g);
        for (size_t t = 0; t < val.size(); ++t) val[t] = ctx.mul(val[t], step[t]);
    }
    return tt;
}

// ---- Walsh transform ----

namespace {

void fwht_inplace(std::vector<std::int32_t>& v) {
    const size_t n = v.size();
    for (size_t h = 1; h < n; h <<= 1)
        for (size_t s = 0; s < n; s += h << 1)
            for (size_t k = s; k < s + h; ++k) {
                std::int32_t a = v[k], b = v[k + h];
                v[k] = a + b;
                v[k + h] = a - b;
            }
}

// columns of the Gram matrix G_{ij} = Tr(e_i e_j); <G u, x> = Tr(u x), so the
// coordinate-indexed transform is read out at index G u
std::vector<std::uint64_t> gram_columns(const FieldCtx& ctx) {
    const int n = ctx.degree();
    std::vector<std::uint64_t> cols(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            FieldElement prod = ctx.mul(FieldElement(std::uint64_t(1) << i),
                                        FieldElement(std::uint64_t(1) << j));
            cols[i] |= std::uint64_t(ctx.trace(prod)) << j;
        }
    return cols;
}

} // namespace

std::vector<std::int32_t> walsh_spectrum(const TruthTable& tt) {
    const int n = tt.n();
    if (n > 24) throw CapExceeded("walsh_spectrum capped at n <= 24");
    const std::uint64_t N = tt.size();
    std::vector<std::int32_t> h(static_cast<size_t>(N));
    for (std::uint64_t x = 0; x < N; ++x)
        h[size_t(x)] = tt.get(x) ? -1 : 1;
    fwht_inplace(h);
    auto cols = gram_columns(tt.ctx());
    std::vector<std::int32_t> w(static_cast<size_t>(N));
    std::uint64_t v = 0, prev_gray = 0;
    w[0] = h[0];
    for (std::uint64_t t = 1; t < N; ++t) {
        std::uint64_t gray = t ^ (t >> 1);
        v ^= cols[size_t(std::countr_zero(gray ^ prev_gray))];
        prev_gray = gray;
        w[size_t(gray)] = h[size_t(v)];
    }
    return w;
}

std::vector<std::int32_t> walsh_spectrum_naive(const TruthTable& tt) {
    const auto& ctx = tt.ctx();
    const std::uint64_t N = tt.size();
    std::vector<std::int32_t> w(size_t(N), 0);
    for (std::uint64_t u = 0; u < N; ++u) {
        std::int32_t s = 0;
        for (std::uint64_t x = 0; x < N; ++x) {
            int bit = tt.get(x) ^ ctx.trace(ctx.mul(FieldElement(u), FieldElement(x)));
            s += bit ? -1 : 1;
        }
        w[size_t(u)] = s;
    }
    return w;
}

int nonlinearity(const TruthTable& tt) {
    auto w = walsh_spectrum(tt);
    std::int64_t mx = 0;
    for (auto v : w) mx = std::max<std::int64_t>(mx, std::abs((std::int64_t)v));
    return int((std::int64_t(tt.size()) - mx) / 2);
}

int algebraic_degree(const TruthTable& tt) {
    if (tt.n() > 24) throw CapExceeded("algebraic_degree capped at n <= 24");
    const std::uint64_t N = tt.size();
    std::vector<std::uint8_t> a(static_cast<size_t>(N));
    for (std::uint64_t x = 0; x < N; ++x) a[size_t(x)] = std::uint8_t(tt.get(x));
    for (std::uint64_t step = 1; step < N; step <<= 1)
        for (std::uint64_t j = 0; j < N; ++j)
            if (j & step) a[size_t(j)] ^= a[size_t(j ^ step)];
    int deg = 0;
    for (std::uint64_t j = 0; j < N; ++j)
        if (a[size_t(j)]) deg = std::max(deg, std::popcount(j));
    return deg;
}

int nl2_exact(const TruthTable& tt) {
    const int n = tt.n();
    if (n > 6) throw CapExceeded("nl2_exact capped at n <= 6 (RM(2,n) sweep)");
    const std::uint64_t N = tt.size();
    std::uint64_t fbits = tt.words()[0];
    if (N < 64) fbits &= (std::uint64_t(1) << N) - 1;

    // ANF basis of RM(2,n): constant, coordinates, coordinate pairs
    std::vector<std::uint64_t> basis;
    basis.push_back(N == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << N) - 1);
    for (int i = 0; i < n; ++i) {
        std::uint64_t v = 0;
        for (std::uint64_t x = 0; x < N; ++x) v |= ((x >> i) & 1) << x;
        basis.push_back(v);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::uint64_t v = 0;
            for (std::uint64_t x = 0; x < N; ++x) v |= (((x >> i) & (x >> j)) & 1) << x;
            basis.push_back(v);
        }
    const int m = int(basis.size());
    int best = std::popcount(fbits);
    std::uint64_t cw = 0, prev_gray = 0;
    for (std::uint64_t u = 1; u < (std::uint64_t(1) << m); ++u) {
        std::uint64_t gray = u ^ (u >> 1);
        cw ^= basis[size_t(std::countr_zero(gray ^ prev_gray))];
        prev_gray = gray;
        best = std::min(best, std::popcount(fbits ^ cw));
    }
    return best;
}

// ---- derivatives and quadratic parts ----

TracePolynomial derivative(const TracePolynomial& f, FieldElement a) {
    const auto& ctx = f.ctx();
    std::vector<TraceTerm> terms;
    int const_bit = 0;
    for (const auto& t : f.terms()) {
        // (x+a)^d + x^d = sum over proper submasks s of d of a^(d-s) x^s
        const std::uint64_t d = t.exponent;
        for (std::uint64_t s = (d - 1) & d; ; s = (s - 1) & d) {
            FieldElement coeff = ctx.mul(t.coeff, ctx.pow(a, d - s));
            if (s == 0) {
                const_bit ^= ctx.trace(coeff);
                break;
            }
            terms.push_back({coeff, s});
        }
    }
    return TracePolynomial(ctx, std::move(terms), const_bit != 0);
}

QuadraticForm::QuadraticForm(const FieldCtx& ctx, std::map<int, FieldElement> coeffs)
    : ctx_(&ctx), coeffs_(std::move(coeffs)) {
    const int half = ctx.degree() / 2;
    for (auto& [i, c] : coeffs_) {
        if (i < 1 || i > half)
            throw std::invalid_argument("quadratic form index outside canonical range [1, n/2]");
        if (c.bits() >> ctx.degree())
            throw std::invalid_argument("quadratic form coefficient outside the field");
    }
    std::erase_if(coeffs_, [](const auto& kv) { return kv.second.is_zero(); });
}

int QuadraticForm::evaluate(FieldElement x) const {
    int acc = 0;
    for (const auto& [i, c] : coeffs_) {
        FieldElement p = x;
        for (int s = 0; s < i; ++s) p = ctx_->sqr(p);
        acc ^= ctx_->trace(ctx_->mul(c, ctx_->mul(p, x))); // Tr(c x^(2^i+1))
    }
    return acc;
}

bool QuadraticForm::is_zero_function() const {
    const int n = ctx_->degree();
    for (const auto& [i, c] : coeffs_) {
        if (2 * i != n) return false; // canonical i < n/2 with c != 0
        // at i = n/2 the function only depends on c + c^(2^(n/2))
        FieldElement folded = c + ctx_->pow(c, std::uint64_t(1) << (n / 2));
        if (!folded.is_zero()) return false;
    }
    return true;
}

QuadraticForm quadratic_part(const TracePolynomial& f, FieldElement a) {
    const auto& ctx = f.ctx();
    const int n = ctx.degree();
    TracePolynomial d = derivative(f, a);
    std::map<int, FieldElement> coeffs;
    for (const auto& t : d.terms()) {
        const int w = std::popcount(t.exponent);
        if (w <= 1) continue; // affine part is dropped, not subtracted
        if (w > 2) throw std::invalid_argument("quadratic_part: a derivative term has degree > 2");
        const int hi = 63 - std::countl_zero(t.exponent);
        const int lo = std::countr_zero(t.exponent);
        // Tr(c x^(2^hi+2^lo)) = Tr(c^(2^(n-lo)) x^(2^(hi-lo)+1))
        FieldElement c = ctx.pow(t.coeff, std::uint64_t(1) << (n - lo));
        int i = hi - lo;
        if (2 * i > n) { // fold i -> n-i into the canonical range
            c = ctx.pow(c, std::uint64_t(1) << (n - i));
            i = n - i;
        }
        auto [it, inserted] = coeffs.try_emplace(i, c);
        if (!inserted) it->second += c;
    }
    std::erase_if(coeffs, [](const auto& kv) { return kv.second.is_zero(); });
    return QuadraticForm(ctx, std::move(coeffs));
}

LinearizedPoly polar_linpoly(const QuadraticForm& q) {
    const auto& ctx = q.ctx();
    const int n = ctx.degree();
    std::vector<LinTerm> terms;
    for (const auto& [i, c] : q.coeffs()) {
        terms.push_back({c, i});
        // (c x)^(2^-i) = c^(2^(n-i)) x^(2^(n-i))
        terms.push_back({ctx.pow(c, std::uint64_t(1) << (n - i)), -i});
    }
    return LinearizedPoly(ctx, std::move(terms));
}

ExponentSet delta_set(const TracePolynomial& f) {
    const auto& ctx = f.ctx();
    const int n = ctx.degree();
    std::set<int> s;
    bool any_cubic = false;
    for (const auto& t : f.terms()) {
        const int w = std::popcount(t.exponent);
        if (w > 3) throw std::invalid_argument("delta_set requires a cubic function");
        if (w != 3) continue; // lower-weight terms never contribute quadratic parts
        any_cubic = true;
        const std::uint64_t e = t.exponent >> std::countr_zero(t.exponent);
        // e = 2^i + 2^j + 1 with i > j > 0
        const int i = 63 - std::countl_zero(e);
        const int j = std::countr_zero(e & (e - 1));
        s.insert({i, j, i - j, -i, -j, j - i});
    }
    if (!any_cubic)
        throw std::invalid_argument("delta_set requires a cubic function (no 2-weight-3 term)");
    std::vector<int> raw(s.begin(), s.end());
    return ExponentSet::normalized(n, raw);
}

// ---- per-a sweeps ----

namespace {

void require_sweep_cap(const FieldCtx& ctx, const char* what) {
    if (ctx.degree() > 16)
        throw CapExceeded(std::string(what) + " capped at n <= 16 (exhaustive a-sweep)");
}

} // namespace

std::vector<FieldElement> q_set(const TracePolynomial& f) {
    require_sweep_cap(f.ctx(), "q_set");
    std::vector<FieldElement> out;
    for (std::uint64_t a = 1; a < f.ctx().field_size(); ++a)
        if (!quadratic_part(f, FieldElement(a)).is_zero_function())
            out.push_back(FieldElement(a));
    return out;
}

std::uint64_t q_set_size(const TracePolynomial& f) {
    return std::uint64_t(q_set(f).size());
}

RadicalDistribution radical_distribution(const TracePolynomial& f, int threads) {
    require_sweep_cap(f.ctx(), "radical_distribution");
    const std::uint64_t N = f.ctx().field_size();
    const int workers = std::max(1, std::min(threads, 64));

    auto sweep = [&f](std::uint64_t lo, std::uint64_t hi) {
        RadicalDistribution local;
        for (std::uint64_t a = lo; a < hi; ++a) {
            QuadraticForm qf = quadratic_part(f, FieldElement(a));
            if (qf.is_zero_function()) {
                ++local.degenerate;
                continue;
            }
            KernelInfo k = kernel_dimension(polar_linpoly(qf));
            ++local.counts[k.dimension];
        }
        return local;
    };

    if (workers == 1 || N < 256) return sweep(1, N);

    const size_t nparts = size_t(workers);
    std::vector<RadicalDistribution> parts(nparts);
    std::vector<std::thread> pool;
    const std::uint64_t span = (N - 1 + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t lo = 1 + span * std::uint64_t(w);
        std::uint64_t hi = std::min(N, lo + span);
        if (lo >= hi) break;
        pool.emplace_back([&parts, &sweep, w, lo, hi] { parts[size_t(w)] = sweep(lo, hi); });
    }
    for (auto& th : pool) th.join();
    RadicalDistribution out;
    for (const auto& p : parts) {
        out.degenerate += p.degenerate;
        for (auto [dim, cnt] : p.counts) out.counts[dim] += cnt;
    }
    return out;
}

PsiMembership psi_membership(const FieldCtx& ctx, int r, FieldElement mu, FieldElement a) {
    if (a.is_zero()) throw std::invalid_argument("psi_membership requires a != 0");
    if (mu.is_zero()) throw std::invalid_argument("psi_membership requires mu != 0");
    if (r < 1 || r > 32) throw std::invalid_argument("psi_membership requires 1 <= r <= 32");
    const int n = ctx.degree();
    PsiMembership out;
    if (std::gcd(n, r) != 1) return out; // the section's analysis needs gcd(n,r)=1

    const std::uint64_t p = std::uint64_t(1) << r;
    FieldElement target = ctx.mul(ctx.pow(a, p), ctx.inverse(mu)); // a^p / mu
    bool member = false;
    if (ctx.is_power_residue(target, p + 1)) {
        member = true;
        FieldElement denom = ctx.inverse(ctx.pow(a, p + 1));
        for (FieldElement b : ctx.dth_roots(target, p + 1))
            if (ctx.trace(ctx.mul(b, denom)) != 0) { member = false; break; }
    }
    if (n % 2 == 0) out.in_psi_e = member ? TriState::yes : TriState::no;
    else out.in_psi_o = member ? TriState::yes : TriState::no;
    return out;
}

} // namespace nlbound
