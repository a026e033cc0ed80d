#include "nlbound/linpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nlbound {

LinearizedPoly::LinearizedPoly(const FieldCtx& ctx, std::vector<LinTerm> terms)
    : ctx_(&ctx), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.coeff.bits() >> ctx.degree())
            throw std::invalid_argument("LinearizedPoly: coefficient outside the field");
}

std::vector<LinTerm> LinearizedPoly::canonical_terms() const {
    const int n = ctx_->degree();
    std::map<int, FieldElement> merged;
    for (const auto& t : terms_) {
        int e = ((t.exp % n) + n) % n;
        merged[e] += t.coeff;
    }
    std::vector<LinTerm> out;
    for (auto& [e, c] : merged)
        if (!c.is_zero()) out.push_back({c, e});
    return out;
}

std::vector<int> LinearizedPoly::signed_exponents() const {
    std::set<int> s;
    for (const auto& t : terms_)
        if (!t.coeff.is_zero()) s.insert(t.exp);
    return {s.rbegin(), s.rend()};
}

FieldElement LinearizedPoly::eval(FieldElement x) const {
    FieldElement acc(0);
    for (const auto& t : canonical_terms()) {
        FieldElement p = x;
        for (int i = 0; i < t.exp; ++i) p = ctx_->sqr(p);
        acc += ctx_->mul(t.coeff, p);
    }
    return acc;
}

KernelInfo kernel_dimension(const LinearizedPoly& L) {
    const int n = L.ctx().degree();
    auto terms = L.canonical_terms();
    if (terms.empty()) return {n, true};

    // columns of the F2 matrix: images of the basis vectors, bit-packed
    std::vector<std::uint64_t> cols(n);
    for (int j = 0; j < n; ++j) {
        FieldElement img(0);
        FieldElement p(std::uint64_t(1) << j);
        int done = 0;
        for (const auto& t : terms) { // terms sorted by exponent: square incrementally
            while (done < t.exp) { p = L.ctx().sqr(p); ++done; }
            img += L.ctx().mul(t.coeff, p);
        }
        cols[j] = img.bits();
    }
    // rank over F2
    int rank = 0;
    for (int bit = 0; bit < n; ++bit) {
        int piv = -1;
        for (int j = rank; j < n; ++j)
            if ((cols[j] >> bit) & 1) { piv = j; break; }
        if (piv < 0) continue;
        std::swap(cols[rank], cols[piv]);
        for (int j = 0; j < n; ++j)
            if (j != rank && ((cols[j] >> bit) & 1)) cols[j] ^= cols[rank];
        ++rank;
    }
    return {n - rank, false};
}

LinearizedPoly frobenius_transform(const LinearizedPoly& L, int k, std::span<const int> shifts) {
    if (shifts.size() != L.terms().size())
        throw std::invalid_argument("frobenius_transform: one shift per term required");
    const auto& ctx = L.ctx();
    const int n = ctx.degree();
    std::vector<LinTerm> out;
    out.reserve(L.terms().size());
    std::uint64_t twok = std::uint64_t(1) << (((k % n) + n) % n);
    for (size_t i = 0; i < L.terms().size(); ++i) {
        const auto& t = L.terms()[i];
        out.push_back({ctx.pow(t.coeff, twok), t.exp + k + shifts[i] * n});
    }
    return LinearizedPoly(ctx, std::move(out));
}

std::uint64_t root_count_special(const FieldCtx& ctx, int r, FieldElement b) {
    if (b.is_zero()) throw std::invalid_argument("root_count_special requires b != 0");
    if (r < 1 || r > 32) throw std::invalid_argument("root_count_special requires 1 <= r <= 32");
    const int n = ctx.degree();
    const int g = std::gcd(n, r);
    const std::uint64_t p_minus_1 = (std::uint64_t(1) << r) - 1;
    const std::uint64_t p2_minus_1 =
        2 * r < 64 ? (std::uint64_t(1) << (2 * r)) - 1 : ~std::uint64_t(0);
    // ||n||_2 >= ||r||_2 means v2(n) <= v2(r)
    if (std::countr_zero(unsigned(n)) <= std::countr_zero(unsigned(r)))
        return ctx.is_power_residue(b, p_minus_1) ? (std::uint64_t(1) << g) : 1;
    return ctx.is_power_residue(b, p2_minus_1) ? (std::uint64_t(1) << (2 * g)) : 1;
}

// ---- textual form ----

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
}

} // namespace

LinearizedPoly LinearizedPoly::parse(const FieldCtx& ctx, std::string_view text) {
    std::vector<LinTerm> terms;
    std::string_view s = text;
    skip_ws(s);
    if (s.empty()) throw std::invalid_argument("empty linearized polynomial");
    while (!s.empty()) {
        // coefficient: hex digits up to '*'
        size_t star = s.find('*');
        if (star == std::string_view::npos)
            throw std::invalid_argument("linearized polynomial term must look like 'a3*X^2^5'");
        std::string coeff_hex(s.substr(0, star));
        std::uint64_t coeff = std::stoull(coeff_hex, nullptr, 16);
        s.remove_prefix(star + 1);
        skip_ws(s);
        if (s.size() < 4 || (s[0] != 'X' && s[0] != 'x') || s.substr(1, 3) != "^2^")
            throw std::invalid_argument("linearized polynomial term must contain 'X^2^'");
        s.remove_prefix(4);
        size_t pos = 0;
        int exp = std::stoi(std::string(s), &pos);
        s.remove_prefix(pos);
        terms.push_back({ctx.element(coeff), exp});
        skip_ws(s);
        if (!s.empty()) {
            if (s.front() != '+') throw std::invalid_argument("terms must be joined by '+'");
            s.remove_prefix(1);
            skip_ws(s);
        }
    }
    return LinearizedPoly(ctx, std::move(terms));
}

std::string LinearizedPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << " + ";
        first = false;
        out << std::hex << t.coeff.bits() << std::dec << "*X^2^" << t.exp;
    }
    return out.str();
}

} // namespace nlbound
