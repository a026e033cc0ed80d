#include "CLI11.hpp"
#include "json.hpp"

#include "nlbound/bounds.hpp"
#include "nlbound/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::ordered_json;
using namespace nlbound;

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

FieldCtx make_ctx(int n, const std::string& modulus_hex) {
    if (modulus_hex.empty()) return FieldCtx(n);
    return FieldCtx(n, std::stoull(modulus_hex, nullptr, 16));
}

std::string modulus_str(const FieldCtx& ctx) {
    std::ostringstream out;
    out << "0x" << std::hex << std::uppercase << ctx.modulus();
    return out.str();
}

// a --function value may name a file holding the spec on its first line
std::string load_spec(const std::string& s) {
    std::ifstream in(s);
    if (!in.good()) return s;
    std::string line;
    std::getline(in, line);
    return line;
}

std::vector<int> parse_delta(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("empty delta");
    return out;
}

ordered_json report_skeleton(const FieldCtx& ctx, const std::string& op) {
    ordered_json j;
    j["n"] = ctx.degree();
    j["modulus"] = modulus_str(ctx);
    j["op"] = op;
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json witness_json(const VResult& v) {
    ordered_json w;
    w["k"] = v.witness.k;
    w["shifts"] = v.witness.shifts;
    return w;
}

std::string witness_str(const VResult& v) {
    std::ostringstream out;
    out << "(" << v.witness.k;
    for (auto s : v.witness.shifts) out << ", " << s;
    out << ")";
    return out.str();
}

ordered_json entry_json(const BoundEntry& e) {
    ordered_json j;
    j["name"] = e.name;
    j["provenance"] = e.provenance;
    j["radicand"] = u128_to_string(e.radicand);
    j["scale"] = e.scale;
    j["real"] = fmt_real(e.real_value);
    j["ceil"] = e.integer_bound;
    j["round"] = e.display_round;
    j["applicable"] = e.applicable;
    j["vacuous"] = e.vacuous;
    j["caveat"] = e.soundness_caveat;
    j["reason"] = e.reason;
    return j;
}

struct Options {
    int n = 0;
    std::string modulus;
    std::string format = "table";
    std::string function;
    std::string delta;
    std::string poly;
    int threads = 1;
    int max_n = 10;
    std::string filter = "all";
};

int cmd_vsearch(const Options& opt) {
    FieldCtx ctx = make_ctx(opt.n, opt.modulus);
    ExponentSet delta = opt.delta.empty()
        ? delta_set(TracePolynomial::parse(ctx, load_spec(opt.function)))
        : ExponentSet::normalized(ctx.degree(), parse_delta(opt.delta));
    VResult res = minimize_v(delta);
    if (opt.format == "json") {
        ordered_json j = report_skeleton(ctx, "vsearch");
        ordered_json r;
        r["delta"] = delta.exps;
        r["v"] = res.v;
        r["t_k"] = res.t_k;
        r["s_k"] = res.s_k;
        j["result"] = r;
        j["witness"] = witness_json(res);
        emit(j);
    } else if (opt.format == "csv") {
        std::cout << "key,value\n" << "v," << res.v << "\n"
                  << "t_k," << res.t_k << "\n" << "s_k," << res.s_k << "\n"
                  << "k," << res.witness.k << "\n" << "shifts,";
        for (size_t i = 0; i < res.witness.shifts.size(); ++i)
            std::cout << (i ? ";" : "") << res.witness.shifts[i];
        std::cout << "\n";
    } else {
        std::cout << "delta =";
        for (int e : delta.exps) std::cout << " " << e;
        std::cout << "\nV = " << res.v << "\nK = " << witness_str(res)
                  << "\nT_K = " << res.t_k << "\nS_K = " << res.s_k << "\n";
    }
    return 0;
}

int cmd_kernel_dim(const Options& opt) {
    FieldCtx ctx = make_ctx(opt.n, opt.modulus);
    LinearizedPoly L = LinearizedPoly::parse(ctx, opt.poly);
    KernelInfo k = kernel_dimension(L);
    if (opt.format == "json") {
        ordered_json j = report_skeleton(ctx, "kernel-dim");
        ordered_json r;
        r["poly"] = L.to_string();
        r["dimension"] = k.dimension;
        r["degenerate"] = k.degenerate;
        j["result"] = r;
        emit(j);
    } else {
        std::cout << "dimension = " << k.dimension
                  << (k.degenerate ? " (degenerate: zero map)" : "") << "\n";
    }
    return 0;
}

bool entry_selected(const BoundEntry& e, const std::string& filter) {
    if (filter == "all") return true;
    if (filter == "main") return e.name == "root_number_v";
    if (filter == "lhg") return e.name.rfind("li_hu_gao", 0) == 0;
    if (filter == "gode") return e.name.rfind("gode", 0) == 0;
    return true;
}

int cmd_bounds(const Options& opt) {
    FieldCtx ctx = make_ctx(opt.n, opt.modulus);
    TracePolynomial f = TracePolynomial::parse(ctx, load_spec(opt.function));
    BoundReport rep = compare_report(f);
    if (opt.format == "json") {
        ordered_json j = report_skeleton(ctx, "bounds");
        ordered_json r;
        r["function"] = rep.function;
        r["delta"] = rep.delta;
        r["v"] = rep.vres.v;
        r["q_size"] = rep.q_size;
        r["q_exact"] = rep.q_exact;
        if (rep.nl2) r["nl2_exact"] = *rep.nl2;
        ordered_json entries = ordered_json::array();
        for (const auto& e : rep.entries)
            if (entry_selected(e, opt.filter)) entries.push_back(entry_json(e));
        r["entries"] = entries;
        j["result"] = r;
        j["witness"] = witness_json(rep.vres);
        emit(j);
    } else if (opt.format == "csv") {
        std::cout << "name,real,ceil,round,applicable,reason\n";
        for (const auto& e : rep.entries)
            if (entry_selected(e, opt.filter))
                std::cout << e.name << "," << fmt_real(e.real_value) << "," << e.integer_bound
                          << "," << e.display_round << "," << (e.applicable ? 1 : 0) << ",\""
                          << e.reason << "\"\n";
    } else {
        std::cout << "n = " << rep.n << "  function = " << rep.function << "\n";
        std::cout << "delta =";
        for (int e : rep.delta) std::cout << " " << e;
        std::cout << "\nV = " << rep.vres.v << "  |Q| = " << rep.q_size
                  << (rep.q_exact ? "" : " (assumed)") << "\n";
        if (rep.nl2) std::cout << "nl2_exact = " << *rep.nl2 << "\n";
        std::cout << "\n";
        std::printf("%-24s %14s %10s %10s %-4s %s\n", "bound", "real", "ceil", "round", "ok",
                    "notes");
        for (const auto& e : rep.entries) {
            if (!entry_selected(e, opt.filter)) continue;
            std::printf("%-24s %14s %10lld %10lld %-4s %s\n", e.name.c_str(),
                        fmt_real(e.real_value).c_str(), e.integer_bound, e.display_round,
                        e.applicable ? "yes" : "no", e.reason.c_str());
        }
    }
    return 0;
}

int cmd_radical_dist(const Options& opt) {
    FieldCtx ctx = make_ctx(opt.n, opt.modulus);
    TracePolynomial f = TracePolynomial::parse(ctx, load_spec(opt.function));
    RadicalDistribution dist = radical_distribution(f, opt.threads);
    if (opt.format == "json") {
        ordered_json j = report_skeleton(ctx, "radical-dist");
        ordered_json r;
        ordered_json counts;
        for (auto [dim, cnt] : dist.counts) counts[std::to_string(dim)] = cnt;
        r["counts"] = counts;
        r["degenerate"] = dist.degenerate;
        j["result"] = r;
        emit(j);
    } else if (opt.format == "csv") {
        std::cout << "dimension,count\n";
        for (auto [dim, cnt] : dist.counts) std::cout << dim << "," << cnt << "\n";
        std::cout << "degenerate," << dist.degenerate << "\n";
    } else {
        for (auto [dim, cnt] : dist.counts)
            std::cout << "r_a = " << dim << " : " << cnt << "\n";
        std::cout << "degenerate (zero quadratic part) : " << dist.degenerate << "\n";
    }
    return 0;
}

int cmd_nl2(const Options& opt) {
    FieldCtx ctx = make_ctx(opt.n, opt.modulus);
    TracePolynomial f = TracePolynomial::parse(ctx, load_spec(opt.function));
    int v = nl2_exact(truth_table(f));
    if (opt.format == "json") {
        ordered_json j = report_skeleton(ctx, "nl2-exact");
        ordered_json r;
        r["function"] = f.to_string();
        r["nl2"] = v;
        j["result"] = r;
        emit(j);
    } else {
        std::cout << "nl2 = " << v << "\n";
    }
    return 0;
}

int cmd_walsh(const Options& opt) {
    FieldCtx ctx = make_ctx(opt.n, opt.modulus);
    TracePolynomial f = TracePolynomial::parse(ctx, load_spec(opt.function));
    TruthTable tt = truth_table(f);
    auto w = walsh_spectrum(tt);
    std::int64_t mx = 0;
    unsigned long long parseval = 0;
    for (auto v : w) {
        mx = std::max<std::int64_t>(mx, std::abs((std::int64_t)v));
        parseval += (unsigned long long)((std::int64_t)v * v);
    }
    int nl = int((std::int64_t(tt.size()) - mx) / 2);
    if (opt.format == "json") {
        ordered_json j = report_skeleton(ctx, "walsh");
        ordered_json r;
        r["function"] = f.to_string();
        r["weight"] = tt.weight();
        r["max_abs"] = mx;
        r["nl"] = nl;
        r["parseval_ok"] = (parseval == (unsigned long long)tt.size() * tt.size());
        if (ctx.degree() <= 12) r["spectrum"] = w;
        j["result"] = r;
        emit(j);
    } else if (opt.format == "csv") {
        std::cout << "u,W\n";
        for (std::size_t u = 0; u < w.size(); ++u) std::cout << u << "," << w[u] << "\n";
    } else {
        std::cout << "weight = " << tt.weight() << "\nmax |W| = " << mx << "\nnl = " << nl
                  << "\nparseval = " << (parseval == (unsigned long long)tt.size() * tt.size()
                                             ? "ok" : "VIOLATION")
                  << "\n";
        if (ctx.degree() <= 6) {
            std::cout << "spectrum =";
            for (auto v : w) std::cout << " " << v;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    int violations = 0;
    for (int n = 3; n <= opt.max_n; ++n) {
        FieldCtx ctx(n);
        for (int i = 2; i < n; ++i)
            for (int j = 1; j < i; ++j) {
                std::uint64_t d = (std::uint64_t(1) << i) + (std::uint64_t(1) << j) + 1;
                if (d > ctx.group_order()) continue;
                TracePolynomial f(ctx, {{ctx.one(), d}});
                ExponentSet delta = delta_set(f);
                VResult vres = minimize_v(delta);
                RadicalDistribution dist = radical_distribution(f, opt.threads);
                int maxdim = dist.counts.empty() ? 0 : dist.counts.rbegin()->first;
                if (maxdim > vres.v) {
                    ++violations;
                    std::cout << "VIOLATION kernel>V: n=" << n << " i=" << i << " j=" << j
                              << " max r_a=" << maxdim << " V=" << vres.v << "\n";
                }
                if (n <= 6) {
                    try {
                        compare_report(f); // throws std::logic_error on bound > nl2
                    } catch (const std::logic_error& e) {
                        ++violations;
                        std::cout << "VIOLATION bounds: n=" << n << " i=" << i << " j=" << j
                                  << " " << e.what() << "\n";
                    }
                }
            }
        std::cout << "n=" << n << " swept\n";
    }
    if (violations) {
        std::cout << violations << " violation(s)\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"root-number bounds for linearized polynomials and second-order "
                 "nonlinearity bounds for cubic Boolean functions over GF(2^n)"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_n) {
        if (needs_n)
            sub->add_option("--n", opt.n, "extension degree")->required()->check(CLI::Range(2, 32));
        sub->add_option("--modulus", opt.modulus, "modulus override, hex (e.g. 0x13)");
        sub->add_option("--format", opt.format, "table|json|csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
    };

    auto* vs = app.add_subcommand("vsearch", "minimum-V search over an exponent set");
    add_common(vs, true);
    vs->add_option("--delta", opt.delta, "comma-separated signed exponents");
    vs->add_option("--function", opt.function, "derive delta from a cubic function spec");

    auto* kd = app.add_subcommand("kernel-dim", "kernel dimension of a linearized polynomial");
    add_common(kd, true);
    kd->add_option("--poly", opt.poly, "e.g. \"a3*X^2^5 + 01*X^2^-2\"")->required();

    auto* bd = app.add_subcommand("bounds", "evaluate the lower-bound family for a cubic function");
    add_common(bd, true);
    bd->add_option("--function", opt.function, "coeffhex:exponent[,...]")->required();
    bd->add_flag_callback("--all", [&] { opt.filter = "all"; }, "all bounds (default)");
    bd->add_flag_callback("--main", [&] { opt.filter = "main"; }, "root-number bound only");
    bd->add_flag_callback("--lhg", [&] { opt.filter = "lhg"; }, "index-range bounds only");
    bd->add_flag_callback("--gode", [&] { opt.filter = "gode"; }, "monomial bounds only");

    auto* vf = app.add_subcommand("verify", "brute-force soundness sweep (exit 1 on violation)");
    vf->add_option("--max-n", opt.max_n, "sweep 3..max_n (default 10)")->check(CLI::Range(3, 16));
    vf->add_option("--threads", opt.threads, "workers for per-a sweeps")->check(CLI::Range(1, 64));

    auto* rd = app.add_subcommand("radical-dist", "histogram of derivative radical dimensions");
    add_common(rd, true);
    rd->add_option("--function", opt.function, "coeffhex:exponent[,...]")->required();
    rd->add_option("--threads", opt.threads, "workers for the a-sweep")->check(CLI::Range(1, 64));

    auto* n2 = app.add_subcommand("nl2-exact", "exact second-order nonlinearity (n <= 6)");
    add_common(n2, true);
    n2->add_option("--function", opt.function, "coeffhex:exponent[,...]")->required();

    auto* wa = app.add_subcommand("walsh", "Walsh spectrum summary");
    add_common(wa, true);
    wa->add_option("--function", opt.function, "coeffhex:exponent[,...]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (vs->parsed()) {
            if (opt.delta.empty() && opt.function.empty())
                throw std::invalid_argument("vsearch needs --delta or --function");
            return cmd_vsearch(opt);
        }
        if (kd->parsed()) return cmd_kernel_dim(opt);
        if (bd->parsed()) return cmd_bounds(opt);
        if (vf->parsed()) return cmd_verify(opt);
        if (rd->parsed()) return cmd_radical_dist(opt);
        if (n2->parsed()) return cmd_nl2(opt);
        if (wa->parsed()) return cmd_walsh(opt);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
