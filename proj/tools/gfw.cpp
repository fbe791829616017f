#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "gfw/error.hpp"
#include "gfw/theorems/theorems.hpp"

using namespace gfw;

namespace {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kIndeterminate = 3, kMismatch = 4, kTooLarge = 5 };

struct RunConfig {
    int precision = kDefaultPrecision;
    std::string p0;
    int pinf = 0;  // 1-based; 0 means default
    std::string format = "table";
    std::string out;
    std::string sweep;
    std::string eps = "0.05";
    std::uint64_t seed = 1;
};

// ------------------------------------------------------------------ sweeps

struct SweepPoint {
    std::string value;
    std::string literal;
};

bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Replaces the free variable (n or a) in a divisor template.
std::string substitute(const std::string& tmpl, const std::string& value) {
    std::string out;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        char c = tmpl[i];
        bool var = (c == 'n' || c == 'a') && (i == 0 || !is_ident(tmpl[i - 1])) &&
                   (i + 1 == tmpl.size() || !is_ident(tmpl[i + 1]));
        out += var ? "(" + value + ")" : std::string(1, c);
    }
    return out;
}

std::vector<SweepPoint> expand_sweep(const std::string& spec) {
    auto comma = spec.rfind(',');
    if (comma == std::string::npos) throw ParseError("sweep: expected <template>,<range>", spec.size());
    std::string tmpl = spec.substr(0, comma), range = spec.substr(comma + 1);
    std::vector<std::string> values;
    if (auto dots = range.find(".."); dots != std::string::npos) {
        std::string hi_s = range.substr(dots + 2), step_s = "1";
        if (auto colon = hi_s.find(':'); colon != std::string::npos) {
            step_s = hi_s.substr(colon + 1);
            hi_s = hi_s.substr(0, colon);
        }
        Rational lo = parse_rational(range.substr(0, dots)), hi = parse_rational(hi_s), step = parse_rational(step_s);
        if (step <= 0) throw ParseError("sweep: step must be positive", comma + 1);
        for (Rational v = lo; v <= hi; v += step) {
            values.push_back(gfw::to_string(v));
            if (values.size() > 100000) throw TooLargeError("sweep: more than 100000 points");
        }
    } else {
        std::stringstream ss(range);
        for (std::string v; std::getline(ss, v, ';');)
            if (!v.empty()) values.push_back(v);
    }
    if (values.empty()) throw ParseError("sweep: empty range", comma + 1);
    std::vector<SweepPoint> pts;
    for (const auto& v : values) pts.push_back({v, substitute(tmpl, v)});
    return pts;
}

/// Runs f(0..n-1) on a worker pool; results keep the input order.
template <class T>
std::vector<T> run_pool(std::size_t n, const std::function<T(std::size_t)>& f) {
    std::vector<std::optional<T>> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                results[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    std::vector<T> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*results[i]));
    }
    return out;
}

// ------------------------------------------------------------------ output

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string show(const CertReal& v) {
    if (v.is_exact()) return v.midpoint().to_string(20);
    return v.midpoint().to_string(15) + " +- " + v.radius().to_string(3);
}

std::string show_degree(const DegreeValue& v, int prec) {
    if (v.is_exact())
        if (auto q = v.exact.as_rational()) return gfw::to_string(*q);
    return show(v.evaluate(prec));
}

CanonicalChoice make_choice(const GlobalField& K, const RunConfig& cfg, bool use_pinf = true) {
    CanonicalChoice c;
    if (!cfg.p0.empty()) c.p0 = BasePlace::parse(K, cfg.p0);
    if (use_pinf && cfg.pinf > 0) {
        if (!K.is_number_field() || cfg.pinf > static_cast<int>(archimedean_places(K).size()))
            throw DomainError("--pinf: no archimedean place inf" + std::to_string(cfg.pinf));
        c.pinf = cfg.pinf - 1;
    }
    return c;
}

H0Options h0_options(const RunConfig& cfg) {
    H0Options o;
    o.precision = cfg.precision;
    o.max_precision = std::max(4096, 8 * cfg.precision);
    return o;
}

void emit_reports(std::ostream& os, const std::vector<VerificationReport>& rs, const std::string& format) {
    if (format == "csv") {
        os << csv_header() << "\n";
        for (const auto& r : rs) os << to_csv_row(r) << "\n";
    } else if (format == "jsonl") {
        for (const auto& r : rs) os << to_jsonl(r) << "\n";
    } else {
        os << table_header() << "\n";
        for (const auto& r : rs) os << to_table_row(r) << "\n";
        for (const auto& r : rs)
            if (!r.note.empty()) os << "note [" << r.divisor << "]: " << r.note << "\n";
    }
}

Verdict overall(const std::vector<Verdict>& vs) {
    if (std::count(vs.begin(), vs.end(), Verdict::Fails)) return Verdict::Fails;
    if (std::count(vs.begin(), vs.end(), Verdict::Indeterminate)) return Verdict::Indeterminate;
    return Verdict::Holds;
}

int exit_for(Verdict v) {
    if (v == Verdict::Fails) return kFails;
    if (v == Verdict::Indeterminate) {
        std::cerr << "indeterminate: an enclosure straddles a bound; retry with a larger --precision\n";
        return kIndeterminate;
    }
    return kHolds;
}

std::vector<std::string> divisor_literals(const std::string& divisor, const RunConfig& cfg) {
    if (cfg.sweep.empty()) {
        if (divisor.empty()) throw ParseError("missing divisor (or --sweep)", 0);
        return {divisor};
    }
    std::vector<std::string> out;
    for (const auto& p : expand_sweep(cfg.sweep)) out.push_back(p.literal);
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_field(const std::string& lit, const RunConfig& cfg) {
    GlobalField K = GlobalField::parse(lit);
    Output out(cfg.out);
    std::ostream& os = out.os();
    CanonicalChoice choice = make_choice(K, cfg);
    os << "field: " << K.to_string() << "\n";
    os << "degree: " << K.degree() << "\n";
    if (K.is_number_field()) {
        auto [s1, s2] = s_counts(K);
        os << "S1: " << s1 << "\nS2: " << s2 << "\n";
        os << "discriminant: " << gfw::to_string(K.discriminant()) << "\n";
        os << "P0: " << (choice.p0 ? choice.p0->to_string() : "(2)") << "\n";
        os << "Pinf: inf" << (choice.pinf.value_or(0) + 1) << "\n";
    } else {
        os << "q: " << K.constant_field().characteristic() << "\n";
        os << "genus: " << K.genus() << "\n";
        os << "P0: " << (choice.p0 ? choice.p0->to_string() : "(t)") << "\n";
    }
    Divisor w = canonical_divisor(K, choice);
    os << "omega': " << w.to_string() << "\n";
    os << "deg omega': " << show_degree(degree_value(w), cfg.precision) << "\n";
    return kHolds;
}

int cmd_h0(const std::string& field, const std::string& divisor, bool list, bool oracle, const RunConfig& cfg) {
    GlobalField K = GlobalField::parse(field);
    std::vector<std::string> lits = divisor_literals(divisor, cfg);
    H0Options opt = h0_options(cfg);
    opt.want_elements = list;

    struct Row {
        Divisor d;
        MultipleSet m;
        std::optional<Integer> slow;
        bool too_large = false;
    };
    std::vector<Divisor> ds;
    for (const auto& l : lits) ds.push_back(Divisor::parse(K, l));
    std::vector<Row> rows = run_pool<Row>(ds.size(), [&](std::size_t i) {
        Row r{ds[i], compute_h0(ds[i], opt), std::nullopt, false};
        if (oracle) {
            try {
                r.slow = h0_oracle(ds[i]);
            } catch (const TooLargeError&) {
                r.too_large = true;
            }
        }
        return r;
    });

    Output out(cfg.out);
    std::ostream& os = out.os();
    int code = kHolds;
    if (cfg.format == "csv") os << "divisor,deg_mid,deg_rad,h0,h0_max,certification,oracle\n";
    for (const auto& r : rows) {
        CertReal deg = degree(r.d, cfg.precision);
        std::string cert = r.m.certification == Certification::Exact ? "exact" : "interval-boundary";
        std::string orc = !oracle ? "" : r.too_large ? "too-large" : (*r.slow == r.m.h0 ? "agree" : "MISMATCH " + gfw::to_string(*r.slow));
        if (oracle && r.too_large && code == kHolds) code = kTooLarge;
        if (oracle && !r.too_large && *r.slow != r.m.h0) code = kMismatch;
        if (cfg.format == "csv") {
            std::string lit = r.d.to_string();
            if (lit.find(',') != std::string::npos) lit = "\"" + lit + "\"";
            os << lit << "," << deg.mid_double() << "," << deg.rad_double() << "," << gfw::to_string(r.m.h0) << ","
               << gfw::to_string(r.m.h0_max) << "," << cert << "," << orc << "\n";
        } else if (cfg.format == "jsonl") {
            os << "{\"divisor\":\"" << r.d.to_string() << "\",\"h0\":" << gfw::to_string(r.m.h0)
               << ",\"h0_max\":" << gfw::to_string(r.m.h0_max) << ",\"certification\":\"" << cert << "\"";
            if (oracle) os << ",\"oracle\":\"" << orc << "\"";
            os << "}\n";
        } else {
            os << "divisor: " << r.d.to_string() << "\n";
            os << "deg: " << show(deg) << "\n";
            os << "h0: " << gfw::to_string(r.m.h0);
            if (r.m.h0_max != r.m.h0) os << " (up to " << gfw::to_string(r.m.h0_max) << ", boundary undecided)";
            os << "\n";
            if (r.m.dimension >= 0) os << "dimension: " << r.m.dimension << "\n";
            if (oracle) {
                if (r.too_large)
                    os << "oracle: instance too large for brute force\n";
                else
                    os << "oracle: " << gfw::to_string(*r.slow) << (*r.slow == r.m.h0 ? " (agree)" : " (MISMATCH)") << "\n";
            }
            if (list) {
                if (!r.m.elements)
                    os << "elements: omitted (more than " << opt.element_limit << ")\n";
                else
                    for (const auto& e : *r.m.elements) os << "  " << e.to_string() << "\n";
            }
        }
    }
    if (code == kMismatch) std::cerr << "oracle mismatch\n";
    if (code == kTooLarge) std::cerr << "oracle: instance too large for brute force\n";
    return code;
}

int cmd_verify(const std::string& stmt, const std::vector<std::string>& args, const RunConfig& cfg) {
    if (stmt == "rh") {
        if (args.size() != 2) throw ParseError("verify rh: expected <top field> <bottom field>", 0);
        Extension ext(GlobalField::parse(args[0]), GlobalField::parse(args[1]));
        VerificationReport r = verify_rh(ext, make_choice(ext.top(), cfg), make_choice(ext.bottom(), cfg, false),
                                         cfg.precision);
        Output out(cfg.out);
        emit_reports(out.os(), {r}, cfg.format);
        return exit_for(r.verdict);
    }
    if (stmt != "rr1" && stmt != "rr2") throw ParseError("verify: statement must be rr1, rr2 or rh", 0);
    if (args.empty() || args.size() > 2) throw ParseError("verify " + stmt + ": expected <field> [<divisor>]", 0);
    GlobalField K = GlobalField::parse(args[0]);
    CanonicalChoice choice = make_choice(K, cfg);
    std::vector<std::string> lits = divisor_literals(args.size() > 1 ? args[1] : "", cfg);
    std::vector<Divisor> ds;
    for (const auto& l : lits) ds.push_back(Divisor::parse(K, l));
    H0Options opt = h0_options(cfg);
    Rational eps = parse_rational(cfg.eps);

    std::vector<VerificationReport> rs = run_pool<VerificationReport>(ds.size(), [&](std::size_t i) {
        return stmt == "rr1" ? verify_rr_sandwich(ds[i], choice, cfg.precision, opt)
                             : verify_rr_point(ds[i], eps, choice, cfg.precision, opt);
    });
    Output out(cfg.out);
    std::ostream& os = out.os();
    emit_reports(os, rs, cfg.format);

    if (stmt == "rr2" && rs.size() > 1) {
        AsymptoticResult a = summarize_asymptotic(rs);
        if (cfg.format == "table") {
            if (a.threshold) os << "threshold: |i - 1| < " << cfg.eps << " from deg " << show(*a.threshold) << "\n";
            os << "verdict: " << to_string(a.verdict) << "\n";
        }
        return exit_for(a.verdict);
    }
    std::vector<Verdict> vs, vt;
    for (const auto& r : rs) {
        vs.push_back(r.verdict);
        vt.push_back(r.verdict_theorem.value_or(r.verdict));
    }
    if (stmt == "rr1" && cfg.format == "table")
        os << "verdict: " << to_string(overall(vs)) << " against C_remark, " << to_string(overall(vt))
           << " against C_theorem\n";
    return exit_for(overall(vs));
}

/// Random small divisors, fast path against the brute-force oracle.
int cmd_sample(const std::string& field, int count, const RunConfig& cfg) {
    GlobalField K = GlobalField::parse(field);
    std::mt19937_64 rng(cfg.seed);
    std::vector<Place> pool;
    if (K.is_number_field()) {
        for (long p : {2, 3, 5})
            for (const auto& P : places_above(K, Integer(p))) pool.push_back(P);
    } else {
        for (const auto& P : places_at_infinity(K)) pool.push_back(P);
        for (const auto& P : places_above(K, PolyFp::x(K.constant_field()))) pool.push_back(P);
    }
    static const char* arch[] = {"0", "1/2", "log(2)", "1", "3/2", "-1/2", "log(3)"};
    std::vector<Divisor> ds;
    for (int t = 0; t < count; ++t) {
        Divisor d(K);
        for (int j = 0; j < 2; ++j) d.add_finite(pool[rng() % pool.size()], static_cast<long>(rng() % 5) - 2);
        if (K.is_number_field())
            for (const auto& P : archimedean_places(K))
                d.add_arch(P, Divisor::parse(K, "(" + std::string(arch[rng() % 7]) + ")*" + P.label()).arch_coeff(P));
        ds.push_back(d);
    }
    H0Options opt = h0_options(cfg);
    struct Row {
        Integer fast;
        std::optional<Integer> slow;
    };
    std::vector<Row> rows = run_pool<Row>(ds.size(), [&](std::size_t i) {
        Row r{compute_h0(ds[i], opt).h0, std::nullopt};
        try {
            r.slow = h0_oracle(ds[i]);
        } catch (const TooLargeError&) {
        }
        return r;
    });
    Output out(cfg.out);
    std::ostream& os = out.os();
    int compared = 0, mismatched = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].slow) continue;
        ++compared;
        if (*rows[i].slow != rows[i].fast) {
            ++mismatched;
            os << "mismatch: " << ds[i].to_string() << " fast=" << gfw::to_string(rows[i].fast)
               << " oracle=" << gfw::to_string(*rows[i].slow) << "\n";
        }
    }
    os << "field: " << K.to_string() << "\nseed: " << cfg.seed << "\nsampled: " << count << "\ncompared: " << compared
       << "\nmismatches: " << mismatched << "\n";
    return mismatched ? kMismatch : kHolds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplicative Riemann-Roch and Riemann-Hurwitz checks on global fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision, "Working precision in bits")->check(CLI::Range(53, 1 << 20));
        sub->add_option("--p0", cfg.p0, "Base place P0, e.g. (3), (t+1), inf");
        sub->add_option("--pinf", cfg.pinf, "Archimedean place index for the a_inf term (1-based)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "csv", "jsonl"}));
        sub->add_option("--out", cfg.out, "Write output to this file");
        sub->add_option("--sweep", cfg.sweep, "Divisor sweep <template>,<lo>..<hi>[:<step>] or <template>,<v1>;<v2>");
        sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    };

    std::string field_lit;
    auto* field = app.add_subcommand("field", "Describe a global field");
    field->add_option("field", field_lit, "Field literal: nf:<poly>, ff:<p>, ff:<p>:y^2=<poly>")->required();
    common(field);

    std::string h0_field, h0_div;
    bool list = false, oracle = false;
    auto* h0 = app.add_subcommand("h0", "Count the multiples of a divisor");
    h0->add_option("field", h0_field)->required();
    h0->add_option("divisor", h0_div);
    h0->add_flag("--list", list, "Print the elements");
    h0->add_flag("--oracle", oracle, "Cross-check against brute force");
    common(h0);

    std::string stmt;
    std::vector<std::string> vargs;
    auto* verify = app.add_subcommand("verify", "Verify rr1 (sandwich), rr2 (i -> 1) or rh (Riemann-Hurwitz)");
    verify->add_option("statement", stmt)->required()->check(CLI::IsMember({"rr1", "rr2", "rh"}));
    verify->add_option("args", vargs, "rr1/rr2: <field> [<divisor>]; rh: <top> <bottom>");
    verify->add_option("--eps", cfg.eps, "Tolerance for rr2");
    common(verify);

    std::string sample_field;
    int count = 100;
    auto* sample = app.add_subcommand("sample", "Random small divisors: fast count against brute force");
    sample->add_option("field", sample_field)->required();
    sample->add_option("--count", count)->check(CLI::PositiveNumber);
    common(sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*field) return cmd_field(field_lit, cfg);
        if (*h0) return cmd_h0(h0_field, h0_div, list, oracle, cfg);
        if (*verify) return cmd_verify(stmt, vargs, cfg);
        if (*sample) return cmd_sample(sample_field, count, cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const TooLargeError& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return kTooLarge;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
