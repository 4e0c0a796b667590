// Command line front end: arithmetic on series files, expansions and the
// multiplication benchmarks.
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <echelon/any_series.hpp>
#include <echelon/bench.hpp>
#include <echelon/expansions.hpp>
#include <echelon/settings.hpp>

using namespace echelon;

namespace
{

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MulFlags {
    std::string strategy;
    std::size_t block = 0;
    std::optional<double> eps;
    bool stats = false;
};

void add_mul_flags(CLI::App *cmd, MulFlags &f)
{
    cmd->add_option("--strategy", f.strategy, "Multiplication backend (overrides SERIES_STRATEGY)")
        ->check(CLI::IsMember({"auto", "perfect", "sparse", "plain"}));
    cmd->add_option("--block", f.block, "Tile edge of the blocked product loop (overrides SERIES_BLOCK)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eps", f.eps, "Ignorability threshold for floating-point coefficients (overrides SERIES_EPS)")
        ->check(CLI::NonNegativeNumber);
}

MultiplyOptions options_from(const MulFlags &f)
{
    if (f.eps) {
        set_eps(*f.eps);
    }
    MultiplyOptions o;
    if (!f.strategy.empty()) {
        o.strategy = parse_strategy(f.strategy);
    }
    if (f.block != 0) {
        o.block = f.block;
    }
    return o;
}

void print_stats(std::size_t n1, std::size_t n2, std::size_t out, double seconds, const MultiplyStats &s)
{
    std::printf("input terms: %zu %zu\n", n1, n2);
    std::printf("output terms: %zu\n", out);
    std::printf("strategy: %s\n", to_string(s.used));
    std::printf("multiply seconds: %.6f\n", s.multiply_seconds);
    std::printf("decode seconds: %.6f\n", s.decode_seconds);
    std::printf("total seconds: %.6f\n", seconds);
    const double t = s.multiply_seconds + s.decode_seconds;
    std::printf("term products: %llu\n", static_cast<unsigned long long>(s.term_products));
    std::printf("term products per second: %.4g\n", t > 0 ? static_cast<double>(s.term_products) / t : 0.0);
}

std::map<std::string, double> parse_assignments(const std::string &spec)
{
    std::map<std::string, double> out;
    for (const auto part : io_detail::split(spec, ',')) {
        if (part.empty()) {
            continue;
        }
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("expected name=value in --at, got '" + std::string(part) + "'");
        }
        const auto name = std::string(io_detail::trim(part.substr(0, eq)));
        const auto value = io_detail::trim(part.substr(eq + 1));
        try {
            out[name] = cf_traits<double>::parse(value);
        } catch (const std::exception &) {
            throw UsageError("malformed value for '" + name + "' in --at");
        }
    }
    return out;
}

TermPredicate parse_predicate(const std::string &spec)
{
    const auto colon = spec.find(':');
    const auto name = spec.substr(0, colon);
    const auto arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
    auto number = [&]() {
        try {
            return cf_traits<double>::parse(arg);
        } catch (const std::exception &) {
            throw UsageError("predicate '" + spec + "' needs a numeric argument");
        }
    };
    if (name == "norm-gt") {
        const double t = number();
        return [t](const TermView &v) { return v.cf_norm > t; };
    }
    if (name == "freq-pos" && colon == std::string::npos) {
        return [](const TermView &v) { return v.freq() > 0; };
    }
    if (name == "degree-le") {
        const double d = number();
        return [d](const TermView &v) { return static_cast<double>(v.degree) <= d; };
    }
    throw UsageError("unknown predicate '" + spec + "'");
}

void print_value(std::complex<double> v, bool complex)
{
    if (complex) {
        std::printf("(%s,%s)\n", cf_traits<double>::to_string(v.real()).c_str(),
                    cf_traits<double>::to_string(v.imag()).c_str());
    } else {
        std::printf("%s\n", cf_traits<double>::to_string(v.real()).c_str());
    }
}

void report_bench(const char *name, const std::string &detail, const BenchResult &r)
{
    std::printf("benchmark: %s\n", name);
    std::printf("%s", detail.c_str());
    print_stats(r.n1, r.n2, r.out_terms, r.seconds, r.stats);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Sparse polynomial, Fourier and Poisson series tool"};
    app.require_subcommand(1);

    std::string a_path;
    std::string b_path;
    std::string out_path;
    MulFlags mul_flags;

    auto *mul = app.add_subcommand("mul", "Multiply two series");
    mul->add_option("A", a_path)->required();
    mul->add_option("B", b_path)->required();
    mul->add_option("-o", out_path, "Output file")->required();
    add_mul_flags(mul, mul_flags);
    mul->add_flag("--stats", mul_flags.stats, "Print term counts and timings");

    auto *add = app.add_subcommand("add", "Add two series");
    add->add_option("A", a_path)->required();
    add->add_option("B", b_path)->required();
    add->add_option("-o", out_path, "Output file")->required();

    auto *sub = app.add_subcommand("sub", "Subtract two series");
    sub->add_option("A", a_path)->required();
    sub->add_option("B", b_path)->required();
    sub->add_option("-o", out_path, "Output file")->required();

    std::string exponent;
    std::optional<unsigned> order;
    auto *pow = app.add_subcommand(
        "pow", "Raise a series to a rational power. The binomial expansion keeps the summands k = 0..order; "
               "--order may be omitted for natural exponents, giving the exact power.");
    pow->add_option("A", a_path)->required();
    pow->add_option("-r", exponent, "Exponent, e.g. 3, -1, 1/2 or 0.5")->required();
    pow->add_option("--order", order, "Number of binomial summands minus one");
    pow->add_option("-o", out_path, "Output file")->required();

    std::string at;
    auto *eval = app.add_subcommand("eval", "Evaluate a series");
    eval->add_option("A", a_path)->required();
    eval->add_option("--at", at, "Argument values, name=value,...")->required();

    std::vector<std::string> preds;
    auto *filter = app.add_subcommand(
        "filter", "Keep terms satisfying a predicate: norm-gt:T, freq-pos or degree-le:D. A second --pred "
                  "filters the coefficient terms of Poisson series.");
    filter->add_option("A", a_path)->required();
    filter->add_option("--pred", preds, "Predicate")->required();
    filter->add_option("-o", out_path, "Output file")->required();

    std::string which;
    unsigned expand_order = 0;
    auto *expand = app.add_subcommand(
        "expand", "Classical expansions in e and M with rational coefficients: cosf and r-over-a truncated at "
                  "e^order, sqrt-one-minus-e2 with order + 1 binomial summands");
    expand->add_option("which", which)->required()->check(CLI::IsMember({"cosf", "r-over-a", "sqrt-one-minus-e2"}));
    expand->add_option("--order", expand_order)->required();
    expand->add_option("-o", out_path, "Output file")->required();

    auto *bench = app.add_subcommand("bench", "Multiplication benchmarks");
    bench->require_subcommand(1);
    unsigned power = 0;
    std::string coeff = "double";
    MulFlags bench_flags;
    auto *fateman = bench->add_subcommand("fateman", "s*(s+1) with s = (1+x+y+z+t)^N");
    fateman->add_option("--power", power)->required();
    fateman->add_option("--coeff", coeff)->check(CLI::IsMember({"double", "integer", "rational"}));
    add_mul_flags(fateman, bench_flags);
    auto *sparse = bench->add_subcommand(
        "sparse", "(1+x+y+2z^2+3t^3+5u^5)^N * (1+u+t+2z^2+3y^3+5x^5)^N");
    sparse->add_option("--power", power)->required();
    sparse->add_option("--coeff", coeff)->check(CLI::IsMember({"double", "integer"}));
    add_mul_flags(sparse, bench_flags);
    std::size_t terms = 0;
    std::uint64_t seed = 1;
    unsigned repeat = 1;
    auto *fourier = bench->add_subcommand("fourier", "Repeated squaring of a seeded synthetic Fourier series");
    fourier->add_option("--terms", terms)->required();
    fourier->add_option("--seed", seed);
    fourier->add_option("--repeat", repeat);
    add_mul_flags(fourier, bench_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        apply_environment();
    } catch (const std::exception &e) {
        std::cerr << "error: bad environment setting: " << e.what() << "\n";
        return 1;
    }

    try {
        if (mul->parsed()) {
            auto opts = options_from(mul_flags);
            MultiplyStats stats;
            opts.stats = &stats;
            const auto a = AnySeries::load(a_path);
            const auto b = AnySeries::load(b_path);
            const auto t0 = detail::clock::now();
            const auto c = multiply(a, b, opts);
            const double secs = detail::seconds_since(t0);
            c.save(out_path);
            if (mul_flags.stats) {
                print_stats(a.size(), b.size(), c.size(), secs, stats);
            }
        } else if (add->parsed() || sub->parsed()) {
            const auto a = AnySeries::load(a_path);
            const auto b = AnySeries::load(b_path);
            (add->parsed() ? a + b : a - b).save(out_path);
        } else if (pow->parsed()) {
            Rational r;
            try {
                r = cf_traits<Rational>::parse(exponent);
            } catch (const std::exception &) {
                throw UsageError("malformed exponent '" + exponent + "'");
            }
            const auto a = AnySeries::load(a_path);
            if (order) {
                a.pow_real(r, *order).save(out_path);
            } else if (r.get_den() == 1 && sgn(r) >= 0 && r.get_num().fits_ulong_p()) {
                a.pow_natural(r.get_num().get_ui()).save(out_path);
            } else {
                throw UsageError("--order is required for exponents that are not natural numbers");
            }
        } else if (eval->parsed()) {
            const auto vals = parse_assignments(at);
            const auto a = AnySeries::load(a_path);
            print_value(a.evaluate(vals), a.cf_name().starts_with("complex"));
        } else if (filter->parsed()) {
            std::vector<TermPredicate> ps;
            for (const auto &p : preds) {
                ps.push_back(parse_predicate(p));
            }
            const auto a = AnySeries::load(a_path);
            a.filter(ps).save(out_path);
        } else if (expand->parsed()) {
            if (which == "cosf") {
                write_file(out_path, print_series(elliptic_cos_f<Rational>(expand_order)));
            } else if (which == "r-over-a") {
                write_file(out_path, print_series(elliptic_r_over_a<Rational>(expand_order)));
            } else {
                Polynomial<Rational> p(Polynomial<Rational>::args_type{SymbolSet{{"e", std::nullopt}}});
                p.insert(Monomial<16>{0}, Rational(1));
                p.insert(Monomial<16>{2}, Rational(-1));
                write_file(out_path, print_series(pow_real(p, Rational(1, 2), TruncationPolicy{expand_order})));
            }
        } else if (fateman->parsed()) {
            const auto opts = options_from(bench_flags);
            const std::string d = "power: " + std::to_string(power) + "\ncoefficients: " + coeff + "\n";
            if (coeff == "double") {
                report_bench("fateman", d, bench::fateman<double>(power, opts));
            } else if (coeff == "integer") {
                report_bench("fateman", d, bench::fateman<Integer>(power, opts));
            } else {
                report_bench("fateman", d, bench::fateman<Rational>(power, opts));
            }
        } else if (sparse->parsed()) {
            const auto opts = options_from(bench_flags);
            const std::string d = "power: " + std::to_string(power) + "\ncoefficients: " + coeff + "\n";
            if (coeff == "double") {
                report_bench("sparse", d, bench::sparse<double>(power, opts));
            } else {
                report_bench("sparse", d, bench::sparse<Integer>(power, opts));
            }
        } else if (fourier->parsed()) {
            const auto opts = options_from(bench_flags);
            const auto r = bench::fourier(terms, seed, repeat, opts);
            std::printf("benchmark: fourier\n");
            std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
            std::printf("repeat: %u\n", r.repeat);
            std::printf("input terms: %zu\n", r.input_terms);
            std::printf("output terms: %zu\n", r.out_terms);
            std::printf("strategy: %s\n", to_string(r.last.used));
            std::printf("total seconds: %.6f\n", r.seconds);
            std::printf("seconds per squaring: %.6f\n", r.repeat ? r.seconds / r.repeat : 0.0);
            std::printf("last multiply seconds: %.6f\n", r.last.multiply_seconds);
            std::printf("last decode seconds: %.6f\n", r.last.decode_seconds);
            std::printf("check points: %zu\n", r.check_points);
            std::printf("max relative error: %.3e\n", r.max_error);
            if (r.check_points > 0 && !(r.max_error <= 1e-9)) {
                std::cerr << "error: evaluation check failed\n";
                return 2;
            }
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
