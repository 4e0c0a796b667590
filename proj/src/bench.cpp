#include <echelon/bench.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace echelon::bench
{

FourierSeries<double> synthetic_fourier(std::size_t terms, std::uint64_t seed)
{
    const SymbolSet args = symbols({"t0", "t1", "t2", "t3"});
    FourierSeries<double> s(FourierSeries<double>::args_type{args});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> mult(-15, 15);
    std::uniform_int_distribution<int> flavour(0, 1);
    std::uniform_real_distribution<double> logc(std::log(1e-6), 0.0);
    // Colliding or vanishing keys merge on insert, so keep drawing.
    std::size_t attempts = 0;
    while (s.size() < terms) {
        if (++attempts > 100 * terms + 1000) {
            throw std::invalid_argument("cannot draw " + std::to_string(terms) + " distinct synthetic terms");
        }
        TrigKey<16> k({mult(rng), mult(rng), mult(rng), mult(rng)}, flavour(rng) == 0);
        const double c = std::exp(logc(rng));
        if (s.terms().find(trig_canonicalize(k).first) != s.terms().end()) {
            continue;
        }
        s.insert(k, c);
    }
    return s;
}

FourierBenchResult fourier(std::size_t terms, std::uint64_t seed, unsigned repeat, const MultiplyOptions &opts,
                           std::size_t check_points)
{
    FourierBenchResult r;
    const auto s = synthetic_fourier(terms, seed);
    r.input_terms = s.size();
    r.repeat = repeat;
    MultiplyOptions o = opts;
    o.stats = &r.last;
    FourierSeries<double> sq;
    const auto t0 = detail::clock::now();
    for (unsigned i = 0; i < repeat; ++i) {
        sq = multiply(s, s, o);
    }
    r.seconds = detail::seconds_since(t0);
    r.out_terms = sq.size();

    std::mt19937_64 rng(seed ^ 0x5eedu);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    r.check_points = repeat > 0 ? check_points : 0;
    for (std::size_t p = 0; p < r.check_points; ++p) {
        std::map<std::string, double> at;
        for (const auto &a : s.args()[0]) {
            at[a.name] = angle(rng);
        }
        const double v = s.evaluate(at);
        const double err = std::abs(sq.evaluate(at) - v * v) / (1 + v * v);
        r.max_error = std::max(r.max_error, err);
    }
    return r;
}

} // namespace echelon::bench
