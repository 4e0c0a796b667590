#include <echelon/settings.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include <echelon/coefficient.hpp>

namespace echelon
{

Strategy parse_strategy(std::string_view name)
{
    if (name == "auto" || name == "automatic") {
        return Strategy::automatic;
    }
    if (name == "perfect") {
        return Strategy::perfect;
    }
    if (name == "sparse") {
        return Strategy::sparse;
    }
    if (name == "plain") {
        return Strategy::plain;
    }
    throw std::invalid_argument("unknown multiplication strategy '" + std::string(name) + "'");
}

const char *to_string(Strategy s)
{
    switch (s) {
        case Strategy::automatic:
            return "auto";
        case Strategy::perfect:
            return "perfect";
        case Strategy::sparse:
            return "sparse";
        case Strategy::plain:
            return "plain";
    }
    return "?";
}

MultiplySettings &multiply_settings()
{
    static MultiplySettings s;
    return s;
}

void apply_environment()
{
    if (const char *v = std::getenv("SERIES_EPS")) {
        set_eps(std::stod(v));
    }
    if (const char *v = std::getenv("SERIES_STRATEGY")) {
        multiply_settings().strategy = parse_strategy(v);
    }
    if (const char *v = std::getenv("SERIES_BLOCK")) {
        const auto b = std::stoull(v);
        if (b == 0) {
            throw std::invalid_argument("SERIES_BLOCK must be positive");
        }
        multiply_settings().block = static_cast<std::size_t>(b);
    }
}

} // namespace echelon
