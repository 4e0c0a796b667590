#ifndef ECHELON_SETTINGS_HPP
#define ECHELON_SETTINGS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace echelon
{

enum class Strategy { automatic, perfect, sparse, plain };

// Throws std::invalid_argument on unknown names.
Strategy parse_strategy(std::string_view name);
const char *to_string(Strategy s);

// Process-wide multiplication defaults. Single-threaded use only.
struct MultiplySettings {
    Strategy strategy = Strategy::automatic;
    // Tile edge, in coded terms, of the blocked product loop.
    std::size_t block = 256;
    // Automatic selection uses perfect hashing when the code range has at
    // most this many slots and the expected density n1*n2/range reaches
    // perfect_min_density; otherwise sparse hashing.
    std::uint64_t perfect_max_slots = std::uint64_t(1) << 26;
    double perfect_min_density = 1.0 / 256.0;
};

MultiplySettings &multiply_settings();

// Reads SERIES_EPS, SERIES_STRATEGY and SERIES_BLOCK when set.
void apply_environment();

} // namespace echelon

#endif
