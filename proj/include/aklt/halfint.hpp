#pragma once

#include <string>

#include "aklt/errors.hpp"

namespace aklt {

// A nonnegative half-integer spin quantum number, stored exactly as 2S.
// All spin bookkeeping stays in this doubled-integer encoding; the float
// value only appears where a matrix element actually needs it.
struct Spin {
    int twice = 0;

    Spin() = default;
    explicit Spin(int twice_s) : twice(twice_s) {
        if (twice_s < 0) throw validation_error("spin must be nonnegative");
    }

    static Spin half() { return Spin(1); }
    static Spin one() { return Spin(2); }

    double value() const { return twice / 2.0; }
    int dim() const { return twice + 1; }  // 2S + 1

    bool operator==(const Spin&) const = default;
    auto operator<=>(const Spin&) const = default;
};

// Parses "2", "3/2", "0.5" into a Spin; rejects anything that is not a
// nonnegative half-integer.
Spin parse_spin(const std::string& text);

// "3/2" for odd twice, "2" for even.
std::string spin_to_string(Spin s);

// m runs over {S, S-1, ..., -S}; twice_m indexes it exactly.
inline bool valid_projection(Spin s, int twice_m) {
    return twice_m >= -s.twice && twice_m <= s.twice && (twice_m - s.twice) % 2 == 0;
}

// Basis slot of |S, m> with the m = S, S-1, ..., -S ordering.
inline int projection_index(Spin s, int twice_m) {
    return (s.twice - twice_m) / 2;
}

}  // namespace aklt
