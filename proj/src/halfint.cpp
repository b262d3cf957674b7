#include "aklt/halfint.hpp"

#include <cmath>
#include <cstdlib>

namespace aklt {

Spin parse_spin(const std::string& text) {
    if (text.empty()) throw validation_error("empty spin value");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            int num = std::stoi(text.substr(0, slash));
            int den = std::stoi(text.substr(slash + 1));
            if (den == 2 && num >= 0) return Spin(num);
            if (den == 1 && num >= 0) return Spin(2 * num);
            throw validation_error("spin must be a nonnegative half-integer: " + text);
        }
        double v = std::stod(text);
        double tw = 2.0 * v;
        if (v < 0 || std::abs(tw - std::round(tw)) > 1e-9)
            throw validation_error("spin must be a nonnegative half-integer: " + text);
        return Spin(static_cast<int>(std::lround(tw)));
    } catch (const std::invalid_argument&) {
        throw validation_error("cannot parse spin value: " + text);
    } catch (const std::out_of_range&) {
        throw validation_error("spin value out of range: " + text);
    }
}

std::string spin_to_string(Spin s) {
    if (s.twice % 2 == 0) return std::to_string(s.twice / 2);
    return std::to_string(s.twice) + "/2";
}

}  // namespace aklt
