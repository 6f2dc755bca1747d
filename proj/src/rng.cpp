#include "tops/rng.hpp"

#include <cmath>

namespace tops {

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

cx Rng::cnormal(double var) {
    double sd = std::sqrt(var / 2.0);
    double re = normal();
    double im = normal();
    return {sd * re, sd * im};
}

}  // namespace tops
