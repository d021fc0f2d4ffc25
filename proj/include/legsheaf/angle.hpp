#pragma once

#include "legsheaf/scalar.hpp"

#include <cmath>
#include <numbers>

namespace legsheaf {

// Angle stored as an exact rational number of turns plus a residual offset
// in radians.  The offset is zero whenever the angle is a rational multiple
// of pi (all closed-form crossing solutions with axis or diagonal Gaussian
// coefficients); otherwise it carries the transcendental part of an atan2.
struct exact_angle {
    rational turns;
    double offset_rad = 0.0;

    double radians() const { return 2.0 * std::numbers::pi * to_double(turns) + offset_rad; }

    bool is_exact() const { return offset_rad == 0.0; }

    friend bool operator==(const exact_angle& a, const exact_angle& b) {
        return a.turns == b.turns && a.offset_rad == b.offset_rad;
    }
    friend bool operator!=(const exact_angle& a, const exact_angle& b) { return !(a == b); }
};

} // namespace legsheaf
