#pragma once

#include <string>
#include <vector>

namespace legsheaf {

// Outcome of a validator.  Failing checks are data-level outcomes, not
// errors; malformed input throws calc_error instead.
struct validation_report {
    struct failure {
        std::string where;
        std::string what;
    };

    bool pass = true;
    std::vector<failure> failures;

    void add(std::string where, std::string what) {
        pass = false;
        failures.push_back({std::move(where), std::move(what)});
    }
};

} // namespace legsheaf
