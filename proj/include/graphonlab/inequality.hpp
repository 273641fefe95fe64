#ifndef GRAPHONLAB_INEQUALITY_HPP
#define GRAPHONLAB_INEQUALITY_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace graphonlab {

struct InequalityCheck {
    std::string id;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;  // rhs - lhs
    bool pass = false;
};

inline InequalityCheck check_leq(std::string id, double lhs, double rhs) {
    return {std::move(id), lhs, rhs, rhs - lhs, holds_leq(lhs, rhs)};
}

inline bool all_pass(const std::vector<InequalityCheck>& r) {
    return std::all_of(r.begin(), r.end(), [](const InequalityCheck& c) { return c.pass; });
}

} // namespace graphonlab

#endif
