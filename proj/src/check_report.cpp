#include "clab/check_report.hpp"

#include <algorithm>
#include <cmath>

namespace clab {

const char* to_string(Verdict v)
{
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        default: return "inconclusive";
    }
}

CheckReport CheckReport::inequality(std::string name, double lhs, double rhs,
                                    double tolerance, double scale_floor)
{
    CheckReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.residual = 0.0;
    r.relative_scale = std::max({std::abs(lhs), std::abs(rhs), scale_floor});
    r.tolerance = tolerance;
    r.identity = false;
    r.verdict = r.margin >= -tolerance * r.relative_scale ? Verdict::holds : Verdict::violated;
    return r;
}

CheckReport CheckReport::identity_check(std::string name, double lhs, double rhs,
                                        double tolerance, double scale_floor)
{
    CheckReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.residual = std::abs(lhs - rhs);
    r.relative_scale = std::max({std::abs(lhs), std::abs(rhs), scale_floor});
    r.tolerance = tolerance;
    r.identity = true;
    r.verdict = r.residual <= tolerance * r.relative_scale ? Verdict::holds : Verdict::violated;
    return r;
}

} // namespace clab
