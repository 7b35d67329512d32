#pragma once

#include <string>
#include <utility>
#include <vector>

namespace clab {

enum class Verdict { holds, violated, inconclusive };

const char* to_string(Verdict v);

/**
 * Outcome of one inequality or identity check.
 *
 * Inequalities carry a signed margin (rhs - lhs, or whatever the check
 * defines); the verdict is "holds" iff margin >= -tolerance * relative_scale.
 * Identities carry a residual and hold iff residual <= tolerance * relative_scale.
 * Margins and residuals are reported raw; the tolerance is applied only for
 * the verdict.
 */
struct CheckReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double residual = 0.0;
    double relative_scale = 1.0;
    double tolerance = 1e-7;
    bool identity = false;
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::string> flags;
    std::vector<std::pair<std::string, double>> aux;
    int N = 0;
    int M = 0;
    int S = 0;

    static CheckReport inequality(std::string name, double lhs, double rhs,
                                  double tolerance, double scale_floor = 1.0);
    static CheckReport identity_check(std::string name, double lhs, double rhs,
                                      double tolerance, double scale_floor = 1.0);
};

} // namespace clab
