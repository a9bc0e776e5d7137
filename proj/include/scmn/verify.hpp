#ifndef SCMN_VERIFY_HPP
#define SCMN_VERIFY_HPP

#include <string>
#include <vector>

#include "scmn/de.hpp"

namespace scmn {

// One row of the self-check report. observed is the worst value seen,
// limit the bound it was held to (direction given by cmp: "<=" or ">").
struct VerifyCheck {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double limit = 0.0;
    std::string cmp = "<=";
    std::string detail;
};

struct VerifyOptions {
    DegreeProfile degrees{4, 2, 2};
    std::vector<ChannelModel> models;  // defaults to bec/dec/pr2 when empty
    int curve_grid = 10000;
    int random_points = 10000;
};

// Runs the numerical property suite: quadrature vs closed forms, the two
// potential-function routes, trivial-potential sign structure, curve
// positivity and channel domination, fixed-point residuals, coupled-profile
// symmetry, and the threshold equality.
std::vector<VerifyCheck> run_verify(const VerifyOptions& opt);

}  // namespace scmn

#endif
