#ifndef SCMN_POTENTIAL_HPP
#define SCMN_POTENTIAL_HPP

#include <optional>
#include <vector>

#include "scmn/de.hpp"

namespace scmn {

// Raised when an operation needs a fixed-point parameterization value
// (x2[x1] or derived quantities) at an x1 whose x2[x1] leaves [0,1].
class excluded_point_error : public std::domain_error {
  public:
    explicit excluded_point_error(const std::string& what) : std::domain_error(what) {}
};

// One record of the non-trivial fixed-point curve at a given x1.
// x2 may fall outside [0,1]; eps and U are absent when the point is not a
// fixed point for any channel parameter in [0,1]. valid marks membership in
// the non-trivial fixed-point set.
struct PotentialSample {
    double x1 = 0.0;
    double x2 = 0.0;
    double psi = 0.0;
    double phi_bracket = 0.0;
    std::optional<double> eps;
    std::optional<double> U;
    bool valid = false;
};

struct ThresholdReport {
    double eps_star = 0.0;
    double eps_sir = 0.0;
    double min_nontrivial_U = 0.0;
    int grid_size = 0;
    int valid_samples = 0;
};

// Potential of the two-map system at (x1, x2) under channel parameter eps.
// The x/(1-x) factors are evaluated in expanded form, finite at x = 1.
double potential_U(const DegreeProfile& d, const ChannelModel& model, double x1,
                   double x2, double eps);

// Same quantity assembled from the admissible-system ingredients
// g(x) D x^T - G(x) - F(g(x); eps); kept as an independent route for
// cross-checking the explicit formula.
double potential_U_from_maps(const DegreeProfile& d, const ChannelModel& model,
                             double x1, double x2, double eps);

// Potential at the trivial fixed point (1, phi(1;eps)):
// 1 - d_r/d_l - Phi(1;eps). Positive below the SIR limit at the design
// rate, zero at it, negative above.
double trivial_U(const DegreeProfile& d, const ChannelModel& model, double eps);

// Solves the type-1 fixed-point equation for x2 at a given x1 in (0,1).
// The result can leave [0,1]; callers filter.
double x2_of_x1(const DegreeProfile& d, double x1);

// psi[x1]: the detector-side argument at the fixed point; channel-free.
double psi_of_x1(const DegreeProfile& d, double x1);

// phi[x1] = x2[x1] / psi[x1]^{(d_g-1)/d_g}: the transfer-function value any
// channel must attain at psi[x1] for (x1, x2[x1]) to be a fixed point.
double phi_bracket_of_x1(const DegreeProfile& d, double x1);

// Channel parameter at which (x1, x2[x1]) is a fixed point: the unique
// root of phi(psi[x1]; eps) = phi[x1], by bisection. Absent when phi[x1]
// is outside the channel's reachable range (excluded point).
std::optional<double> eps_of_x1(const DegreeProfile& d, const ChannelModel& model,
                                double x1);

// Full sample at one x1 (never throws for x1 in (0,1); invalid points are
// flagged, not errors).
PotentialSample curve_sample(const DegreeProfile& d, const ChannelModel& model,
                             double x1);

// Sweeps x1 over the half-step open grid x1 = (k+1/2)/grid_size.
std::vector<PotentialSample> potential_curve(const DegreeProfile& d,
                                             const ChannelModel& model, int grid_size);

// Largest eps below which every fixed point has positive potential:
// min of the trivial-potential root and the smallest eps[x1] whose curve
// potential is non-positive.
ThresholdReport potential_threshold(const DegreeProfile& d, const ChannelModel& model,
                                    int grid_size = 4096);

// max over eps' in [eps,1] (on a grid) of the infimum of U over the fixed
// points at eps'. Requires eps below the potential threshold.
double energy_gap(const DegreeProfile& d, const ChannelModel& model, double eps,
                  int grid_size = 4096);

}  // namespace scmn

#endif
