#ifndef SCMN_COUPLED_HPP
#define SCMN_COUPLED_HPP

#include <functional>
#include <vector>

#include "scmn/de.hpp"

namespace scmn {

// Chain parameters: sections 0..L-1 see the channel at eps, everything
// outside is shortened (eps_i = 0, known bits).
struct CouplingConfig {
    int L = 1;
    int w = 1;
    double eps = 0.0;

    void validate() const {
        if (L < 1) throw validation_error("coupling: L must be >= 1");
        if (w < 1) throw validation_error("coupling: w must be >= 1");
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw std::domain_error("coupling: eps outside [0,1]");
        }
    }
};

// Per-section DE states over sections -(w-1) .. L-1+(w-1): the L interior
// sections plus a halo of w-1 evolving shortened sections on each side.
// Reads beyond the stored range are all-zero.
struct DeProfile {
    int L = 0;
    int w = 1;
    std::vector<DeState> states;

    // Every stored section (interior and halo) saturated; the shortened
    // boundary enters through the zero reads beyond the stored range.
    // Starting the evolving halo at ones keeps the iterate sequence
    // componentwise non-increasing, the standard monotone argument.
    static DeProfile all_ones(const CouplingConfig& cfg);

    int lo_section() const { return -(w - 1); }
    int hi_section() const { return L - 1 + (w - 1); }

    DeState& at(int section) { return states[static_cast<std::size_t>(section + w - 1)]; }
    const DeState& at(int section) const {
        return states[static_cast<std::size_t>(section + w - 1)];
    }

    // Max over interior sections 0..L-1 of max(x1, x2).
    double interior_max() const;
};

struct ScRunResult {
    DeProfile profile;
    int iterations = 0;
    bool decoded = false;
};

// One synchronous coupled round. Each section's bits spread their edges
// over the w check sections above it, so the update for section i is
//   x_i <- f( (1/w) sum_k g( (1/w) sum_j x_{i+k-j} ); eps_i )
// with k, j over 0..w-1 and eps_i = cfg.eps on 0..L-1, 0 elsewhere.
DeProfile sc_de_step(const DegreeProfile& d, const ChannelModel& model,
                     const CouplingConfig& cfg, const DeProfile& p);

// Iterates sc_de_step from the all-ones profile. Decoded means the interior
// dropped below tol in sup norm. Stalls (step below tol while some interior
// section still exceeds 1e-3) exit early as not decoded.
ScRunResult sc_de_run(const DegreeProfile& d, const ChannelModel& model,
                      const CouplingConfig& cfg, int max_iter = 50000,
                      double tol = 1e-10,
                      const std::function<void(int, const DeProfile&)>& on_iter = {});

// Supremum eps for which the coupled chain decodes, by bisection to tol_eps.
double bp_threshold(const DegreeProfile& d, const ChannelModel& model, int L, int w,
                    double tol_eps = 1e-6, int max_iter = 50000, double tol = 1e-10);

// Design rate of the coupled ensemble (boundary rate loss included).
double rate(const DegreeProfile& d, int L, int w);

}  // namespace scmn

#endif
