#ifndef SCMN_DE_HPP
#define SCMN_DE_HPP

#include <functional>

#include "scmn/channel.hpp"

namespace scmn {

// Node degrees of the MacKay-Neal ensemble: punctured bits of degree d_l
// (type 1), transmitted bits of degree d_g (type 2), checks with d_r type-1
// and d_g type-2 sockets.
struct DegreeProfile {
    int d_l;
    int d_r;
    int d_g;

    DegreeProfile(int dl, int dr, int dg) : d_l(dl), d_r(dr), d_g(dg) {
        if (d_l < 2 || d_r < 2 || d_g < 2) {
            throw validation_error("degrees must all be >= 2");
        }
        if (!(d_l > d_r)) {
            throw validation_error(
                "d_l must exceed d_r (threshold analysis precondition)");
        }
    }

    double design_rate() const {
        return static_cast<double>(d_r) / static_cast<double>(d_l);
    }
};

// Per-edge-type erasure probabilities (type-1, type-2).
struct DeState {
    double x1 = 0.0;
    double x2 = 0.0;
};

struct DeRunResult {
    DeState state;
    int iterations = 0;
    bool converged_to_zero = false;
};

// Check-to-bit update: component j is the erasure probability of a
// check-to-bit message on a type-j edge.
DeState g_map(const DegreeProfile& d, const DeState& s);

// Bit-to-check update. Type-1 bits are punctured (channel message always
// erased); type-2 bits see the detector output phi(x2^dg; eps) and their
// remaining dg-1 check messages.
DeState f_map(const DegreeProfile& d, const ChannelModel& model, const DeState& s,
              double eps);

// One full round: f(g(s); eps).
DeState de_step(const DegreeProfile& d, const ChannelModel& model, const DeState& s,
                double eps);

// Iterates de_step from (1,1) until the sup-norm step falls below tol or
// max_iter is reached. converged_to_zero reports whether the final state is
// itself below tol. Optional on_iter observes every state after its update.
DeRunResult de_run(const DegreeProfile& d, const ChannelModel& model, double eps,
                   int max_iter = 100000, double tol = 1e-12,
                   const std::function<void(int, const DeState&)>& on_iter = {});

// Baseline recursion for (d_l, d_r) regular LDPC codes over the channel.
double regular_ldpc_de_step(int d_l, int d_r, const ChannelModel& model, double x,
                            double eps);

// Scalar potentials of the two-map system; D = diag(d_r, d_g).
// F generates f through F'(x;eps) = f(x;eps) D and G generates g likewise.
double admissible_F(const DegreeProfile& d, const ChannelModel& model, const DeState& s,
                    double eps);
double admissible_G(const DegreeProfile& d, const DeState& s);

}  // namespace scmn

#endif
