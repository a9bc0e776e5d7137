#include "scmn/de.hpp"

#include <algorithm>
#include <cmath>

#include "scmn/numeric.hpp"

namespace scmn {

namespace {

void check_state(const DeState& s) {
    if (!(s.x1 >= 0.0 && s.x1 <= 1.0 && s.x2 >= 0.0 && s.x2 <= 1.0)) {
        throw std::domain_error("DE state outside [0,1]^2");
    }
}

}  // namespace

DeState g_map(const DegreeProfile& d, const DeState& s) {
    check_state(s);
    const double a = 1.0 - s.x1;
    const double b = 1.0 - s.x2;
    return {1.0 - powi(a, d.d_r - 1) * powi(b, d.d_g),
            1.0 - powi(a, d.d_r) * powi(b, d.d_g - 1)};
}

DeState f_map(const DegreeProfile& d, const ChannelModel& model, const DeState& s,
              double eps) {
    check_state(s);
    return {powi(s.x1, d.d_l - 1),
            model.phi(powi(s.x2, d.d_g), eps) * powi(s.x2, d.d_g - 1)};
}

DeState de_step(const DegreeProfile& d, const ChannelModel& model, const DeState& s,
                double eps) {
    return f_map(d, model, g_map(d, s), eps);
}

DeRunResult de_run(const DegreeProfile& d, const ChannelModel& model, double eps,
                   int max_iter, double tol,
                   const std::function<void(int, const DeState&)>& on_iter) {
    if (max_iter < 1) throw std::domain_error("de_run: max_iter must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("de_run: tol must be positive");
    DeState x{1.0, 1.0};
    int t = 0;
    for (; t < max_iter; ++t) {
        const DeState next = de_step(d, model, x, eps);
        const double delta =
            std::max(std::abs(next.x1 - x.x1), std::abs(next.x2 - x.x2));
        x = next;
        if (on_iter) on_iter(t + 1, x);
        if (delta < tol) {
            ++t;
            break;
        }
    }
    const bool zero = std::max(x.x1, x.x2) < tol;
    return {x, t, zero};
}

double regular_ldpc_de_step(int d_l, int d_r, const ChannelModel& model, double x,
                            double eps) {
    if (d_l < 2 || d_r < 2) throw std::domain_error("regular LDPC degrees must be >= 2");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("x outside [0,1]");
    const double bracket = 1.0 - powi(1.0 - x, d_r - 1);
    return model.phi(powi(bracket, d_l), eps) * powi(bracket, d_l - 1);
}

double admissible_F(const DegreeProfile& d, const ChannelModel& model, const DeState& s,
                    double eps) {
    return d.design_rate() * powi(s.x1, d.d_l) +
           model.phi_integral(powi(s.x2, d.d_g), eps);
}

double admissible_G(const DegreeProfile& d, const DeState& s) {
    return d.d_r * s.x1 + d.d_g * s.x2 +
           powi(1.0 - s.x1, d.d_r) * powi(1.0 - s.x2, d.d_g) - 1.0;
}

}  // namespace scmn
