#include "scmn/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scmn/numeric.hpp"

namespace scmn {

namespace {

void check_open_unit(double x1) {
    if (!(x1 > 0.0 && x1 < 1.0)) {
        throw std::domain_error("x1 must lie in the open interval (0,1)");
    }
}

// 1 - (1-x1)^{d_r} (1-x2)^{d_g-1}; the base whose d_g-th power is psi.
double fp_base(const DegreeProfile& d, double x1, double x2) {
    return 1.0 - powi(1.0 - x1, d.d_r) * powi(1.0 - x2, d.d_g - 1);
}

// Solve phi(psi; eps) = target for eps on [0,1]; nullopt when target is
// not reachable. phi is strictly increasing in eps, so plain bisection
// applies; run it to double resolution (the curve comparisons downstream
// need much better than the documented 1e-10).
std::optional<double> solve_eps(const ChannelModel& model, double psi, double target) {
    const double at0 = model.phi(psi, 0.0);
    const double at1 = model.phi(psi, 1.0);
    if (target < at0 || target > at1) return std::nullopt;
    if (target == at0) return 0.0;
    if (target == at1) return 1.0;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (model.phi(psi, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct CurveInternals {
    double x2 = 0.0;
    double base = 0.0;
    double psi = 0.0;
    double phi_br = 0.0;
};

CurveInternals curve_internals(const DegreeProfile& d, double x1) {
    CurveInternals c;
    c.x2 = x2_of_x1(d, x1);
    c.base = fp_base(d, x1, c.x2);
    c.psi = powi(c.base, d.d_g);
    c.phi_br = c.x2 / powi(c.base, d.d_g - 1);
    return c;
}

}  // namespace

double potential_U(const DegreeProfile& d, const ChannelModel& model, double x1,
                   double x2, double eps) {
    if (!(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0)) {
        throw std::domain_error("potential_U: (x1,x2) outside [0,1]^2");
    }
    const double a = 1.0 - x1;
    const double b = 1.0 - x2;
    const double g1 = 1.0 - powi(a, d.d_r - 1) * powi(b, d.d_g);
    const double base = fp_base(d, x1, x2);
    // (1-x1)^{d_r} (1-x2)^{d_g} (1 + d_r x1/(1-x1) + d_g x2/(1-x2)), expanded
    // so the removable singularities at x1 = 1 and x2 = 1 never appear.
    const double tail = powi(a, d.d_r) * powi(b, d.d_g) +
                        d.d_r * x1 * powi(a, d.d_r - 1) * powi(b, d.d_g) +
                        d.d_g * x2 * powi(a, d.d_r) * powi(b, d.d_g - 1);
    return 1.0 - model.phi_integral(powi(base, d.d_g), eps) -
           d.design_rate() * powi(g1, d.d_l) - tail;
}

double potential_U_from_maps(const DegreeProfile& d, const ChannelModel& model,
                             double x1, double x2, double eps) {
    const DeState s{x1, x2};
    const DeState g = g_map(d, s);
    const double gdx = g.x1 * d.d_r * x1 + g.x2 * d.d_g * x2;
    return gdx - admissible_G(d, s) - admissible_F(d, model, g, eps);
}

double trivial_U(const DegreeProfile& d, const ChannelModel& model, double eps) {
    return 1.0 - d.design_rate() - model.phi_integral(1.0, eps);
}

double x2_of_x1(const DegreeProfile& d, double x1) {
    check_open_unit(x1);
    const double num = one_minus_pow(x1, 1.0 / (d.d_l - 1));
    const double den = powi(1.0 - x1, d.d_r - 1);
    return 1.0 - std::pow(num / den, 1.0 / d.d_g);
}

double psi_of_x1(const DegreeProfile& d, double x1) {
    const double x2 = x2_of_x1(d, x1);
    if (!(x2 >= 0.0 && x2 <= 1.0)) {
        throw excluded_point_error("psi_of_x1: x2[x1] outside [0,1] at x1=" +
                                   std::to_string(x1));
    }
    return powi(fp_base(d, x1, x2), d.d_g);
}

double phi_bracket_of_x1(const DegreeProfile& d, double x1) {
    const double x2 = x2_of_x1(d, x1);
    if (!(x2 >= 0.0 && x2 <= 1.0)) {
        throw excluded_point_error("phi_bracket_of_x1: x2[x1] outside [0,1] at x1=" +
                                   std::to_string(x1));
    }
    return x2 / powi(fp_base(d, x1, x2), d.d_g - 1);
}

std::optional<double> eps_of_x1(const DegreeProfile& d, const ChannelModel& model,
                                double x1) {
    const double x2 = x2_of_x1(d, x1);
    if (!(x2 >= 0.0 && x2 <= 1.0)) {
        throw excluded_point_error("eps_of_x1: x2[x1] outside [0,1] at x1=" +
                                   std::to_string(x1));
    }
    const CurveInternals c = curve_internals(d, x1);
    if (!(c.phi_br >= 0.0 && c.phi_br <= 1.0)) return std::nullopt;
    return solve_eps(model, c.psi, c.phi_br);
}

PotentialSample curve_sample(const DegreeProfile& d, const ChannelModel& model,
                             double x1) {
    PotentialSample s;
    s.x1 = x1;
    const CurveInternals c = curve_internals(d, x1);
    s.x2 = c.x2;
    s.psi = c.psi;
    s.phi_bracket = c.phi_br;
    if (!(c.x2 >= 0.0 && c.x2 <= 1.0)) return s;
    if (!(c.phi_br >= 0.0 && c.phi_br <= 1.0)) return s;
    const auto eps = solve_eps(model, c.psi, c.phi_br);
    if (!eps) return s;
    s.eps = *eps;
    s.U = potential_U(d, model, x1, c.x2, *eps);
    s.valid = true;
    return s;
}

std::vector<PotentialSample> potential_curve(const DegreeProfile& d,
                                             const ChannelModel& model, int grid_size) {
    if (grid_size < 2) throw std::domain_error("potential_curve: grid_size must be >= 2");
    std::vector<PotentialSample> out(static_cast<std::size_t>(grid_size));
    parallel_for(out.size(), [&](std::size_t k) {
        const double x1 = (static_cast<double>(k) + 0.5) / grid_size;
        out[k] = curve_sample(d, model, x1);
    });
    return out;
}

ThresholdReport potential_threshold(const DegreeProfile& d, const ChannelModel& model,
                                    int grid_size) {
    if (grid_size < 100) {
        throw std::domain_error("potential_threshold: grid_size must be >= 100");
    }
    ThresholdReport rep;
    rep.grid_size = grid_size;
    // Root of the trivial-fixed-point potential; when the channel never
    // drops the SIR to the design rate the trivial point stays positive on
    // all of [0,1] and does not bind.
    double trivial_root = 1.0;
    try {
        trivial_root = model.sir_limit(d.design_rate());
    } catch (const no_solution_error&) {
        trivial_root = 1.0;
    }
    rep.eps_sir = trivial_root;

    const auto samples = potential_curve(d, model, grid_size);
    double min_u = std::numeric_limits<double>::infinity();
    double bad_eps = std::numeric_limits<double>::infinity();
    int valid = 0;
    for (const auto& s : samples) {
        if (!s.valid) continue;
        ++valid;
        min_u = std::min(min_u, *s.U);
        if (*s.U <= 0.0) bad_eps = std::min(bad_eps, *s.eps);
    }
    rep.valid_samples = valid;
    rep.min_nontrivial_U = min_u;
    rep.eps_star = std::min(trivial_root, bad_eps);
    return rep;
}

double energy_gap(const DegreeProfile& d, const ChannelModel& model, double eps,
                  int grid_size) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("energy_gap: eps outside [0,1]");
    if (grid_size < 100) throw std::domain_error("energy_gap: grid_size must be >= 100");

    const auto samples = potential_curve(d, model, grid_size);
    const ThresholdReport rep = potential_threshold(d, model, grid_size);
    if (!(eps < rep.eps_star)) {
        throw std::domain_error("energy_gap: eps must lie below the potential threshold");
    }

    // Potential of every fixed point at a given eps': the trivial point and
    // the curve points with eps[x1] = eps', located by scanning the sampled
    // eps[x1] for bracketing pairs and refining each root by bisection.
    const auto inf_U_at = [&](double eps_p) {
        double inf = trivial_U(d, model, eps_p);
        for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
            const auto& a = samples[k];
            const auto& b = samples[k + 1];
            if (!a.valid || !b.valid) continue;
            const double fa = *a.eps - eps_p;
            const double fb = *b.eps - eps_p;
            if (fa == 0.0) inf = std::min(inf, *a.U);
            if (fa * fb >= 0.0) continue;
            double lo = a.x1;
            double hi = b.x1;
            double flo = fa;
            for (int it = 0; it < 60 && (hi - lo) > 1e-10; ++it) {
                const double mid = 0.5 * (lo + hi);
                const auto em = eps_of_x1(d, model, mid);
                const double fm = (em ? *em : 2.0) - eps_p;
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const PotentialSample root = curve_sample(d, model, 0.5 * (lo + hi));
            if (root.valid) inf = std::min(inf, *root.U);
        }
        return inf;
    };

    // eps' sweeps the fixed global grid k/(grid_size-1) restricted to
    // [eps,1]; nested grids keep the gap exactly non-increasing in eps.
    double gap = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid_size; ++k) {
        const double eps_p = static_cast<double>(k) / (grid_size - 1);
        if (eps_p < eps) continue;
        gap = std::max(gap, inf_U_at(eps_p));
    }
    return gap;
}

}  // namespace scmn
