#include "scmn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "scmn/coupled.hpp"
#include "scmn/numeric.hpp"
#include "scmn/potential.hpp"

namespace scmn {

namespace {

VerifyCheck bounded(std::string name, double observed, double limit, std::string detail) {
    VerifyCheck c;
    c.name = std::move(name);
    c.observed = observed;
    c.limit = limit;
    c.cmp = "<=";
    c.pass = observed <= limit;
    c.detail = std::move(detail);
    return c;
}

VerifyCheck exceeds(std::string name, double observed, double limit, std::string detail) {
    VerifyCheck c;
    c.name = std::move(name);
    c.observed = observed;
    c.limit = limit;
    c.cmp = ">";
    c.pass = observed > limit;
    c.detail = std::move(detail);
    return c;
}

VerifyCheck quadrature_check(const ChannelModel& m) {
    double worst = 0.0;
    for (int ie = 1; ie <= 9; ++ie) {
        const double e = ie / 10.0;
        for (int ix = 1; ix <= 10; ++ix) {
            const double x = ix / 10.0;
            worst = std::max(worst, std::abs(m.phi_integral_quadrature(x, e) -
                                             m.phi_integral(x, e)));
        }
    }
    return bounded("quadrature_matches_closed_form[" + m.name() + "]", worst, 1e-8,
                   "90-point grid");
}

VerifyCheck two_form_check(const DegreeProfile& d, const ChannelModel& m, int points) {
    std::mt19937 rng(20150116u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x1 = uni(rng);
        const double x2 = uni(rng);
        const double e = uni(rng);
        worst = std::max(worst, std::abs(potential_U(d, m, x1, x2, e) -
                                         potential_U_from_maps(d, m, x1, x2, e)));
    }
    return bounded("two_form_potential_equality[" + m.name() + "]", worst, 1e-12,
                   std::to_string(points) + " random points");
}

VerifyCheck trivial_sign_check(const DegreeProfile& d, const ChannelModel& m) {
    const double es = m.sir_limit(d.design_rate());
    double worst = std::abs(trivial_U(d, m, es));
    bool signs_ok = true;
    for (int k = 1; k <= 9; ++k) {
        const double below = es * k / 10.0;
        const double above = es + (1.0 - es) * k / 10.0;
        if (!(trivial_U(d, m, below) > 0.0)) signs_ok = false;
        if (above < 1.0 && !(trivial_U(d, m, above) < 0.0)) signs_ok = false;
    }
    VerifyCheck c = bounded("trivial_potential_sign_change_at_sir[" + m.name() + "]",
                            worst, 1e-8, "sign grid on both sides");
    if (!signs_ok) {
        c.pass = false;
        c.detail += "; sign pattern violated";
    }
    return c;
}

VerifyCheck bec_curve_positive_check(const DegreeProfile& d, int grid) {
    const auto samples = potential_curve(d, ChannelModel::bec(), grid);
    double min_u = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    for (const auto& s : samples) {
        if (s.valid && *s.U < min_u) {
            min_u = *s.U;
            argmin = s.x1;
        }
    }
    std::ostringstream os;
    os << "min at x1=" << argmin;
    return exceeds("bec_nontrivial_potential_positive", min_u, 0.0, os.str());
}

VerifyCheck domination_check(const DegreeProfile& d, const ChannelModel& m, int grid) {
    const auto samples = potential_curve(d, m, grid);
    double worst = std::numeric_limits<double>::infinity();
    const ChannelModel bec = ChannelModel::bec();
    int compared = 0;
    for (const auto& s : samples) {
        if (!s.valid) continue;
        const double u_bec = potential_U(d, bec, s.x1, s.x2, s.phi_bracket);
        worst = std::min(worst, *s.U - u_bec);
        ++compared;
    }
    VerifyCheck c;
    c.name = "channel_potential_dominates_bec[" + m.name() + "]";
    c.observed = worst;
    c.limit = -1e-12;
    c.cmp = ">=";
    c.pass = worst >= -1e-12 && compared > 0;
    c.detail = std::to_string(compared) + " valid points";
    return c;
}

VerifyCheck residual_check(const DegreeProfile& d, const ChannelModel& m, int grid) {
    const auto samples = potential_curve(d, m, grid);
    double worst = 0.0;
    for (const auto& s : samples) {
        if (!s.valid) continue;
        const double a = 1.0 - s.x1;
        const double b = 1.0 - s.x2;
        const double r1 = std::abs(
            powi(1.0 - powi(a, d.d_r - 1) * powi(b, d.d_g), d.d_l - 1) - s.x1);
        const double base = 1.0 - powi(a, d.d_r) * powi(b, d.d_g - 1);
        const double r2 = std::abs(
            m.phi(powi(base, d.d_g), *s.eps) * powi(base, d.d_g - 1) - s.x2);
        worst = std::max(worst, std::max(r1, r2));
    }
    return bounded("fixed_point_residuals[" + m.name() + "]", worst, 1e-9,
                   "both equations, valid samples");
}

VerifyCheck symmetry_check(const DegreeProfile& d, const ChannelModel& m) {
    const CouplingConfig cfg{16, 3, 0.45};
    DeProfile p = DeProfile::all_ones(cfg);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        p = sc_de_step(d, m, cfg, p);
        const std::size_t n = p.states.size();
        for (std::size_t a = 0; a < n; ++a) {
            const auto& u = p.states[a];
            const auto& v = p.states[n - 1 - a];
            worst = std::max(worst, std::abs(u.x1 - v.x1));
            worst = std::max(worst, std::abs(u.x2 - v.x2));
        }
        if (p.interior_max() < 1e-12) break;
    }
    return bounded("sc_profile_mirror_symmetry[" + m.name() + "]", worst, 1e-12,
                   "L=16 w=3 eps=0.45, every iteration");
}

VerifyCheck threshold_equality_check(const DegreeProfile& d, const ChannelModel& m,
                                     int grid) {
    const ThresholdReport rep = potential_threshold(d, m, std::min(grid, 4096));
    const double err = std::abs(rep.eps_star - rep.eps_sir);
    std::ostringstream os;
    os << "eps_star=" << rep.eps_star << " eps_sir=" << rep.eps_sir;
    return bounded("potential_threshold_equals_sir_limit[" + m.name() + "]", err, 1e-5,
                   os.str());
}

VerifyCheck sir_round_trip_check(const ChannelModel& m) {
    double worst = 0.0;
    for (int k = 1; k <= 19; ++k) {
        const double e = k / 20.0;
        const double r = m.sir(e);
        if (!(r > 0.0 && r < 1.0)) continue;
        worst = std::max(worst, std::abs(m.sir_limit(r) - e));
    }
    return bounded("sir_limit_inverts_sir[" + m.name() + "]", worst, 1e-8,
                   "eps grid 0.05..0.95");
}

VerifyCheck monotone_de_check(const DegreeProfile& d, const ChannelModel& m) {
    std::mt19937 rng(726u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const double e = uni(rng);
        DeState x{1.0, 1.0};
        for (int t = 0; t < 200; ++t) {
            const DeState nx = de_step(d, m, x, e);
            worst = std::max(worst, std::max(nx.x1 - x.x1, nx.x2 - x.x2));
            x = nx;
        }
    }
    return bounded("de_iterates_monotone_from_ones[" + m.name() + "]", worst, 0.0,
                   "30 random eps, 200 rounds");
}

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& opt) {
    std::vector<ChannelModel> models = opt.models;
    if (models.empty()) {
        models = {ChannelModel::bec(), ChannelModel::dec(), ChannelModel::pr2()};
    }
    std::vector<VerifyCheck> out;
    for (const auto& m : models) {
        out.push_back(quadrature_check(m));
        out.push_back(sir_round_trip_check(m));
    }
    out.push_back(bec_curve_positive_check(opt.degrees, opt.curve_grid));
    for (const auto& m : models) {
        out.push_back(two_form_check(opt.degrees, m, opt.random_points));
        out.push_back(trivial_sign_check(opt.degrees, m));
        out.push_back(domination_check(opt.degrees, m, opt.curve_grid));
        out.push_back(residual_check(opt.degrees, m, opt.curve_grid));
        out.push_back(threshold_equality_check(opt.degrees, m, opt.curve_grid));
        out.push_back(monotone_de_check(opt.degrees, m));
    }
    out.push_back(symmetry_check(opt.degrees, ChannelModel::bec()));
    return out;
}

}  // namespace scmn
