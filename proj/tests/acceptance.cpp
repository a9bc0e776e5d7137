// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion pins its tolerance in code; timings are wall-clock.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scmn/coupled.hpp"
#include "scmn/manifest.hpp"
#include "scmn/output.hpp"
#include "scmn/potential.hpp"

using namespace scmn;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void criterion(int id, const std::string& name, double time_budget_s,
               const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string note = o.detail;
    if (time_budget_s > 0.0 && secs > time_budget_s) {
        pass = false;
        note += " [time budget " + format_g12(time_budget_s) + "s exceeded]";
    }
    if (!pass) ++g_failures;
    std::printf("%s  %2d  %s: %s [%.3fs]\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                note.c_str(), secs);
    std::fflush(stdout);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const DegreeProfile kD422{4, 2, 2};
const DegreeProfile kD633{6, 3, 3};

Outcome sir_limit_analytic() {
    const double bec = ChannelModel::bec().sir_limit(0.5);
    const double dec = ChannelModel::dec().sir_limit(0.5);
    const double ref_dec = (1.0 + std::sqrt(17.0)) / 8.0;
    const double err = std::max(std::abs(bec - 0.5), std::abs(dec - ref_dec));
    std::ostringstream os;
    os << "bec=" << format_g12(bec) << " dec=" << format_g12(dec)
       << " max|err|=" << format_g12(err);
    return {err < 1e-8, os.str()};
}

Outcome quadrature_vs_closed() {
    double worst = 0.0;
    for (const ChannelModel& m : {ChannelModel::dec(), ChannelModel::pr2()}) {
        for (int ie = 1; ie <= 9; ++ie) {
            for (int ix = 1; ix <= 10; ++ix) {
                const double x = ix / 10.0, e = ie / 10.0;
                worst = std::max(worst, std::abs(m.phi_integral_quadrature(x, e) -
                                                 m.phi_integral(x, e)));
            }
        }
    }
    return {worst < 1e-8, "max|quad-closed|=" + format_g12(worst) + " over 180 points"};
}

Outcome trivial_sign_change() {
    double worst_at_root = 0.0;
    bool signs = true;
    for (const ChannelModel& m :
         {ChannelModel::bec(), ChannelModel::dec(), ChannelModel::pr2()}) {
        for (const DegreeProfile& d : {kD422, kD633}) {
            const double es = m.sir_limit(d.design_rate());
            worst_at_root = std::max(worst_at_root, std::abs(trivial_U(d, m, es)));
            for (int k = 1; k <= 9; ++k) {
                if (!(trivial_U(d, m, es * k / 10.0) > 0.0)) signs = false;
                const double above = es + (1.0 - es) * k / 10.0;
                if (above < 1.0 && !(trivial_U(d, m, above) < 0.0)) signs = false;
            }
        }
    }
    return {worst_at_root < 1e-8 && signs,
            "max|U_trivial(eps_sir)|=" + format_g12(worst_at_root) +
                (signs ? ", sign pattern holds" : ", SIGN PATTERN VIOLATED")};
}

Outcome bec_curve_positive() {
    std::ostringstream os;
    bool ok = true;
    for (const DegreeProfile& d : {kD422, kD633}) {
        const auto samples = potential_curve(d, ChannelModel::bec(), 10000);
        double min_u = std::numeric_limits<double>::infinity();
        double argmin = 0.0;
        int valid = 0;
        for (const auto& s : samples) {
            if (!s.valid) continue;
            ++valid;
            if (*s.U < min_u) {
                min_u = *s.U;
                argmin = s.x1;
            }
        }
        ok = ok && valid > 0 && min_u > 0.0;
        os << "(" << d.d_l << "," << d.d_r << "," << d.d_g << "): minU="
           << format_g12(min_u) << " at x1=" << format_g12(argmin) << " (" << valid
           << " valid)  ";
    }
    return {ok, os.str()};
}

Outcome gec_dominates_bec() {
    const ChannelModel bec = ChannelModel::bec();
    double worst_gap = std::numeric_limits<double>::infinity();
    double worst_eq = 0.0;
    for (const DegreeProfile& d : {kD422, kD633}) {
        for (const ChannelModel& m : {ChannelModel::dec(), ChannelModel::pr2()}) {
            const auto samples = potential_curve(d, m, 10000);
            for (const auto& s : samples) {
                if (!s.valid) continue;
                const double u_bec = potential_U(d, bec, s.x1, s.x2, s.phi_bracket);
                worst_gap = std::min(worst_gap, *s.U - u_bec);
            }
        }
        const auto samples = potential_curve(d, bec, 10000);
        for (const auto& s : samples) {
            if (!s.valid) continue;
            const double u_bec = potential_U(d, bec, s.x1, s.x2, s.phi_bracket);
            worst_eq = std::max(worst_eq, std::abs(*s.U - u_bec));
        }
    }
    return {worst_gap >= -1e-12 && worst_eq <= 1e-12,
            "min(U_gec-U_bec)=" + format_g12(worst_gap) +
                ", bec self-equality=" + format_g12(worst_eq)};
}

Outcome threshold_equality() {
    double worst = 0.0;
    std::ostringstream os;
    for (const ChannelModel& m :
         {ChannelModel::bec(), ChannelModel::dec(), ChannelModel::pr2()}) {
        for (const DegreeProfile& d : {kD422, kD633}) {
            const ThresholdReport rep = potential_threshold(d, m, 4096);
            worst = std::max(worst, std::abs(rep.eps_star - rep.eps_sir));
            if (m.kind() == ChannelKind::builtin_bec && d.d_l == 4) {
                os << "bec(4,2,2): eps*=" << format_g12(rep.eps_star) << "  ";
            }
        }
    }
    os << "max|eps*-eps_sir|=" << format_g12(worst);
    return {worst <= 1e-5, os.str()};
}

Outcome threshold_saturation_trend() {
    const ChannelModel bec = ChannelModel::bec();
    std::vector<double> thr;
    std::ostringstream os;
    os << "L=128 thresholds:";
    for (int w = 1; w <= 5; ++w) {
        thr.push_back(bp_threshold(kD422, bec, 128, w, 1e-5, 50000, 1e-10));
        os << " w" << w << "=" << format_g12(thr.back());
    }
    bool mono = true;
    for (std::size_t i = 1; i < thr.size(); ++i) {
        if (thr[i] < thr[i - 1]) mono = false;
    }
    const double gap = std::abs(thr.back() - 0.5);
    os << " |thr(5)-0.5|=" << format_g12(gap);
    return {mono && gap <= 0.02, os.str()};
}

Outcome eps_solver_oracle() {
    const ChannelModel bec = ChannelModel::bec();
    const ChannelModel dec = ChannelModel::dec();
    double worst_dec = 0.0, worst_bec = 0.0;
    int points = 0;
    for (const DegreeProfile& d : {kD422, kD633}) {
        for (int k = 0; k < 2000; ++k) {
            const double x1 = (k + 0.5) / 2000.0;
            const double x2 = x2_of_x1(d, x1);
            if (!(x2 >= 0.0 && x2 <= 1.0)) continue;
            const double pb = phi_bracket_of_x1(d, x1);
            if (!(pb >= 0.0 && pb <= 1.0)) continue;
            const double psi = psi_of_x1(d, x1);
            const auto ed = eps_of_x1(d, dec, x1);
            const auto eb = eps_of_x1(d, bec, x1);
            if (!ed || !eb) continue;
            const double c = std::sqrt(pb);
            worst_dec = std::max(worst_dec, std::abs(*ed - (2.0 - psi) * c / (2.0 - psi * c)));
            worst_bec = std::max(worst_bec, std::abs(*eb - pb));
            ++points;
        }
    }
    std::ostringstream os;
    os << points << " points, |dec-closed|=" << format_g12(worst_dec)
       << ", |bec-phi[x1]|=" << format_g12(worst_bec);
    return {points >= 1000 && worst_dec <= 1e-8 && worst_bec <= 1e-10, os.str()};
}

Outcome structural_invariants() {
    std::ostringstream os;
    bool ok = true;

    // two-form potential equality on random points, per channel
    std::mt19937 rng(20150116u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst_tf = 0.0;
    for (const ChannelModel& m :
         {ChannelModel::bec(), ChannelModel::dec(), ChannelModel::pr2()}) {
        for (int i = 0; i < 10000; ++i) {
            const double x1 = uni(rng), x2 = uni(rng), e = uni(rng);
            worst_tf = std::max(worst_tf, std::abs(potential_U(kD422, m, x1, x2, e) -
                                                   potential_U_from_maps(kD422, m, x1, x2, e)));
        }
    }
    ok = ok && worst_tf <= 1e-12;
    os << "two-form=" << format_g12(worst_tf);

    // coupled-profile mirror symmetry, every iteration of an L=16, w=3 run
    const CouplingConfig cfg{16, 3, 0.45};
    DeProfile p = DeProfile::all_ones(cfg);
    double worst_sym = 0.0;
    for (int t = 0; t < 500; ++t) {
        p = sc_de_step(kD422, ChannelModel::bec(), cfg, p);
        const std::size_t n = p.states.size();
        for (std::size_t a = 0; a < n; ++a) {
            worst_sym = std::max(worst_sym, std::abs(p.states[a].x1 - p.states[n - 1 - a].x1));
            worst_sym = std::max(worst_sym, std::abs(p.states[a].x2 - p.states[n - 1 - a].x2));
        }
        if (p.interior_max() < 1e-12) break;
    }
    ok = ok && worst_sym <= 1e-12;
    os << ", sc-symmetry=" << format_g12(worst_sym);

    // uncoupled DE decreases componentwise from all-ones
    double worst_rise = 0.0;
    const ChannelModel models[] = {ChannelModel::bec(), ChannelModel::dec(),
                                   ChannelModel::pr2()};
    for (int trial = 0; trial < 100; ++trial) {
        const DegreeProfile d(3 + trial % 6, 2, 2);
        const ChannelModel& m = models[trial % 3];
        const double eps = uni(rng);
        DeState x{1.0, 1.0};
        for (int t = 0; t < 60; ++t) {
            const DeState nx = de_step(d, m, x, eps);
            worst_rise = std::max(worst_rise, std::max(nx.x1 - x.x1, nx.x2 - x.x2));
            x = nx;
        }
    }
    ok = ok && worst_rise <= 0.0;
    os << ", de-max-rise=" << format_g12(worst_rise);

    // rate formula exact on the worked examples
    const double r1 = rate(kD422, 100, 1);
    const double r2 = rate(kD633, 50, 2);
    const double rate_err =
        std::max(std::abs(r1 - 0.5), std::abs(r2 - 0.480625));
    ok = ok && rate_err <= 1e-15;
    os << ", rate-err=" << format_g12(rate_err);
    return {ok, os.str()};
}

Outcome determinism() {
    RunManifest m;
    m.command = "potential-curve";
    m.channel = "dec";
    m.grid = 1024;
    m.format = "csv";
    std::ostringstream sink;
    m.output = "acc_det_a.csv";
    if (run(m, sink) != kExitOk) return {false, "curve run failed"};
    m.output = "acc_det_b.csv";
    if (run(m, sink) != kExitOk) return {false, "curve run failed"};
    const bool curves_equal = slurp("acc_det_a.csv") == slurp("acc_det_b.csv");
    std::remove("acc_det_a.csv");
    std::remove("acc_det_b.csv");

    RunManifest t;
    t.command = "sc-de";
    t.channel = "bec";
    t.L = 8;
    t.w = 2;
    t.eps = 0.3;
    t.max_iter = 500;
    t.tol = 1e-9;
    t.format = "csv";
    t.output = "acc_det_c.csv";
    if (run(t, sink) != kExitOk) return {false, "trace run failed"};
    t.output = "acc_det_d.csv";
    if (run(t, sink) != kExitOk) return {false, "trace run failed"};
    const bool traces_equal = slurp("acc_det_c.csv") == slurp("acc_det_d.csv");
    std::remove("acc_det_c.csv");
    std::remove("acc_det_d.csv");

    std::ostringstream os;
    os << "curve byte-identical=" << curves_equal
       << ", trace byte-identical=" << traces_equal;
    return {curves_equal && traces_equal, os.str()};
}

}  // namespace

int main() {
    criterion(1, "sir-limit analytic values", 0.1, sir_limit_analytic);
    criterion(2, "quadrature matches corrected closed forms", 1.0, quadrature_vs_closed);
    criterion(3, "trivial potential sign change at the sir limit", 0.0,
              trivial_sign_change);
    criterion(4, "bec curve potential strictly positive", 2.0, bec_curve_positive);
    criterion(5, "memory channels dominate bec pointwise", 5.0, gec_dominates_bec);
    criterion(6, "potential threshold equals sir limit", 0.0, threshold_equality);
    criterion(7, "threshold saturation trend over w", 120.0, threshold_saturation_trend);
    criterion(8, "eps[x1] solver matches closed forms", 0.0, eps_solver_oracle);
    criterion(9, "structural invariants", 0.0, structural_invariants);
    criterion(10, "identical manifests give identical bytes", 0.0, determinism);

    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
