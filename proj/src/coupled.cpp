#include "scmn/coupled.hpp"

#include <algorithm>
#include <cmath>

#include "scmn/numeric.hpp"

namespace scmn {

DeProfile DeProfile::all_ones(const CouplingConfig& cfg) {
    DeProfile p;
    p.L = cfg.L;
    p.w = cfg.w;
    p.states.assign(static_cast<std::size_t>(cfg.L + 2 * (cfg.w - 1)),
                    DeState{1.0, 1.0});
    return p;
}

double DeProfile::interior_max() const {
    double m = 0.0;
    for (int i = 0; i < L; ++i) {
        m = std::max(m, std::max(at(i).x1, at(i).x2));
    }
    return m;
}

DeProfile sc_de_step(const DegreeProfile& d, const ChannelModel& model,
                     const CouplingConfig& cfg, const DeProfile& p) {
    cfg.validate();
    if (p.L != cfg.L || p.w != cfg.w) {
        throw validation_error("sc_de_step: profile dimensions do not match config");
    }
    const int w = cfg.w;
    const int lo = p.lo_section();
    const int hi = p.hi_section();
    const double inv_w = 1.0 / static_cast<double>(w);

    const auto read = [&](int s) -> DeState {
        if (s < lo || s > hi) return DeState{};
        return p.at(s);
    };

    // Check section c averages bit sections c-w+1 .. c before applying g.
    // Needed for c in [lo, hi + w - 1].
    const int nc = hi + w - 1 - lo + 1;
    std::vector<DeState> checks(static_cast<std::size_t>(nc));
    for (int c = lo; c <= hi + w - 1; ++c) {
        DeState m{};
        for (int j = 0; j < w; ++j) {
            const DeState s = read(c - j);
            m.x1 += s.x1;
            m.x2 += s.x2;
        }
        m.x1 *= inv_w;
        m.x2 *= inv_w;
        checks[static_cast<std::size_t>(c - lo)] = g_map(d, m);
    }

    DeProfile out = p;
    for (int i = lo; i <= hi; ++i) {
        DeState u{};
        for (int k = 0; k < w; ++k) {
            const DeState& gc = checks[static_cast<std::size_t>(i + k - lo)];
            u.x1 += gc.x1;
            u.x2 += gc.x2;
        }
        u.x1 *= inv_w;
        u.x2 *= inv_w;
        const double eps_i = (i >= 0 && i <= cfg.L - 1) ? cfg.eps : 0.0;
        out.at(i) = f_map(d, model, u, eps_i);
    }
    return out;
}

ScRunResult sc_de_run(const DegreeProfile& d, const ChannelModel& model,
                      const CouplingConfig& cfg, int max_iter, double tol,
                      const std::function<void(int, const DeProfile&)>& on_iter) {
    cfg.validate();
    if (max_iter < 1) throw std::domain_error("sc_de_run: max_iter must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("sc_de_run: tol must be positive");

    DeProfile x = DeProfile::all_ones(cfg);
    int t = 0;
    while (t < max_iter) {
        const DeProfile next = sc_de_step(d, model, cfg, x);
        double delta = 0.0;
        for (std::size_t a = 0; a < x.states.size(); ++a) {
            delta = std::max(delta, std::abs(next.states[a].x1 - x.states[a].x1));
            delta = std::max(delta, std::abs(next.states[a].x2 - x.states[a].x2));
        }
        x = next;
        ++t;
        if (on_iter) on_iter(t, x);
        const double m = x.interior_max();
        if (m < tol) return {std::move(x), t, true};
        if (delta < tol) {
            if (m > 1e-3) return {std::move(x), t, false};  // stalled high
            // creeping toward zero slower than tol per step: give up
            return {std::move(x), t, false};
        }
    }
    const bool decoded = x.interior_max() < tol;
    return {std::move(x), t, decoded};
}

double bp_threshold(const DegreeProfile& d, const ChannelModel& model, int L, int w,
                    double tol_eps, int max_iter, double tol) {
    if (!(tol_eps > 0.0)) throw std::domain_error("bp_threshold: tol_eps must be > 0");
    const auto decodes = [&](double eps) {
        CouplingConfig cfg{L, w, eps};
        return sc_de_run(d, model, cfg, max_iter, tol).decoded;
    };
    if (!decodes(0.0)) return 0.0;
    if (decodes(1.0)) return 1.0;
    double lo = 0.0;  // decodes
    double hi = 1.0;  // does not
    while (hi - lo > tol_eps) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (decodes(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double rate(const DegreeProfile& d, int L, int w) {
    if (L < 1 || w < 1) throw std::domain_error("rate: L and w must be >= 1");
    double sum = 0.0;
    for (int i = 0; i <= w; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(w);
        sum += 1.0 - powi(frac, d.d_r + d.d_g);
    }
    return d.design_rate() +
           (1.0 + w - 2.0 * sum) / static_cast<double>(L);
}

}  // namespace scmn
