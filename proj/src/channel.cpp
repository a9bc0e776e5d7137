#include "scmn/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "scmn/numeric.hpp"

#include <json.hpp>

namespace scmn {

namespace {

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << what << " = " << v << " outside [0,1]";
        throw std::domain_error(os.str());
    }
}

double phi_bec(double /*x*/, double eps) { return eps; }
double int_bec(double x, double eps) { return eps * x; }

double phi_dec(double x, double eps) {
    const double d = 2.0 - x * (1.0 - eps);
    return 4.0 * eps * eps / (d * d);
}

// Definite integral of phi_dec from 0, in a form with no removable
// singularity at eps = 1: 2 eps^2 x / (2 - (1-eps) x).
double int_dec(double x, double eps) {
    return 2.0 * eps * eps * x / (2.0 - (1.0 - eps) * x);
}

double phi_pr2(double x, double eps) {
    const double e = eps;
    const double num = 4.0 * e * e * e * (4.0 - 4.0 * (1.0 - e) * x + (1.0 - e) * x * x);
    const double den = 4.0 - 2.0 * (1.0 - e * e) * x - (1.0 - e) * e * e * x * x;
    return num / (den * den);
}

double int_pr2(double x, double eps) {
    const double e = eps;
    const double den = 4.0 - 2.0 * (1.0 - e * e) * x - (1.0 - e) * e * e * x * x;
    return 4.0 * e * (0.5 - (2.0 - x) / den);
}

// Piecewise-linear interpolation of tabulated phi values; exact prefix
// integrals per row so Phi needs no quadrature.
class TableEval {
  public:
    explicit TableEval(CustomChannelSpec spec) : spec_(std::move(spec)) {
        const std::size_t n = static_cast<std::size_t>(spec_.x_grid_size);
        prefix_.resize(spec_.phi_tables.size());
        const double h = 1.0 / static_cast<double>(n - 1);
        for (std::size_t r = 0; r < spec_.phi_tables.size(); ++r) {
            auto& pre = prefix_[r];
            pre.assign(n, 0.0);
            const auto& row = spec_.phi_tables[r];
            for (std::size_t k = 1; k < n; ++k) {
                pre[k] = pre[k - 1] + 0.5 * h * (row[k - 1] + row[k]);
            }
        }
    }

    double phi(double x, double eps) const {
        const auto [r0, r1, t] = eps_bracket(eps);
        return (1.0 - t) * row_phi(r0, x) + t * row_phi(r1, x);
    }

    double integral(double x, double eps) const {
        const auto [r0, r1, t] = eps_bracket(eps);
        return (1.0 - t) * row_integral(r0, x) + t * row_integral(r1, x);
    }

  private:
    std::tuple<std::size_t, std::size_t, double> eps_bracket(double eps) const {
        const auto& g = spec_.eps_grid;
        if (eps <= g.front()) return {0, 0, 0.0};
        if (eps >= g.back()) return {g.size() - 1, g.size() - 1, 0.0};
        const auto it = std::upper_bound(g.begin(), g.end(), eps);
        const std::size_t hi = static_cast<std::size_t>(it - g.begin());
        const std::size_t lo = hi - 1;
        const double t = (eps - g[lo]) / (g[hi] - g[lo]);
        return {lo, hi, t};
    }

    double row_phi(std::size_t r, double x) const {
        const auto& row = spec_.phi_tables[r];
        const std::size_t n = row.size();
        const double pos = x * static_cast<double>(n - 1);
        std::size_t k = static_cast<std::size_t>(pos);
        if (k >= n - 1) return row[n - 1];
        const double t = pos - static_cast<double>(k);
        return (1.0 - t) * row[k] + t * row[k + 1];
    }

    double row_integral(std::size_t r, double x) const {
        const auto& row = spec_.phi_tables[r];
        const auto& pre = prefix_[r];
        const std::size_t n = row.size();
        const double h = 1.0 / static_cast<double>(n - 1);
        const double pos = x * static_cast<double>(n - 1);
        std::size_t k = static_cast<std::size_t>(pos);
        if (k >= n - 1) return pre[n - 1];
        const double dx = (pos - static_cast<double>(k)) * h;
        const double lo = row[k];
        const double slope = (row[k + 1] - row[k]) / h;
        return pre[k] + lo * dx + 0.5 * slope * dx * dx;
    }

    CustomChannelSpec spec_;
    std::vector<std::vector<double>> prefix_;
};

}  // namespace

void CustomChannelSpec::validate() const {
    if (name.empty()) throw validation_error("channel config: empty name");
    if (x_grid_size < 64) {
        throw validation_error("channel config: x_grid_size must be >= 64, got " +
                               std::to_string(x_grid_size));
    }
    if (eps_grid.size() < 2) {
        throw validation_error("channel config: eps_grid needs at least 2 entries");
    }
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] >= 0.0 && eps_grid[i] <= 1.0)) {
            throw validation_error("channel config: eps_grid[" + std::to_string(i) +
                                   "] outside [0,1]");
        }
        if (i > 0 && !(eps_grid[i] > eps_grid[i - 1])) {
            throw validation_error("channel config: eps_grid[" + std::to_string(i) +
                                   "] not strictly increasing");
        }
    }
    if (eps_grid.front() != 0.0 || eps_grid.back() != 1.0) {
        throw validation_error(
            "channel config: eps_grid must span [0,1] (first entry 0, last entry 1)");
    }
    if (phi_tables.size() != eps_grid.size()) {
        throw validation_error("channel config: phi_tables rows (" +
                               std::to_string(phi_tables.size()) +
                               ") must match eps_grid size (" +
                               std::to_string(eps_grid.size()) + ")");
    }
    const std::size_t n = static_cast<std::size_t>(x_grid_size);
    for (std::size_t r = 0; r < phi_tables.size(); ++r) {
        const auto& row = phi_tables[r];
        if (row.size() != n) {
            throw validation_error("channel config: phi_tables[" + std::to_string(r) +
                                   "] has " + std::to_string(row.size()) +
                                   " entries, expected " + std::to_string(n));
        }
        for (std::size_t c = 0; c < n; ++c) {
            const auto cell = [&] {
                return "phi_tables[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            };
            if (!(row[c] >= 0.0 && row[c] <= 1.0)) {
                throw validation_error("channel config: " + cell() + " = " +
                                       std::to_string(row[c]) + " outside [0,1]");
            }
            if (c > 0 && row[c] < row[c - 1]) {
                throw validation_error("channel config: " + cell() +
                                       " decreases along x (tables must be "
                                       "non-decreasing in x)");
            }
            if (r == 0 && row[c] != 0.0) {
                throw validation_error("channel config: " + cell() +
                                       " must be 0 (row at eps=0 models the "
                                       "erasure-free channel)");
            }
            if (r > 0 && c > 0 && !(row[c] > phi_tables[r - 1][c])) {
                throw validation_error("channel config: " + cell() +
                                       " not strictly increasing in eps for x > 0");
            }
        }
    }
}

ChannelModel::ChannelModel(std::string name, ChannelKind kind, Fn2 phi, Fn2 integral)
    : name_(std::move(name)), kind_(kind), phi_(std::move(phi)),
      integral_(std::move(integral)) {
    validate_on_grid();
}

ChannelModel ChannelModel::bec() {
    return ChannelModel("bec", ChannelKind::builtin_bec, phi_bec, int_bec);
}

ChannelModel ChannelModel::dec() {
    return ChannelModel("dec", ChannelKind::builtin_dec, phi_dec, int_dec);
}

ChannelModel ChannelModel::pr2() {
    return ChannelModel("pr2", ChannelKind::builtin_pr2, phi_pr2, int_pr2);
}

ChannelModel ChannelModel::from_tables(CustomChannelSpec spec) {
    spec.validate();
    auto eval = std::make_shared<TableEval>(spec);
    auto phi = [eval](double x, double e) { return eval->phi(x, e); };
    auto integ = [eval](double x, double e) { return eval->integral(x, e); };
    return ChannelModel(spec.name, ChannelKind::custom, phi, integ);
}

ChannelModel ChannelModel::resolve(const std::string& name_or_path) {
    if (name_or_path == "bec") return bec();
    if (name_or_path == "dec") return dec();
    if (name_or_path == "pr2") return pr2();
    return from_tables(load_channel_spec(name_or_path));
}

void ChannelModel::validate_on_grid() const {
    constexpr int kN = 17;
    for (int ie = 0; ie <= kN; ++ie) {
        const double e = static_cast<double>(ie) / kN;
        double prev = -1.0;
        for (int ix = 0; ix <= kN; ++ix) {
            const double x = static_cast<double>(ix) / kN;
            const double v = phi_(x, e);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw validation_error("channel '" + name_ + "': phi(" +
                                       std::to_string(x) + ";" + std::to_string(e) +
                                       ") outside [0,1]");
            }
            if (v < prev) {
                throw validation_error("channel '" + name_ +
                                       "': phi not non-decreasing in x at eps=" +
                                       std::to_string(e));
            }
            prev = v;
            if (ie == 0 && v != 0.0) {
                throw validation_error("channel '" + name_ + "': phi(x;0) != 0 at x=" +
                                       std::to_string(x));
            }
        }
    }
    for (int ix = 1; ix <= kN; ++ix) {
        const double x = static_cast<double>(ix) / kN;
        double prev = phi_(x, 0.0);
        for (int ie = 1; ie <= kN; ++ie) {
            const double e = static_cast<double>(ie) / kN;
            const double v = phi_(x, e);
            if (!(v > prev)) {
                throw validation_error("channel '" + name_ +
                                       "': phi not strictly increasing in eps at x=" +
                                       std::to_string(x));
            }
            prev = v;
        }
    }
}

double ChannelModel::phi(double x, double eps) const {
    check_unit(x, "x");
    check_unit(eps, "eps");
    return phi_(x, eps);
}

double ChannelModel::phi_integral(double x, double eps) const {
    check_unit(x, "x");
    check_unit(eps, "eps");
    if (integral_) return integral_(x, eps);
    return phi_integral_quadrature(x, eps);
}

double ChannelModel::phi_integral_quadrature(double x, double eps, double abs_tol) const {
    check_unit(x, "x");
    check_unit(eps, "eps");
    return adaptive_simpson([this, eps](double t) { return phi_(t, eps); }, 0.0, x,
                            abs_tol, 40);
}

double ChannelModel::sir(double eps) const {
    check_unit(eps, "eps");
    return 1.0 - phi_integral(1.0, eps);
}

double ChannelModel::sir_limit(double rate, double tol) const {
    if (!(rate > 0.0 && rate < 1.0)) {
        throw std::domain_error("sir_limit: rate must lie in (0,1)");
    }
    const double i0 = sir(0.0);
    const double i1 = sir(1.0);
    if (rate > i0 || rate < i1) {
        std::ostringstream os;
        os << "sir_limit: no eps in [0,1] reaches rate " << rate << " (I spans ["
           << i1 << ", " << i0 << "])";
        throw no_solution_error(os.str());
    }
    // I is strictly decreasing in eps.
    return bisect_root([this, rate](double e) { return sir(e) - rate; }, 0.0, 1.0, tol);
}

CustomChannelSpec load_channel_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open channel config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("channel config '" + path + "': " + e.what());
    }
    CustomChannelSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        spec.eps_grid = j.at("eps_grid").get<std::vector<double>>();
        spec.x_grid_size = j.at("x_grid_size").get<int>();
        spec.phi_tables = j.at("phi_tables").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("channel config '" + path + "': " + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace scmn
