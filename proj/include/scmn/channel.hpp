#ifndef SCMN_CHANNEL_HPP
#define SCMN_CHANNEL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "scmn/errors.hpp"

namespace scmn {

enum class ChannelKind { builtin_bec, builtin_dec, builtin_pr2, custom };

// Sampled transfer-function tables for a user-defined erasure channel.
// phi is given on a uniform x-grid (x_k = k/(n-1)) for each entry of the
// ascending eps_grid; evaluation interpolates bilinearly.
struct CustomChannelSpec {
    std::string name;
    std::vector<double> eps_grid;
    int x_grid_size = 0;
    std::vector<std::vector<double>> phi_tables;  // one row per eps

    // Throws validation_error naming the first offending cell.
    void validate() const;
};

// An erasure channel seen through its detector transfer function
// phi(x; eps): the erasure probability of detector-to-decoder messages
// when decoder-to-detector messages erase with probability x.
// Immutable after construction; safe to share across threads.
class ChannelModel {
  public:
    static ChannelModel bec();
    static ChannelModel dec();
    static ChannelModel pr2();
    static ChannelModel from_tables(CustomChannelSpec spec);

    // Resolves "bec"/"dec"/"pr2" or loads a JSON config file.
    static ChannelModel resolve(const std::string& name_or_path);

    const std::string& name() const { return name_; }
    ChannelKind kind() const { return kind_; }

    // phi(x; eps); domain_error outside [0,1]^2.
    double phi(double x, double eps) const;

    // Phi(x; eps) = integral of phi(.; eps) over [0,x]; closed form when the
    // model has one, adaptive Simpson quadrature otherwise.
    double phi_integral(double x, double eps) const;

    // Quadrature route regardless of closed form (cross-check hook).
    double phi_integral_quadrature(double x, double eps,
                                   double abs_tol = 1e-10) const;

    bool has_closed_integral() const { return static_cast<bool>(integral_); }

    // Symmetric information rate I(eps) = 1 - Phi(1; eps).
    double sir(double eps) const;

    // The unique eps with I(eps) = rate; no_solution_error when rate is
    // outside [I(1), I(0)].
    double sir_limit(double rate, double tol = 1e-10) const;

  private:
    using Fn2 = std::function<double(double, double)>;

    ChannelModel(std::string name, ChannelKind kind, Fn2 phi, Fn2 integral);

    // Grid check of the transfer-function axioms: range, monotone in x,
    // strictly increasing in eps for x > 0, phi(x;0) = 0.
    void validate_on_grid() const;

    std::string name_;
    ChannelKind kind_;
    Fn2 phi_;
    Fn2 integral_;  // empty when no closed form
};

// Parses a JSON channel config (fields: name, eps_grid, x_grid_size,
// phi_tables) and validates it. io_error on unreadable files,
// validation_error on malformed content.
CustomChannelSpec load_channel_spec(const std::string& path);

}  // namespace scmn

#endif
