// scmn: density-evolution and potential-function analysis for
// spatially-coupled MacKay-Neal codes over generalized erasure channels.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scmn/manifest.hpp"

namespace {

struct SubFlags {
    CLI::App* app = nullptr;

    SubFlags(CLI::App& root, scmn::RunManifest& m, const std::string& name,
             const std::string& desc) {
        app = root.add_subcommand(name, desc);
        app->add_option("--channel", m.channel,
                        "bec | dec | pr2 | path to a JSON channel config");
        app->add_option("--dl", m.dl, "type-1 bit degree");
        app->add_option("--dr", m.dr, "check-side type-1 degree");
        app->add_option("--dg", m.dg, "type-2 bit degree");
        app->add_option("-o,--output", m.output, "output file path");
        app->add_option("--format", m.format, "csv | svg | json")
            ->check(CLI::IsMember({"csv", "svg", "json"}));
    }

    SubFlags& coupling(scmn::RunManifest& m, bool required) {
        auto* L = app->add_option("--L", m.L, "chain length");
        auto* w = app->add_option("--w", m.w, "coupling width");
        if (required) {
            L->required();
            w->required();
        }
        return *this;
    }

    SubFlags& eps(scmn::RunManifest& m, bool required) {
        auto* o = app->add_option("--eps", m.eps, "channel parameter in [0,1]");
        if (required) o->required();
        return *this;
    }

    SubFlags& numeric(scmn::RunManifest& m) {
        app->add_option("--grid", m.grid, "sweep grid size");
        app->add_option("--tol", m.tol, "iteration convergence tolerance");
        app->add_option("--tol-eps", m.tol_eps, "threshold bisection tolerance");
        app->add_option("--max-iter", m.max_iter, "iteration cap");
        return *this;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"analysis toolkit for spatially-coupled MacKay-Neal codes over "
                 "generalized erasure channels"};
    cli.require_subcommand(1);

    scmn::RunManifest m;

    SubFlags sir(cli, m, "sir", "symmetric information rate I(eps)");
    sir.eps(m, true);

    SubFlags sirlim(cli, m, "sir-limit", "eps at which I(eps) equals the rate");
    sirlim.app->add_option("--rate", m.rate, "target rate in (0,1)")->required();

    SubFlags de(cli, m, "de", "uncoupled density evolution from the all-ones state");
    de.eps(m, true).numeric(m);

    SubFlags scde(cli, m, "sc-de", "coupled density evolution over the chain");
    scde.coupling(m, true).eps(m, true).numeric(m);

    SubFlags bp(cli, m, "bp-threshold",
                "largest eps the coupled chain decodes, by bisection");
    bp.coupling(m, true).numeric(m);

    SubFlags curve(cli, m, "potential-curve",
                   "potential along the non-trivial fixed-point curve");
    curve.numeric(m);

    SubFlags pthr(cli, m, "potential-threshold",
                  "largest eps with positive potential at every fixed point");
    pthr.numeric(m);

    SubFlags egap(cli, m, "energy-gap", "worst-case potential margin above eps");
    egap.eps(m, true).numeric(m);

    SubFlags rate(cli, m, "rate", "design rate of the coupled ensemble");
    rate.coupling(m, true);

    SubFlags verify(cli, m, "verify", "run the numerical self-check suite");
    verify.numeric(m);

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? 0 : scmn::kExitValidation;
    }

    for (const auto* sub : cli.get_subcommands()) {
        m.command = sub->get_name();
    }
    if (m.command == "potential-threshold" || m.command == "energy-gap" ||
        m.command == "verify") {
        if (!cli.get_subcommand(m.command)->count("--grid")) {
            m.grid = m.command == "verify" ? 10000 : 4096;
        }
    }
    return scmn::run(m, std::cout);
}
