#include "scmn/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "scmn/coupled.hpp"
#include "scmn/output.hpp"
#include "scmn/potential.hpp"
#include "scmn/verify.hpp"

#include <json.hpp>

namespace scmn {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_f6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

ordered_json manifest_json(const RunManifest& m) {
    ordered_json j;
    j["command"] = m.command;
    j["channel"] = m.channel;
    j["dl"] = m.dl;
    j["dr"] = m.dr;
    j["dg"] = m.dg;
    j["L"] = m.L;
    j["w"] = m.w;
    j["eps"] = m.eps;
    j["rate"] = m.rate;
    j["grid"] = m.grid;
    j["tol"] = m.tol;
    j["tol_eps"] = m.tol_eps;
    j["max_iter"] = m.max_iter;
    j["output"] = m.output;
    j["format"] = m.format;
    return j;
}

// "# key=value" comment lines naming every knob a command read, so each
// artifact is reproducible from its own header.
std::string comment_header(const RunManifest& m, std::initializer_list<const char*> keys) {
    const ordered_json j = manifest_json(m);
    std::ostringstream os;
    os << "# scmn " << m.command << "\n#";
    for (const char* k : keys) {
        const auto& v = j.at(k);
        os << ' ' << k << '=';
        if (v.is_string()) {
            os << v.get<std::string>();
        } else if (v.is_number_integer()) {
            os << v.get<long long>();
        } else {
            os << format_g12(v.get<double>());
        }
    }
    os << "\n";
    return os.str();
}

void require_format(const RunManifest& m, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (m.format == a) return;
    }
    throw validation_error("format '" + m.format + "' not supported by command '" +
                           m.command + "'");
}

void emit_scalar(const RunManifest& m, const char* key, double value,
                 std::ostream& out) {
    out << format_f6(value) << "\n";
    if (m.output.empty()) return;
    require_format(m, {"csv", "json"});
    if (m.format == "json") {
        ordered_json j = manifest_json(m);
        j[key] = value;
        write_text_file(m.output, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << comment_header(m, {"channel", "dl", "dr", "dg", "L", "w", "eps", "rate"});
        os << key << "\n" << format_g12(value) << "\n";
        write_text_file(m.output, os.str());
    }
}

ChannelModel model_for(const RunManifest& m) { return ChannelModel::resolve(m.channel); }

DegreeProfile degrees_for(const RunManifest& m) {
    return DegreeProfile(m.dl, m.dr, m.dg);
}

int cmd_sir(const RunManifest& m, std::ostream& out) {
    emit_scalar(m, "sir", model_for(m).sir(m.eps), out);
    return kExitOk;
}

int cmd_sir_limit(const RunManifest& m, std::ostream& out) {
    emit_scalar(m, "eps_sir", model_for(m).sir_limit(m.rate), out);
    return kExitOk;
}

int cmd_rate(const RunManifest& m, std::ostream& out) {
    emit_scalar(m, "rate", rate(degrees_for(m), m.L, m.w), out);
    return kExitOk;
}

int cmd_de(const RunManifest& m, std::ostream& out) {
    const DegreeProfile d = degrees_for(m);
    const ChannelModel model = model_for(m);
    std::ostringstream trace;
    std::function<void(int, const DeState&)> on_iter;
    const bool tracing = !m.output.empty() && m.format == "csv";
    if (tracing) {
        trace << comment_header(m, {"channel", "dl", "dr", "dg", "eps", "max_iter", "tol"});
        trace << "iter,x1,x2\n";
        on_iter = [&trace](int t, const DeState& s) {
            trace << t << ',' << format_g12(s.x1) << ',' << format_g12(s.x2) << "\n";
        };
    }
    const DeRunResult r = de_run(d, model, m.eps, m.max_iter, m.tol, on_iter);
    out << "converged_to_zero=" << (r.converged_to_zero ? 1 : 0)
        << " iterations=" << r.iterations << " x1=" << format_g12(r.state.x1)
        << " x2=" << format_g12(r.state.x2) << "\n";
    if (!m.output.empty()) {
        require_format(m, {"csv", "json"});
        if (m.format == "json") {
            ordered_json j = manifest_json(m);
            j["converged_to_zero"] = r.converged_to_zero;
            j["iterations"] = r.iterations;
            j["x1"] = r.state.x1;
            j["x2"] = r.state.x2;
            write_text_file(m.output, j.dump(2) + "\n");
        } else {
            write_text_file(m.output, trace.str());
        }
    }
    return kExitOk;
}

int cmd_sc_de(const RunManifest& m, std::ostream& out) {
    const DegreeProfile d = degrees_for(m);
    const ChannelModel model = model_for(m);
    const CouplingConfig cfg{m.L, m.w, m.eps};
    std::ostringstream trace;
    std::function<void(int, const DeProfile&)> on_iter;
    const bool tracing = !m.output.empty() && m.format == "csv";
    if (tracing) {
        trace << comment_header(
            m, {"channel", "dl", "dr", "dg", "L", "w", "eps", "max_iter", "tol"});
        trace << "iter,section,x1,x2\n";
        on_iter = [&trace](int t, const DeProfile& p) {
            for (int i = p.lo_section(); i <= p.hi_section(); ++i) {
                trace << t << ',' << i << ',' << format_g12(p.at(i).x1) << ','
                      << format_g12(p.at(i).x2) << "\n";
            }
        };
    }
    const ScRunResult r = sc_de_run(d, model, cfg, m.max_iter, m.tol, on_iter);
    out << "decoded=" << (r.decoded ? 1 : 0) << " iterations=" << r.iterations
        << " interior_max=" << format_g12(r.profile.interior_max()) << "\n";
    if (!m.output.empty()) {
        require_format(m, {"csv", "json"});
        if (m.format == "json") {
            ordered_json j = manifest_json(m);
            j["decoded"] = r.decoded;
            j["iterations"] = r.iterations;
            ordered_json prof = ordered_json::array();
            for (int i = r.profile.lo_section(); i <= r.profile.hi_section(); ++i) {
                prof.push_back({{"section", i},
                                {"x1", r.profile.at(i).x1},
                                {"x2", r.profile.at(i).x2}});
            }
            j["final_profile"] = prof;
            write_text_file(m.output, j.dump(2) + "\n");
        } else {
            write_text_file(m.output, trace.str());
        }
    }
    return kExitOk;
}

int cmd_bp_threshold(const RunManifest& m, std::ostream& out) {
    const double thr =
        bp_threshold(degrees_for(m), model_for(m), m.L, m.w, m.tol_eps, m.max_iter, m.tol);
    emit_scalar(m, "bp_threshold", thr, out);
    return kExitOk;
}

int cmd_potential_curve(const RunManifest& m, std::ostream& out) {
    const DegreeProfile d = degrees_for(m);
    const ChannelModel model = model_for(m);
    const auto samples = potential_curve(d, model, m.grid);
    int valid = 0;
    double min_u = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (s.valid) {
            ++valid;
            min_u = std::min(min_u, *s.U);
        }
    }
    if (m.output.empty()) {
        out << "samples=" << samples.size() << " valid=" << valid
            << " min_U=" << format_g12(min_u) << "\n";
        return kExitOk;
    }
    require_format(m, {"csv", "json", "svg"});
    if (m.format == "csv") {
        std::ostringstream os;
        os << comment_header(m, {"channel", "dl", "dr", "dg", "grid"});
        os << "x1,x2,psi,phi_bracket,eps,U,valid\n";
        for (const auto& s : samples) {
            os << format_g12(s.x1) << ',' << format_g12(s.x2) << ',' << format_g12(s.psi)
               << ',' << format_g12(s.phi_bracket) << ',' << format_g12(s.eps) << ','
               << format_g12(s.U) << ',' << (s.valid ? 1 : 0) << "\n";
        }
        write_text_file(m.output, os.str());
    } else if (m.format == "json") {
        ordered_json j = manifest_json(m);
        ordered_json arr = ordered_json::array();
        for (const auto& s : samples) {
            ordered_json e;
            e["x1"] = s.x1;
            e["x2"] = s.x2;
            e["psi"] = s.psi;
            e["phi_bracket"] = s.phi_bracket;
            if (s.eps) e["eps"] = *s.eps;
            if (s.U) e["U"] = *s.U;
            e["valid"] = s.valid;
            arr.push_back(std::move(e));
        }
        j["samples"] = std::move(arr);
        write_text_file(m.output, j.dump(2) + "\n");
    } else {
        SvgSeries series;
        series.label = model.name();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (const auto& s : samples) {
            series.points.emplace_back(s.x1, s.valid ? *s.U : nan);
        }
        write_text_file(m.output,
                        render_svg_plot("potential at non-trivial fixed points", "x1",
                                        "U", {series}));
    }
    out << m.output << "\n";
    return kExitOk;
}

int cmd_potential_threshold(const RunManifest& m, std::ostream& out) {
    const ThresholdReport rep =
        potential_threshold(degrees_for(m), model_for(m), m.grid);
    out << format_f6(rep.eps_star) << "\n";
    if (!m.output.empty()) {
        require_format(m, {"csv", "json"});
        if (m.format == "json") {
            ordered_json j = manifest_json(m);
            j["eps_star"] = rep.eps_star;
            j["eps_sir"] = rep.eps_sir;
            j["min_nontrivial_U"] = rep.min_nontrivial_U;
            j["valid_samples"] = rep.valid_samples;
            write_text_file(m.output, j.dump(2) + "\n");
        } else {
            std::ostringstream os;
            os << comment_header(m, {"channel", "dl", "dr", "dg", "grid"});
            os << "eps_star,eps_sir,min_nontrivial_U,valid_samples\n";
            os << format_g12(rep.eps_star) << ',' << format_g12(rep.eps_sir) << ','
               << format_g12(rep.min_nontrivial_U) << ',' << rep.valid_samples << "\n";
            write_text_file(m.output, os.str());
        }
    }
    return kExitOk;
}

int cmd_energy_gap(const RunManifest& m, std::ostream& out) {
    emit_scalar(m, "energy_gap",
                energy_gap(degrees_for(m), model_for(m), m.eps, m.grid), out);
    return kExitOk;
}

int cmd_verify(const RunManifest& m, std::ostream& out) {
    VerifyOptions opt{degrees_for(m)};
    opt.curve_grid = m.grid;
    // Built-ins are always covered; a config path adds the custom channel.
    opt.models = {ChannelModel::bec(), ChannelModel::dec(), ChannelModel::pr2()};
    if (m.channel != "bec" && m.channel != "dec" && m.channel != "pr2") {
        opt.models.push_back(ChannelModel::resolve(m.channel));
    }
    const auto checks = run_verify(opt);
    int failed = 0;
    for (const auto& c : checks) {
        if (!c.pass) ++failed;
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name
            << "  observed=" << format_g12(c.observed) << " " << c.cmp << " "
            << format_g12(c.limit);
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    out << "verify: " << (checks.size() - failed) << "/" << checks.size()
        << " checks passed\n";
    if (!m.output.empty()) {
        require_format(m, {"json"});
        ordered_json j = manifest_json(m);
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            arr.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"observed", c.observed},
                           {"cmp", c.cmp},
                           {"limit", c.limit},
                           {"detail", c.detail}});
        }
        j["checks"] = std::move(arr);
        write_text_file(m.output, j.dump(2) + "\n");
    }
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::string RunManifest::to_json() const { return manifest_json(*this).dump(2) + "\n"; }

RunManifest RunManifest::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("manifest parse: ") + e.what());
    }
    RunManifest m;
    try {
        m.command = j.at("command").get<std::string>();
        if (j.contains("channel")) m.channel = j["channel"].get<std::string>();
        if (j.contains("dl")) m.dl = j["dl"].get<int>();
        if (j.contains("dr")) m.dr = j["dr"].get<int>();
        if (j.contains("dg")) m.dg = j["dg"].get<int>();
        if (j.contains("L")) m.L = j["L"].get<int>();
        if (j.contains("w")) m.w = j["w"].get<int>();
        if (j.contains("eps")) m.eps = j["eps"].get<double>();
        if (j.contains("rate")) m.rate = j["rate"].get<double>();
        if (j.contains("grid")) m.grid = j["grid"].get<int>();
        if (j.contains("tol")) m.tol = j["tol"].get<double>();
        if (j.contains("tol_eps")) m.tol_eps = j["tol_eps"].get<double>();
        if (j.contains("max_iter")) m.max_iter = j["max_iter"].get<int>();
        if (j.contains("output")) m.output = j["output"].get<std::string>();
        if (j.contains("format")) m.format = j["format"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("manifest fields: ") + e.what());
    }
    return m;
}

int run(const RunManifest& m, std::ostream& out) {
    try {
        if (m.command == "sir") return cmd_sir(m, out);
        if (m.command == "sir-limit") return cmd_sir_limit(m, out);
        if (m.command == "de") return cmd_de(m, out);
        if (m.command == "sc-de") return cmd_sc_de(m, out);
        if (m.command == "bp-threshold") return cmd_bp_threshold(m, out);
        if (m.command == "potential-curve") return cmd_potential_curve(m, out);
        if (m.command == "potential-threshold") return cmd_potential_threshold(m, out);
        if (m.command == "energy-gap") return cmd_energy_gap(m, out);
        if (m.command == "rate") return cmd_rate(m, out);
        if (m.command == "verify") return cmd_verify(m, out);
        throw validation_error("unknown command: " + m.command);
    } catch (const no_solution_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoSolution;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace scmn
