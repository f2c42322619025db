#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "modrop/specfun.hpp"
#include "modrop/verify.hpp"

using namespace modrop;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Flags {
    std::string config;
    std::optional<double> b;
    std::optional<std::string> s, s1, s2, s3, u, v;
    std::optional<double> L;
    std::optional<int> N;
    std::optional<double> tol, lift, T;
    std::optional<int> jobs;
    std::optional<std::uint64_t> seed;
};

void add_config_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file (default: $MODROP_CONFIG)");
    cmd->add_option("--b", f.b, "Scale b > 0");
    cmd->add_option("--s", f.s, "Spin of one-site checks, re+imi");
    cmd->add_option("--s1", f.s1, "Spin of site 1, re+imi");
    cmd->add_option("--s2", f.s2, "Spin of site 2, re+imi");
    cmd->add_option("--s3", f.s3, "Spin of site 3, re+imi");
    cmd->add_option("--u", f.u, "Spectral parameter u, re+imi");
    cmd->add_option("--v", f.v, "Spectral parameter v, re+imi");
    cmd->add_option("--L", f.L, "Half-width of the sampling box");
    cmd->add_option("--N", f.N, "Grid points per coordinate");
    cmd->add_option("--tol", f.tol, "Quadrature tolerance");
    cmd->add_option("--lift", f.lift, "Lift of the dilogarithm contour");
    cmd->add_option("--T", f.T, "Truncation of Fourier integrals");
    cmd->add_option("--jobs", f.jobs, "Worker threads");
    cmd->add_option("--seed", f.seed, "Recorded seed (all checks are deterministic)");
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
}

RunConfig effective_config(const Flags& f) {
    RunConfig c;
    std::string path = f.config;
    if (path.empty()) {
        if (const char* env = std::getenv("MODROP_CONFIG"); env != nullptr) path = env;
    }
    if (!path.empty()) apply_json(read_json(path), c);
    if (f.b) c.b = *f.b;
    if (f.s) c.s = parse_complex(*f.s);
    if (f.s1) c.s1 = parse_complex(*f.s1);
    if (f.s2) c.s2 = parse_complex(*f.s2);
    if (f.s3) c.s3 = parse_complex(*f.s3);
    if (f.u) c.u = parse_complex(*f.u);
    if (f.v) c.v = parse_complex(*f.v);
    if (f.L) c.grid_L = *f.L;
    if (f.N) c.grid_N = *f.N;
    if (f.tol) c.quad_tol = *f.tol;
    if (f.lift) c.contour_lift = *f.lift;
    if (f.T) c.truncation = *f.T;
    if (f.jobs) c.jobs = *f.jobs;
    if (f.seed) c.seed = *f.seed;
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) out.push_back(tok);
        }
    }
    return out;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
    Flags flags;
    std::optional<std::string> suite;
    std::vector<std::string> relations;
    bool slow = false;
    std::optional<std::string> report;
    bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
    RunConfig cfg = effective_config(a.flags);
    if (a.suite) cfg.suite = *a.suite;
    if (a.slow) cfg.suite = "slow";
    if (!a.relations.empty()) cfg.relations = split_list(a.relations);
    if (a.report) cfg.report_path = *a.report;
    if (cfg.report_path.empty()) cfg.report_path = "modrop-report.json";
    cfg.validate();

    const auto reports = cfg.relations.empty() ? run_suite(cfg.suite, cfg) : run_relations(cfg.relations, cfg);
    const auto doc = report_document(reports, cfg);
    write_text(cfg.report_path, doc.dump(2) + "\n");
    std::cout << (a.json ? doc.dump(2) + "\n" : render_table(doc));
    return summarize(reports).failed == 0 ? kPass : kFail;
}

// ---- eval ---------------------------------------------------------------------

struct EvalArgs {
    Flags flags;
    std::string function;
    std::string z = "0";
    std::string a = "0";
    std::optional<std::string> to;
    int points = 11;
    std::optional<std::string> csv;
};

struct Value {
    cplx v;
    double err;
};

Value eval_at(const GammaEvaluator& g, const std::string& fn, cplx a, cplx z) {
    if (fn == "gamma") {
        const auto e = g.gamma_estimate(z);
        return {e.value, e.rel_error};
    }
    if (fn == "D") {
        const double err = g.gamma_estimate(z + a).rel_error + g.gamma_estimate(z - a).rel_error;
        return {g.D(a, z), err};
    }
    const cplx arg = -g.params().omega_pp - 2.0 * a;
    return {g.A(a), g.gamma_estimate(arg).rel_error};
}

int cmd_eval(const EvalArgs& a) {
    const RunConfig cfg = effective_config(a.flags);
    cfg.validate();
    const GammaEvaluator g(make_params(cfg.b), cfg.numerics());
    const cplx z0 = parse_complex(a.z);
    const cplx av = parse_complex(a.a);
    try {
        if (!a.to) {
            const auto r = eval_at(g, a.function, av, z0);
            std::cout << std::setprecision(17) << "value " << format_complex(r.v) << "\n"
                      << std::setprecision(3) << "rel_error " << r.err << "\n";
            return kPass;
        }
        if (a.points < 2) throw DomainError("eval: --points must be at least 2");
        const cplx z1 = parse_complex(*a.to);
        std::ostringstream out;
        out << std::setprecision(17) << "z_re,z_im,value_re,value_im,rel_error\n";
        for (int k = 0; k < a.points; ++k) {
            const cplx z = z0 + (z1 - z0) * (static_cast<double>(k) / (a.points - 1));
            const auto r = eval_at(g, a.function, av, z);
            out << z.real() << "," << z.imag() << "," << r.v.real() << "," << r.v.imag() << "," << r.err << "\n";
        }
        if (a.csv) write_text(*a.csv, out.str());
        else std::cout << out.str();
        return kPass;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\nlattice point: " << format_complex(e.lattice_point()) << "\n";
        return kUsage;
    }
}

// ---- convergence ----------------------------------------------------------------

struct ConvergenceArgs {
    Flags flags;
    std::string relation;
    std::vector<std::string> grids;
    std::optional<std::string> csv;
};

int cmd_convergence(const ConvergenceArgs& a) {
    const RunConfig cfg = effective_config(a.flags);
    cfg.validate();
    std::vector<double> res;
    for (const auto& tok : split_list(a.grids)) {
        try {
            std::size_t used = 0;
            res.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError("convergence: bad resolution '" + tok + "'");
        }
    }
    if (res.empty()) throw DomainError("convergence: empty resolution list");
    const auto table = convergence_series(a.relation, res, cfg);
    const std::string csv = to_csv(table);
    if (a.csv) write_text(*a.csv, csv);
    else std::cout << csv;
    if (!table.non_increasing) {
        std::cerr << "residual grows by more than 10% along " << table.parameter << "\n";
        return kFail;
    }
    return kPass;
}

// ---- report -----------------------------------------------------------------------

int cmd_report(const std::string& path) {
    std::cout << render_table(read_json(path));
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of the R-operator for the modular double.\n"
                 "Complex values are written re+imi without spaces, e.g. 0.3-0.1i, 2i, -i."};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run relation checks and write a JSON report");
    add_config_flags(verify, va.flags);
    verify->add_option("--suite", va.suite, "fast, full or slow");
    verify->add_option("--relation", va.relations, "Relation ids (repeatable or comma-separated)");
    verify->add_flag("--slow", va.slow, "Same as --suite slow");
    verify->add_option("--report", va.report, "Report path (default modrop-report.json)");
    verify->add_flag("--json", va.json, "Print the JSON document instead of the table");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Evaluate gamma, D or A");
    add_config_flags(eval, ea.flags);
    eval->add_option("function", ea.function, "gamma, D or A")->required()->check(CLI::IsMember({"gamma", "D", "A"}));
    eval->add_option("--z", ea.z, "Argument z (start of the segment with --to)");
    eval->add_option("--a", ea.a, "Index a of D and A");
    eval->add_option("--to", ea.to, "End of a segment to sweep");
    eval->add_option("--points", ea.points, "Points on the segment");
    eval->add_option("--csv", ea.csv, "Write the sweep to this file");

    ConvergenceArgs ca;
    auto* conv = app.add_subcommand("convergence", "Residual against resolution, as CSV");
    add_config_flags(conv, ca.flags);
    conv->add_option("--relation", ca.relation, "YB1 (alias YB), YB0 or FourierD")->required();
    conv->add_option("--grids,--resolutions", ca.grids, "Grid sizes N, or truncations T for FourierD")->required();
    conv->add_option("--csv", ca.csv, "Output path (default stdout)");

    std::string report_path;
    auto* report = app.add_subcommand("report", "Render a JSON report as a text table");
    report->add_option("path", report_path, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*verify) return cmd_verify(va);
        if (*eval) return cmd_eval(ea);
        if (*conv) return cmd_convergence(ca);
        return cmd_report(report_path);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\nlattice point: " << format_complex(e.lattice_point()) << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
