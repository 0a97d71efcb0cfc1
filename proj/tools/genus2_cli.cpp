#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "genus2/genus2.hpp"

using namespace genus2;

#ifndef GENUS2_DATA_DIR
#define GENUS2_DATA_DIR "data"
#endif

namespace {

enum Exit { ok = 0, domain_failure = 1, verification_failure = 2 };

// flag name -> RunConfig key
const std::vector<std::pair<std::string, std::string>> value_flags{
    {"tau", "complex modular parameter, e.g. 0+1.2i"},
    {"w", "puncture separation"},
    {"rho", "sewing parameter"},
    {"chi", "rho / (-w^2); replaces rho"},
    {"K", "truncation of the moment matrix"},
    {"q-order", "q-expansion order"},
    {"cutoff", "lattice norm cutoff (alpha, alpha) <= cutoff"},
    {"necklace-len", "necklace length bound"},
    {"necklace-label", "largest label in necklace sums"},
    {"rank", "number of free bosons"},
    {"lattice", "fixture name (A1, A1_squared, 2I2, A2) or path to a JSON Gram file"},
    {"suite", "all, oracle, exact, geometry, duality, degeneration, modular, lattice, compare"},
    {"mode", "numeric or exact"},
    {"output", "write the JSON report here instead of stdout"},
    {"csv", "sweep table path (stdout when empty)"},
    {"sweep", "rho-ray or w-halving"},
    {"steps", "number of sweep points"},
    {"rho-to", "end of the rho ray"},
    {"halvings", "number of w-halvings"},
};

std::string key_of(std::string flag)
{
    for (char& c : flag)
        if (c == '-') c = '_';
    return flag;
}

std::string timestamp()
{
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

EvenLattice load_lattice(const std::string& spec)
{
    if (spec.find('/') != std::string::npos || spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return EvenLattice::load(spec);
    const char* env = std::getenv("GENUS2_DATA_DIR");
    std::string dir = env && *env ? env : GENUS2_DATA_DIR;
    return EvenLattice::load(dir + "/lattices/" + spec + ".json");
}

void emit(const RunConfig& cfg, const json& result)
{
    json report = {{"tool", "genus2"}, {"command", cfg.command}, {"generated_at", timestamp()},
                   {"config", cfg.to_json()}, {"result", result}};
    if (cfg.output.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw std::invalid_argument("output: cannot write " + cfg.output);
    out << report.dump(2) << "\n";
}

int run_omega(const RunConfig& cfg)
{
    SewingPoint p = cfg.point();
    json j = to_json(period_matrix(p, cfg.K, cfg.q_order));
    j["point"] = to_json(p);
    emit(cfg, j);
    return ok;
}

int run_z2(const RunConfig& cfg)
{
    SewingPoint p = cfg.point();
    PartitionValue z = heisenberg_Z2(p, cfg.K, cfg.rank, cfg.q_order);
    json j = {{"value", to_json(z.value)}, {"formula", z.formula}, {"tail_bound", z.tail_bound},
              {"branch", z.branch_tag},    {"rank", cfg.rank},     {"K", cfg.K},
              {"point", to_json(p)}};
    emit(cfg, j);
    return ok;
}

int run_theta(const RunConfig& cfg)
{
    SewingPoint p = cfg.point();
    EvenLattice L = load_lattice(cfg.lattice);
    PeriodMatrix pm = period_matrix(p, cfg.K, cfg.q_order);
    ThetaValue th = siegel_theta(L, pm.omega, cfg.cutoff);
    json j = {{"lattice", L.name()},        {"rank", L.rank()},       {"value", to_json(th.value)},
              {"tail_bound", th.tail_bound}, {"n_terms", th.n_terms}, {"cutoff", th.norm_cutoff},
              {"omega", to_json(pm.omega)},  {"point", to_json(p)}};
    emit(cfg, j);
    return ok;
}

int run_zlattice(const RunConfig& cfg)
{
    SewingPoint p = cfg.point();
    EvenLattice L = load_lattice(cfg.lattice);
    PartitionValue z = heisenberg_Z2(p, cfg.K, L.rank(), cfg.q_order);
    ThetaValue th = siegel_theta(L, period_matrix(p, cfg.K, cfg.q_order).omega, cfg.cutoff);
    json j = {{"lattice", L.name()},
              {"value", to_json(z.value * th.value)},
              {"heisenberg", to_json(z.value)},
              {"theta", to_json(th.value)},
              {"tail_bound", std::abs(z.value) * th.tail_bound + std::abs(th.value) * z.tail_bound},
              {"point", to_json(p)}};
    emit(cfg, j);
    return ok;
}

int run_verify(const RunConfig& cfg)
{
    json criteria = json::array();
    bool all = true;
    for (auto& f : suite_functions(cfg.suite)) {
        CriterionReport r = f();
        std::cout << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.number << " " << r.name << "\n";
        for (const auto& c : r.checks) std::cout << "  " << summary_line(c) << "\n";
        all = all && r.pass();
        criteria.push_back(to_json(r));
    }
    json j = {{"suite", cfg.suite}, {"pass", all}, {"criteria", criteria}};
    if (cfg.mode == "exact") {
        j["catalan"] = to_json(catalan_series(10), 0, 10);
        auto t = trace_identity(heisenberg_dimensions(1, 10), 10);
        j["trace_identity_rank1"] = to_json(t.from_quasi_primaries, 0, 10);
    }
    if (!cfg.output.empty()) emit(cfg, j);
    return all ? ok : verification_failure;
}

std::string csv_cplx(cplx z)
{
    std::ostringstream o;
    o.precision(17);
    o << z.real() << "," << z.imag();
    return o.str();
}

int run_sweep(const RunConfig& cfg)
{
    std::ofstream file;
    if (!cfg.csv.empty()) {
        file.open(cfg.csv);
        if (!file) throw std::invalid_argument("csv: cannot write " + cfg.csv);
    }
    std::ostream& out = cfg.csv.empty() ? std::cout : file;
    int skipped = 0, flagged = 0;
    if (cfg.sweep == "rho-ray") {
        out << "index,tau_re,tau_im,w_re,w_im,rho_re,rho_im,z_re,z_im,abs_z,tail_bound,spectral_radius,jump,status\n";
        cplx start = cfg.rho_value(), prev = 0;
        bool have_prev = false;
        for (int j = 0; j < cfg.steps; ++j) {
            cplx rho = cfg.steps == 1 ? start : start + (cfg.rho_to - start) * (double(j) / (cfg.steps - 1));
            SewingPoint p{cfg.tau, cfg.w, rho};
            out << j << "," << csv_cplx(p.tau) << "," << csv_cplx(p.w) << "," << csv_cplx(rho) << ",";
            try {
                PartitionValue z = heisenberg_Z2(p, cfg.K, cfg.rank, cfg.q_order);
                double sr = rho == 0.0 ? 0.0 : SewingSystem(p, cfg.K, cfg.q_order).spectral_radius();
                // a sign flip of the square root shows up as Z closer to -Z_prev than Z_prev
                bool jump = have_prev && std::abs(z.value - prev) > std::abs(z.value + prev);
                flagged += jump;
                out << csv_cplx(z.value) << "," << std::abs(z.value) << "," << z.tail_bound << "," << sr << ","
                    << (jump ? 1 : 0) << ",ok\n";
                prev = z.value;
                have_prev = true;
            } catch (const domain_error& e) {
                ++skipped;
                out << ",,,,,,skipped: " << e.what() << "\n";
            }
        }
    } else {
        if (!cfg.chi) throw std::invalid_argument("chi: the w-halving sweep needs chi");
        if (cfg.chi->imag() != 0) throw std::invalid_argument("chi: the w-halving sweep needs real chi");
        double chi = cfg.chi->real();
        out << "index,w_re,w_im,chi,T_re,T_im,scaled_re,scaled_im,residual_re,residual_im,abs_residual,ratio,status\n";
        double prev = 0;
        for (int j = 0; j < cfg.steps; ++j) {
            cplx w = cfg.w * std::pow(0.5, j);
            out << j << "," << csv_cplx(w) << "," << chi << ",";
            try {
                RatioRow r = ratio_at(cfg.tau, w, chi, cfg.K);
                double res = std::abs(r.residual);
                out << csv_cplx(r.T) << "," << csv_cplx(r.scaled) << "," << csv_cplx(r.residual) << "," << res << ",";
                if (prev > 0) out << prev / res;
                out << ",ok\n";
                prev = res;
            } catch (const domain_error& e) {
                ++skipped;
                prev = 0;
                out << ",,,,,,,,skipped: " << e.what() << "\n";
            }
        }
    }
    std::cerr << "sweep: " << cfg.steps << " points, " << skipped << " skipped, " << flagged << " branch jumps flagged\n";
    if (!cfg.output.empty())
        emit(cfg, {{"points", cfg.steps}, {"skipped", skipped}, {"branch_jumps", flagged}, {"csv", cfg.csv}});
    return ok;
}

int run_compare(const RunConfig& cfg)
{
    double chi = cfg.chi->real();
    RatioReport rep = ratio_comparison(cfg.tau, cfg.w, chi, cfg.halvings, cfg.K);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"w", to_json(r.w)},
                        {"T", to_json(r.T)},
                        {"scaled", to_json(r.scaled)},
                        {"residual", to_json(r.residual)}});
    json j = {{"tau", to_json(rep.tau)}, {"chi", chi}, {"K", cfg.K}, {"rows", rows}, {"ratios", rep.ratios},
              {"catalan_value", catalan_value(chi)}};
    if (cfg.mode == "exact") {
        j["catalan_series"] = to_json(catalan_series(10), 0, 10);
        j["G_series"] = to_json(g_chi_series(10), 0, 10);
    }
    emit(cfg, j);
    return ok;
}

int dispatch(const RunConfig& cfg)
{
    if (cfg.command == "omega") return run_omega(cfg);
    if (cfg.command == "z2") return run_z2(cfg);
    if (cfg.command == "theta") return run_theta(cfg);
    if (cfg.command == "zlattice") return run_zlattice(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "sweep") return run_sweep(cfg);
    return run_compare(cfg);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Genus-two self-sewn torus: period matrices, partition functions and checks"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; flags override it");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : RunConfig::commands()) {
        CLI::App* sub = app.add_subcommand(name);
        subs[name] = sub;
        sub->add_option("--config", config_path, "key = value file; flags override it");
        for (const auto& [flag, help] : value_flags) sub->add_option("--" + flag, values[name][flag], help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return domain_failure;
    }

    RunConfig cfg;
    try {
        cfg = RunConfig::defaults();
        if (!config_path.empty()) cfg.apply_file(config_path);
        for (const auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            cfg.command = name;
            if (sub->count("--rho") && sub->count("--chi")) throw std::invalid_argument("chi: give rho or chi, not both");
            for (const auto& [flag, help] : value_flags)
                if (sub->count("--" + flag)) cfg.set(key_of(flag), values[name][flag]);
        }
        cfg.validate();
        return dispatch(cfg);
    } catch (const domain_error& e) {
        std::cerr << "domain error (" << cfg.command << "): " << e.what() << "\n";
        return domain_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument (" << cfg.command << "): " << e.what() << "\n";
        return domain_failure;
    } catch (const std::exception& e) {
        std::cerr << "error (" << cfg.command << "): " << e.what() << "\n";
        return domain_failure;
    }
}
