#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "report.hpp"
#include "sewing.hpp"

namespace genus2 {

struct RunConfig {
    std::string command = "omega";
    cplx tau{0.0, 1.2};
    cplx w{0.7, 0.4};
    std::optional<cplx> rho = cplx(0.01, 0.0);
    std::optional<cplx> chi;
    int K = default_K;
    int q_order = 20;
    long long cutoff = 12;
    int necklace_len = 8;
    int necklace_label = 4;
    int rank = 1;
    std::string lattice = "A1";
    std::string suite = "all";
    std::string mode = "numeric";
    std::string output;
    std::string csv;
    std::string sweep = "rho-ray";
    int steps = 8;
    cplx rho_to{0.05, 0.0};
    int halvings = 3;

    static const std::set<std::string>& commands()
    {
        static const std::set<std::string> c{"omega", "z2", "theta", "zlattice", "verify", "sweep", "compare"};
        return c;
    }
    static const std::set<std::string>& suites()
    {
        static const std::set<std::string> s{"all",          "oracle",  "exact",   "geometry", "duality",
                                             "degeneration", "modular", "lattice", "compare"};
        return s;
    }

    // Built-in defaults with GENUS2_DEFAULT_K applied.
    static RunConfig defaults()
    {
        RunConfig c;
        if (const char* k = std::getenv("GENUS2_DEFAULT_K"); k && *k) c.set("K", k);
        return c;
    }

    void set(const std::string& key, const std::string& value)
    {
        auto fail = [&](const std::string& why) { throw std::invalid_argument(key + ": " + why); };
        auto as_int = [&]() -> long long {
            try {
                std::size_t used = 0;
                long long v = std::stoll(value, &used);
                if (used != value.size()) fail("not an integer: " + value);
                return v;
            } catch (const std::logic_error&) {
                fail("not an integer: " + value);
            }
            return 0;
        };
        auto as_cplx = [&]() -> cplx {
            try {
                return parse_complex(value);
            } catch (const std::invalid_argument&) {
                fail("not a complex literal: " + value);
            }
            return 0.0;
        };
        if (key == "command") {
            if (!commands().count(value)) fail("unknown command " + value);
            command = value;
        } else if (key == "tau") tau = as_cplx();
        else if (key == "w") w = as_cplx();
        else if (key == "rho") {
            rho = as_cplx();
            chi.reset();
        } else if (key == "chi") {
            chi = as_cplx();
            rho.reset();
        } else if (key == "K") K = int(as_int());
        else if (key == "q_order") q_order = int(as_int());
        else if (key == "cutoff") cutoff = as_int();
        else if (key == "necklace_len") necklace_len = int(as_int());
        else if (key == "necklace_label") necklace_label = int(as_int());
        else if (key == "rank") rank = int(as_int());
        else if (key == "lattice") lattice = value;
        else if (key == "suite") {
            if (!suites().count(value)) fail("unknown suite " + value);
            suite = value;
        } else if (key == "mode") {
            if (value != "numeric" && value != "exact") fail("mode is numeric or exact");
            mode = value;
        } else if (key == "output") output = value;
        else if (key == "csv") csv = value;
        else if (key == "sweep") {
            if (value != "rho-ray" && value != "w-halving") fail("sweep is rho-ray or w-halving");
            sweep = value;
        } else if (key == "steps") steps = int(as_int());
        else if (key == "rho_to") rho_to = as_cplx();
        else if (key == "halvings") halvings = int(as_int());
        else
            throw std::invalid_argument("unknown key " + key);
    }

    // key = value lines; '#' starts a comment.
    void apply_text(const std::string& text)
    {
        std::istringstream in(text);
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r");
                auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(n) + ": expected key = value");
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    void apply_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config: cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        apply_text(ss.str());
    }

    std::string to_text() const
    {
        std::ostringstream o;
        auto line = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
        line("command", command);
        line("tau", format_complex(tau));
        line("w", format_complex(w));
        if (rho) line("rho", format_complex(*rho));
        if (chi) line("chi", format_complex(*chi));
        line("K", std::to_string(K));
        line("q_order", std::to_string(q_order));
        line("cutoff", std::to_string(cutoff));
        line("necklace_len", std::to_string(necklace_len));
        line("necklace_label", std::to_string(necklace_label));
        line("rank", std::to_string(rank));
        line("lattice", lattice);
        line("suite", suite);
        line("mode", mode);
        if (!output.empty()) line("output", output);
        if (!csv.empty()) line("csv", csv);
        line("sweep", sweep);
        line("steps", std::to_string(steps));
        line("rho_to", format_complex(rho_to));
        line("halvings", std::to_string(halvings));
        return o.str();
    }

    json to_json() const
    {
        json j = {{"command", command}, {"tau", genus2::to_json(tau)}, {"w", genus2::to_json(w)}};
        j["rho"] = rho ? genus2::to_json(*rho) : json(nullptr);
        j["chi"] = chi ? genus2::to_json(*chi) : json(nullptr);
        j["K"] = K;
        j["q_order"] = q_order;
        j["cutoff"] = cutoff;
        j["necklace_len"] = necklace_len;
        j["necklace_label"] = necklace_label;
        j["rank"] = rank;
        j["lattice"] = lattice;
        j["suite"] = suite;
        j["mode"] = mode;
        j["output"] = output;
        j["csv"] = csv;
        j["sweep"] = sweep;
        j["steps"] = steps;
        j["rho_to"] = genus2::to_json(rho_to);
        j["halvings"] = halvings;
        return j;
    }

    static RunConfig from_json(const json& j)
    {
        RunConfig c;
        c.command = j.at("command").get<std::string>();
        c.tau = complex_from_json(j.at("tau"));
        c.w = complex_from_json(j.at("w"));
        c.rho = j.at("rho").is_null() ? std::nullopt : std::optional<cplx>(complex_from_json(j.at("rho")));
        c.chi = j.at("chi").is_null() ? std::nullopt : std::optional<cplx>(complex_from_json(j.at("chi")));
        c.K = j.at("K").get<int>();
        c.q_order = j.at("q_order").get<int>();
        c.cutoff = j.at("cutoff").get<long long>();
        c.necklace_len = j.at("necklace_len").get<int>();
        c.necklace_label = j.at("necklace_label").get<int>();
        c.rank = j.at("rank").get<int>();
        c.lattice = j.at("lattice").get<std::string>();
        c.suite = j.at("suite").get<std::string>();
        c.mode = j.at("mode").get<std::string>();
        c.output = j.at("output").get<std::string>();
        c.csv = j.at("csv").get<std::string>();
        c.sweep = j.at("sweep").get<std::string>();
        c.steps = j.at("steps").get<int>();
        c.rho_to = complex_from_json(j.at("rho_to"));
        c.halvings = j.at("halvings").get<int>();
        return c;
    }

    bool operator==(const RunConfig& o) const { return to_json() == o.to_json(); }

    // rho directly, or -w^2 chi.
    cplx rho_value() const
    {
        if (rho) return *rho;
        if (chi) return -w * w * *chi;
        throw std::invalid_argument("rho: neither rho nor chi given");
    }

    SewingPoint point() const { return {tau, w, rho_value()}; }

    // Parameter checks that do not need any evaluation; throws invalid_argument or
    // domain_error naming the parameter.
    void validate() const
    {
        if (!commands().count(command)) throw std::invalid_argument("command: unknown " + command);
        if (!(tau.imag() > 0)) throw domain_error("tau: Im tau must be positive");
        if (K < 1 || K > 80) throw std::invalid_argument("K: must lie in 1..80");
        if (q_order < 1) throw std::invalid_argument("q_order: must be positive");
        if (cutoff < 0) throw std::invalid_argument("cutoff: must be non-negative");
        if (rank < 0) throw std::invalid_argument("rank: must be non-negative");
        if (necklace_len < 0 || necklace_label < 1 || necklace_label > K)
            throw std::invalid_argument("necklace_label: must lie in 1..K");
        if (steps < 0) throw std::invalid_argument("steps: must be non-negative");
        if (halvings < 1) throw std::invalid_argument("halvings: need at least one halving");
        if (mode == "exact" && !(command == "compare" || (command == "verify" && suite == "exact")))
            throw std::invalid_argument("mode: exact output is available for compare and verify --suite exact only");
        if (chi && std::abs(*chi) >= 0.25) throw domain_error("chi: |chi| must be below 1/4");
        if (command == "compare") {
            if (!chi) throw std::invalid_argument("chi: compare needs chi");
            if (chi->imag() != 0) throw std::invalid_argument("chi: compare needs real chi");
            return;
        }
        if (command == "verify" || command == "sweep") return;
        SewingPoint p = point();
        // z2 at rho = 0 is the genus-one limit and needs no sewing
        if (command == "z2" && p.rho == 0.0) return;
        Torus t(tau, q_order);
        if (p.rho == 0.0) throw domain_error("rho: outside sewing domain (rho = 0)");
        if (!in_sewing_domain(t, p)) throw domain_error("rho: outside sewing domain (|w - lattice| <= 2 |rho|^1/2)");
    }
};

} // namespace genus2
