#include "dasep/cli.hpp"

#include "dasep/kernels.hpp"
#include "dasep/linalg.hpp"
#include "dasep/mlq.hpp"
#include "dasep/polyring.hpp"
#include "dasep/simulate.hpp"
#include "dasep/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace dasep::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

// Flags shared by every command that picks a chain.
struct ModelFlags {
    std::string model;
    std::string lambda;
    int n = 0;
    int p = 0;
    int q = 0;
    std::string t = "1";
    std::string u = "1";

    void attach(CLI::App* cmd, bool params) {
        cmd->add_option("--model", model, "asep or dasep (inferred from the other flags if omitted)")
            ->check(CLI::IsMember({"asep", "dasep"}));
        cmd->add_option("--lambda", lambda, "ASEP partition, e.g. 2,1,0");
        cmd->add_option("--n", n, "DASEP ring size");
        cmd->add_option("--p", p, "DASEP number of species");
        cmd->add_option("--q", q, "DASEP number of particles");
        if (params) {
            cmd->add_option("--t", t, "hopping bias, a/b or integer");
            cmd->add_option("--u", u, "mutation bias, a/b or integer");
        }
    }

    Model resolved() const {
        if (model == "asep") return Model::Asep;
        if (model == "dasep") return Model::Dasep;
        if (!lambda.empty()) return Model::Asep;
        if (n != 0 || p != 0 || q != 0) return Model::Dasep;
        throw ValidationError("choose a chain with --lambda (ASEP) or --n/--p/--q (DASEP)");
    }

    Partition partition() const {
        if (lambda.empty()) throw ValidationError("--lambda is required for the ASEP");
        return Partition::parse(lambda);
    }

    ParamPoint point() const { return ParamPoint::make(parse_rational(t), parse_rational(u)); }

    StateSpace space() const {
        return resolved() == Model::Asep ? sector_states(partition()) : dasep_states(n, p, q);
    }

    TransitionKernel kernel() const {
        if (resolved() == Model::Asep) return asep_kernel(partition(), parse_rational(t));
        return dasep_kernel(n, p, q, point());
    }

    json header() const {
        json params = json::object();
        params["t"] = format_rational(parse_rational(t));
        if (resolved() == Model::Asep) {
            params["lambda"] = partition().to_string();
            return json{{"model", "asep"}, {"params", params}};
        }
        params["u"] = format_rational(parse_rational(u));
        params["n"] = n;
        params["p"] = p;
        params["q"] = q;
        return json{{"model", "dasep"}, {"params", params}};
    }
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Rows of (word, value) in the three encodings.
void write_distribution(std::ostream& out, Format format, json header,
                        const std::vector<std::pair<std::string, std::string>>& rows) {
    switch (format) {
        case Format::Text:
            for (const auto& [w, v] : rows) out << w << ' ' << v << '\n';
            break;
        case Format::Csv:
            out << "word,prob\n";
            for (const auto& [w, v] : rows) out << csv_field(w) << ',' << csv_field(v) << '\n';
            break;
        case Format::Json: {
            json states = json::array();
            for (const auto& [w, v] : rows) states.push_back(json{{"word", w}, {"prob", v}});
            header["states"] = states;
            write_json(out, header);
            break;
        }
    }
}

void write_report(std::ostream& out, Format format, const Report& report) {
    switch (format) {
        case Format::Text:
            out << report.to_text();
            break;
        case Format::Json:
            write_json(out, report.to_json());
            break;
        case Format::Csv:
            out << "name,status,anchor\n";
            for (const auto& c : report.checks()) {
                out << csv_field(c.name) << ',' << (c.passed ? "pass" : "fail") << ',' << csv_field(c.anchor) << '\n';
            }
            break;
    }
}

std::vector<Rational> parse_grid(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw ValidationError("grid is empty");
    return out;
}

int run_states(const ModelFlags& m, Format format, std::ostream& out) {
    const auto space = m.space();
    if (format == Format::Text) {
        for (const auto& w : space) out << w.to_string() << '\n';
    } else if (format == Format::Csv) {
        out << "word\n";
        for (const auto& w : space) out << csv_field(w.to_string()) << '\n';
    } else {
        json j = m.resolved() == Model::Asep ? json{{"model", "asep"}, {"params", {{"lambda", m.partition().to_string()}}}}
                                             : json{{"model", "dasep"}, {"params", {{"n", m.n}, {"p", m.p}, {"q", m.q}}}};
        json states = json::array();
        for (const auto& w : space) states.push_back(json{{"word", w.to_string()}});
        j["states"] = states;
        j["count"] = space.size();
        write_json(out, j);
    }
    return 0;
}

int run_kernel(const ModelFlags& m, bool dot, const std::string& laziness, Format format, std::ostream& out) {
    auto kernel = m.kernel();
    if (!laziness.empty()) kernel = kernel.with_laziness(Integer(laziness));
    if (dot) {
        out << kernel.to_dot();
        return 0;
    }
    struct Row {
        std::string from, to, prob;
    };
    std::vector<Row> rows;
    for (std::size_t r = 0; r < kernel.size(); ++r) {
        for (std::size_t c = 0; c < kernel.size(); ++c) {
            const Rational v = kernel.at(r, c);
            if (v != 0) rows.push_back({kernel.states()[r].to_string(), kernel.states()[c].to_string(), format_rational(v)});
        }
    }
    if (format == Format::Text) {
        out << "laziness " << kernel.laziness().get_str() << '\n';
        for (const auto& row : rows) out << row.from << " -> " << row.to << ' ' << row.prob << '\n';
    } else if (format == Format::Csv) {
        out << "from,to,prob\n";
        for (const auto& row : rows) out << csv_field(row.from) << ',' << csv_field(row.to) << ',' << row.prob << '\n';
    } else {
        json j = m.header();
        j["laziness"] = kernel.laziness().get_str();
        json entries = json::array();
        for (const auto& row : rows) entries.push_back(json{{"from", row.from}, {"to", row.to}, {"prob", row.prob}});
        j["entries"] = entries;
        write_json(out, j);
    }
    return 0;
}

int run_solve(const ModelFlags& m, Format format, std::ostream& out) {
    const auto pi = stationary(m.kernel());
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t i = 0; i < pi.size(); ++i) rows.emplace_back(pi.states()[i].to_string(), format_rational(pi[i]));
    write_distribution(out, format, m.header(), rows);
    return 0;
}

int run_symbolic(const ModelFlags& m, Format format, std::ostream& out) {
    SymbolicDistribution dist;
    json header;
    if (m.resolved() == Model::Asep) {
        // t is symbolic; the kernel is built at t = 1 only for its structure.
        dist = symbolic_stationary(asep_kernel(m.partition(), Rational(1)));
        header = json{{"model", "asep"}, {"params", {{"lambda", m.partition().to_string()}}}};
    } else {
        dist = symbolic_stationary(m.n, m.p, m.q);
        header = json{{"model", "dasep"}, {"params", {{"n", m.n}, {"p", m.p}, {"q", m.q}}}};
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [w, f] : dist) rows.emplace_back(w.to_string(), f.to_string());
    write_distribution(out, format, header, rows);
    return 0;
}

int run_mlq(const ModelFlags& m, bool sum_only, bool list, Format format, std::ostream& out) {
    const auto lambda = m.partition();
    const Rational t = parse_rational(m.t);
    if (list) {
        for (const auto& queue : enumerate_queues(lambda)) {
            out << queue.to_string() << "weight " << format_rational(queue_weight(queue, t)) << "\n\n";
        }
        return 0;
    }
    const auto sums = queue_weight_sums(lambda, t);
    if (sum_only) {
        if (format == Format::Json) write_json(out, json{{"lambda", lambda.to_string()}, {"t", format_rational(t)}, {"total", format_rational(sums.total)}});
        else if (format == Format::Csv) out << "total\n" << format_rational(sums.total) << '\n';
        else out << format_rational(sums.total) << '\n';
        return 0;
    }
    if (format == Format::Text) {
        out << "total " << format_rational(sums.total) << '\n';
        for (std::size_t i = 0; i < sums.states.size(); ++i) {
            out << sums.states[i].to_string() << ' ' << format_rational(sums.per_word[i]) << ' '
                << format_rational(sums.per_word[i] / sums.total) << '\n';
        }
    } else if (format == Format::Csv) {
        out << "word,weight,prob\n";
        for (std::size_t i = 0; i < sums.states.size(); ++i) {
            out << csv_field(sums.states[i].to_string()) << ',' << format_rational(sums.per_word[i]) << ','
                << format_rational(sums.per_word[i] / sums.total) << '\n';
        }
    } else {
        json states = json::array();
        for (std::size_t i = 0; i < sums.states.size(); ++i) {
            states.push_back(json{{"word", sums.states[i].to_string()},
                                  {"weight", format_rational(sums.per_word[i])},
                                  {"prob", format_rational(sums.per_word[i] / sums.total)}});
        }
        write_json(out, json{{"model", "mlq"},
                             {"params", {{"lambda", lambda.to_string()}, {"t", format_rational(t)}}},
                             {"total", format_rational(sums.total)},
                             {"states", states}});
    }
    return 0;
}

Report run_named_check(const std::string& name, const ModelFlags& m) {
    const ParamPoint pt = m.point();
    const int p = m.p == 0 ? 2 : m.p;
    if (name == "asep") return check_asep_closed_forms({pt.t});
    if (name == "mlq") return check_queue_oracle({m.partition()}, {pt.t});
    if (name == "dasep322") {
        if (pt.t == 1) return check_dasep322_ratios({pt}, {});
        return check_dasep322_ratios({}, {pt});
    }
    if (name == "dasep332") return check_dasep332(pt);
    if (name == "balance") return check_kernel_vs_balance(p, pt);
    if (name == "rank") return check_balance_rank(p, {pt});
    if (name == "closed-form") return check_closed_form(p, pt);
    if (name == "uniformity") return check_uniformity(m.n == 0 ? 3 : m.n, p, m.q == 0 ? 2 : m.q);
    throw ValidationError("unknown check '" + name + "'");
}

int run_verify(bool all, const std::string& check, const ModelFlags& m, Format format, std::ostream& out) {
    if (all == !check.empty()) throw CLI::ValidationError("verify", "give exactly one of --all or --check");
    const Report report = all ? verify_all() : run_named_check(check, m);
    write_report(out, format, report);
    return report.passed() ? 0 : 1;
}

int run_sweep(const ModelFlags& m, const std::string& t_grid, const std::string& u_grid, unsigned workers,
              Format format, std::ostream& out) {
    std::vector<ParamPoint> grid;
    for (const auto& t : parse_grid(t_grid)) {
        for (const auto& u : parse_grid(u_grid)) grid.push_back(ParamPoint::make(t, u));
    }
    const Report report = conjecture_sweep(m.n, m.p, m.q, grid, workers);
    if (format == Format::Csv) {
        out << "t,u,ratios_equal,expected_equal,status\n";
        for (const auto& c : report.checks()) {
            out << c.witness["t"].get<std::string>() << ',' << c.witness["u"].get<std::string>() << ','
                << (c.witness["ratios_equal"].get<bool>() ? "true" : "false") << ','
                << (c.witness["expected_equal"].get<bool>() ? "true" : "false") << ','
                << (c.passed ? "pass" : "fail") << '\n';
        }
    } else {
        write_report(out, format, report);
    }
    return report.passed() ? 0 : 1;
}

int run_simulate(const ModelFlags& m, const SimConfig& cfg, bool compare, Format format, std::ostream& out) {
    const auto kernel = m.kernel();
    const auto empirical = run(kernel, cfg);
    std::optional<Rational> tv;
    if (compare) tv = tv_distance(empirical.to_distribution(), stationary(kernel));
    if (format == Format::Text) {
        out << "steps " << cfg.steps << " burn-in " << cfg.burn_in << " seed " << cfg.seed << '\n';
        for (std::size_t i = 0; i < empirical.states.size(); ++i) {
            out << empirical.states[i].to_string() << ' ' << empirical.counts[i] << '\n';
        }
        if (tv) out << "tv " << format_rational(*tv) << '\n';
    } else if (format == Format::Csv) {
        out << "word,count,freq\n";
        for (std::size_t i = 0; i < empirical.states.size(); ++i) {
            Rational f(Integer(std::to_string(empirical.counts[i])), Integer(std::to_string(empirical.total)));
            f.canonicalize();
            out << csv_field(empirical.states[i].to_string()) << ',' << empirical.counts[i] << ',' << format_rational(f)
                << '\n';
        }
    } else {
        json j = m.header();
        j["steps"] = cfg.steps;
        j["burn_in"] = cfg.burn_in;
        j["seed"] = cfg.seed;
        json states = json::array();
        const auto freq = empirical.to_distribution();
        for (std::size_t i = 0; i < empirical.states.size(); ++i) {
            states.push_back(json{{"word", empirical.states[i].to_string()},
                                  {"count", empirical.counts[i]},
                                  {"freq", format_rational(freq[i])}});
        }
        j["states"] = states;
        if (tv) j["tv"] = format_rational(*tv);
        write_json(out, j);
    }
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact stationary distributions of the multispecies ASEP and DASEP on a ring", "dasep"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    std::string format_name = "text";
    bool no_banner = false;
    app.add_option("--format", format_name, "output encoding")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_flag("--no-banner", no_banner, "do not print the version banner to the error stream");

    ModelFlags m;

    auto* states = app.add_subcommand("states", "list the state space");
    m.attach(states, false);

    auto* kernel = app.add_subcommand("kernel", "print the transition kernel");
    m.attach(kernel, true);
    bool dot = false;
    std::string laziness;
    kernel->add_flag("--dot", dot, "emit a Graphviz digraph");
    kernel->add_option("--laziness", laziness, "laziness constant c (at least the minimal one)");

    auto* solve = app.add_subcommand("solve", "exact stationary distribution");
    m.attach(solve, true);

    auto* symbolic = app.add_subcommand("symbolic", "stationary distribution as rational functions of t and u");
    m.attach(symbolic, false);

    auto* mlq = app.add_subcommand("mlq", "multiline queue weights for an ASEP partition");
    mlq->add_option("--lambda", m.lambda, "partition, e.g. 2,1,0")->required();
    mlq->add_option("--t", m.t, "hopping bias");
    bool sum_only = false;
    bool list = false;
    mlq->add_flag("--sum", sum_only, "print only the total weight");
    mlq->add_flag("--list", list, "print every queue with its weight");

    auto* verify = app.add_subcommand("verify", "run verification checks");
    m.attach(verify, true);
    bool all = false;
    std::string check;
    verify->add_flag("--all", all, "run the full battery");
    verify->add_option("--check", check, "one check at the given point")
        ->check(CLI::IsMember({"asep", "mlq", "dasep322", "dasep332", "balance", "rank", "closed-form", "uniformity"}));

    auto* sweep = app.add_subcommand("sweep", "ratio-equality evidence over a (t,u) grid");
    m.attach(sweep, false);
    std::string t_grid = "1";
    std::string u_grid = "1";
    unsigned workers = 0;
    sweep->add_option("--t-grid", t_grid, "comma-separated t values");
    sweep->add_option("--u-grid", u_grid, "comma-separated u values");
    sweep->add_option("--workers", workers, "worker threads (0 = hardware concurrency)");

    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo trajectory");
    m.attach(simulate, true);
    SimConfig cfg;
    cfg.steps = 100000;
    bool compare = false;
    simulate->add_option("--steps", cfg.steps, "total steps")->capture_default_str();
    simulate->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    simulate->add_option("--burn-in", cfg.burn_in, "steps discarded before counting")->capture_default_str();
    simulate->add_option("--initial", cfg.initial_state, "index of the starting state")->capture_default_str();
    simulate->add_flag("--compare", compare, "report the exact total variation distance to the stationary vector");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (!no_banner) err << "dasep " << kVersion << '\n';
    const Format format = format_name == "json" ? Format::Json : format_name == "csv" ? Format::Csv : Format::Text;

    try {
        if (*states) return run_states(m, format, out);
        if (*kernel) return run_kernel(m, dot, laziness, format, out);
        if (*solve) return run_solve(m, format, out);
        if (*symbolic) return run_symbolic(m, format, out);
        if (*mlq) return run_mlq(m, sum_only, list, format, out);
        if (*verify) return run_verify(all, check, m, format, out);
        if (*sweep) return run_sweep(m, t_grid, u_grid, workers, format, out);
        if (*simulate) return run_simulate(m, cfg, compare, format, out);
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace dasep::cli
