#include "rgames/cli.hpp"

#include "rgames/derandomize.hpp"
#include "rgames/equilibrium.hpp"
#include "rgames/etr.hpp"
#include "rgames/evaluate.hpp"
#include "rgames/game.hpp"
#include "rgames/reductions.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace rgames {

namespace {

PayoffDemand load_demands(const std::string& path) {
    std::string text = read_text_file(path);
    std::string cleaned;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        cleaned += line + " ";
    }
    return {parse_rational_list(cleaned)};
}

std::string demands_text(const PayoffDemand& d) { return to_string(d.values) + "\n"; }

// `key: value` report with an optional JSON mirror of the same keys.
struct Report {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(const std::string& key, const std::string& value) { entries.push_back({key, value}); }
    void add(const std::string& key, bool value) {
        entries.push_back({key, value ? "yes" : "no"});
    }
    void print(std::ostream& out, bool json) const {
        if (!json) {
            for (const auto& [k, v] : entries) out << k << ": " << v << "\n";
            return;
        }
        nlohmann::ordered_json j;
        for (const auto& [k, v] : entries) j[k] = v;
        out << j.dump(2) << "\n";
    }
};

std::string rational_list(const std::vector<Rational>& v) { return to_string(v); }

ReductionOutput build_variant(const PolySystem& s, const std::string& variant) {
    if (variant == "full" || variant == "reduced-demand") return build_full_game(s);
    if (variant == "sure") return build_sure_game(s);
    if (variant == "deterministic13") return build_deterministic_full_game(s);
    throw std::invalid_argument("unknown variant '" + variant + "'");
}

// Reductions need homogeneous, scaled input; the CLI applies the two
// normalizations itself so plain systems work end to end.
PolySystem prepare_system(PolySystem s, std::ostream& out, bool quiet) {
    if (!s.homogeneous) {
        s = homogenize(s);
        if (!quiet) out << "note: homogenized input (slack variable x" << s.n << ")\n";
    }
    PolySystem scaled = scale_coefficients(s);
    if (!(scaled == s) && !quiet) out << "note: scaled coefficients into [-1,1]\n";
    return scaled;
}

void emit_index(const ReductionOutput& red, const std::string& path) {
    std::string text;
    for (const auto& [role, id] : red.index.roles) text += role + " " + id + "\n";
    write_text_file(path, text);
}

int cmd_verify(const Game& g, const StationaryProfile& p, const Rational& eps,
               const PayoffDemand* demands, bool spe, bool json, std::ostream& out) {
    VerificationReport rep = spe ? verify_spe(g, p, eps) : verify_ne(g, p, eps, demands);
    if (spe && demands) {
        bool met = true;
        for (int i = 0; i < g.players; ++i)
            if (rep.payoffs[i] < demands->values[i]) met = false;
        rep.demands_met = met;
    }
    Report r;
    r.add("players", std::to_string(g.players));
    r.add("deterministic", deterministic(g));
    r.add("acyclic", is_acyclic(g));
    r.add("payoffs", rational_list(rep.payoffs));
    r.add("regrets", rational_list(rep.regrets));
    r.add("maxRegret", to_string(rep.max_regret));
    r.add("isNE", rep.is_ne);
    if (rep.is_spe) r.add("isSPE", *rep.is_spe);
    if (rep.demands_met) r.add("demandsMet", *rep.demands_met);
    r.print(out, json);
    bool ok = rep.is_ne && (!rep.is_spe || *rep.is_spe) && (!rep.demands_met || *rep.demands_met);
    return ok ? 0 : 1;
}

}  // namespace

Config load_config_from_env() {
    Config cfg;
    const char* path = std::getenv("RGAMES_CONFIG");
    if (path == nullptr) return cfg;
    std::ifstream in(path);
    if (!in) return cfg;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, value;
        if (!(ls >> key >> value)) continue;
        if (key == "grid-cap:") cfg.grid_cap = std::stoll(value);
        else if (key == "eps:") cfg.eps = value;
        else if (key == "mc-seed:") cfg.mc_seed = std::stoull(value);
        else if (key == "mc-samples:") cfg.mc_samples = std::stoll(value);
    }
    return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg = load_config_from_env();

    CLI::App app{"exact toolkit for perfect-information stochastic games"};
    app.require_subcommand(1);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "compile a polynomial system into a game");
    std::string sys_path, variant = "full", out_path, demands_out, index_out, gadget_path;
    bool gadget_deterministic = false;
    reduce->add_option("--system", sys_path, "polynomial system file")->required();
    reduce->add_option("--variant", variant,
                       "full|reduced-demand|sure|deterministic13|exists-ne");
    reduce->add_option("--out", out_path, "output game file")->required();
    reduce->add_option("--demands-out", demands_out, "demand vector output");
    reduce->add_option("--index-out", index_out, "role index output");
    reduce->add_option("--gadget", gadget_path, "plug-in game for exists-ne");
    reduce->add_flag("--deterministic", gadget_deterministic, "deterministic exists-ne variant");

    // eval
    auto* eval = app.add_subcommand("eval", "expected payoffs of a profile");
    std::string game_path, profile_path;
    bool mc = false, json = false;
    unsigned long long seed = cfg.mc_seed;
    long long samples = cfg.mc_samples;
    eval->add_option("--game", game_path, "game file")->required();
    eval->add_option("--profile", profile_path, "profile file")->required();
    eval->add_flag("--mc", mc, "add a Monte-Carlo cross-check");
    eval->add_option("--seed", seed, "Monte-Carlo seed");
    eval->add_option("--samples", samples, "Monte-Carlo sample count");
    eval->add_flag("--json-like", json, "structured output");

    // verify
    auto* verify = app.add_subcommand("verify", "equilibrium check for a profile");
    std::string v_game, v_profile, v_eps = cfg.eps, v_demands;
    bool v_spe = false, v_json = false;
    verify->add_option("--game", v_game)->required();
    verify->add_option("--profile", v_profile)->required();
    verify->add_option("--eps", v_eps, "regret tolerance (rational)");
    verify->add_option("--demands", v_demands, "demand vector file");
    verify->add_flag("--spe", v_spe, "check every node as root");
    verify->add_flag("--json-like", v_json);

    // witness
    auto* witness = app.add_subcommand("witness", "profile encoding a simplex point");
    std::string w_sys, w_x, w_out, w_variant = "full";
    witness->add_option("--system", w_sys)->required();
    witness->add_option("--x", w_x, "comma-separated simplex point")->required();
    witness->add_option("--variant", w_variant, "full|sure|deterministic13");
    witness->add_option("--out", w_out, "profile output")->required();

    // extract-witness
    auto* extract = app.add_subcommand("extract-witness", "read the simplex point off a profile");
    std::string e_sys, e_profile, e_variant = "full";
    bool e_json = false;
    extract->add_option("--system", e_sys)->required();
    extract->add_option("--profile", e_profile)->required();
    extract->add_option("--variant", e_variant, "full|sure|deterministic13");
    extract->add_flag("--json-like", e_json);

    // grid
    auto* grid = app.add_subcommand("grid", "exhaustive equilibrium scan on a grid");
    std::string g_game, g_eps = cfg.eps, g_demands, g_out;
    int g_d = 1, g_jobs = 0;
    long long g_cap = cfg.grid_cap;
    bool g_serial = false, g_json = false;
    grid->add_option("--game", g_game)->required();
    grid->add_option("--d", g_d, "grid resolution")->required();
    grid->add_option("--eps", g_eps);
    grid->add_option("--demands", g_demands);
    grid->add_option("--cap", g_cap, "profile budget");
    grid->add_option("--jobs", g_jobs, "worker threads (results are identical)");
    grid->add_flag("--serial", g_serial, "pure-rational reference kernel");
    grid->add_flag("--json-like", g_json);
    grid->add_option("--out", g_out, "write found profiles here");

    // derandomize
    auto* derand = app.add_subcommand("derandomize", "replace chance nodes by threat chains");
    std::string d_game, d_scale = "1/2", d_grouping = "per-node", d_out;
    derand->add_option("--game", d_game)->required();
    derand->add_option("--scale", d_scale, "mass kept by the chains, in (0,1)");
    derand->add_option("--grouping", d_grouping, "per-node|shared");
    derand->add_option("--out", d_out)->required();

    // partition
    auto* part = app.add_subcommand("partition", "item-splitting game");
    std::string p_items, p_out, p_demands_out;
    bool p_deterministic = false, p_paper = false;
    part->add_option("--items", p_items, "comma-separated positive item values")->required();
    part->add_flag("--deterministic", p_deterministic, "5-player chain variant");
    part->add_flag("--paper-demand", p_paper, "emit the K/2 demand");
    part->add_option("--out", p_out)->required();
    part->add_option("--demands-out", p_demands_out);

    // to-objective
    auto* toobj = app.add_subcommand("to-objective", "rewards to reach/safe objectives");
    std::string o_game, o_kind, o_out;
    toobj->add_option("--game", o_game)->required();
    toobj->add_option("--kind", o_kind, "reach|safe")->required();
    toobj->add_option("--out", o_out)->required();

    // to-cycles
    auto* tocyc = app.add_subcommand("to-cycles", "terminal rewards to mean-payoff cycles");
    std::string c_game, c_out;
    tocyc->add_option("--game", c_game)->required();
    tocyc->add_option("--out", c_out)->required();

    // etr
    auto* etr = app.add_subcommand("etr", "existential real-arithmetic sentence");
    std::string t_game, t_demands, t_out;
    bool t_spe = false, t_raw = false;
    etr->add_option("--game", t_game)->required();
    etr->add_option("--demands", t_demands);
    etr->add_flag("--spe", t_spe);
    etr->add_flag("--raw", t_raw, "internal s-expression form");
    etr->add_option("--out", t_out);

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (reduce->parsed()) {
            PolySystem s = prepare_system(parse_poly_system(read_text_file(sys_path)), out, false);
            if (variant == "exists-ne") {
                if (gadget_path.empty())
                    throw std::invalid_argument("exists-ne needs --gadget");
                Game gadget = load_game_file(gadget_path);
                Game g = build_exists_ne_game(s, gadget, gadget_deterministic);
                write_text_file(out_path, serialize_game(g));
                out << "players: " << g.players << "\n";
                return 0;
            }
            ReductionOutput red = build_variant(s, variant);
            write_text_file(out_path, serialize_game(red.game));
            if (!demands_out.empty())
                write_text_file(demands_out, demands_text(variant == "reduced-demand"
                                                              ? red.demand_reduced
                                                              : red.demand));
            if (!index_out.empty()) emit_index(red, index_out);
            out << "players: " << red.game.players << "\n";
            out << "nodes: " << red.game.nodes.size() << "\n";
            out << "deterministic: " << (deterministic(red.game) ? "yes" : "no") << "\n";
            return 0;
        }
        if (eval->parsed()) {
            Game g = load_game_file(game_path);
            StationaryProfile p = parse_profile(read_text_file(profile_path));
            Report r;
            r.add("players", std::to_string(g.players));
            switch (g.objective) {
                case Objective::terminal_rewards:
                    r.add("payoffs", rational_list(expected_payoffs(g, p)));
                    break;
                case Objective::mean_payoff:
                    r.add("payoffs", rational_list(mean_payoff(g, p)));
                    break;
                default:
                    r.add("payoffs", rational_list(objective_payoffs(g, p)));
                    break;
            }
            if (mc) {
                MonteCarloResult sim = simulate_payoffs(g, p, seed, samples);
                std::string means, errs;
                for (size_t i = 0; i < sim.mean.size(); ++i) {
                    means += (i ? ", " : "") + std::to_string(sim.mean[i]);
                    errs += (i ? ", " : "") + std::to_string(sim.std_error[i]);
                }
                r.add("mcMean", means);
                r.add("mcStdError", errs);
                r.add("mcSamples", std::to_string(sim.samples));
            }
            r.print(out, json);
            return 0;
        }
        if (verify->parsed()) {
            Game g = load_game_file(v_game);
            StationaryProfile p = parse_profile(read_text_file(v_profile));
            PayoffDemand demands;
            bool have = !v_demands.empty();
            if (have) demands = load_demands(v_demands);
            return cmd_verify(g, p, parse_rational(v_eps), have ? &demands : nullptr, v_spe,
                              v_json, out);
        }
        if (witness->parsed()) {
            PolySystem s = prepare_system(parse_poly_system(read_text_file(w_sys)), out, true);
            ReductionOutput red = build_variant(s, w_variant);
            StationaryProfile p = witness_to_profile(red, parse_rational_list(w_x));
            write_text_file(w_out, serialize_profile(red.game, p));
            return 0;
        }
        if (extract->parsed()) {
            PolySystem s = prepare_system(parse_poly_system(read_text_file(e_sys)), out, true);
            ReductionOutput red = build_variant(s, e_variant);
            StationaryProfile p = parse_profile(read_text_file(e_profile));
            SimplexPoint x = profile_to_witness(red, p);
            Rational norm = 0;
            for (const auto& v : x.x) norm += v;
            Report r;
            r.add("x", rational_list(x.x));
            r.add("norm1", to_string(norm));
            bool zeros = true;
            for (size_t k = 0; k < s.polys.size(); ++k) {
                Rational q = eval_poly(s.polys[k], x.x);
                r.add("q" + std::to_string(k + 1), to_string(q));
                if (q != 0) zeros = false;
            }
            r.print(out, e_json);
            return (norm == 1 && zeros) ? 0 : 1;
        }
        if (grid->parsed()) {
            Game g = load_game_file(g_game);
            PayoffDemand demands;
            bool have = !g_demands.empty();
            if (have) demands = load_demands(g_demands);
            GridOptions opt;
            opt.cap = g_cap;
            opt.jobs = g_jobs;
            auto profiles = g_serial
                                ? grid_search_serial(g, g_d, parse_rational(g_eps),
                                                     have ? &demands : nullptr, opt)
                                : grid_search(g, g_d, parse_rational(g_eps),
                                              have ? &demands : nullptr, opt);
            Report r;
            r.add("budget", std::to_string(grid_profile_count(g, g_d)));
            r.add("found", std::to_string(profiles.size()));
            r.print(out, g_json);
            std::string listing;
            for (const auto& p : profiles) listing += serialize_profile(g, p) + "\n";
            if (!g_out.empty()) write_text_file(g_out, listing);
            else out << listing;
            return profiles.empty() ? 1 : 0;
        }
        if (derand->parsed()) {
            Game g = load_game_file(d_game);
            Grouping grouping;
            if (d_grouping == "per-node") grouping = Grouping::per_node;
            else if (d_grouping == "shared") grouping = Grouping::shared_independent;
            else throw std::invalid_argument("unknown grouping '" + d_grouping + "'");
            EliminationResult res = eliminate_chance_nodes(g, parse_rational(d_scale), grouping);
            write_text_file(d_out, serialize_game(res.game));
            out << "players: " << res.game.players << "\n";
            out << "chains: " << res.gadgets.size() << "\n";
            return 0;
        }
        if (part->parsed()) {
            std::vector<Rational> items = parse_rational_list(p_items);
            if (p_deterministic) {
                PartitionOutput po = derandomize_partition(items, p_paper);
                write_text_file(p_out, serialize_game(po.game));
                if (!p_demands_out.empty()) write_text_file(p_demands_out, demands_text(po.demand));
                out << "players: " << po.game.players << "\n";
            } else {
                auto [g, demand] = build_partition_game(items, p_paper);
                write_text_file(p_out, serialize_game(g));
                if (!p_demands_out.empty()) write_text_file(p_demands_out, demands_text(demand));
                out << "players: " << g.players << "\n";
            }
            return 0;
        }
        if (toobj->parsed()) {
            Game g = load_game_file(o_game);
            Objective kind;
            if (o_kind == "reach") kind = Objective::reach;
            else if (o_kind == "safe") kind = Objective::safe;
            else throw std::invalid_argument("unknown kind '" + o_kind + "'");
            write_text_file(o_out, serialize_game(to_objective_form(g, kind)));
            return 0;
        }
        if (tocyc->parsed()) {
            Game g = load_game_file(c_game);
            write_text_file(c_out, serialize_game(rewards_to_cycles(g)));
            return 0;
        }
        if (etr->parsed()) {
            Game g = load_game_file(t_game);
            PayoffDemand demands;
            bool have = !t_demands.empty();
            if (have) demands = load_demands(t_demands);
            Formula f = encode_stationary_ne(g, have ? &demands : nullptr, t_spe);
            std::string text = t_raw ? to_sexpr(f) : to_smt2(f);
            if (!t_out.empty()) write_text_file(t_out, text);
            else out << text;
            return 0;
        }
    } catch (const GridCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace rgames
