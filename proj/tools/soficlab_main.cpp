// soficlab command line: Cayley balls, action defect checks, action search,
// and finite shift approximations, all with byte-stable JSON output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "soficlab/canonical.hpp"
#include "soficlab/dynsys.hpp"
#include "soficlab/json_io.hpp"
#include "soficlab/search.hpp"

namespace {

using namespace soficlab;

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file '" + path + "'");
    out << bytes;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

MonoidSpec load_monoid(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) {
        return monoid_from_json(Json::parse(read_file(name_or_path)));
    }
    return MonoidSpec::from_name(name_or_path);
}

unsigned resolve_workers(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("SOFICLAB_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return (unsigned)v;
    }
    return 1;
}

std::vector<Word> parse_k_list(const MonoidSpec& m, const std::string& csv) {
    std::vector<Word> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t end = csv.find(',', pos);
        if (end == std::string::npos) end = csv.size();
        std::string item = csv.substr(pos, end - pos);
        if (!item.empty()) out.push_back(m.normalize(m.parse_word(item)));
        pos = end + 1;
    }
    if (out.empty()) throw DomainError("empty K list");
    return out;
}

Json is_keps_report_json(const ApproximationReport& report, const Rational& eps) {
    return Json{{"accepted", report.accepted},
                {"eps", eps.to_string()},
                {"defects", defect_report_to_json(report.action_defects)},
                {"invariance_defect", report.invariance.to_string()},
                {"discrepancy", report.discrepancy.to_string()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite approximation toolkit for monoids and shift systems"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write output to this file instead of stdout")
        ->capture_default_str();

    // ball
    auto* ball_cmd = app.add_subcommand("ball", "Cayley ball of a monoid");
    std::string ball_monoid;
    std::uint32_t ball_radius = 0;
    ball_cmd->add_option("--monoid", ball_monoid, "built-in name or monoid JSON file")->required();
    ball_cmd->add_option("--radius", ball_radius, "ball radius")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "defect report for an action file");
    std::string check_action;
    std::int64_t check_radius = -1;
    check_cmd->add_option("--action", check_action, "action JSON file")->required();
    check_cmd->add_option("--radius", check_radius,
                          "also report the Weiss fraction at this radius");

    // search
    auto* search_cmd = app.add_subcommand("search", "search for low-defect actions");
    std::string search_monoid, search_k, search_mode = "exhaustive", search_eps;
    std::uint32_t search_n = 1;
    std::uint64_t search_seed = 0, search_budget = 50'000'000, search_iterations = 1000;
    bool search_normalized = false;
    unsigned search_workers = 0;
    search_cmd->add_option("--monoid", search_monoid, "built-in name or monoid JSON file")
        ->required();
    search_cmd->add_option("--K", search_k, "comma-separated element list")->required();
    search_cmd->add_option("--n", search_n, "size of the finite set")->required();
    search_cmd->add_option("--mode", search_mode, "exhaustive or random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    search_cmd->add_option("--seed", search_seed, "random seed");
    search_cmd->add_option("--budget", search_budget, "leaf budget for exhaustive mode");
    search_cmd->add_option("--iterations", search_iterations, "restarts for random mode");
    search_cmd->add_flag("--normalized", search_normalized,
                         "pin the identity table to Id in exhaustive mode");
    search_cmd->add_option("--eps", search_eps, "also report whether min_eps <= eps (p/q)");
    search_cmd->add_option("--workers", search_workers, "worker threads (default: SOFICLAB_WORKERS or 1)");

    // dynsys
    auto* dynsys_cmd = app.add_subcommand("dynsys", "finite approximations of the full shift");
    dynsys_cmd->require_subcommand(1);
    int dyn_r = 2, dyn_k = 2, dyn_powers = 1, dyn_branching = 2, dyn_level = 1;
    std::string dyn_eps;
    unsigned dyn_workers = 0;
    auto* dyn_build = dynsys_cmd->add_subcommand("build", "build an approximation");
    dyn_build->add_option("--r", dyn_r, "cylinder depth")->required();
    dyn_build->add_option("--k", dyn_k, "preimage tree depth")->required();
    dyn_build->add_option("--powers", dyn_powers, "number of shift powers in K");
    dyn_build->add_option("--branching", dyn_branching, "shift branching factor");
    auto* dyn_compare = dynsys_cmd->add_subcommand(
        "compare", "compare approximation patterns against the exact law");
    dyn_compare->add_option("--r", dyn_r, "cylinder depth")->required();
    dyn_compare->add_option("--k", dyn_k, "preimage tree depth")->required();
    dyn_compare->add_option("--powers", dyn_powers, "number of shift powers in K");
    dyn_compare->add_option("--branching", dyn_branching, "shift branching factor");
    dyn_compare->add_option("--level", dyn_level, "pattern radius")->required();
    dyn_compare->add_option("--eps", dyn_eps, "also report the (K,eps) verdict (p/q)");
    dyn_compare->add_option("--workers", dyn_workers,
                            "worker threads (default: SOFICLAB_WORKERS or 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ball_cmd) {
            MonoidSpec m = load_monoid(ball_monoid);
            RootedBall ball = cayley_ball(m, ball_radius);
            write_output(out_path, dump_json(ball_to_json(ball)));
            return 0;
        }

        if (*check_cmd) {
            FiniteAction action = action_from_json(Json::parse(read_file(check_action)));
            Json j;
            j["monoid"] = action.monoid().builtin() != MonoidSpec::Builtin::none
                              ? Json(action.monoid().name())
                              : monoid_to_json(action.monoid());
            j["n"] = action.n();
            j["defects"] = defect_report_to_json(defects(action));
            j["invariance_defect"] =
                invariance_defect(action, DiscreteMeasure::uniform(action.n())).to_string();
            Json invert = Json::object();
            for (const auto& [word, defect] : invertibility_defect(action)) {
                invert[action.monoid().word_to_string(word)] = defect.to_string();
            }
            j["invertibility_defect"] = invert;
            if (check_radius >= 0) {
                LabeledDigraph g = weiss_graph(action);
                RootedBall model = cayley_ball(action.monoid(), (std::uint32_t)check_radius);
                j["weiss_radius"] = check_radius;
                j["weiss_fraction"] = weiss_fraction(g, model, (std::uint32_t)check_radius).to_string();
            }
            write_output(out_path, dump_json(j));
            return 0;
        }

        if (*search_cmd) {
            MonoidSpec m = load_monoid(search_monoid);
            std::vector<Word> K = parse_k_list(m, search_k);
            unsigned workers = resolve_workers(search_workers);
            Json j;
            j["monoid"] = m.builtin() != MonoidSpec::Builtin::none ? Json(m.name())
                                                                   : monoid_to_json(m);
            Json k_json = Json::array();
            for (const auto& w : K) k_json.push_back(m.word_to_string(w));
            j["K"] = k_json;
            j["n"] = search_n;
            j["mode"] = search_mode;
            SearchResult result{Rational(0), {}, false, 0};
            if (search_mode == "exhaustive") {
                result = search_exhaustive(m, K, search_n, search_budget, search_normalized,
                                           workers);
                j["normalized"] = search_normalized;
                j["budget"] = search_budget;
                j["min_eps"] = result.best_eps.to_string();
            } else {
                result = search_random(m, K, search_n, search_iterations, search_seed);
                j["seed"] = search_seed;
                j["iterations"] = search_iterations;
                j["best_eps"] = result.best_eps.to_string();
            }
            j["partial"] = result.partial;
            Json tables = Json::object();
            for (std::size_t i = 0; i < K.size(); ++i) {
                tables[m.word_to_string(K[i])] = result.witness[i];
            }
            j["witness"] = Json{{"tables", tables}};
            if (!search_eps.empty()) {
                j["eps"] = Rational::parse(search_eps).to_string();
                j["is_keps"] = result.best_eps <= Rational::parse(search_eps);
            }
            write_output(out_path, dump_json(j));
            return 0;
        }

        if (*dyn_build) {
            ShiftSystem system(dyn_branching, dyn_powers);
            ShiftApproximation a = build_approximation(system, dyn_r, dyn_k);
            Json j{{"r", a.r()},
                   {"k", a.k()},
                   {"n_powers", a.system().n_powers},
                   {"branching", a.system().branching},
                   {"convention", "append0"},
                   {"n_vertices", a.size()}};
            write_output(out_path, dump_json(j));
            return 0;
        }

        if (*dyn_compare) {
            if (dyn_level > dyn_r) {
                throw DomainError("pattern level " + std::to_string(dyn_level) +
                                  " exceeds cylinder depth r=" + std::to_string(dyn_r));
            }
            if (dyn_level > dyn_powers) {
                throw DomainError("pattern level exceeds the number of shift powers");
            }
            ShiftSystem system(dyn_branching, dyn_powers);
            ShiftApproximation a = build_approximation(system, dyn_r, dyn_k);
            unsigned workers = resolve_workers(dyn_workers);
            PatternMeasure truth = shift_pattern_measure(system, dyn_level);
            PatternMeasure census = census_pattern_measure(a, dyn_level, workers);
            Json j{{"r", a.r()},
                   {"k", a.k()},
                   {"n_powers", system.n_powers},
                   {"branching", system.branching},
                   {"level", dyn_level},
                   {"exact_patterns", pattern_measure_to_json(truth)},
                   {"census_patterns", pattern_measure_to_json(census)},
                   {"max_discrepancy", weak_discrepancy(truth, census).to_string()}};
            if (!dyn_eps.empty()) {
                Rational eps = Rational::parse(dyn_eps);
                ApproximationReport report;
                report.action_defects = defects(a.action());
                report.invariance = invariance_defect(a.action(), a.vertex_measure());
                report.discrepancy = weak_discrepancy(truth, census);
                report.accepted = report.action_defects.eps_overall <= eps &&
                                  report.invariance <= eps && report.discrepancy <= eps;
                j["is_keps"] = is_keps_report_json(report, eps);
            }
            write_output(out_path, dump_json(j));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
