#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mds/cover.hpp"
#include "mds/instance.hpp"
#include "mds/solvers.hpp"
#include "mds/svg.hpp"
#include "mds/tiling.hpp"

namespace {

using nlohmann::ordered_json;

// exit codes: 0 success, 1 failed verification, 2 usage, 3 validation/guard, 4 I/O or parse
int g_exit = 0;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mds::ParseError("cannot write output file: " + out_path);
    out << text;
}

mds::HexGrid grid_from_offset(const std::vector<double>& offset) {
    if (offset.empty()) return mds::HexGrid();
    if (offset.size() != 2) throw CLI::ValidationError("--grid-offset expects dx,dy");
    return mds::HexGrid::with_offset(offset[0], offset[1]);
}

struct LoadedSolution {
    std::vector<int> chosen;
    std::optional<mds::Point> foreign;  // a solution point not present in the instance
};

LoadedSolution load_solution(const std::string& path, const mds::Instance& inst) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mds::ParseError("cannot open solution file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    LoadedSolution out;
    bool is_json = false;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        is_json = ch == '{';
        break;
    }
    if (is_json) {
        ordered_json j;
        try {
            j = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw mds::ParseError(path + ": invalid JSON: " + e.what());
        }
        for (const auto& v : j.at("chosen")) {
            const int idx = v.get<int>();
            if (idx < 0 || idx >= inst.size()) {
                throw mds::ParseError(path + ": chosen index " + std::to_string(idx) +
                                      " out of range");
            }
            out.chosen.push_back(idx);
        }
        return out;
    }
    const mds::Instance sol_points = mds::parse_instance(text, path);
    for (const mds::Point& p : sol_points.points) {
        int found = -1;
        for (int i = 0; i < inst.size(); ++i) {
            if (inst.points[i].x == p.x && inst.points[i].y == p.y) {
                found = i;
                break;
            }
        }
        if (found < 0) {
            out.foreign = p;
            return out;
        }
        out.chosen.push_back(found);
    }
    return out;
}

mds::Solution run_algorithm(const std::string& algo, const mds::Instance& inst,
                            const mds::HexGrid& grid, const mds::SolverOptions& opt, int k,
                            int exact_limit) {
    if (algo == "cell-baseline") return mds::cell_baseline(inst, grid);
    if (algo == "four") return mds::four_factor(inst, grid, opt);
    if (algo == "three") return mds::three_factor(inst, grid, opt);
    if (algo == "five-half") return mds::five_half(inst, grid, opt);
    if (algo == "ptas") return mds::ptas(inst, k, grid, opt);
    if (algo == "exact") return mds::exact_mds(inst.points, grid, exact_limit);
    throw CLI::ValidationError("unknown algorithm: " + algo);
}

ordered_json make_report(const std::string& algo, const mds::Instance& inst,
                         const std::string& path, const mds::Solution& sol, double millis) {
    // validity is re-verified here, not copied from the solver
    const bool valid = mds::is_dominating(inst.points, sol.chosen);
    ordered_json j;
    j["algo"] = algo;
    j["params"] = sol.params;
    j["instance"] = {{"name", inst.name}, {"path", path}, {"n", inst.size()}};
    j["size"] = sol.size();
    j["chosen"] = sol.chosen;
    j["valid"] = valid;
    j["oracle_size"] = nullptr;
    j["ratio"] = nullptr;
    j["guaranteed"] = sol.guaranteed;
    j["millis"] = millis;
    return j;
}

void cmd_solve(const std::string& instance_path, const std::string& algo, int k,
               const std::vector<double>& grid_offset, bool faithful, int threads,
               const std::string& crossing, int exact_limit, const std::string& out_path) {
    if (algo == "ptas" && k < 1) {
        throw CLI::ValidationError("--algo ptas requires --k >= 1");
    }
    const mds::Instance inst = mds::load_instance(instance_path);
    const mds::HexGrid grid = grid_from_offset(grid_offset);
    mds::SolverOptions opt;
    opt.threads = threads;
    opt.faithful = faithful;
    opt.crossing =
        crossing == "independent" ? mds::CrossingMode::independent : mds::CrossingMode::joint;
    opt.exact_limit = exact_limit;

    const auto t0 = std::chrono::steady_clock::now();
    const mds::Solution sol = run_algorithm(algo, inst, grid, opt, k, exact_limit);
    const double millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const ordered_json report = make_report(algo, inst, instance_path, sol, millis);
    write_output(report.dump(2) + "\n", out_path);

    if (!report["valid"].get<bool>()) {
        std::cerr << "solution failed re-verification\n";
        g_exit = 3;
    } else if (!sol.guaranteed) {
        std::cerr << "tiling validation failed; approximation guarantee not claimed\n";
        g_exit = 3;
    }
}

void cmd_verify(const std::string& instance_path, const std::string& solution_path) {
    const mds::Instance inst = mds::load_instance(instance_path);
    const LoadedSolution sol = load_solution(solution_path, inst);
    if (sol.foreign) {
        std::cerr << "not a subset: point (" << sol.foreign->x << ", " << sol.foreign->y
                  << ") is not in the instance\n";
        g_exit = 1;
        return;
    }
    for (int i = 0; i < inst.size(); ++i) {
        bool hit = false;
        for (int c : sol.chosen) {
            if (mds::covers(inst.points[c], inst.points[i])) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            std::cerr << "point " << i << " (" << inst.points[i].x << ", " << inst.points[i].y
                      << ") is not covered\n";
            g_exit = 1;
            return;
        }
    }
    std::cerr << "ok: " << sol.chosen.size() << " centers dominate " << inst.size()
              << " points\n";
}

void cmd_tilings_validate(const std::string& tiling, int patch) {
    if (patch < 2) {
        throw CLI::ValidationError("--patch must be at least 2 (a 5x5 tile patch)");
    }
    mds::TilingDescriptor desc;
    if (auto kind = mds::tile_kind_from_name(tiling)) {
        switch (*kind) {
            case mds::TileKind::septa: desc = mds::default_septa(); break;
            case mds::TileKind::supercell: desc = mds::default_supercell(); break;
            case mds::TileKind::dupercell: desc = mds::default_dupercell(); break;
        }
    } else {
        std::ifstream in(tiling, std::ios::binary);
        if (!in) throw mds::ParseError("cannot open descriptor: " + tiling);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw mds::ParseError(tiling + ": invalid JSON: " + e.what());
        }
        desc = mds::TilingDescriptor::from_json(j);
    }
    const auto report = mds::validate_tiling(desc, mds::HexGrid(), patch);
    ordered_json j = report.to_json();
    j["descriptor"] = desc.to_json();
    std::cout << j.dump(2) << "\n";
    if (!report.pass) {
        for (const auto& c : report.checks) {
            if (!c.pass) std::cerr << "failed check: " << c.name << "\n";
        }
        g_exit = 3;
    }
}

void cmd_bench(const std::string& suite_path, const std::string& algos_csv, int max_oracle_n,
               int threads, const std::string& out_path) {
    std::ifstream in(suite_path, std::ios::binary);
    if (!in) throw mds::ParseError("cannot open suite: " + suite_path);
    nlohmann::json suite;
    try {
        in >> suite;
    } catch (const nlohmann::json::exception& e) {
        throw mds::ParseError(suite_path + ": invalid JSON: " + e.what());
    }

    std::vector<std::string> algos;
    std::stringstream ss(algos_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) algos.push_back(item);
    }

    std::string csv = "instance,algo,n,size,oracle_size,ratio,valid,millis\n";
    bool any_failed = false;

    for (const auto& entry : suite.value("instances", nlohmann::json::array())) {
        mds::Instance inst;
        try {
            if (entry.contains("path")) {
                inst = mds::load_instance(entry["path"].get<std::string>());
            } else {
                const auto gen = entry.at("generator").get<std::string>();
                const int n = entry.at("n").get<int>();
                const double w = entry.value("width", 10.0);
                const double h = entry.value("height", 10.0);
                const auto seed = entry.value("seed", 1ULL);
                if (gen == "uniform") {
                    inst = mds::gen_uniform(n, w, h, seed);
                } else if (gen == "clustered") {
                    inst = mds::gen_clustered(n, entry.value("clusters", 3),
                                              entry.value("spread", 0.5), w, h, seed);
                } else {
                    throw mds::ParseError("unknown generator: " + gen);
                }
            }
        } catch (const std::exception& e) {
            std::cerr << "suite entry failed: " << e.what() << "\n";
            any_failed = true;
            continue;
        }

        std::optional<int> oracle_size;
        if (inst.size() <= max_oracle_n) {
            oracle_size = mds::exact_mds(inst.points, mds::HexGrid(),
                                         std::max(max_oracle_n, 1))
                              .size();
        }

        for (const std::string& algo : algos) {
            mds::SolverOptions opt;
            opt.threads = threads;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const mds::Solution sol =
                    run_algorithm(algo, inst, mds::HexGrid(), opt, 1, std::max(max_oracle_n, 24));
                const double millis = std::chrono::duration<double, std::milli>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count();
                const bool valid = mds::is_dominating(inst.points, sol.chosen);
                csv += inst.name + "," + algo + "," + std::to_string(inst.size()) + "," +
                       std::to_string(sol.size()) + ",";
                if (oracle_size) {
                    csv += std::to_string(*oracle_size) + ",";
                    char ratio[32];
                    std::snprintf(ratio, sizeof ratio, "%.4f",
                                  *oracle_size > 0
                                      ? static_cast<double>(sol.size()) / *oracle_size
                                      : 0.0);
                    csv += ratio;
                } else {
                    csv += ",";
                }
                char ms[32];
                std::snprintf(ms, sizeof ms, "%.2f", millis);
                csv += std::string(",") + (valid ? "true" : "false") + "," + ms + "\n";
                if (!valid) any_failed = true;
            } catch (const std::exception& e) {
                std::cerr << inst.name << "/" << algo << " failed: " << e.what() << "\n";
                csv += inst.name + "," + algo + "," + std::to_string(inst.size()) +
                       ",,,,false,\n";
                any_failed = true;
            }
        }
    }

    write_output(csv, out_path);
    if (any_failed) g_exit = 3;
}

void cmd_render(const std::string& instance_path, const std::string& solution_path,
                const std::string& tiling, const std::vector<double>& grid_offset,
                const std::string& out_path) {
    const mds::Instance inst = mds::load_instance(instance_path);
    const mds::HexGrid grid = grid_from_offset(grid_offset);

    std::optional<mds::Solution> sol;
    if (!solution_path.empty()) {
        const LoadedSolution loaded = load_solution(solution_path, inst);
        if (loaded.foreign) {
            throw mds::ParseError("solution contains a point not in the instance");
        }
        mds::Solution s;
        s.chosen = loaded.chosen;
        sol = std::move(s);
    }

    std::optional<mds::TilingDescriptor> desc;
    if (tiling == "septa") {
        desc = mds::default_septa();
    } else if (tiling == "supercell") {
        desc = mds::default_supercell();
    } else if (tiling == "dupercell") {
        desc = mds::default_dupercell();
    } else if (tiling != "none") {
        throw CLI::ValidationError("--tiling must be septa|supercell|dupercell|none");
    }

    const std::string svg = mds::render_svg(inst, sol ? &*sol : nullptr,
                                            desc ? &*desc : nullptr, grid);
    write_output(svg, out_path);
}

void cmd_gen(const std::string& generator, int n, double width, double height,
             std::uint64_t seed, int clusters, double spread, const std::string& name,
             const std::string& format, const std::string& out_path) {
    mds::Instance inst;
    if (generator == "uniform") {
        inst = mds::gen_uniform(n, width, height, seed);
    } else if (generator == "clustered") {
        inst = mds::gen_clustered(n, clusters, spread, width, height, seed);
    } else {
        throw CLI::ValidationError("--generator must be uniform|clustered");
    }
    if (!name.empty()) inst.name = name;
    const std::string text = format == "json" ? mds::instance_to_json(inst).dump(2) + "\n"
                                              : mds::instance_to_csv(inst);
    write_output(text, out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solvers and tools for geometric minimum dominating set with unit disks"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run a solver and emit a run report (JSON)");
    std::string s_instance, s_algo, s_crossing = "joint", s_out;
    std::vector<double> s_offset;
    int s_k = 0, s_threads = 1, s_exact_limit = 24;
    bool s_faithful = false;
    solve->add_option("instance", s_instance, "instance file (csv or json)")->required();
    solve->add_option("--algo", s_algo, "cell-baseline|four|three|five-half|ptas|exact")
        ->required();
    solve->add_option("--k", s_k, "shifting parameter for ptas");
    solve->add_option("--grid-offset", s_offset, "grid translation dx,dy")->delimiter(',');
    solve->add_flag("--faithful", s_faithful, "literal descending per-tile search");
    solve->add_option("--threads", s_threads, "solver parallelism");
    solve->add_option("--crossing", s_crossing, "joint|independent crossing enumeration");
    solve->add_option("--exact-limit", s_exact_limit, "exact-search size guard");
    solve->add_option("--out", s_out, "write the report to a file instead of stdout");
    solve->callback([&] {
        cmd_solve(s_instance, s_algo, s_k, s_offset, s_faithful, s_threads, s_crossing,
                  s_exact_limit, s_out);
    });

    // verify
    auto* verify = app.add_subcommand("verify", "check subset and coverage conditions");
    std::string v_instance, v_solution;
    verify->add_option("instance", v_instance)->required();
    verify->add_option("solution", v_solution, "run report (JSON) or point list (csv)")
        ->required();
    verify->callback([&] { cmd_verify(v_instance, v_solution); });

    // tilings validate
    auto* tilings = app.add_subcommand("tilings", "tiling descriptor tools");
    auto* tv = tilings->add_subcommand("validate", "measure separation properties");
    std::string t_tiling = "septa";
    int t_patch = 2;
    tv->add_option("--tiling", t_tiling, "septa|supercell|dupercell or a descriptor file");
    tv->add_option("--patch", t_patch, "patch radius in tiles");
    tv->callback([&] { cmd_tilings_validate(t_tiling, t_patch); });

    // bench
    auto* bench = app.add_subcommand("bench", "run a suite and emit CSV");
    std::string b_suite, b_algos = "four,exact", b_out;
    int b_oracle_n = 14, b_threads = 1;
    bench->add_option("--suite", b_suite, "suite file (JSON)")->required();
    bench->add_option("--algos", b_algos, "comma-separated algorithm list");
    bench->add_option("--max-oracle-n", b_oracle_n, "largest n for oracle sizes");
    bench->add_option("--threads", b_threads, "solver parallelism");
    bench->add_option("--out", b_out, "write CSV to a file instead of stdout");
    bench->callback([&] { cmd_bench(b_suite, b_algos, b_oracle_n, b_threads, b_out); });

    // render
    auto* render = app.add_subcommand("render", "emit an SVG diagram");
    std::string r_instance, r_solution, r_tiling = "none", r_out;
    std::vector<double> r_offset;
    render->add_option("instance", r_instance)->required();
    render->add_option("--solution", r_solution, "run report or point list to highlight");
    render->add_option("--tiling", r_tiling, "septa|supercell|dupercell|none");
    render->add_option("--grid-offset", r_offset)->delimiter(',');
    render->add_option("--out", r_out, "write SVG to a file instead of stdout");
    render->callback([&] { cmd_render(r_instance, r_solution, r_tiling, r_offset, r_out); });

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    std::string g_generator = "uniform", g_name, g_format = "csv", g_out;
    int g_n = 0, g_clusters = 3;
    double g_width = 10.0, g_height = 10.0, g_spread = 0.5;
    std::uint64_t g_seed = 1;
    gen->add_option("--generator", g_generator, "uniform|clustered");
    gen->add_option("--n", g_n, "number of points")->required();
    gen->add_option("--width", g_width);
    gen->add_option("--height", g_height);
    gen->add_option("--seed", g_seed);
    gen->add_option("--clusters", g_clusters);
    gen->add_option("--spread", g_spread);
    gen->add_option("--name", g_name);
    gen->add_option("--format", g_format, "csv|json");
    gen->add_option("--out", g_out);
    gen->callback([&] {
        cmd_gen(g_generator, g_n, g_width, g_height, g_seed, g_clusters, g_spread, g_name,
                g_format, g_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mds::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mds::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mds::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return g_exit;
}
