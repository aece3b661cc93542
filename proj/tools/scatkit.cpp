/**
 * Command-line surface: parse complexes in the text or JSON formats, run
 * the engine operations with budgets, and emit results with witnesses.
 *
 * Exit codes: 0 success (exact / decided), 2 parse error, 3 precondition
 * violation, 10 budget exhausted (interval or unknown result).
 */

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "scatkit/io.hpp"
#include "scatkit/reproduction.hpp"
#include "scatkit/scatkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBudget = 10;

struct RunConfig {
    std::size_t budget = scatkit::kDefaultBudget;
    double timeout_seconds = 0.0;  // 0 = none
    std::string format;            // "", "text" or "json"
    unsigned threads = 0;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) throw scatkit::io::ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

scatkit::Complex load_complex(const std::string& path) {
    return scatkit::io::parse_complex(read_input(path));
}

scatkit::VertexMap load_map(const std::string& path) {
    return scatkit::io::parse_map(read_input(path));
}

bool want_json(const RunConfig& config, bool default_json) {
    if (config.format == "json") return true;
    if (config.format == "text") return false;
    return default_json;
}

void print_complex(const scatkit::Complex& k, const RunConfig& config) {
    if (want_json(config, false))
        std::cout << scatkit::io::to_json(k).dump(2) << "\n";
    else
        std::cout << scatkit::io::to_text(k);
}

std::atomic<bool> finished{false};

void arm_timeout(const RunConfig& config) {
    if (config.timeout_seconds <= 0) return;
    std::thread([deadline = config.timeout_seconds] {
        auto until = std::chrono::steady_clock::now() +
                     std::chrono::duration<double>(deadline);
        while (std::chrono::steady_clock::now() < until) {
            if (finished.load()) return;
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
        }
        if (!finished.load()) {
            std::cerr << "timed out after " << deadline << " s\n";
            std::_Exit(kExitBudget);
        }
    }).detach();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace scatkit;

    CLI::App app{"strong-homotopy invariants of finite simplicial complexes"};
    app.require_subcommand(1);

    RunConfig config;
    if (const char* env = std::getenv("SCATKIT_BUDGET")) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) config.budget = parsed;
    }
    app.add_option("--budget", config.budget, "visited-map budget for searches")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--timeout-seconds", config.timeout_seconds, "abort after this many seconds");
    app.add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", config.threads,
                   "worker threads; all engines are deterministic and output does not depend on it");

    std::string file_a, file_b, basepoint, apex = "apex";
    std::size_t iterations = 1, wedge_n = 0;
    std::vector<std::string> facet_args;
    int exit_code = kExitOk;
    std::vector<std::pair<CLI::App*, std::function<void()>>> actions;
    auto on = [&actions](CLI::App* cmd, std::function<void()> action) {
        actions.emplace_back(cmd, std::move(action));
    };

    auto* cmd_info = app.add_subcommand("info", "summarize a complex");
    cmd_info->add_option("file", file_a)->required();
    on(cmd_info, [&] {
        auto k = load_complex(file_a);
        if (want_json(config, true)) {
            io::json j{{"vertices", k.vertex_count()},
                       {"facets", k.facet_count()},
                       {"dimension", k.dimension()},
                       {"connected", k.connected()},
                       {"labels", k.labels()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "vertices:  " << k.vertex_count() << "\nfacets:    " << k.facet_count()
                      << "\ndimension: " << k.dimension()
                      << "\nconnected: " << (k.connected() ? "yes" : "no") << "\n";
        }
    });

    auto* cmd_core = app.add_subcommand("core", "strong-collapse core and collapse log");
    cmd_core->add_option("file", file_a)->required();
    on(cmd_core, [&] {
        auto cr = core(load_complex(file_a));
        if (want_json(config, false)) {
            std::cout << io::to_json(cr).dump(2) << "\n";
        } else {
            std::cout << io::to_text(cr.complex);
            for (const auto& step : cr.steps)
                std::cout << "# removed " << step.removed << " dominated by " << step.dominator
                          << "\n";
        }
    });

    auto* cmd_iso = app.add_subcommand("iso", "isomorphism test with a witness bijection");
    cmd_iso->add_option("fileA", file_a)->required();
    cmd_iso->add_option("fileB", file_b)->required();
    on(cmd_iso, [&] {
        auto bijection = isomorphic(load_complex(file_a), load_complex(file_b));
        if (want_json(config, true)) {
            io::json j{{"isomorphic", bijection.has_value()}};
            if (bijection) {
                io::json map = io::json::object();
                for (const auto& [from, to] : *bijection) map[from] = to;
                j["bijection"] = map;
            }
            std::cout << j.dump(2) << "\n";
        } else if (bijection) {
            std::cout << "isomorphic\n";
            for (const auto& [from, to] : *bijection) std::cout << from << " -> " << to << "\n";
        } else {
            std::cout << "not isomorphic\n";
        }
    });

    auto* cmd_sd = app.add_subcommand("sd", "barycentric subdivision");
    cmd_sd->add_option("file", file_a)->required();
    cmd_sd->add_option("--iterations", iterations, "how many times to subdivide")
        ->capture_default_str();
    on(cmd_sd, [&] { print_complex(sd_iter(load_complex(file_a), iterations), config); });

    auto* cmd_product = app.add_subcommand("product", "categorical product");
    cmd_product->add_option("fileA", file_a)->required();
    cmd_product->add_option("fileB", file_b)->required();
    on(cmd_product, 
        [&] { print_complex(product(load_complex(file_a), load_complex(file_b)), config); });

    auto* cmd_join = app.add_subcommand("join", "join of two complexes");
    cmd_join->add_option("fileA", file_a)->required();
    cmd_join->add_option("fileB", file_b)->required();
    on(cmd_join, 
        [&] { print_complex(join(load_complex(file_a), load_complex(file_b)), config); });

    auto* cmd_cone = app.add_subcommand("cone", "cone over a complex");
    cmd_cone->add_option("file", file_a)->required();
    cmd_cone->add_option("--apex", apex, "apex label")->capture_default_str();
    on(cmd_cone, [&] { print_complex(cone(load_complex(file_a), apex), config); });

    auto* cmd_susp = app.add_subcommand("suspension", "suspension of a complex");
    cmd_susp->add_option("file", file_a)->required();
    on(cmd_susp, [&] { print_complex(suspension(load_complex(file_a)), config); });

    auto* cmd_wedge = app.add_subcommand("fatwedge", "fat wedge inside a power");
    cmd_wedge->add_option("file", file_a)->required();
    cmd_wedge->add_option("--basepoint", basepoint)->required();
    cmd_wedge->add_option("--n", wedge_n)->required()->check(CLI::PositiveNumber);
    on(cmd_wedge, [&] {
        auto wedge = fat_wedge(load_complex(file_a), basepoint, wedge_n);
        if (want_json(config, false)) {
            io::json j{{"complex", io::to_json(wedge.complex)},
                       {"inclusion", io::to_json(wedge.inclusion)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << io::to_text(wedge.complex);
        }
    });

    auto* cmd_scat = app.add_subcommand("scat", "simplicial LS-category with a cover witness");
    cmd_scat->add_option("file", file_a)->required();
    on(cmd_scat, [&] {
        ScatOptions opts;
        opts.budget = config.budget;
        auto res = scat(load_complex(file_a), opts);
        if (want_json(config, true))
            std::cout << io::to_json(res).dump(2) << "\n";
        else
            std::cout << "scat in [" << res.lower << ", " << res.upper << "]"
                      << (res.exact ? " (exact)" : " (budget exhausted)") << "\n";
        if (!res.exact) exit_code = kExitBudget;
    });

    auto* cmd_gscat = app.add_subcommand("gscat", "geometric simplicial category (exact)");
    cmd_gscat->add_option("file", file_a)->required();
    on(cmd_gscat, [&] {
        auto res = gscat(load_complex(file_a));
        if (want_json(config, true))
            std::cout << io::to_json(res).dump(2) << "\n";
        else
            std::cout << "gscat = " << res.upper << "\n";
    });

    auto* cmd_wscat = app.add_subcommand("wscat", "does the diagonal factor through the fat wedge");
    cmd_wscat->add_option("file", file_a)->required();
    cmd_wscat->add_option("--basepoint", basepoint)->required();
    cmd_wscat->add_option("--n", wedge_n, "test wscat <= n")->required();
    on(cmd_wscat, [&] {
        auto res = wscat_le(load_complex(file_a), basepoint, wedge_n, config.budget);
        if (want_json(config, true))
            std::cout << io::to_json(res).dump(2) << "\n";
        else
            std::cout << "wscat <= " << wedge_n << ": " << io::outcome_name(res.outcome) << "\n";
        if (res.unknown()) exit_code = kExitBudget;
    });

    auto* cmd_cat = app.add_subcommand("categorical", "is a facet block categorical");
    cmd_cat->add_option("file", file_a)->required();
    cmd_cat->add_option("--facets", facet_args, "facet as comma-separated labels (repeatable)")
        ->required();
    on(cmd_cat, [&] {
        auto k = load_complex(file_a);
        std::vector<std::size_t> subset;
        for (const auto& arg : facet_args) {
            std::vector<std::string> labels;
            std::istringstream in(arg);
            std::string label;
            while (std::getline(in, label, ','))
                if (!label.empty()) labels.push_back(label);
            std::sort(labels.begin(), labels.end());
            bool found = false;
            for (std::size_t f = 0; f < k.facet_count(); ++f) {
                if (k.facet_vertices(f) == labels) {
                    subset.push_back(f);
                    found = true;
                    break;
                }
            }
            if (!found) throw std::invalid_argument("'" + arg + "' is not a facet");
        }
        CategoricalOptions opts;
        opts.budget = config.budget;
        auto res = is_categorical(k, subset, opts);
        if (want_json(config, true))
            std::cout << io::to_json(res).dump(2) << "\n";
        else
            std::cout << "categorical: " << io::outcome_name(res.outcome) << "\n";
        if (res.unknown()) exit_code = kExitBudget;
    });

    auto* cmd_contig = app.add_subcommand("contiguous", "are two maps directly contiguous");
    cmd_contig->add_option("mapA", file_a)->required();
    cmd_contig->add_option("mapB", file_b)->required();
    on(cmd_contig, [&] {
        bool res = is_contiguous(load_map(file_a), load_map(file_b));
        if (want_json(config, true))
            std::cout << io::json{{"contiguous", res}}.dump(2) << "\n";
        else
            std::cout << (res ? "contiguous" : "not contiguous") << "\n";
    });

    auto* cmd_class = app.add_subcommand("class", "are two maps in the same contiguity class");
    cmd_class->add_option("mapA", file_a)->required();
    cmd_class->add_option("mapB", file_b)->required();
    on(cmd_class, [&] {
        auto res = in_same_contiguity_class(load_map(file_a), load_map(file_b), config.budget);
        if (want_json(config, true))
            std::cout << io::to_json(res).dump(2) << "\n";
        else
            std::cout << "same contiguity class: " << io::outcome_name(res.outcome) << "\n";
        if (res.unknown()) exit_code = kExitBudget;
    });

    auto* cmd_arbor = app.add_subcommand("arboricity", "exact arboricity with a forest witness");
    cmd_arbor->add_option("file", file_a)->required();
    on(cmd_arbor, [&] {
        auto k = load_complex(file_a);
        GraphView g(k);
        auto [count, decomposition] = arboricity(g);
        if (want_json(config, true)) {
            io::json j{{"arboricity", count}, {"forests", io::to_json(g, decomposition)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "arboricity = " << count << "\n";
            for (const auto& part : decomposition.edge_labels(g)) {
                for (const auto& [u, v] : part) std::cout << u << "-" << v << " ";
                std::cout << "\n";
            }
        }
    });

    auto* cmd_bisect = app.add_subcommand("bisect", "bisect the edges outside a spanning tree");
    cmd_bisect->add_option("file", file_a)->required();
    on(cmd_bisect, [&] { print_complex(bisect_off_tree(load_complex(file_a)), config); });

    auto* cmd_verify = app.add_subcommand("verify", "run the built-in reproduction suite");
    on(cmd_verify, [&] {
        auto results = scatkit::verify::run_all();
        bool all_pass = true;
        if (want_json(config, false)) {
            io::json j = io::json::array();
            for (const auto& r : results) {
                all_pass = all_pass && r.pass;
                j.push_back({{"id", r.id},
                             {"description", r.description},
                             {"pass", r.pass},
                             {"detail", r.detail},
                             {"millis", r.millis}});
            }
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& r : results) {
                all_pass = all_pass && r.pass;
                std::ostringstream ms;
                ms.precision(1);
                ms << std::fixed << r.millis;
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.description
                          << "  (" << ms.str() << " ms)\n";
                if (!r.pass) std::cout << "       " << r.detail << "\n";
            }
        }
        if (!all_pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        arm_timeout(config);
        for (auto& [cmd, action] : actions)
            if (cmd->parsed()) action();
    } catch (const scatkit::io::ParseError& e) {
        finished.store(true);
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        finished.store(true);
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::domain_error& e) {
        finished.store(true);
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        finished.store(true);
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    finished.store(true);
    return exit_code;
}
