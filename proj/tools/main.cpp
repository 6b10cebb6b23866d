// Benchmark and registration CLI.
//
// Subcommands:
//   register <x-file> <y-file>   align two clouds, print L0, t and matching
//   grid                         sigma x lambda benchmark, CSV + SVG bars
//   mode-study                   best-match vs weighted-sum comparison
//   demo                         one synthetic registration, human-readable
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grassmatch/cloud_io.hpp"
#include "grassmatch/errors.hpp"
#include "grassmatch/grid.hpp"
#include "grassmatch/kernels.hpp"
#include "grassmatch/metrics.hpp"
#include "grassmatch/pipeline.hpp"
#include "grassmatch/svg.hpp"

namespace {

using namespace grassmatch;

struct GlobalFlags {
    std::uint64_t seed = 0;
    std::size_t trials = 1024;
    unsigned threads = 0;
    double cond = 3.0;
    std::string mode = "best";
    double epsilon = 1e-6;
    double c_override = 0.0; // 0 = derive from epsilon
    std::size_t faq_iters = 30;
    double faq_tol = 1e-6;
    std::string out_dir = ".";
    bool force_scalar = false;
};

ConsensusMode parse_mode(const std::string& mode) {
    if (mode == "best") return ConsensusMode::BestMatch;
    if (mode == "weighted") return ConsensusMode::WeightedSum;
    throw CLI::ValidationError("--mode", "expected 'best' or 'weighted'");
}

void add_globals(CLI::App* cmd, GlobalFlags& g) {
    cmd->add_option("--seed", g.seed, "Master seed");
    cmd->add_option("--trials", g.trials, "Relaxation trials per registration")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", g.threads, "Worker threads (0 = hardware)");
    cmd->add_option("--cond", g.cond, "Condition number of synthetic maps");
    cmd->add_option("--mode", g.mode, "Consensus mode: best|weighted")
        ->check(CLI::IsMember({"best", "weighted"}));
    cmd->add_option("--epsilon", g.epsilon,
                    "Weight suppression target in (0,1)");
    cmd->add_option("--c", g.c_override,
                    "Weight sharpness override (0 derives it from --epsilon)");
    cmd->add_option("--faq-iters", g.faq_iters, "Frank-Wolfe iteration cap");
    cmd->add_option("--faq-tol", g.faq_tol,
                    "Frank-Wolfe relative objective tolerance");
    cmd->add_option("--out-dir", g.out_dir, "Output directory");
    cmd->add_flag("--force-scalar", g.force_scalar,
                  "Disable the SIMD kernels");
}

RegistrationOptions make_options(const GlobalFlags& g) {
    RegistrationOptions opts;
    opts.trials = g.trials;
    opts.master_seed = g.seed;
    opts.faq.max_iters = g.faq_iters;
    opts.faq.tol = g.faq_tol;
    opts.consensus.mode = parse_mode(g.mode);
    opts.consensus.epsilon = g.epsilon;
    if (g.c_override > 0.0) opts.consensus.c_override = g.c_override;
    opts.threads = g.threads;
    return opts;
}

void print_matrix(std::ostream& out, const Matrix& m, const char* label) {
    out << label << ":\n";
    for (std::size_t i = 0; i < m.rows; ++i) {
        out << " ";
        for (std::size_t j = 0; j < m.cols; ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " % .8f", m(i, j));
            out << buf;
        }
        out << "\n";
    }
}

std::filesystem::path out_path(const GlobalFlags& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    return std::filesystem::path(g.out_dir) / name;
}

int run_register(const GlobalFlags& g, const std::string& x_file,
                 const std::string& y_file) {
    const PointCloud x = load_cloud(x_file);
    const PointCloud y = load_cloud(y_file);
    std::cerr << "registering " << x.dim() << "x" << x.count() << " against "
              << y.dim() << "x" << y.count() << " with " << g.trials
              << " trials\n";

    const RegistrationResult res = register_clouds(x, y, make_options(g));

    print_matrix(std::cout, res.linear_map, "linear map L0");
    std::cout << "translation:";
    for (const double t : res.translation) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " % .8f", t);
        std::cout << buf;
    }
    std::cout << "\nbest trial objective: " << res.best_objective
              << " (rank bound " << x.dim() << ")\n";
    std::cout << "elapsed: " << res.elapsed_seconds << " s\n";

    const auto map_file = out_path(g, "linear_map.txt");
    {
        std::ofstream out(map_file);
        out.precision(17);
        for (std::size_t i = 0; i < res.linear_map.rows; ++i) {
            for (std::size_t j = 0; j < res.linear_map.cols; ++j) {
                out << (j ? " " : "") << res.linear_map(i, j);
            }
            out << "\n";
        }
    }
    const auto match_file = out_path(g, "matching.txt");
    {
        std::ofstream out(match_file);
        for (std::size_t i = 0; i < res.matching.size(); ++i) {
            out << i << " " << res.matching[i] << "\n";
        }
    }
    std::cerr << "wrote " << map_file.string() << " and " << match_file.string()
              << "\n";
    return 0;
}

int run_grid_cmd(const GlobalFlags& g, GridSpec grid,
                 const std::string& cloud_file) {
    grid.trials = g.trials;
    grid.cond = g.cond;
    grid.master_seed = g.seed;
    grid.threads = g.threads;
    grid.faq.max_iters = g.faq_iters;
    grid.faq.tol = g.faq_tol;
    grid.consensus.mode = parse_mode(g.mode);
    grid.consensus.epsilon = g.epsilon;
    if (g.c_override > 0.0) grid.consensus.c_override = g.c_override;
    if (!cloud_file.empty()) grid.cloud_file = cloud_file;

    const auto csv_path = out_path(g, "grid.csv");
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot write '" + csv_path.string() + "'");
    const auto records = run_grid(grid, csv, &std::cerr);
    std::cerr << "wrote " << csv_path.string() << "\n";

    for (const char* metric : {"delta_L", "delta_Y", "delta_X"}) {
        const auto svg_path =
            out_path(g, std::string("grid_") + metric + ".svg");
        emit_svg_bars(records, grid.sigmas, grid.lambdas, metric,
                      svg_path.string());
        std::cerr << "wrote " << svg_path.string() << "\n";
    }
    return 0;
}

int run_mode_study_cmd(const GlobalFlags& g, ModeStudySpec spec) {
    spec.cond = g.cond;
    spec.master_seed = g.seed;
    spec.threads = g.threads;
    spec.faq.max_iters = g.faq_iters;
    spec.faq.tol = g.faq_tol;
    spec.epsilon = g.epsilon;
    if (g.c_override > 0.0) spec.c_override = g.c_override;

    const auto best_path = out_path(g, "mode_study_best.csv");
    const auto weighted_path = out_path(g, "mode_study_weighted.csv");
    std::ofstream best_csv(best_path), weighted_csv(weighted_path);
    if (!best_csv || !weighted_csv) throw IoError("cannot write mode-study CSVs");
    const ModeStudyResult res =
        run_mode_study(spec, best_csv, weighted_csv, &std::cerr);
    std::cerr << "wrote " << best_path.string() << " and "
              << weighted_path.string() << "\n";

    for (const char* metric : {"delta_L", "delta_Y", "delta_X", "delta_H"}) {
        const auto svg_path =
            out_path(g, std::string("mode_study_") + metric + ".svg");
        emit_svg_heatmap_pair(res.best, res.weighted, spec.sigmas,
                              spec.trial_counts, metric, svg_path.string());
        std::cerr << "wrote " << svg_path.string() << "\n";
    }
    return 0;
}

int run_demo(const GlobalFlags& g, std::size_t points, double sigma,
             double lambda) {
    ScenarioConfig cfg;
    cfg.n = points;
    cfg.cond = g.cond;
    cfg.sigma = sigma;
    cfg.lambda_ = lambda;
    cfg.seed = derive_seed(g.seed, 0);
    const GroundTruth gt = make_scenario(cfg);
    std::cerr << "demo: d=" << cfg.d << " n=" << cfg.n << " m="
              << gt.x.count() << " sigma=" << sigma << " lambda=" << lambda
              << " cond=" << g.cond << "\n";

    RegistrationOptions opts = make_options(g);
    opts.master_seed = derive_seed(g.seed, 1);
    const RegistrationResult res = register_clouds(gt.x, gt.y, opts);
    const MetricsRecord rec = score(gt, res);

    print_matrix(std::cout, gt.linear_map, "true linear map");
    print_matrix(std::cout, res.linear_map, "recovered linear map");
    std::cout << "delta_L = " << rec.delta_L << "\n";
    std::cout << "delta_Y = " << rec.delta_Y << "\n";
    std::cout << "delta_X = " << rec.delta_X << "\n";
    if (rec.delta_H) std::cout << "delta_H = " << *rec.delta_H << "\n";
    std::cout << "d_sigma = " << rec.d_sigma << ", d_lambda = " << rec.d_lambda
              << "\n";
    std::cout << "elapsed: " << res.elapsed_seconds << " s ("
              << kernels::active().name << " kernels)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine point-cloud registration via projector matching"};
    app.require_subcommand(1);

    GlobalFlags g;

    auto* reg = app.add_subcommand("register",
                                   "Register cloud X (file) against cloud Y");
    std::string x_file, y_file;
    reg->add_option("x-file", x_file, "Specimen cloud, one point per line")
        ->required();
    reg->add_option("y-file", y_file, "Target cloud")->required();
    add_globals(reg, g);

    auto* grid_cmd =
        app.add_subcommand("grid", "sigma x lambda benchmark grid (CSV + SVG)");
    GridSpec grid;
    std::string grid_cloud;
    grid_cmd->add_option("--cloud", grid_cloud, "Specimen cloud file");
    grid_cmd->add_option("--points", grid.points,
                         "Random specimen size when no --cloud");
    grid_cmd->add_option("--dim", grid.d, "Dimension of random specimens");
    grid_cmd->add_option("--sigmas", grid.sigmas, "Noise levels");
    grid_cmd->add_option("--lambdas", grid.lambdas, "Similarity levels");
    grid_cmd->add_option("--batch", grid.batch, "Scenarios per cell")
        ->check(CLI::PositiveNumber);
    add_globals(grid_cmd, g);

    auto* study =
        app.add_subcommand("mode-study", "Best-match vs weighted-sum study");
    ModeStudySpec spec;
    study->add_option("--points", spec.points, "Points per cloud");
    study->add_option("--sigmas", spec.sigmas, "Noise levels");
    study->add_option("--trial-counts", spec.trial_counts, "Trial counts");
    study->add_option("--batch", spec.batch, "Scenarios per cell")
        ->check(CLI::PositiveNumber);
    add_globals(study, g);

    auto* demo = app.add_subcommand("demo", "One synthetic registration");
    std::size_t demo_points = 60;
    double demo_sigma = 0.02;
    double demo_lambda = 0.9;
    demo->add_option("--points", demo_points, "Points in the specimen");
    demo->add_option("--sigma", demo_sigma, "Noise level");
    demo->add_option("--lambda", demo_lambda, "Similarity level");
    add_globals(demo, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (g.force_scalar) kernels::set_active(kernels::scalar());
    if (!(g.epsilon > 0.0 && g.epsilon < 1.0)) {
        std::cerr << "error: --epsilon must lie in (0,1)\n";
        return 1;
    }

    try {
        if (reg->parsed()) return run_register(g, x_file, y_file);
        if (grid_cmd->parsed()) return run_grid_cmd(g, grid, grid_cloud);
        if (study->parsed()) return run_mode_study_cmd(g, spec);
        if (demo->parsed()) return run_demo(g, demo_points, demo_sigma, demo_lambda);
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const EmptyFile& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
