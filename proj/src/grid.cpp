#include "grassmatch/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "grassmatch/cloud_io.hpp"
#include "grassmatch/errors.hpp"

namespace grassmatch {

MetricsRecord score(const GroundTruth& gt, const RegistrationResult& reg) {
    MetricsRecord rec;
    rec.d_sigma = d_sigma(gt.y_clean, gt.y);
    rec.d_lambda = d_lambda(gt.x_full, gt.inlier_index);

    rec.delta_L = delta_L(gt.linear_map, reg.linear_map);

    const PointCloud xc = center(gt.x);
    rec.delta_Y = delta_Y(gt.linear_map, reg.linear_map, xc);

    // Shift y by the barycenter of the matched columns; the pullback is then
    // comparable with the centered specimen.
    const std::size_t d = gt.y.dim();
    const std::size_t m = reg.matching.size();
    std::vector<double> by(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        const double* row = gt.y.data.row(i);
        for (const std::int32_t j : reg.matching) {
            by[i] += row[static_cast<std::size_t>(j)];
        }
        by[i] /= static_cast<double>(m);
    }
    PointCloud yc = gt.y;
    for (std::size_t i = 0; i < d; ++i) {
        double* row = yc.data.row(i);
        for (std::size_t j = 0; j < yc.count(); ++j) row[j] -= by[i];
    }
    rec.delta_X = delta_X(reg.linear_map, yc, reg.matching, xc);

    if (gt.x.count() == gt.x_full.count()) {
        rec.delta_H = delta_H(gt.true_matching(), reg.matching);
    }
    return rec;
}

namespace {

std::string csv_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

MetricsRecord nan_record(double sigma, double lambda) {
    const double nan = std::nan("");
    MetricsRecord rec;
    rec.sigma = sigma;
    rec.lambda_ = lambda;
    rec.d_sigma = rec.d_lambda = rec.delta_L = rec.delta_Y = rec.delta_X = nan;
    return rec;
}

MetricsRecord mean_of(const std::vector<MetricsRecord>& items) {
    MetricsRecord mean;
    const double k = static_cast<double>(items.size());
    bool has_h = !items.empty();
    double h = 0.0;
    for (const MetricsRecord& r : items) {
        mean.d_sigma += r.d_sigma / k;
        mean.d_lambda += r.d_lambda / k;
        mean.delta_L += r.delta_L / k;
        mean.delta_Y += r.delta_Y / k;
        mean.delta_X += r.delta_X / k;
        if (r.delta_H) {
            h += *r.delta_H / k;
        } else {
            has_h = false;
        }
    }
    if (has_h) mean.delta_H = h;
    return mean;
}

} // namespace

std::vector<MetricsRecord> run_grid(const GridSpec& grid, std::ostream& csv,
                                    std::ostream* log) {
    if (grid.batch < 1) throw EmptyInput("run_grid: batch < 1");
    std::optional<PointCloud> specimen;
    if (grid.cloud_file) specimen = load_cloud(*grid.cloud_file);

    std::vector<MetricsRecord> out;
    out.reserve(grid.sigmas.size() * grid.lambdas.size());
    csv << kGridCsvHeader << "\n";

    for (std::size_t si = 0; si < grid.sigmas.size(); ++si) {
        for (std::size_t li = 0; li < grid.lambdas.size(); ++li) {
            const double sigma = grid.sigmas[si];
            const double lambda = grid.lambdas[li];
            std::vector<MetricsRecord> batch;
            batch.reserve(grid.batch);
            for (std::size_t bi = 0; bi < grid.batch; ++bi) {
                const std::uint64_t cell =
                    derive_seed(grid.master_seed, si, li, bi);
                try {
                    ScenarioConfig cfg;
                    cfg.d = specimen ? specimen->dim() : grid.d;
                    cfg.n = specimen ? specimen->count() : grid.points;
                    cfg.cond = grid.cond;
                    cfg.sigma = sigma;
                    cfg.lambda_ = lambda;
                    cfg.seed = derive_seed(cell, 0);
                    const GroundTruth gt =
                        specimen ? make_scenario_with_specimen(*specimen, cfg)
                                 : make_scenario(cfg);

                    RegistrationOptions opts;
                    opts.trials = grid.trials;
                    opts.master_seed = derive_seed(cell, 1);
                    opts.faq = grid.faq;
                    opts.consensus = grid.consensus;
                    opts.threads = grid.threads;
                    const RegistrationResult reg =
                        register_clouds(gt.x, gt.y, opts);
                    batch.push_back(score(gt, reg));
                } catch (const Error& e) {
                    if (log) {
                        *log << "cell sigma=" << sigma << " lambda=" << lambda
                             << " batch=" << bi << " failed: " << e.what()
                             << "\n";
                    }
                }
            }

            MetricsRecord rec = batch.empty() ? nan_record(sigma, lambda)
                                              : mean_of(batch);
            rec.sigma = sigma;
            rec.lambda_ = lambda;
            csv << csv_value(rec.sigma) << ',' << csv_value(rec.lambda_) << ','
                << csv_value(rec.d_sigma) << ',' << csv_value(rec.d_lambda)
                << ',' << csv_value(rec.delta_L) << ','
                << csv_value(rec.delta_Y) << ',' << csv_value(rec.delta_X)
                << '\n';
            out.push_back(rec);
        }
    }
    return out;
}

ModeStudyResult run_mode_study(const ModeStudySpec& spec,
                               std::ostream& best_csv,
                               std::ostream& weighted_csv, std::ostream* log) {
    if (spec.batch < 1) throw EmptyInput("run_mode_study: batch < 1");
    ModeStudyResult res;
    best_csv << kModeStudyCsvHeader << "\n";
    weighted_csv << kModeStudyCsvHeader << "\n";
    const std::vector<ConsensusMode> modes{ConsensusMode::BestMatch,
                                           ConsensusMode::WeightedSum};

    for (std::size_t si = 0; si < spec.sigmas.size(); ++si) {
        for (std::size_t ti = 0; ti < spec.trial_counts.size(); ++ti) {
            const double sigma = spec.sigmas[si];
            const std::size_t trials = spec.trial_counts[ti];
            std::vector<MetricsRecord> best_batch, weighted_batch;
            for (std::size_t bi = 0; bi < spec.batch; ++bi) {
                const std::uint64_t cell =
                    derive_seed(spec.master_seed, si, ti, bi);
                try {
                    ScenarioConfig cfg;
                    cfg.d = spec.d;
                    cfg.n = spec.points;
                    cfg.cond = spec.cond;
                    cfg.sigma = sigma;
                    cfg.lambda_ = 1.0;
                    cfg.seed = derive_seed(cell, 0);
                    const GroundTruth gt = make_scenario(cfg);

                    RegistrationOptions opts;
                    opts.trials = trials;
                    opts.master_seed = derive_seed(cell, 1);
                    opts.faq = spec.faq;
                    opts.consensus.epsilon = spec.epsilon;
                    opts.consensus.c_override = spec.c_override;
                    opts.threads = spec.threads;
                    const auto regs =
                        register_clouds_modes(gt.x, gt.y, opts, modes);
                    best_batch.push_back(score(gt, regs[0]));
                    weighted_batch.push_back(score(gt, regs[1]));
                } catch (const Error& e) {
                    if (log) {
                        *log << "mode-study sigma=" << sigma << " N=" << trials
                             << " batch=" << bi << " failed: " << e.what()
                             << "\n";
                    }
                }
            }

            auto emit = [&](std::vector<MetricsRecord>& batch,
                            std::vector<MetricsRecord>& grid,
                            std::ostream& csv_out) {
                MetricsRecord rec =
                    batch.empty() ? nan_record(sigma, 1.0) : mean_of(batch);
                rec.sigma = sigma;
                rec.lambda_ = 1.0;
                csv_out << csv_value(rec.sigma) << ',' << trials << ','
                        << csv_value(rec.delta_L) << ','
                        << csv_value(rec.delta_Y) << ','
                        << csv_value(rec.delta_X) << ','
                        << csv_value(rec.delta_H ? *rec.delta_H
                                                 : std::nan(""))
                        << '\n';
                grid.push_back(rec);
            };
            emit(best_batch, res.best, best_csv);
            emit(weighted_batch, res.weighted, weighted_csv);
        }
    }
    return res;
}

} // namespace grassmatch
