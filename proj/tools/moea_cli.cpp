// Experiment driver: runs benchmark cross products from a spec file and
// turns the per-run records into summary tables, significance marks,
// classification reports and front dumps.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moea/algorithms.hpp"
#include "moea/harness.hpp"
#include "moea/indicators.hpp"
#include "moea/problems.hpp"
#include "moea/refgeom.hpp"

namespace {

int cmd_run(const std::string& spec_path, std::uint64_t seed, std::uint64_t budget, int reps,
            const std::string& out, unsigned threads, const std::string& si_scaling,
            std::size_t population) {
    moea::ExperimentSpec spec = moea::load_spec(spec_path);
    if (seed) spec.base_seed = seed;
    if (budget) spec.budget = budget;
    if (reps) spec.replications = reps;
    if (!out.empty()) spec.out_dir = out;
    if (threads) spec.threads = threads;
    if (!si_scaling.empty()) spec.si_scaling = moea::parse_si_scaling(si_scaling);
    if (population) spec.population_override = population;

    std::size_t done = 0;
    const auto records = moea::run_experiment(spec, [&](const moea::ResultRecord& r, bool fresh) {
        ++done;
        std::cout << "[" << done << "] " << r.problem << " m=" << r.m << " " << r.algorithm
                  << " seed=" << r.seed;
        if (r.igd_value) std::cout << " igd=" << moea::format_sci(*r.igd_value, 5);
        if (r.hv_value) std::cout << " hv=" << moea::format_sci(*r.hv_value, 5);
        std::cout << " mode=" << r.mode;
        if (!fresh)
            std::cout << " (resumed)";
        else
            std::cout << " (" << moea::format_sci(r.duration_seconds, 3) << "s)";
        std::cout << "\n";
    });

    std::cout << "\n" << records.size() << " records in " << spec.out_dir << "\n\n";
    std::cout << moea::summarize_text(records, "both");
    return 0;
}

int cmd_summarize(const std::string& dir, const std::string& metric, const std::string& csv) {
    const auto records = moea::load_records(dir);
    std::cout << moea::summarize_text(records, metric);
    if (!csv.empty()) {
        moea::write_summary_csv(records, metric, csv);
        std::cout << "\nsummary csv written to " << csv << "\n";
    }
    return 0;
}

int cmd_classify(const std::string& dir) {
    std::cout << moea::classification_report(moea::load_records(dir));
    return 0;
}

int cmd_dump_front(const std::string& dir, const std::string& problem, int m,
                   const std::string& algorithm, std::string out) {
    const auto records = moea::load_records(dir);
    std::vector<const moea::ResultRecord*> cell;
    for (const auto& r : records)
        if (r.problem == problem && r.m == m && r.algorithm == algorithm) cell.push_back(&r);
    const moea::ResultRecord* median = moea::pick_median_record(cell);
    if (!median) {
        std::cerr << "no records for " << problem << " m=" << m << " " << algorithm << " in "
                  << dir << "\n";
        return 1;
    }
    if (out.empty()) out = "front_" + problem + "_m" + std::to_string(m) + "_" + algorithm + ".dat";
    const std::size_t rows = moea::dump_front(*median, out);
    std::cout << rows << " non-dominated points (median replication, seed " << median->seed
              << ") written to " << out << "\n";
    return 0;
}

// Fast self-checks of load-bearing invariants; exits non-zero on failure.
int cmd_validate() {
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "  ok  " : " FAIL ") << what << "\n";
        if (!ok) ++failures;
    };

    {
        const auto refs = moea::build_reference_set(3, 120);
        check(refs.points.size() == 120 && refs.granularity == 14,
              "three-objective reference set has 120 points at granularity 14");
        const auto layered = moea::build_reference_set(5, 105);
        check(layered.points.size() == 85, "five-objective reference set layers to 85 points");
    }
    {
        const std::vector<moea::ObjectiveVector> set{{0.5, 0.5}};
        const double hv = moea::hv_exact(set, {1.0, 1.0});
        check(std::abs(hv - 0.25) < 1e-12, "hypervolume of a single halfway point is 0.25");
    }
    {
        check(std::abs(moea::regularity_threshold(3) - (-0.13472643)) < 1e-7,
              "regularity threshold at three objectives");
    }
    {
        moea::RunConfig cfg;
        cfg.problem = "dtlz2";
        cfg.num_objectives = 3;
        cfg.population_size = 40;
        cfg.max_evaluations = 2000;
        cfg.seed = 7;
        cfg.algorithm = moea::AlgorithmId::Nsga3;
        const auto problem = moea::make_problem("dtlz2", 3);
        const auto result = moea::run_algorithm(problem, cfg);
        check(result.evaluations == 2000, "evaluation budget is met exactly");
        check(result.final_population.size() == 40, "final population holds the configured size");

        cfg.algorithm = moea::AlgorithmId::Nsga3Ur;
        cfg.forced_mode = moea::ForcedMode::Static;
        const auto forced = moea::run_algorithm(problem, cfg);
        check(moea::hash_decisions(forced.final_population) ==
                  moea::hash_decisions(result.final_population),
              "conditional algorithm pinned static matches the plain run bit for bit");
    }

    std::cout << (failures ? "validate: FAILED\n" : "validate: all checks passed\n");
    return failures ? 1 : 0;
}

}   // namespace

int main(int argc, char** argv) {
    CLI::App app{"many-objective optimization experiment harness"};
    app.require_subcommand(1);

    std::string spec_path, dir, metric = "both", csv, out, problem, algorithm, si_scaling;
    std::uint64_t seed = 0, budget = 0;
    int reps = 0, m = 3;
    unsigned threads = 0;
    std::size_t population = 0;

    auto* run = app.add_subcommand("run", "run every cell of an experiment spec");
    run->add_option("spec", spec_path, "experiment spec file")->required();
    run->add_option("--seed", seed, "override the base seed");
    run->add_option("--budget", budget, "override the evaluation budget");
    run->add_option("--reps", reps, "override the replication count");
    run->add_option("--out", out, "override the output directory");
    run->add_option("--threads", threads, "worker thread count (0 = hardware)");
    run->add_option("--si-scaling", si_scaling, "spreading-index scaling: literal | rms");
    run->add_option("--population", population, "override the population size");

    auto* summarize = app.add_subcommand("summarize", "aggregate a record directory");
    summarize->add_option("dir", dir, "record directory")->required();
    summarize->add_option("--metric", metric, "igd | hv | both");
    summarize->add_option("--csv", csv, "also write the aggregate table as CSV");

    auto* classify = app.add_subcommand("classify", "front-geometry classification report");
    classify->add_option("dir", dir, "record directory")->required();

    auto* dump = app.add_subcommand("dump-front", "write the median replication's front");
    dump->add_option("dir", dir, "record directory")->required();
    dump->add_option("--problem", problem, "problem id")->required();
    dump->add_option("--m", m, "objective count")->required();
    dump->add_option("--algorithm", algorithm, "algorithm name")->required();
    dump->add_option("--out", out, "output path (defaults to front_<cell>.dat)");

    app.add_subcommand("validate", "run fast self-checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(spec_path, seed, budget, reps, out, threads, si_scaling, population);
        if (summarize->parsed()) return cmd_summarize(dir, metric, csv);
        if (classify->parsed()) return cmd_classify(dir);
        if (dump->parsed()) return cmd_dump_front(dir, problem, m, algorithm, out);
        return cmd_validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
