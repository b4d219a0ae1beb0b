#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "moea/core.hpp"
#include "moea/dominance.hpp"
#include "moea/harness.hpp"

using namespace moea;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("moea_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ResultRecord make_record(const std::string& problem, const std::string& algorithm,
                         std::uint64_t seed, double igd_value, double hv_value) {
    ResultRecord rec;
    rec.problem = problem;
    rec.m = 3;
    rec.algorithm = algorithm;
    rec.seed = seed;
    rec.igd_value = igd_value;
    rec.hv_value = hv_value;
    rec.mode = algorithm == "nsga3" ? "static" : "adaptive";
    rec.evaluations = 600;
    rec.objectives = {{0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}};
    return rec;
}

}   // namespace

TEST_SUITE("harness") {

TEST_CASE("spec text parses into a full configuration") {
    const std::string text =
        "# experiment configuration\n"
        "problems = dtlz2, dtlz5\n"
        "objectives = 3, 5\n"
        "algorithms = nsga3, nsga3-ur\n"
        "reps = 4\n"
        "budget = 2400\n"
        "seed = 11\n"
        "out = /tmp/somewhere\n"
        "si_scaling = rms\n"
        "population = 24\n"
        "threads = 2\n";
    const auto spec = parse_spec(text);
    CHECK(spec.problems == std::vector<std::string>{"dtlz2", "dtlz5"});
    CHECK(spec.objectives == std::vector<int>{3, 5});
    REQUIRE(spec.algorithms.size() == 2);
    CHECK(spec.algorithms[0] == AlgorithmId::Nsga3);
    CHECK(spec.algorithms[1] == AlgorithmId::Nsga3Ur);
    CHECK(spec.replications == 4);
    CHECK(spec.budget == 2400);
    CHECK(spec.base_seed == 11);
    CHECK(spec.out_dir == "/tmp/somewhere");
    CHECK(spec.si_scaling == SiScaling::Rms);
    CHECK(spec.population_override == 24);
    CHECK(spec.threads == 2);
}

TEST_CASE("spec defaults cover everything but the required keys") {
    const auto spec = parse_spec("problems=dtlz1\nobjectives=3\nalgorithms=nsga3\n");
    CHECK(spec.replications == 30);
    CHECK(spec.budget == 60000);
    CHECK(spec.base_seed == 1);
    CHECK(spec.out_dir == "results");
    CHECK(spec.si_scaling == SiScaling::Literal);
    CHECK(spec.population_override == 0);
    CHECK(ExperimentSpec::default_population(3) == 120);
    CHECK(ExperimentSpec::default_population(4) == 120);
    CHECK(ExperimentSpec::default_population(5) == 105);
}

TEST_CASE("spec errors name the offending key") {
    using doctest::Contains;
    CHECK_THROWS_WITH_AS(parse_spec("objectives=3\nalgorithms=nsga3\n"), Contains("problems"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_spec("problems=dtlz1\nalgorithms=nsga3\n"), Contains("objectives"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_spec("problems=dtlz1\nobjectives=3\n"), Contains("algorithms"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse_spec("problems=dtlz1\nobjectives=3\nalgorithms=nsga3\nbudget=abc\n"),
        Contains("budget"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse_spec("problems=dtlz1\nobjectives=3\nalgorithms=nsga3\nwhatever=1\n"),
        Contains("whatever"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("problems=dtlz1\nobjectives=3\nalgorithms=nsga9\n"),
                    std::invalid_argument);
}

TEST_CASE("record filenames embed the full cell identity") {
    CHECK(record_filename("dtlz2", 3, "nsga3", 17) == "dtlz2_m3_nsga3_s17.json");
    CHECK(record_filename("mokp", 5, "nsga3-ur", 1) == "mokp_m5_nsga3-ur_s1.json");
}

TEST_CASE("a tiny experiment runs, persists and resumes") {
    TempDir dir("tiny");
    ExperimentSpec spec;
    spec.problems = {"dtlz2"};
    spec.objectives = {3};
    spec.algorithms = {AlgorithmId::Nsga3, AlgorithmId::Nsga3Ur};
    spec.replications = 2;
    spec.budget = 1200;
    spec.population_override = 24;
    spec.base_seed = 100;
    spec.out_dir = dir.path.string();
    spec.threads = 1;

    std::size_t fresh_count = 0;
    const auto records = run_experiment(spec, [&](const ResultRecord&, bool fresh) {
        if (fresh) ++fresh_count;
    });
    CHECK(fresh_count == 4);
    REQUIRE(records.size() == 4);   // 1 problem x 1 m x 2 algorithms x 2 reps

    std::set<std::string> seen;
    for (const auto& rec : records) {
        CHECK(rec.problem == "dtlz2");
        CHECK(rec.m == 3);
        CHECK(rec.evaluations == 1200);
        CHECK((rec.seed == 100 || rec.seed == 101));
        REQUIRE(rec.igd_value.has_value());
        CHECK(*rec.igd_value > 0.0);
        REQUIRE(rec.hv_value.has_value());
        CHECK(*rec.hv_value > 0.0);
        CHECK(*rec.hv_value < 1.0);
        CHECK(rec.objectives.size() == 24);
        CHECK_FALSE(rec.init_hash.empty());
        seen.insert(record_filename(rec.problem, rec.m, rec.algorithm, rec.seed));
        CHECK(fs::exists(dir.path / record_filename(rec.problem, rec.m, rec.algorithm, rec.seed)));
    }
    CHECK(seen.size() == 4);

    // Paired initialization: equal seeds start from identical populations.
    for (std::uint64_t seed : {100ULL, 101ULL}) {
        std::vector<std::string> hashes;
        for (const auto& rec : records)
            if (rec.seed == seed) hashes.push_back(rec.init_hash);
        REQUIRE(hashes.size() == 2);
        CHECK(hashes[0] == hashes[1]);
    }

    // The conditional runs decided at floor(0.2 * 50) = generation 10.
    for (const auto& rec : records) {
        if (rec.algorithm == "nsga3-ur") {
            REQUIRE(rec.decision_generation.has_value());
            CHECK(*rec.decision_generation == 10);
            REQUIRE(rec.si.has_value());
            REQUIRE(rec.threshold.has_value());
            CHECK(rec.mode == "adaptive");   // raw index beats the negative threshold
        } else {
            CHECK(rec.mode == "static");
            CHECK_FALSE(rec.si.has_value());
        }
    }

    // The run log exists with a header and one row per fresh run.
    std::ifstream csv(dir.path / "runs.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "problem,m,algorithm,seed,igd,hv,si,threshold,mode,duration_s");
    std::size_t rows = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);

    // Second invocation resumes every record without recomputing.
    std::size_t resumed = 0, fresh_again = 0;
    const auto reloaded = run_experiment(spec, [&](const ResultRecord&, bool fresh) {
        if (fresh) ++fresh_again;
        else ++resumed;
    });
    CHECK(fresh_again == 0);
    CHECK(resumed == 4);
    REQUIRE(reloaded.size() == 4);

    // And load_records returns the same set.
    const auto loaded = load_records(dir.path.string());
    REQUIRE(loaded.size() == 4);
    for (const auto& rec : loaded) {
        const auto match = std::find_if(records.begin(), records.end(), [&](const ResultRecord& r) {
            return r.algorithm == rec.algorithm && r.seed == rec.seed;
        });
        REQUIRE(match != records.end());
        CHECK(rec.igd_value == match->igd_value);
        CHECK(rec.hv_value == match->hv_value);
        CHECK(rec.init_hash == match->init_hash);
        CHECK(rec.objectives == match->objectives);
    }
}

TEST_CASE("unknown problems fail before any run starts") {
    TempDir dir("badspec");
    ExperimentSpec spec;
    spec.problems = {"dtlz2", "dtlzX"};
    spec.objectives = {3};
    spec.algorithms = {AlgorithmId::Nsga3};
    spec.replications = 1;
    spec.budget = 1200;
    spec.population_override = 24;
    spec.out_dir = dir.path.string();
    CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
    // Nothing was written: the configuration failed up front.
    CHECK_FALSE(fs::exists(dir.path / record_filename("dtlz2", 3, "nsga3", 1)));
}

TEST_CASE("aggregation computes means, deviations and marks") {
    std::vector<ResultRecord> records;
    // The conditional variant is clearly better on igd, clearly worse on hv.
    for (int r = 0; r < 12; ++r) {
        records.push_back(make_record("dtlz2", "nsga3", 100 + r, 0.10 + 0.001 * r, 0.60));
        records.push_back(make_record("dtlz2", "nsga3-ur", 100 + r, 0.01 + 0.001 * r, 0.70));
    }
    const auto igd_stats = aggregate(records, "igd");
    REQUIRE(igd_stats.size() == 2);
    const auto& plain = igd_stats[0].algorithm == "nsga3" ? igd_stats[0] : igd_stats[1];
    const auto& cond = igd_stats[0].algorithm == "nsga3-ur" ? igd_stats[0] : igd_stats[1];
    CHECK(plain.count == 12);
    CHECK(plain.mean == doctest::Approx(0.1055).epsilon(1e-12));
    CHECK(cond.mean == doctest::Approx(0.0155).epsilon(1e-12));
    // Sample standard deviation of an arithmetic 0.001 grid of 12 values.
    CHECK(plain.stddev == doctest::Approx(0.0036055513).epsilon(1e-6));
    REQUIRE(plain.mark.has_value());
    CHECK(*plain.mark == Mark::Minus);       // plain is significantly worse on igd
    CHECK_FALSE(cond.mark.has_value());      // the baseline of the comparison
    CHECK(cond.best_in_cell);
    CHECK_FALSE(plain.best_in_cell);

    const auto hv_stats = aggregate(records, "hv");
    const auto& plain_hv = hv_stats[0].algorithm == "nsga3" ? hv_stats[0] : hv_stats[1];
    REQUIRE(plain_hv.mark.has_value());
    CHECK(*plain_hv.mark == Mark::Minus);    // higher hv is better and plain is lower
}

TEST_CASE("aggregation without the conditional variant yields no marks") {
    std::vector<ResultRecord> records;
    for (int r = 0; r < 5; ++r) records.push_back(make_record("dtlz1", "nsga3", r, 0.02, 0.5));
    const auto stats = aggregate(records, "igd");
    REQUIRE(stats.size() == 1);
    CHECK_FALSE(stats[0].mark.has_value());
    CHECK(stats[0].count == 5);
    CHECK(stats[0].stddev == doctest::Approx(0.0));
}

TEST_CASE("statistically identical cells are marked approximate") {
    std::vector<ResultRecord> records;
    for (int r = 0; r < 10; ++r) {
        records.push_back(make_record("dtlz2", "nsga3", r, 0.05 + 0.0001 * (r % 3), 0.6));
        records.push_back(make_record("dtlz2", "nsga3-ur", r, 0.05 + 0.0001 * ((r + 1) % 3), 0.6));
    }
    const auto stats = aggregate(records, "igd");
    const auto& plain = stats[0].algorithm == "nsga3" ? stats[0] : stats[1];
    REQUIRE(plain.mark.has_value());
    CHECK(*plain.mark == Mark::Approx);
}

TEST_CASE("the rendered table carries cells, marks and the tally") {
    std::vector<ResultRecord> records;
    for (int r = 0; r < 12; ++r) {
        records.push_back(make_record("dtlz2", "nsga3", 100 + r, 0.10 + 0.001 * r, 0.60));
        records.push_back(make_record("dtlz2", "nsga3-ur", 100 + r, 0.01 + 0.001 * r, 0.70));
    }
    const auto text = summarize_text(records, "igd");
    CHECK(text.find("dtlz2") != std::string::npos);
    CHECK(text.find("nsga3") != std::string::npos);
    CHECK(text.find("nsga3-ur") != std::string::npos);
    CHECK(text.find("1.0550e-1") != std::string::npos);   // plain mean
    CHECK(text.find("1.5500e-2") != std::string::npos);   // conditional mean
    CHECK(text.find(") -") != std::string::npos);          // significance mark
    CHECK(text.find("tally") != std::string::npos);
    CHECK(text.find("*") != std::string::npos);            // best-cell marker

    // Rendering is a pure function of the records.
    CHECK(summarize_text(records, "igd") == text);
    // The combined view embeds both metric tables.
    const auto both = summarize_text(records, "both");
    CHECK(both.find("igd") != std::string::npos);
    CHECK(both.find("hv") != std::string::npos);
}

TEST_CASE("the summary csv has one row per cell and metric") {
    TempDir dir("summary");
    std::vector<ResultRecord> records;
    for (int r = 0; r < 6; ++r) {
        records.push_back(make_record("dtlz2", "nsga3", r, 0.05, 0.6));
        records.push_back(make_record("dtlz5", "nsga3", r, 0.01, 0.2));
    }
    const auto path = (dir.path / "summary.csv").string();
    write_summary_csv(records, "igd", path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "problem,m,algorithm,metric,mean,std,mark");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("classification accuracy counts matched modes per category") {
    std::vector<ResultRecord> records;
    // Two inverted-front runs, both adaptive: category fully matched.
    for (int r = 0; r < 2; ++r) {
        auto rec = make_record("idtlz1", "nsga3-ur", r, 0.02, 0.5);
        rec.mode = "adaptive";
        records.push_back(rec);
    }
    // Two linear-front runs, one adaptive (mismatch), one static (match).
    auto lin_a = make_record("dtlz1", "nsga3-ur", 1, 0.02, 0.5);
    lin_a.mode = "adaptive";
    records.push_back(lin_a);
    auto lin_b = make_record("dtlz1", "nsga3-ur", 2, 0.02, 0.5);
    lin_b.mode = "static";
    records.push_back(lin_b);
    // Plain-algorithm records never enter the classification.
    records.push_back(make_record("dtlz1", "nsga3", 3, 0.02, 0.5));

    const auto report = classification_report(records);
    CHECK(report.find("inverted") != std::string::npos);
    CHECK(report.find("linear") != std::string::npos);
    CHECK(report.find("1.00") != std::string::npos);   // inverted accuracy
    CHECK(report.find("0.50") != std::string::npos);   // linear accuracy
}

TEST_CASE("the scale-mismatch note appears when every regular run adapts") {
    std::vector<ResultRecord> records;
    for (int r = 0; r < 3; ++r) {
        auto rec = make_record("dtlz2", "nsga3-ur", r, 0.05, 0.6);
        rec.mode = "adaptive";
        rec.si_scaling = "literal";
        records.push_back(rec);
    }
    const auto report = classification_report(records);
    CHECK(report.find("note:") != std::string::npos);
    CHECK(report.find("rms") != std::string::npos);

    // With the rms scaling the same outcome carries no such note.
    for (auto& rec : records) rec.si_scaling = "rms";
    const auto rms_report = classification_report(records);
    CHECK(rms_report.find("note:") == std::string::npos);

    // Nor does it appear when some regular run stayed static.
    records[0].si_scaling = "literal";
    records[1].si_scaling = "literal";
    records[2].si_scaling = "literal";
    records[2].mode = "static";
    const auto mixed_report = classification_report(records);
    CHECK(mixed_report.find("note:") == std::string::npos);
}

TEST_CASE("the median pick is the lower middle of the metric ordering") {
    std::vector<ResultRecord> cell;
    cell.push_back(make_record("dtlz2", "nsga3", 1, 0.3, 0.5));
    cell.push_back(make_record("dtlz2", "nsga3", 2, 0.1, 0.5));
    cell.push_back(make_record("dtlz2", "nsga3", 3, 0.2, 0.5));
    std::vector<const ResultRecord*> ptrs;
    for (const auto& rec : cell) ptrs.push_back(&rec);
    const auto* median = pick_median_record(ptrs);
    REQUIRE(median != nullptr);
    CHECK(*median->igd_value == doctest::Approx(0.2));

    // Even count: the lower of the two middles.
    cell.push_back(make_record("dtlz2", "nsga3", 4, 0.4, 0.5));
    ptrs.clear();
    for (const auto& rec : cell) ptrs.push_back(&rec);
    CHECK(*pick_median_record(ptrs)->igd_value == doctest::Approx(0.2));

    // Without igd the pick falls back to hypervolume, descending.
    std::vector<ResultRecord> hv_cell;
    for (int r = 0; r < 3; ++r) {
        auto rec = make_record("mokp", "nsga3", r, 0.0, 0.5 + 0.1 * r);
        rec.igd_value.reset();
        hv_cell.push_back(rec);
    }
    ptrs.clear();
    for (const auto& rec : hv_cell) ptrs.push_back(&rec);
    CHECK(*pick_median_record(ptrs)->hv_value == doctest::Approx(0.6));
}

TEST_CASE("front dumps keep only the non-dominated rows") {
    TempDir dir("dump");
    ResultRecord rec = make_record("dtlz2", "nsga3", 1, 0.05, 0.5);
    rec.objectives = {{0.1, 0.9, 0.1}, {0.9, 0.1, 0.1}, {0.95, 0.95, 0.95}, {0.2, 0.2, 0.9}};
    const auto path = (dir.path / "front.dat").string();
    const std::size_t rows = dump_front(rec, path);
    CHECK(rows == 3);   // the third point is dominated

    const auto pts = [&] {
        std::ifstream in(path);
        std::vector<std::vector<double>> out;
        double a, b, c;
        while (in >> a >> b >> c) out.push_back({a, b, c});
        return out;
    }();
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) CHECK(p.size() == 3);

    // Maximization problems are un-negated on the way out.
    ResultRecord kp = make_record("mokp", "nsga3", 1, 0.0, 0.5);
    kp.igd_value.reset();
    kp.objectives = {{-90.0, -80.0, -70.0}, {-85.0, -95.0, -60.0}};
    const auto kp_path = (dir.path / "kp.dat").string();
    CHECK(dump_front(kp, kp_path) == 2);
    std::ifstream in(kp_path);
    double v = 0.0;
    in >> v;
    CHECK(v > 0.0);
}

TEST_CASE("numbers render in compact scientific notation") {
    CHECK(format_sci(0.017843, 5) == "1.7843e-2");
    CHECK(format_sci(0.000913, 3) == "9.13e-4");
    CHECK(format_sci(0.56594, 5) == "5.6594e-1");
    CHECK(format_sci(1.0, 5) == "1.0000e+0");
    CHECK(format_sci(123.456, 4) == "1.235e+2");
    CHECK(format_sci(0.0, 3) == "0.00e+0");
    CHECK(format_sci(-0.017843, 5) == "-1.7843e-2");
}

TEST_CASE("loading from a missing directory fails loudly") {
    CHECK_THROWS(load_records("/tmp/moea_no_such_dir_anywhere"));
}

}   // TEST_SUITE
