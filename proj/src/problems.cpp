#include "moea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "moea/refgeom.hpp"

namespace moea {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Instance used when no explicit seed is requested, so independent runs and
// reports always describe the same knapsack data.
constexpr std::uint64_t kDefaultMokpSeed = 0x4D4F4B50ULL;

// ---------------------------------------------------------------------------
// DTLZ family
// ---------------------------------------------------------------------------

double g_rastrigin(const std::vector<double>& x, std::size_t start) {
    const double k = static_cast<double>(x.size() - start);
    double s = 0.0;
    for (std::size_t i = start; i < x.size(); ++i) {
        const double t = x[i] - 0.5;
        s += t * t - std::cos(20.0 * kPi * t);
    }
    return 100.0 * (k + s);
}

double g_sphere(const std::vector<double>& x, std::size_t start) {
    double s = 0.0;
    for (std::size_t i = start; i < x.size(); ++i) {
        const double t = x[i] - 0.5;
        s += t * t;
    }
    return s;
}

void dtlz1_objectives(const std::vector<double>& x, int m, ObjectiveVector& f, double& g_out) {
    const std::size_t pos = static_cast<std::size_t>(m - 1);
    const double g = g_rastrigin(x, pos);
    f.assign(m, 0.5 * (1.0 + g));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m - 1 - i; ++j) f[i] *= x[j];
        if (i > 0) f[i] *= 1.0 - x[m - 1 - i];
    }
    g_out = g;
}

// Shared angular form of DTLZ2-6: objectives from angles theta (radians).
void spherical_objectives(const std::vector<double>& theta, int m, double g, ObjectiveVector& f) {
    f.assign(m, 1.0 + g);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m - 1 - i; ++j) f[i] *= std::cos(theta[j]);
        if (i > 0) f[i] *= std::sin(theta[m - 1 - i]);
    }
}

void dtlz2_objectives(const std::vector<double>& x, int m, double alpha, double g, ObjectiveVector& f) {
    std::vector<double> theta(m - 1);
    for (int j = 0; j < m - 1; ++j) theta[j] = std::pow(x[j], alpha) * kPi / 2.0;
    spherical_objectives(theta, m, g, f);
}

void dtlz5_objectives(const std::vector<double>& x, int m, double g, ObjectiveVector& f) {
    std::vector<double> theta(m - 1);
    theta[0] = x[0] * kPi / 2.0;
    for (int j = 1; j < m - 1; ++j)
        theta[j] = kPi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[j]);
    spherical_objectives(theta, m, g, f);
}

void dtlz7_objectives(const std::vector<double>& x, int m, ObjectiveVector& f) {
    const std::size_t pos = static_cast<std::size_t>(m - 1);
    const double k = static_cast<double>(x.size() - pos);
    double tail = 0.0;
    for (std::size_t i = pos; i < x.size(); ++i) tail += x[i];
    const double g = 1.0 + 9.0 * tail / k;

    f.assign(m, 0.0);
    double h = static_cast<double>(m);
    for (int i = 0; i < m - 1; ++i) {
        f[i] = x[i];
        h -= f[i] / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * f[i]));
    }
    f[m - 1] = (1.0 + g) * h;
}

// ---------------------------------------------------------------------------
// True-front samplers
// ---------------------------------------------------------------------------

// Densest simplex lattice whose size does not exceed n (and is at least 1
// division). The lattice is the uniform structure the population's own
// reference set uses, so front sampling stays consistent with it.
std::vector<ObjectiveVector> lattice_front(int m, std::size_t n, double scale) {
    int h = 1;
    while (das_dennis_count(m, h + 1) <= n) ++h;
    ReferencePointSet lattice = das_dennis(m, h);
    std::vector<ObjectiveVector> out;
    out.reserve(lattice.size());
    for (auto& p : lattice.points) {
        ObjectiveVector f = std::move(p.coords);
        for (double& c : f) c *= scale;
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<ObjectiveVector> sphere_front(int m, std::size_t n) {
    std::vector<ObjectiveVector> out = lattice_front(m, n, 1.0);
    for (auto& f : out) {
        double norm = std::sqrt(std::inner_product(f.begin(), f.end(), f.begin(), 0.0));
        if (norm <= 0.0) norm = 1.0;
        for (double& c : f) c /= norm;
    }
    return out;
}

// DTLZ5/6 optimum: a quarter-circle arc expanded so every prefix objective
// shares the arc's first coordinate at successively halved squared scale.
std::vector<ObjectiveVector> degenerate_curve_front(int m, std::size_t n) {
    std::vector<ObjectiveVector> out;
    out.reserve(n);
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        const double r = std::sqrt(t * t + (1.0 - t) * (1.0 - t));
        const double a = t / r;
        const double b = (1.0 - t) / r;
        ObjectiveVector f(m);
        f[0] = a / std::pow(sqrt2, m - 2);
        for (int j = 2; j <= m - 1; ++j) f[j - 1] = a / std::pow(sqrt2, m - j);
        f[m - 1] = b;
        out.push_back(std::move(f));
    }
    return out;
}

// Position values t whose scalar gain h(t) = t(1+sin(3 pi t))/2 is a strict
// running maximum; the disconnected DTLZ7 front is the product of this set
// because the last objective separates over the position variables.
std::vector<double> dtlz7_optimal_grid(std::size_t per_axis) {
    const std::size_t dense = 200001;
    std::vector<double> keep;
    keep.reserve(dense / 2);
    double best = -1.0;
    for (std::size_t i = 0; i < dense; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(dense - 1);
        const double h = 0.5 * t * (1.0 + std::sin(3.0 * kPi * t));
        if (h > best) {
            best = h;
            keep.push_back(t);
        }
    }
    std::vector<double> out;
    out.reserve(per_axis);
    for (std::size_t i = 0; i < per_axis; ++i) {
        const std::size_t idx = per_axis == 1 ? 0 : i * (keep.size() - 1) / (per_axis - 1);
        out.push_back(keep[idx]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ObjectiveVector> dtlz7_front(int m, std::size_t n) {
    const double per_axis_exact = std::pow(static_cast<double>(n), 1.0 / (m - 1));
    const std::size_t per_axis = static_cast<std::size_t>(std::ceil(per_axis_exact - 1e-9));
    const std::vector<double> axis = dtlz7_optimal_grid(std::max<std::size_t>(per_axis, 2));

    std::vector<ObjectiveVector> out;
    std::vector<std::size_t> idx(m - 1, 0);
    while (true) {
        ObjectiveVector f(m);
        double h = static_cast<double>(m);
        for (int j = 0; j < m - 1; ++j) {
            f[j] = axis[idx[j]];
            h -= 0.5 * f[j] * (1.0 + std::sin(3.0 * kPi * f[j]));
        }
        f[m - 1] = 2.0 * h;
        out.push_back(std::move(f));

        int j = m - 2;
        while (j >= 0 && ++idx[j] == axis.size()) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Water resource planning (5 objectives, 7 constraints, 3 variables)
// ---------------------------------------------------------------------------

void wrp_evaluate(const std::vector<double>& x, ObjectiveVector& f, double& violation) {
    const double x1 = x[0];
    const double x2 = x[1];
    const double x3 = x[2];

    f.resize(5);
    f[0] = 106780.37 * (x2 + x3) + 61704.67;
    f[1] = 3000.0 * x1;
    f[2] = 305700.0 * 2289.0 * x2 / std::pow(0.06 * 2289.0, 0.65);
    f[3] = 250.0 * 2289.0 * std::exp(-39.75 * x2 + 9.9 * x3 + 2.74);
    f[4] = 25.0 * (1.39 / (x1 * x2) + 4940.0 * x3 - 80.0);

    const double lhs[7] = {
        0.00139 / (x1 * x2) + 4.94 * x3 - 0.08,
        0.000306 / (x1 * x2) + 1.082 * x3 - 0.0986,
        12.307 / (x1 * x2) + 49408.24 * x3 + 4051.02,
        2.098 / (x1 * x2) + 8046.33 * x3 - 696.71,
        2.138 / (x1 * x2) + 7883.39 * x3 - 705.04,
        0.417 / (x1 * x2) + 1721.26 * x3 - 136.54,
        0.164 / (x1 * x2) + 631.13 * x3 - 54.48,
    };
    const double bound[7] = {1.0, 1.0, 50000.0, 16000.0, 10000.0, 2000.0, 550.0};

    violation = 0.0;
    for (int i = 0; i < 7; ++i) violation += std::max(0.0, lhs[i] - bound[i]);
}

}   // namespace

// ---------------------------------------------------------------------------
// Knapsack
// ---------------------------------------------------------------------------

KnapsackInstance KnapsackInstance::generate(int num_knapsacks, std::size_t num_items,
                                            std::uint64_t seed) {
    KnapsackInstance inst;
    inst.num_knapsacks = num_knapsacks;
    inst.num_items = num_items;
    RngStream rng(mix_seed(seed, 77));

    inst.profit.assign(num_knapsacks, std::vector<double>(num_items));
    inst.weight.assign(num_knapsacks, std::vector<double>(num_items));
    for (int j = 0; j < num_knapsacks; ++j)
        for (std::size_t i = 0; i < num_items; ++i)
            inst.profit[j][i] = static_cast<double>(10 + rng.index(91));
    for (int j = 0; j < num_knapsacks; ++j)
        for (std::size_t i = 0; i < num_items; ++i)
            inst.weight[j][i] = static_cast<double>(10 + rng.index(91));

    inst.capacity.resize(num_knapsacks);
    for (int j = 0; j < num_knapsacks; ++j)
        inst.capacity[j] = 0.5 * std::accumulate(inst.weight[j].begin(), inst.weight[j].end(), 0.0);

    // Items leave in ascending order of their best profit/weight ratio, so
    // the repair drops the least valuable cargo first.
    std::vector<double> ratio(num_items, 0.0);
    for (std::size_t i = 0; i < num_items; ++i)
        for (int j = 0; j < num_knapsacks; ++j)
            ratio[i] = std::max(ratio[i], inst.profit[j][i] / inst.weight[j][i]);
    inst.removal_order.resize(num_items);
    std::iota(inst.removal_order.begin(), inst.removal_order.end(), std::size_t{0});
    std::stable_sort(inst.removal_order.begin(), inst.removal_order.end(),
                     [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });
    return inst;
}

namespace {

void mokp_evaluate(const KnapsackInstance& inst, const std::vector<std::uint8_t>& bits,
                   ObjectiveVector& f, double& violation) {
    std::vector<std::uint8_t> selected(bits);
    std::vector<double> load(inst.num_knapsacks, 0.0);
    for (std::size_t i = 0; i < inst.num_items; ++i)
        if (selected[i])
            for (int j = 0; j < inst.num_knapsacks; ++j) load[j] += inst.weight[j][i];

    auto overloaded = [&]() {
        for (int j = 0; j < inst.num_knapsacks; ++j)
            if (load[j] > inst.capacity[j]) return true;
        return false;
    };
    for (std::size_t pos = 0; pos < inst.num_items && overloaded(); ++pos) {
        const std::size_t item = inst.removal_order[pos];
        if (!selected[item]) continue;
        selected[item] = 0;
        for (int j = 0; j < inst.num_knapsacks; ++j) load[j] -= inst.weight[j][item];
    }

    f.assign(inst.num_knapsacks, 0.0);
    for (std::size_t i = 0; i < inst.num_items; ++i)
        if (selected[i])
            for (int j = 0; j < inst.num_knapsacks; ++j) f[j] -= inst.profit[j][i];
    violation = 0.0;
}

}   // namespace

// ---------------------------------------------------------------------------
// Factory
// ---------------------------------------------------------------------------

std::string to_string(FrontShape s) {
    switch (s) {
        case FrontShape::Linear: return "linear";
        case FrontShape::Concave: return "concave";
        case FrontShape::Degenerate: return "degenerate";
        case FrontShape::Disconnected: return "disconnected";
        case FrontShape::Inverted: return "inverted";
        case FrontShape::RealWorld: return "real-world";
    }
    return "?";
}

bool is_regular(FrontShape s) { return s == FrontShape::Linear || s == FrontShape::Concave; }

bool is_irregular(FrontShape s) {
    return s == FrontShape::Degenerate || s == FrontShape::Disconnected || s == FrontShape::Inverted;
}

FrontShape front_shape_of(const std::string& id) {
    if (id == "dtlz1") return FrontShape::Linear;
    if (id == "dtlz2" || id == "dtlz3" || id == "dtlz4") return FrontShape::Concave;
    if (id == "dtlz5" || id == "dtlz6") return FrontShape::Degenerate;
    if (id == "dtlz7") return FrontShape::Disconnected;
    if (id == "idtlz1" || id == "idtlz2") return FrontShape::Inverted;
    if (id == "mokp" || id == "wrp") return FrontShape::RealWorld;
    throw std::invalid_argument("unknown problem id: " + id);
}

std::string default_wrp_front_path() {
    if (const char* dir = std::getenv("MOEA_DATA_DIR"))
        return std::string(dir) + "/wrp_front.dat";
    return "data/wrp_front.dat";
}

std::vector<ObjectiveVector> load_front_file(const std::string& path, int m) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference front file: " + path);
    std::vector<ObjectiveVector> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ObjectiveVector row;
        double v;
        while (ls >> v) row.push_back(v);
        if (row.empty()) continue;
        if (static_cast<int>(row.size()) != m)
            throw std::runtime_error("reference front file " + path + " has a row with " +
                                     std::to_string(row.size()) + " columns, expected " +
                                     std::to_string(m));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("reference front file is empty: " + path);
    return rows;
}

ProblemDefinition make_problem(const std::string& id, int m, const ProblemOptions& options) {
    if (m < 2) throw std::invalid_argument("problems need at least two objectives");

    ProblemDefinition p;
    p.name = id;
    p.num_objectives = m;
    p.encoding = Encoding::Real;

    auto real_setup = [&](std::size_t tail, FrontShape shape) {
        p.num_variables = static_cast<std::size_t>(m - 1) + tail;
        p.bounds = Bounds::unit(p.num_variables);
        p.front_shape = shape;
    };

    if (id == "dtlz1") {
        real_setup(5, FrontShape::Linear);
        p.evaluator = [m](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            double g;
            dtlz1_objectives(x.reals, m, f, g);
            cv = 0.0;
        };
        p.front_sampler = [m](std::size_t n) { return lattice_front(m, n, 0.5); };
    } else if (id == "dtlz2" || id == "dtlz3" || id == "dtlz4") {
        real_setup(10, FrontShape::Concave);
        const bool rastrigin = id == "dtlz3";
        const double alpha = id == "dtlz4" ? 100.0 : 1.0;
        p.evaluator = [m, rastrigin, alpha](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            const std::size_t pos = static_cast<std::size_t>(m - 1);
            const double g = rastrigin ? g_rastrigin(x.reals, pos) : g_sphere(x.reals, pos);
            dtlz2_objectives(x.reals, m, alpha, g, f);
            cv = 0.0;
        };
        p.front_sampler = [m](std::size_t n) { return sphere_front(m, n); };
    } else if (id == "dtlz5" || id == "dtlz6") {
        real_setup(10, FrontShape::Degenerate);
        const bool power_tail = id == "dtlz6";
        p.evaluator = [m, power_tail](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            const std::size_t pos = static_cast<std::size_t>(m - 1);
            double g;
            if (power_tail) {
                g = 0.0;
                for (std::size_t i = pos; i < x.reals.size(); ++i) g += std::pow(x.reals[i], 0.1);
            } else {
                g = g_sphere(x.reals, pos);
            }
            dtlz5_objectives(x.reals, m, g, f);
            cv = 0.0;
        };
        p.front_sampler = [m](std::size_t n) { return degenerate_curve_front(m, n); };
    } else if (id == "dtlz7") {
        real_setup(20, FrontShape::Disconnected);
        p.evaluator = [m](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            dtlz7_objectives(x.reals, m, f);
            cv = 0.0;
        };
        p.front_sampler = [m](std::size_t n) { return dtlz7_front(m, n); };
    } else if (id == "idtlz1") {
        real_setup(5, FrontShape::Inverted);
        p.evaluator = [m](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            double g;
            dtlz1_objectives(x.reals, m, f, g);
            for (double& v : f) v = 0.5 * (1.0 + g) - v;
            cv = 0.0;
        };
        p.front_sampler = [m](std::size_t n) {
            std::vector<ObjectiveVector> base = lattice_front(m, n, 0.5);
            for (auto& f : base)
                for (double& v : f) v = 0.5 - v;
            return base;
        };
    } else if (id == "idtlz2") {
        real_setup(10, FrontShape::Inverted);
        p.evaluator = [m](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            const std::size_t pos = static_cast<std::size_t>(m - 1);
            const double g = g_sphere(x.reals, pos);
            dtlz2_objectives(x.reals, m, 1.0, g, f);
            for (double& v : f) v = (1.0 + g) - v;
            cv = 0.0;
        };
        p.front_sampler = [m](std::size_t n) {
            std::vector<ObjectiveVector> base = sphere_front(m, n);
            for (auto& f : base)
                for (double& v : f) v = 1.0 - v;
            return base;
        };
    } else if (id == "mokp") {
        p.encoding = Encoding::Binary;
        p.num_variables = 250;
        p.front_shape = FrontShape::RealWorld;
        const std::uint64_t seed = options.mokp_seed == 0 ? kDefaultMokpSeed : options.mokp_seed;
        auto inst = std::make_shared<KnapsackInstance>(
            KnapsackInstance::generate(m, p.num_variables, seed));
        p.evaluator = [inst](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            mokp_evaluate(*inst, x.bits, f, cv);
        };
        // No analytic front: the optimum of a random instance is unknown.
    } else if (id == "wrp") {
        if (m != 5) throw std::invalid_argument("wrp is a five-objective problem");
        p.num_variables = 3;
        p.bounds = Bounds{{0.01, 0.01, 0.01}, {0.45, 0.10, 0.10}};
        p.front_shape = FrontShape::RealWorld;
        p.constrained = true;
        p.evaluator = [](const DecisionVector& x, ObjectiveVector& f, double& cv) {
            wrp_evaluate(x.reals, f, cv);
        };
        const std::string path =
            options.wrp_front_path.empty() ? default_wrp_front_path() : options.wrp_front_path;
        p.front_sampler = [path, m](std::size_t) { return load_front_file(path, m); };
    } else {
        throw std::invalid_argument("unknown problem: " + id);
    }
    return p;
}

Individual evaluate(const ProblemDefinition& problem, const DecisionVector& x,
                    EvaluationCounter& counter) {
    if (x.encoding != problem.encoding)
        throw std::invalid_argument("decision encoding does not match problem " + problem.name);
    if (x.size() != problem.num_variables)
        throw std::invalid_argument("decision dimension " + std::to_string(x.size()) +
                                    " does not match problem " + problem.name + " (" +
                                    std::to_string(problem.num_variables) + ")");
    if (x.encoding == Encoding::Real) {
        for (std::size_t i = 0; i < x.reals.size(); ++i)
            if (x.reals[i] < problem.bounds.lower[i] - 1e-12 ||
                x.reals[i] > problem.bounds.upper[i] + 1e-12)
                throw std::invalid_argument("decision variable out of bounds for " + problem.name);
    }

    Individual ind;
    ind.decision = x;
    problem.evaluator(x, ind.objectives, ind.constraint_violation);
    ++counter.count;

    for (double v : ind.objectives)
        if (!std::isfinite(v)) throw std::runtime_error("non-finite objective from " + problem.name);
    return ind;
}

}   // namespace moea
