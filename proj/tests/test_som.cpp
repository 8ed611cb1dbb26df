#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "swarmsim/kernels.hpp"
#include "swarmsim/rng.hpp"
#include "swarmsim/som.hpp"
#include "swarmsim/som_io.hpp"

using namespace swarmsim;

namespace {

FeatureSeries series_with(std::size_t steps, std::size_t dim, Behaviour b, double fill) {
    FeatureSeries s;
    s.feature_set = FeatureSet::alharthi2022;
    s.meta.behaviour = b;
    s.dimension = dim;
    s.first_step = 250;
    s.values.assign(steps * dim, fill);
    return s;
}

// Sample set with the given vectors and labels.
SampleSet sample_set(std::vector<std::vector<double>> rows, std::vector<int> labels) {
    SampleSet set;
    set.dimension = rows.front().size();
    for (const auto& r : rows) set.data.insert(set.data.end(), r.begin(), r.end());
    set.labels = std::move(labels);
    set.provenance.resize(set.labels.size());
    return set;
}

SomModel fixed_model(int rows, int cols, std::vector<std::vector<double>> prototypes) {
    SomModel m;
    m.config.rows = rows;
    m.config.cols = cols;
    m.dimension = prototypes.front().size();
    m.seed = 77;
    for (const auto& p : prototypes) m.prototypes.insert(m.prototypes.end(), p.begin(), p.end());
    return m;
}

}  // namespace

TEST_CASE("build_samples: window count, dimension, labels, provenance") {
    auto series = series_with(1000, 8, Behaviour::vicsek, 0.25);
    auto set = build_samples(series, 5);
    CHECK(set.size() == 200);
    CHECK(set.dimension == 40);
    CHECK(set.labels.front() == 2);
    CHECK(set.provenance.front().start_step == 250);
    CHECK(set.provenance.back().start_step == 250 + 995);

    auto gomes = series_with(10, 120, Behaviour::reynolds, 0.5);
    gomes.feature_set = FeatureSet::gomes2013;
    CHECK(build_samples(gomes, 5).dimension == 600);

    auto tiny = build_samples(series_with(4, 8, Behaviour::vicsek, 0.1), 5);
    CHECK(tiny.size() == 0);
    CHECK(tiny.skipped_series == 1);

    // Windows are non-overlapping: 1003 steps -> 200 samples, tail dropped.
    CHECK(build_samples(series_with(1003, 8, Behaviour::vicsek, 0.0), 5).size() == 200);
}

TEST_CASE("samples flatten windows in step order") {
    FeatureSeries s = series_with(5, 2, Behaviour::ballistic, 0.0);
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = static_cast<double>(i);
    auto set = build_samples(s, 5);
    REQUIRE(set.size() == 1);
    for (std::size_t i = 0; i < 10; ++i) CHECK(set.sample(0)[i] == static_cast<double>(i));
}

TEST_CASE("init_som: node count, determinism, bounding box") {
    auto train_set = sample_set({{0.2, 0.4}, {0.6, 0.8}}, {1, 2});
    SomConfig config;
    config.rows = 46;
    config.cols = 46;
    auto m1 = init_som(config, train_set, 9);
    CHECK(m1.node_count() == 2116);
    CHECK(m1.prototypes.size() == 2116 * 2);
    auto m2 = init_som(config, train_set, 9);
    CHECK(m1.prototypes == m2.prototypes);
    auto m3 = init_som(config, train_set, 10);
    CHECK(m1.prototypes != m3.prototypes);
    for (std::size_t i = 0; i < m1.prototypes.size(); i += 2) {
        CHECK(m1.prototypes[i] >= 0.2);
        CHECK(m1.prototypes[i] <= 0.6);
        CHECK(m1.prototypes[i + 1] >= 0.4);
        CHECK(m1.prototypes[i + 1] <= 0.8);
    }
    CHECK_THROWS_AS(init_som(config, SampleSet{}, 1), DataError);
}

TEST_CASE("bmu: examples, ties, dimension checks") {
    auto model = fixed_model(1, 2, {{0.0, 0.0}, {1.0, 1.0}});
    std::vector<double> q{0.9, 0.9};
    CHECK(bmu(model, q) == NodeCoord{0, 1});
    std::vector<double> exact{0.0, 0.0};
    CHECK(bmu(model, exact) == NodeCoord{0, 0});

    auto tie = fixed_model(2, 2, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    CHECK(bmu(tie, q) == NodeCoord{0, 0});  // lexicographically smallest wins

    std::vector<double> wrong{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(bmu(model, wrong), DataError);
}

TEST_CASE("bmu equals an exhaustive scalar scan") {
    Rng rng(8);
    SomConfig config;
    config.rows = 5;
    config.cols = 2;
    auto train_set = sample_set({{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}}, {1, 2});
    auto model = init_som(config, train_set, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> q{rng.uniform(), rng.uniform(), rng.uniform()};
        int best_node = 0;
        double best = 1e300;
        for (int node = 0; node < model.node_count(); ++node) {
            double d = 0.0;
            for (std::size_t f = 0; f < 3; ++f) {
                double diff = model.prototypes[node * 3 + f] - q[f];
                d += diff * diff;
            }
            if (d < best) {
                best = d;
                best_node = node;
            }
        }
        auto coord = bmu(model, q);
        CHECK(coord.row * config.cols + coord.col == best_node);
    }
}

TEST_CASE("training pulls a single node onto the sample") {
    auto train_set = sample_set({{0.8, 0.1}}, {3});
    SomConfig config;
    config.rows = 1;
    config.cols = 1;
    config.training_steps = 300;
    // Single sample, single node: every step contracts the distance by
    // (1 - alpha(t)), so the end distance is far below the start.
    auto model = init_som(config, train_set, 5);
    model.prototypes = {0.0, 0.0};
    double before = kernels::squared_distance(model.prototype(0).data(), train_set.data.data(), 2);
    train(model, train_set);
    double after = kernels::squared_distance(model.prototype(0).data(), train_set.data.data(), 2);
    CHECK(after < before * 1e-6);
    // And a short schedule still contracts, just less.
    auto short_model = init_som(config, train_set, 5);
    short_model.config.training_steps = 10;
    short_model.prototypes = {0.0, 0.0};
    train(short_model, train_set);
    double mid = kernels::squared_distance(short_model.prototype(0).data(),
                                           train_set.data.data(), 2);
    CHECK(mid < before);
    CHECK(after < mid);
}

TEST_CASE("one blend step never increases the BMU distance when alpha*h <= 1") {
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> w{rng.uniform(), rng.uniform(), rng.uniform()};
        std::vector<double> x{rng.uniform(), rng.uniform(), rng.uniform()};
        double c = rng.uniform();  // alpha*h in [0, 1)
        double before = kernels::squared_distance(w.data(), x.data(), 3);
        kernels::blend_toward(w.data(), x.data(), c, 3);
        CHECK(kernels::squared_distance(w.data(), x.data(), 3) <= before + 1e-15);
    }
}

TEST_CASE("a vanishing neighbourhood moves only the BMU") {
    auto train_set = sample_set({{1.0, 1.0}}, {1});
    SomConfig config;
    config.rows = 3;
    config.cols = 3;
    config.training_steps = 1;
    config.sigma0 = 1e-6;  // Gaussian collapses to the BMU itself
    auto model = init_som(config, train_set, 12);
    // Make node 4 (centre) the obvious BMU.
    for (int node = 0; node < 9; ++node) {
        model.prototypes[node * 2] = node == 4 ? 0.9 : 0.1 * node;
        model.prototypes[node * 2 + 1] = node == 4 ? 0.9 : 0.05 * node;
    }
    auto before = model.prototypes;
    train(model, train_set);
    for (int node = 0; node < 9; ++node) {
        if (node == 4) {
            CHECK(model.prototypes[node * 2] != before[node * 2]);
        } else {
            CHECK(model.prototypes[node * 2] == before[node * 2]);
            CHECK(model.prototypes[node * 2 + 1] == before[node * 2 + 1]);
        }
    }
}

TEST_CASE("training is deterministic in seed and data order") {
    Rng rng(9);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 50; ++i) {
        rows.push_back({rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()});
        labels.push_back(1 + i % 6);
    }
    auto train_set = sample_set(rows, labels);
    SomConfig config;
    config.rows = 6;
    config.cols = 6;
    config.training_steps = 500;
    auto m1 = init_som(config, train_set, 21);
    auto m2 = init_som(config, train_set, 21);
    train(m1, train_set);
    train(m2, train_set);
    CHECK(m1.prototypes == m2.prototypes);
}

TEST_CASE("two well-separated clusters map to distinct, correctly labeled nodes") {
    Rng rng(31);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 60; ++i) {
        bool hi = i % 2 == 0;
        double base = hi ? 0.9 : 0.1;
        rows.push_back({base + rng.uniform(-0.05, 0.05), base + rng.uniform(-0.05, 0.05),
                        base + rng.uniform(-0.05, 0.05), base + rng.uniform(-0.05, 0.05)});
        labels.push_back(hi ? 2 : 1);
    }
    auto train_set = sample_set(rows, labels);
    SomConfig config;
    config.rows = 10;
    config.cols = 10;
    config.training_steps = 3000;
    config.sigma0 = 5.0;
    auto model = init_som(config, train_set, 7);
    train(model, train_set);

    std::vector<double> lo_centre{0.1, 0.1, 0.1, 0.1};
    std::vector<double> hi_centre{0.9, 0.9, 0.9, 0.9};
    CHECK_FALSE(bmu(model, lo_centre) == bmu(model, hi_centre));

    label_nodes(model, train_set);
    CHECK(classify(model, lo_centre) == 1);
    CHECK(classify(model, hi_centre) == 2);
    CHECK(accuracy(model, train_set) == doctest::Approx(1.0));
}

TEST_CASE("label_nodes: majority, seeded ties, default class") {
    // Prototypes pinned at 0.0, 0.5 and 1.0; the third node is unreachable
    // from the samples so it stays hit-less.
    auto model = fixed_model(1, 3, {{0.0}, {0.5}, {1.0}});
    model.config.training_steps = 0;

    auto train_set = sample_set({{0.01}, {0.02}, {0.03}, {0.45}, {0.55}},
                                {4, 4, 2, 4, 4});
    label_nodes(model, train_set);
    // Node 0 hits {4,4,2} -> majority 4; node 1 hits {4,4} -> 4;
    // node 2 hit-less -> default class = most common node label = 4.
    CHECK(model.labels == std::vector<int>{4, 4, 4});
    CHECK(model.hits == std::vector<long>{3, 2, 0});

    // Tie between classes 2 and 4 on node 0: resolution is seeded and stable,
    // and lands on one of the tied classes.
    auto tie_set = sample_set({{0.01}, {0.02}, {0.45}, {0.55}}, {4, 2, 1, 1});
    auto tie_model = fixed_model(1, 3, {{0.0}, {0.5}, {1.0}});
    label_nodes(tie_model, tie_set);
    CHECK((tie_model.labels[0] == 2 || tie_model.labels[0] == 4));
    auto tie_model2 = fixed_model(1, 3, {{0.0}, {0.5}, {1.0}});
    label_nodes(tie_model2, tie_set);
    CHECK(tie_model.labels == tie_model2.labels);

    CHECK_THROWS_AS(label_nodes(model, SampleSet{}), DataError);
}

TEST_CASE("classify requires labels") {
    auto model = fixed_model(1, 2, {{0.0}, {1.0}});
    std::vector<double> q{0.2};
    CHECK_THROWS_AS(classify(model, q), DataError);
    model.labels = {5, 6};
    CHECK(classify(model, q) == 5);
    std::vector<double> q2{0.8};
    CHECK(classify(model, q2) == 6);
}

TEST_CASE("u_matrix: zeros, 3-4-5 pair, corner neighbour counts") {
    auto flat = fixed_model(2, 2, {{0.5}, {0.5}, {0.5}, {0.5}});
    auto um0 = u_matrix(flat);
    for (double v : um0) CHECK(v == 0.0);

    auto pair = fixed_model(1, 2, {{0.0, 0.0}, {3.0, 4.0}});
    auto um = u_matrix(pair);
    CHECK(um[0] == doctest::Approx(5.0));
    CHECK(um[1] == doctest::Approx(5.0));

    // 2x3 lattice: corner nodes average over exactly 3 neighbours.
    auto m = fixed_model(2, 3, {{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}});
    auto um2 = u_matrix(m);
    // Corner (0,0): neighbours are values 1, 3, 4 -> mean |diff| = (1+3+4)/3.
    CHECK(um2[0] == doctest::Approx((1.0 + 3.0 + 4.0) / 3.0));
}

TEST_CASE("u_matrix is invariant under global prototype translation") {
    Rng rng(41);
    auto train_set = sample_set({{0.0, 0.0}, {1.0, 1.0}}, {1, 2});
    SomConfig config;
    config.rows = 4;
    config.cols = 4;
    auto model = init_som(config, train_set, 2);
    auto um1 = u_matrix(model);
    for (std::size_t i = 0; i < model.prototypes.size(); ++i) model.prototypes[i] += 0.37;
    auto um2 = u_matrix(model);
    for (std::size_t i = 0; i < um1.size(); ++i) {
        CHECK(um1[i] == doctest::Approx(um2[i]).epsilon(1e-9));
    }
}

TEST_CASE("evaluate aggregates per-model accuracies") {
    auto train_set = sample_set({{0.0}, {1.0}}, {1, 2});
    auto test_set = sample_set({{0.1}, {0.9}}, {1, 2});
    auto m1 = fixed_model(1, 2, {{0.0}, {1.0}});
    m1.labels = {1, 2};
    auto m2 = fixed_model(1, 2, {{0.0}, {1.0}});
    m2.labels = {1, 1};  // misclassifies the second half
    std::vector<SomModel> models{m1, m2};
    auto report = evaluate(models, train_set, test_set);
    REQUIRE(report.per_model.size() == 2);
    CHECK(report.per_model[0].test_accuracy == 1.0);
    CHECK(report.per_model[1].test_accuracy == 0.5);
    CHECK(report.test_mean == doctest::Approx(0.75));
    CHECK(report.test_std == doctest::Approx(std::sqrt(0.125)));
    CHECK_THROWS_AS(evaluate(models, SampleSet{}, test_set), DataError);
}

TEST_CASE("sample set partition splits by provenance") {
    auto set = sample_set({{0.0}, {1.0}, {2.0}, {3.0}}, {1, 1, 2, 2});
    set.provenance[0].replicate = 0;
    set.provenance[1].replicate = 1;
    set.provenance[2].replicate = 0;
    set.provenance[3].replicate = 1;
    auto [train_part, test_part] =
        set.partition([](const SampleProvenance& p) { return p.replicate == 0; });
    CHECK(train_part.size() == 2);
    CHECK(test_part.size() == 2);
    CHECK(train_part.data == std::vector<double>{0.0, 2.0});
    CHECK(test_part.data == std::vector<double>{1.0, 3.0});
}

TEST_CASE("som model round-trips through disk") {
    auto train_set = sample_set({{0.1, 0.2}, {0.8, 0.9}}, {1, 2});
    SomConfig config;
    config.rows = 4;
    config.cols = 5;
    config.training_steps = 100;
    auto model = init_som(config, train_set, 99);
    train(model, train_set);
    label_nodes(model, train_set);

    auto dir = std::filesystem::temp_directory_path() / "swarmsim_test_som";
    std::filesystem::remove_all(dir);
    write_som_model(dir, model, "alharthi2022");
    auto loaded = read_som_model(dir);
    CHECK(loaded.prototypes == model.prototypes);
    CHECK(loaded.labels == model.labels);
    CHECK(loaded.hits == model.hits);
    CHECK(loaded.config.rows == 4);
    CHECK(loaded.config.cols == 5);
    CHECK(loaded.seed == 99);
    CHECK(std::filesystem::exists(dir / "umatrix.pgm"));
    CHECK(std::filesystem::exists(dir / "labelmap.pgm"));
    CHECK(std::filesystem::exists(dir / "umatrix.csv"));
    std::filesystem::remove_all(dir);
}
