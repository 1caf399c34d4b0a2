#include "transmeter/synthetic.hpp"

#include <cmath>
#include <fstream>

#include "transmeter/data/csv.hpp"
#include "transmeter/errors.hpp"
#include "transmeter/registry.hpp"
#include "transmeter/rng.hpp"

namespace transmeter {

namespace {

constexpr std::size_t kLatentDim = 6;
constexpr std::size_t kPadDim = 4;
constexpr std::size_t kNoiseDim = 7;
constexpr std::size_t kTargetRows = 160;
constexpr std::size_t kSourceRows = 420;

// Nonlinear enough that a handful of target rows underfit while the source
// pool helps; deterministic labels keep the ordering stable across seeds.
int label_of(const std::vector<double>& z) {
    const double score = z[0] + 0.9 * z[1] - 0.8 * z[2] + 1.1 * z[0] * z[1];
    return score > 0.0 ? 1 : 0;
}

std::vector<double> draw_latent(Rng& rng) {
    std::vector<double> z(kLatentDim);
    for (double& v : z) v = rng.normal(0.0, 1.0);
    return z;
}

// Random well-conditioned map: orthonormalized Gaussian columns scaled by
// factors in [0.8, 1.3].
std::vector<std::vector<double>> random_invertible(Rng& rng) {
    std::vector<std::vector<double>> m(kLatentDim, std::vector<double>(kLatentDim));
    for (auto& row : m) {
        for (double& v : row) v = rng.normal(0.0, 1.0);
    }
    // modified Gram-Schmidt over columns
    for (std::size_t j = 0; j < kLatentDim; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            double dot = 0.0;
            for (std::size_t i = 0; i < kLatentDim; ++i) dot += m[i][j] * m[i][p];
            for (std::size_t i = 0; i < kLatentDim; ++i) m[i][j] -= dot * m[i][p];
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < kLatentDim; ++i) norm += m[i][j] * m[i][j];
        norm = std::sqrt(norm);
        const double scale = (0.8 + 0.5 * rng.uniform()) / norm;
        for (std::size_t i = 0; i < kLatentDim; ++i) m[i][j] *= scale;
    }
    return m;
}

Dataset make_target(Rng& rng) {
    Dataset ds;
    ds.name = "target";
    ds.features = nn::Matrix(kTargetRows, kLatentDim);
    ds.labels.reserve(kTargetRows);
    for (std::size_t r = 0; r < kTargetRows; ++r) {
        const std::vector<double> z = draw_latent(rng);
        for (std::size_t c = 0; c < kLatentDim; ++c) ds.features(r, c) = z[c];
        ds.labels.push_back(label_of(z));
    }
    return ds;
}

Dataset make_transformed_source(const std::string& name, bool invert_labels,
                                const std::vector<std::vector<double>>& map, Rng& rng) {
    Dataset ds;
    ds.name = name;
    ds.features = nn::Matrix(kSourceRows, kLatentDim + kPadDim);
    ds.labels.reserve(kSourceRows);
    for (std::size_t r = 0; r < kSourceRows; ++r) {
        const std::vector<double> z = draw_latent(rng);
        for (std::size_t i = 0; i < kLatentDim; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < kLatentDim; ++j) v += map[i][j] * z[j];
            ds.features(r, i) = v;
        }
        for (std::size_t i = 0; i < kPadDim; ++i) {
            ds.features(r, kLatentDim + i) = rng.normal(0.0, 1.0);
        }
        const int y = label_of(z);
        ds.labels.push_back(invert_labels ? 1 - y : y);
    }
    return ds;
}

Dataset make_noise_source(Rng& rng) {
    Dataset ds;
    ds.name = "source_noise";
    ds.features = nn::Matrix(kSourceRows, kNoiseDim);
    ds.labels.reserve(kSourceRows);
    for (std::size_t r = 0; r < kSourceRows; ++r) {
        for (std::size_t c = 0; c < kNoiseDim; ++c) ds.features(r, c) = rng.normal(0.0, 1.0);
        ds.labels.push_back(rng.uniform() < 0.5 ? 0 : 1);
    }
    return ds;
}

}  // namespace

SyntheticSuite make_ordering_suite(std::uint64_t seed) {
    Rng rng(mix_seed({0x6f726465ULL, seed}));
    SyntheticSuite suite;
    suite.name = "ordering";
    suite.target = make_target(rng);

    Rng map_rng = rng.fork(10);
    const auto map_a = random_invertible(map_rng);
    Rng map_rng_c = rng.fork(11);
    const auto map_c = random_invertible(map_rng_c);

    Rng rng_a = rng.fork(1);
    Rng rng_b = rng.fork(2);
    Rng rng_c = rng.fork(3);
    suite.sources.push_back(
        make_transformed_source("source_informative", false, map_a, rng_a));
    suite.sources.push_back(make_noise_source(rng_b));
    suite.sources.push_back(make_transformed_source("source_flipped", true, map_c, rng_c));

    suite.expected_best = "source_informative";
    suite.notes =
        "ordering suite\n"
        "target: " + std::to_string(kTargetRows) + " rows, " + std::to_string(kLatentDim) +
        " features, deterministic nonlinear label rule\n"
        "source_informative: invertible linear transform of the target process, " +
        std::to_string(kPadDim) + " noise pad columns, same label rule\n"
        "source_noise: independent Gaussian features, coin-flip labels\n"
        "source_flipped: like source_informative with inverted labels\n"
        "expected: source_informative and source_flipped rank above source_noise;\n"
        "expected best source: source_informative (source_flipped ties it only via\n"
        "target-label flipping, so its winning config should have flip = true)\n";
    return suite;
}

void write_suite(const SyntheticSuite& suite, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<RegistryEntry> entries;

    auto add = [&](const Dataset& ds) {
        const std::filesystem::path csv = dir / (ds.name + ".csv");
        write_csv(csv, ds);
        entries.push_back(RegistryEntry{
            .name = ds.name,
            .csv_path = csv.filename(),
            .label_column = "label",
            .positive_label = "pos",
            .checkpoint_path = std::filesystem::path("checkpoints") / (ds.name + ".ckpt"),
        });
    };
    add(suite.target);
    for (const Dataset& ds : suite.sources) add(ds);

    std::filesystem::create_directories(dir / "checkpoints");
    write_registry(dir / "registry.ini", entries);

    std::ofstream notes(dir / "notes.txt");
    if (!notes) {
        throw LoadError("cannot write notes in '" + dir.string() + "'");
    }
    notes << suite.notes;
}

}  // namespace transmeter
