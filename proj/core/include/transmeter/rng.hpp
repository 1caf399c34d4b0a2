#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace transmeter {

// splitmix64, used to derive independent seeds from (config, base_seed) tuples.
std::uint64_t splitmix64(std::uint64_t x);

// Folds all parts through splitmix64 into one seed. Order matters.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

// FNV-1a over bytes; used for hashing names and registry contents.
std::uint64_t fnv1a(std::string_view bytes);

// Bit pattern of a double, for feeding real-valued hyperparameters to mix_seed.
std::uint64_t double_bits(double v);

// Seeded generator wrapper. Every randomized operation in the library takes
// one of these so that results are pure functions of (input, seed).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    std::size_t uniform_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        std::shuffle(v.begin(), v.end(), engine_);
    }

    // Deterministic child generator; independent draws for sub-tasks.
    Rng fork(std::uint64_t salt) {
        return Rng(mix_seed({engine_(), salt}));
    }

private:
    std::mt19937_64 engine_;
};

// Returns 0, 1, ..., n-1 shuffled.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

}  // namespace transmeter
