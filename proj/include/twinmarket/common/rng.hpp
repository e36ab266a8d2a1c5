#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace twinmarket {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over the bytes of a purpose tag.
std::uint64_t hash_tag(std::string_view tag);

/// Derives independent, reproducible RNG streams from one root seed.
///
/// A stream is addressed by a purpose tag plus up to two integer keys
/// (typically agent id and day), so any sub-component can be re-run in
/// isolation and still draw the same numbers.
class SeedTree {
public:
    explicit SeedTree(std::uint64_t root) : root_(root) {}

    [[nodiscard]] std::uint64_t root() const { return root_; }
    [[nodiscard]] std::uint64_t derive(std::string_view purpose, std::uint64_t a = 0,
                                       std::uint64_t b = 0) const;
    [[nodiscard]] Rng stream(std::string_view purpose, std::uint64_t a = 0,
                             std::uint64_t b = 0) const {
        return Rng(derive(purpose, a, b));
    }

private:
    std::uint64_t root_;
};

/// Uniform draw on [0, 1) that does not depend on the library's
/// uniform_real_distribution implementation.
double uniform01(Rng& rng);

/// k indices from [0, n) without replacement, returned in ascending order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

}  // namespace twinmarket
