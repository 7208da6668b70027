#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "vtham/graph.hpp"

namespace vtham {

// Bijection on 0..n-1 stored as its image table.
class Permutation {
public:
    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        std::vector<char> seen(image_.size(), 0);
        for (int v : image_) {
            if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
                throw std::invalid_argument("permutation image is not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    int size() const noexcept { return static_cast<int>(image_.size()); }
    int operator()(int v) const { return image_[v]; }
    const std::vector<int>& image() const noexcept { return image_; }

    // (a.compose(b))(v) = a(b(v))
    Permutation compose(const Permutation& other) const {
        std::vector<int> img(image_.size());
        for (std::size_t v = 0; v < image_.size(); ++v) img[v] = image_[other.image_[v]];
        return Permutation(std::move(img));
    }

    Permutation inverse() const {
        std::vector<int> img(image_.size());
        for (std::size_t v = 0; v < image_.size(); ++v) img[image_[v]] = static_cast<int>(v);
        return Permutation(std::move(img));
    }

    Permutation power(int k) const {
        Permutation result = identity(size());
        for (int i = 0; i < k; ++i) result = compose(result);
        return result;
    }

    bool is_identity() const {
        for (std::size_t v = 0; v < image_.size(); ++v)
            if (image_[v] != static_cast<int>(v)) return false;
        return true;
    }

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& other) const { return image_ < other.image_; }

private:
    std::vector<int> image_;
};

// Cycle structure of a permutation. Each orbit is listed in the cyclic order
// induced by repeated application, starting from its smallest member; orbits
// are ordered by smallest member and partition 0..n-1. Fixed points appear as
// singleton orbits.
struct OrbitFamily {
    std::vector<std::vector<int>> orbits;

    Partition to_partition(int n) const {
        std::vector<VertexSet> blocks;
        blocks.reserve(orbits.size());
        for (const auto& o : orbits) blocks.emplace_back(o);
        return Partition(std::move(blocks), n);
    }

    // orbit index per vertex
    std::vector<int> orbit_index(int n) const {
        std::vector<int> idx(n, -1);
        for (int i = 0; i < static_cast<int>(orbits.size()); ++i)
            for (int v : orbits[i]) idx[v] = i;
        return idx;
    }
};

inline OrbitFamily cycle_decomposition(const Permutation& p) {
    int n = p.size();
    std::vector<char> seen(n, 0);
    OrbitFamily fam;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> orbit;
        for (int v = s; !seen[v]; v = p(v)) {
            seen[v] = 1;
            orbit.push_back(v);
        }
        fam.orbits.push_back(std::move(orbit));
    }
    return fam;
}

// Common cycle length if every orbit of p has the same odd length > 1.
inline std::optional<int> uniform_odd_cycle_length(const Permutation& p) {
    OrbitFamily fam = cycle_decomposition(p);
    if (fam.orbits.empty()) return std::nullopt;
    std::size_t len = fam.orbits.front().size();
    for (const auto& o : fam.orbits)
        if (o.size() != len) return std::nullopt;
    if (len <= 1 || len % 2 == 0) return std::nullopt;
    return static_cast<int>(len);
}

} // namespace vtham
