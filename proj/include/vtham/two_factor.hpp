#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vtham/graph.hpp"
#include "vtham/hamilton.hpp"

namespace vtham {

// A spanning set of vertex-disjoint cycles. Cycles are kept sorted by their
// smallest vertex; each cycle is stored in canonical rotation.
struct TwoFactor {
    std::vector<Cycle> cycles;

    int vertex_count() const {
        int total = 0;
        for (const auto& c : cycles) total += c.length();
        return total;
    }

    bool operator==(const TwoFactor& other) const = default;
};

inline TwoFactor make_two_factor(std::vector<Cycle> cycles) {
    std::sort(cycles.begin(), cycles.end(),
              [](const Cycle& a, const Cycle& b) { return a.vertices()[0] < b.vertices()[0]; });
    return TwoFactor{std::move(cycles)};
}

inline bool is_two_factor_of(const Graph& g, const TwoFactor& f) {
    int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    int covered = 0;
    for (const auto& c : f.cycles) {
        if (!is_cycle_of(g, c)) return false;
        for (int v : c.vertices()) {
            if (v < 0 || v >= n || seen[v]) return false;
            seen[v] = 1;
            ++covered;
        }
    }
    return covered == n;
}

// Certificate that a 2-factor splits into cycle_count cycles all of the same
// odd length cycle_length >= 3.
struct UniformOddCertificate {
    TwoFactor factor;
    int cycle_length = 0;
    int cycle_count = 0;
};

inline std::optional<std::pair<int, int>> uniform_odd_shape(const TwoFactor& f) {
    if (f.cycles.empty()) return std::nullopt;
    int len = f.cycles.front().length();
    if (len % 2 == 0 || len < 3) return std::nullopt;
    for (const auto& c : f.cycles)
        if (c.length() != len) return std::nullopt;
    return std::make_pair(len, static_cast<int>(f.cycles.size()));
}

inline bool validate_certificate(const Graph& g, const UniformOddCertificate& cert) {
    if (!is_two_factor_of(g, cert.factor)) return false;
    auto shape = uniform_odd_shape(cert.factor);
    return shape && shape->first == cert.cycle_length && shape->second == cert.cycle_count;
}

struct TwoFactorEnumOptions {
    int max_vertices = 14; // refused above this unless a deadline bounds the run
    Deadline deadline;
};

// Streams every 2-factor of g exactly once, in a deterministic order, to the
// callback. The callback returns false to stop early. Return value is true iff
// the enumeration ran to completion (neither stopped nor timed out), so a true
// return with no callback hits is a proof that no 2-factor exists.
//
// Factors are built one cycle at a time. Each cycle is anchored at the
// smallest still-uncovered vertex and extended in ascending neighbour order,
// closing only after all extensions (so long cycles stream first); the
// anchor's two cycle neighbours are ordered to rule out reflections. Every
// factor therefore has exactly one generation path.
inline bool enumerate_two_factors(const Graph& g,
                                  const std::function<bool(const TwoFactor&)>& callback,
                                  const TwoFactorEnumOptions& opts = {}) {
    int n = g.vertex_count();
    if (n < 3) throw std::invalid_argument("2-factor enumeration needs at least 3 vertices");
    if (n > 64)
        throw capability_error("2-factor enumeration limited to 64 vertices, got " +
                               std::to_string(n));
    if (n > opts.max_vertices && !opts.deadline)
        throw capability_error("2-factor enumeration bound exceeded: n=" + std::to_string(n) +
                               " > " + std::to_string(opts.max_vertices) + " and no budget given");

    std::vector<std::uint64_t> rows(n);
    for (int v = 0; v < n; ++v) rows[v] = g.row_mask64(v);
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    auto bit = [](int v) { return std::uint64_t{1} << v; };

    std::uint64_t covered = 0, nodes = 0;
    bool stopped = false, timed_out = false;
    std::vector<std::vector<int>> paths;
    std::vector<Cycle> cycles;

    std::function<void(void)> next_cycle;
    std::function<void(void)> extend = [&]() {
        if ((++nodes & 1023) == 0 && deadline_expired(opts.deadline)) {
            timed_out = true;
            return;
        }
        int anchor = paths.back().front();
        int cur = paths.back().back();
        std::uint64_t options = rows[cur] & ~covered;
        while (options) {
            int w = Graph::ctz(options);
            options &= options - 1;
            paths.back().push_back(w);
            covered |= bit(w);
            extend();
            covered &= ~bit(w);
            paths.back().pop_back();
            if (stopped || timed_out) return;
        }
        const auto& path = paths.back();
        if (path.size() >= 3 && (rows[cur] & bit(anchor)) && path[1] < path.back()) {
            cycles.emplace_back(path);
            next_cycle();
            cycles.pop_back();
        }
    };
    next_cycle = [&]() {
        if (stopped || timed_out) return;
        if (covered == full) {
            if (!callback(make_two_factor(cycles))) stopped = true;
            return;
        }
        int s = Graph::ctz(~covered & full);
        paths.push_back({s});
        covered |= bit(s);
        extend();
        covered &= ~bit(s);
        paths.pop_back();
    };

    next_cycle();
    return !stopped && !timed_out;
}

// Convenience wrapper collecting a bounded slice of the enumeration.
inline std::vector<TwoFactor> all_two_factors(const Graph& g,
                                              const TwoFactorEnumOptions& opts = {},
                                              std::size_t limit = 0) {
    std::vector<TwoFactor> out;
    enumerate_two_factors(
        g,
        [&](const TwoFactor& f) {
            out.push_back(f);
            return limit == 0 || out.size() < limit;
        },
        opts);
    return out;
}

} // namespace vtham
