#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "vtham/graph.hpp"

namespace vtham {

enum class SearchVerdict { present, absent, unknown };

inline const char* to_string(SearchVerdict v) {
    switch (v) {
        case SearchVerdict::present: return "present";
        case SearchVerdict::absent: return "absent";
        case SearchVerdict::unknown: return "unknown";
    }
    return "?";
}

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline bool deadline_expired(const Deadline& d) {
    return d && std::chrono::steady_clock::now() >= *d;
}

struct HamiltonOptions {
    int max_vertices = 24; // refused above this unless a deadline bounds the run
    Deadline deadline;
};

struct HamiltonResult {
    SearchVerdict verdict = SearchVerdict::unknown;
    std::optional<Cycle> cycle;
};

// Exact Hamilton-cycle search: depth-first extension from vertex 0 with two
// sound prunes — every unvisited vertex keeps >= 2 usable neighbours, and the
// unvisited region stays reachable from the path head. Neighbours are tried
// in ascending order, so the returned cycle is deterministic. A deadline turns
// an unfinished search into "unknown", never "absent".
inline HamiltonResult hamilton_cycle(const Graph& g, const HamiltonOptions& opts = {}) {
    int n = g.vertex_count();
    if (n < 3) throw std::invalid_argument("hamilton search needs at least 3 vertices");
    if (n > 64)
        throw capability_error("hamilton search limited to 64 vertices, got " + std::to_string(n));
    if (n > opts.max_vertices && !opts.deadline)
        throw capability_error("hamilton search bound exceeded: n=" + std::to_string(n) +
                               " > " + std::to_string(opts.max_vertices) + " and no budget given");

    std::vector<std::uint64_t> rows(n);
    for (int v = 0; v < n; ++v) rows[v] = g.row_mask64(v);
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

    std::vector<int> path;
    path.reserve(n);
    path.push_back(0);
    std::uint64_t visited = 1;
    std::uint64_t nodes = 0;
    bool timed_out = false;
    std::optional<Cycle> found;

    auto viable = [&](int cur) {
        std::uint64_t unvisited = full & ~visited;
        std::uint64_t region = unvisited | (std::uint64_t{1} << cur) | 1u;
        // degree condition
        std::uint64_t scan = unvisited;
        while (scan) {
            int v = Graph::ctz(scan);
            scan &= scan - 1;
            if (Graph::popcount(rows[v] & region) < 2) return false;
        }
        // reachability of the whole region from the path head
        std::uint64_t seen = std::uint64_t{1} << cur, frontier = seen;
        while (frontier) {
            std::uint64_t next = 0;
            std::uint64_t f = frontier;
            while (f) {
                int v = Graph::ctz(f);
                f &= f - 1;
                next |= rows[v] & region;
            }
            frontier = next & ~seen;
            seen |= frontier;
        }
        return (seen & region) == region;
    };

    std::function<bool(void)> dfs = [&]() -> bool {
        if (timed_out) return false;
        if ((++nodes & 1023) == 0 && deadline_expired(opts.deadline)) {
            timed_out = true;
            return false;
        }
        int cur = path.back();
        if (static_cast<int>(path.size()) == n) {
            if (rows[cur] & 1u) {
                found = Cycle(path);
                return true;
            }
            return false;
        }
        if (!viable(cur)) return false;
        std::uint64_t options = rows[cur] & ~visited;
        while (options) {
            int w = Graph::ctz(options);
            options &= options - 1;
            path.push_back(w);
            visited |= std::uint64_t{1} << w;
            if (dfs()) return true;
            visited &= ~(std::uint64_t{1} << w);
            path.pop_back();
        }
        return false;
    };

    if (dfs()) return {SearchVerdict::present, std::move(found)};
    if (timed_out) return {SearchVerdict::unknown, std::nullopt};
    return {SearchVerdict::absent, std::nullopt};
}

} // namespace vtham
