#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "vtham/graph.hpp"
#include "vtham/permutation.hpp"

namespace vtham {

struct SymmetryOptions {
    int max_vertices = 32;            // refuse searches on larger graphs
    std::uint64_t max_group_size = 200000; // refuse to list larger groups
};

inline bool is_automorphism(const Graph& g, const Permutation& p) {
    int n = g.vertex_count();
    if (p.size() != n) throw std::invalid_argument("permutation length does not match graph");
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w)
            if (g.adjacent(v, w) != g.adjacent(p(v), p(w))) return false;
    return true;
}

namespace symmetry_detail {

// Equitable colouring by iterated neighbour-colour multisets. The result is
// invariant under automorphisms: vertices in different classes can never map
// to one another.
inline std::vector<int> stable_coloring(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> color(n, 0);
    int classes = 1;
    for (;;) {
        std::vector<std::pair<std::vector<int>, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> s;
            s.push_back(color[v]);
            for (int w : g.neighbors(v)) s.push_back(color[w]);
            std::sort(s.begin() + 1, s.end());
            sig[v] = {std::move(s), v};
        }
        std::vector<std::pair<std::vector<int>, int>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(n);
        int c = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++c;
            next[sorted[i].second] = c;
        }
        if (c + 1 == classes) break;
        classes = c + 1;
        color = std::move(next);
    }
    return color;
}

inline void check_search_bound(const Graph& g, const SymmetryOptions& opts) {
    int bound = std::min(opts.max_vertices, 64);
    if (g.vertex_count() > bound)
        throw capability_error("automorphism search bound exceeded: n=" +
                               std::to_string(g.vertex_count()) + " > " + std::to_string(bound));
}

// Backtracking over candidate images with forward pruning. Images are
// assigned to vertices 0,1,...,n-1 with candidates tried in ascending order,
// so complete automorphisms arrive in lexicographic image order. The callback
// may return false to stop the search. When max_leaves > 0 the search throws
// capability_error after listing that many automorphisms.
// fixed: optional requirement image[0] = *fixed.
inline bool enumerate_automorphisms(const Graph& g,
                                    const std::function<bool(const std::vector<int>&)>& cb,
                                    std::uint64_t max_leaves = 0,
                                    std::optional<int> fixed = std::nullopt) {
    int n = g.vertex_count();
    if (n == 1) {
        if (fixed && *fixed != 0) return true;
        return cb({0});
    }
    std::vector<int> color = stable_coloring(g);
    std::vector<std::uint64_t> color_mask(n, 0);
    for (int v = 0; v < n; ++v) color_mask[color[v]] |= std::uint64_t{1} << v;
    std::vector<std::uint64_t> rows(n);
    for (int v = 0; v < n; ++v) rows[v] = g.row_mask64(v);

    // cand[d][v]: allowed images of v given the assignments of 0..d-1
    std::vector<std::vector<std::uint64_t>> cand(n + 1, std::vector<std::uint64_t>(n));
    for (int v = 0; v < n; ++v) cand[0][v] = color_mask[color[v]];
    if (fixed) cand[0][0] &= std::uint64_t{1} << *fixed;

    std::vector<int> image(n, -1);
    std::uint64_t used = 0, leaves = 0;
    bool keep_going = true;

    std::function<void(int)> dfs = [&](int depth) {
        if (!keep_going) return;
        if (depth == n) {
            ++leaves;
            if (max_leaves && leaves > max_leaves)
                throw capability_error("automorphism group larger than listing bound " +
                                       std::to_string(max_leaves));
            if (!cb(image)) keep_going = false;
            return;
        }
        std::uint64_t options = cand[depth][depth] & ~used;
        while (options && keep_going) {
            int w = Graph::ctz(options);
            options &= options - 1;
            bool ok = true;
            for (int v = depth + 1; v < n; ++v) {
                std::uint64_t c = cand[depth][v] &
                                  (g.adjacent(depth, v) ? rows[w] : ~rows[w]);
                cand[depth + 1][v] = c;
                if (!(c & ~(used | (std::uint64_t{1} << w)))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[depth] = w;
            used |= std::uint64_t{1} << w;
            dfs(depth + 1);
            used &= ~(std::uint64_t{1} << w);
            image[depth] = -1;
        }
    };
    dfs(0);
    return keep_going;
}

inline std::optional<Permutation> find_automorphism_mapping(const Graph& g, int target) {
    std::optional<Permutation> found;
    enumerate_automorphisms(
        g,
        [&](const std::vector<int>& img) {
            found = Permutation(img);
            return false;
        },
        0, target);
    return found;
}

} // namespace symmetry_detail

struct AutomorphismGroup {
    std::vector<Permutation> elements; // sorted lexicographically by image
    std::uint64_t order = 0;
};

// Complete automorphism group by exhaustive backtracking.
inline AutomorphismGroup automorphism_group(const Graph& g, const SymmetryOptions& opts = {}) {
    symmetry_detail::check_search_bound(g, opts);
    AutomorphismGroup group;
    symmetry_detail::enumerate_automorphisms(
        g,
        [&](const std::vector<int>& img) {
            group.elements.emplace_back(img);
            return true;
        },
        opts.max_group_size);
    group.order = group.elements.size();
    return group;
}

// Single-orbit test on the vertex set. Uses targeted searches plus an orbit
// union-find instead of listing the whole group, so it stays cheap even when
// the group is enormous.
inline bool is_vertex_transitive(const Graph& g, const SymmetryOptions& opts = {}) {
    int n = g.vertex_count();
    if (n == 1) return true;
    symmetry_detail::check_search_bound(g, opts);
    std::vector<int> color = symmetry_detail::stable_coloring(g);
    for (int v = 1; v < n; ++v)
        if (color[v] != color[0]) return false;

    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int t = 1; t < n; ++t) {
        if (find(t) == find(0)) continue;
        auto p = symmetry_detail::find_automorphism_mapping(g, t);
        if (!p) return false;
        for (int v = 0; v < n; ++v) {
            int a = find(v), b = find((*p)(v));
            if (a != b) parent[a] = b;
        }
    }
    return true;
}

// All group elements whose cycles share one odd length > 1, ordered by cycle
// length descending and image lexicographically within a length.
inline std::vector<Permutation> find_uniform_odd_automorphisms(const Graph& g,
                                                               const SymmetryOptions& opts = {}) {
    if (g.vertex_count() % 2 == 0)
        throw std::invalid_argument("uniform-odd search requires an odd number of vertices");
    symmetry_detail::check_search_bound(g, opts);
    std::vector<std::pair<int, Permutation>> hits;
    symmetry_detail::enumerate_automorphisms(
        g,
        [&](const std::vector<int>& img) {
            Permutation p(img);
            if (auto len = uniform_odd_cycle_length(p)) hits.emplace_back(*len, std::move(p));
            return true;
        },
        opts.max_group_size);
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Permutation> out;
    out.reserve(hits.size());
    for (auto& [len, p] : hits) out.push_back(std::move(p));
    return out;
}

} // namespace vtham
