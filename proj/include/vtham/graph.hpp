#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vtham/errors.hpp"

namespace vtham {

// Immutable simple undirected graph on vertices 0..n-1. Adjacency is a
// symmetric irreflexive bit relation stored as packed 64-bit rows, so all
// neighbourhood operations work word-at-a-time for any n.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
        Graph g(n);
        for (const auto& [v, w] : edges) {
            if (v < 0 || v >= n || w < 0 || w >= n)
                throw std::invalid_argument("edge endpoint out of range: {" + std::to_string(v) +
                                            "," + std::to_string(w) + "} with n=" + std::to_string(n));
            if (v == w)
                throw std::invalid_argument("self-loop at vertex " + std::to_string(v));
            g.set_edge(v, w);
        }
        return g;
    }

    int vertex_count() const noexcept { return n_; }

    bool adjacent(int v, int w) const {
        return (row(v)[w >> 6] >> (w & 63)) & 1u;
    }

    int degree(int v) const {
        int d = 0;
        const std::uint64_t* r = row(v);
        for (int i = 0; i < words_; ++i) d += popcount(r[i]);
        return d;
    }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        const std::uint64_t* r = row(v);
        for (int i = 0; i < words_; ++i) {
            std::uint64_t bits = r[i];
            while (bits) {
                int b = ctz(bits);
                out.push_back(i * 64 + b);
                bits &= bits - 1;
            }
        }
        return out;
    }

    const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
    int row_words() const noexcept { return words_; }

    // Single-word neighbourhood mask; valid only when n <= 64.
    std::uint64_t row_mask64(int v) const { return bits_[static_cast<std::size_t>(v) * words_]; }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        for (int v = 0; v < n_; ++v)
            for (int w : neighbors(v))
                if (v < w) out.emplace_back(v, w);
        return out;
    }

    int edge_count() const {
        int total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return total / 2;
    }

    bool operator==(const Graph& other) const = default;

    static int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
    static int ctz(std::uint64_t x) { return __builtin_ctzll(x); }

private:
    explicit Graph(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    void set_edge(int v, int w) {
        bits_[static_cast<std::size_t>(v) * words_ + (w >> 6)] |= std::uint64_t{1} << (w & 63);
        bits_[static_cast<std::size_t>(w) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    }

    friend Graph complement(const Graph&);

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    return Graph::from_edges(n, edges);
}

inline Graph complement(const Graph& g) {
    Graph out(g.n_);
    for (int v = 0; v < g.n_; ++v) {
        std::uint64_t* r = out.bits_.data() + static_cast<std::size_t>(v) * out.words_;
        const std::uint64_t* src = g.row(v);
        for (int i = 0; i < g.words_; ++i) r[i] = ~src[i];
        // clear the diagonal bit and the padding above n-1
        r[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        int spare = g.n_ & 63;
        if (spare) r[g.words_ - 1] &= (std::uint64_t{1} << spare) - 1;
    }
    return out;
}

// Ascending, duplicate-free subset of 0..n-1 of some host graph.
class VertexSet {
public:
    explicit VertexSet(std::vector<int> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() && members_.front() < 0)
            throw std::invalid_argument("negative vertex in vertex set");
    }

    const std::vector<int>& members() const noexcept { return members_; }
    int size() const noexcept { return static_cast<int>(members_.size()); }
    bool empty() const noexcept { return members_.empty(); }
    int min() const { return members_.front(); }
    bool operator==(const VertexSet&) const = default;

private:
    std::vector<int> members_;
};

// Pairwise-disjoint nonempty vertex sets covering 0..n-1, ordered by their
// smallest member.
class Partition {
public:
    Partition(std::vector<VertexSet> blocks, int n) : blocks_(std::move(blocks)), n_(n) {
        for (const auto& b : blocks_)
            if (b.empty()) throw std::invalid_argument("partition block is empty");
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const VertexSet& a, const VertexSet& b) { return a.min() < b.min(); });
        std::vector<char> seen(n, 0);
        int covered = 0;
        for (const auto& b : blocks_)
            for (int v : b.members()) {
                if (v >= n) throw std::invalid_argument("partition member out of range");
                if (seen[v]) throw std::invalid_argument("partition blocks overlap at vertex " + std::to_string(v));
                seen[v] = 1;
                ++covered;
            }
        if (covered != n) throw std::invalid_argument("partition does not cover all vertices");
    }

    const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
    int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
    int vertex_count() const noexcept { return n_; }

    // index of the block containing each vertex
    std::vector<int> block_index() const {
        std::vector<int> idx(n_, -1);
        for (int b = 0; b < block_count(); ++b)
            for (int v : blocks_[b].members()) idx[v] = b;
        return idx;
    }

private:
    std::vector<VertexSet> blocks_;
    int n_;
};

// Simple cycle as a cyclic vertex sequence, stored in canonical form: the
// smallest vertex first, then the smaller of its two cycle neighbours.
class Cycle {
public:
    explicit Cycle(std::vector<int> vertices) : verts_(std::move(vertices)) {
        if (verts_.size() < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
        std::vector<int> sorted = verts_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("cycle repeats a vertex");
        canonicalize();
    }

    const std::vector<int>& vertices() const noexcept { return verts_; }
    int length() const noexcept { return static_cast<int>(verts_.size()); }
    bool operator==(const Cycle&) const = default;
    bool operator<(const Cycle& other) const { return verts_ < other.verts_; }

private:
    void canonicalize() {
        auto it = std::min_element(verts_.begin(), verts_.end());
        std::rotate(verts_.begin(), it, verts_.end());
        if (verts_.back() < verts_[1]) {
            std::reverse(verts_.begin() + 1, verts_.end());
        }
    }

    std::vector<int> verts_;
};

// True iff every consecutive pair (wrap-around included) is an edge of g.
inline bool is_cycle_of(const Graph& g, const Cycle& c) {
    const auto& vs = c.vertices();
    int k = c.length();
    for (int i = 0; i < k; ++i) {
        int v = vs[i], w = vs[(i + 1) % k];
        if (v >= g.vertex_count() || w >= g.vertex_count()) return false;
        if (!g.adjacent(v, w)) return false;
    }
    return true;
}

inline Graph induced(const Graph& g, const VertexSet& s) {
    if (s.empty()) throw std::invalid_argument("induced subgraph of empty vertex set");
    const auto& m = s.members();
    if (m.back() >= g.vertex_count()) throw std::invalid_argument("vertex set member out of range");
    int k = s.size();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.adjacent(m[i], m[j])) edges.emplace_back(i, j);
    return Graph::from_edges(k, edges);
}

// Contract every block of p to a single vertex; blocks are adjacent iff some
// edge of g joins them. Parallel edges collapse, loops vanish.
inline Graph quotient_by_partition(const Graph& g, const Partition& p) {
    if (p.vertex_count() != g.vertex_count())
        throw std::invalid_argument("partition size does not match graph");
    int c = p.block_count();
    std::vector<int> idx = p.block_index();
    std::vector<std::pair<int, int>> edges;
    for (const auto& [v, w] : g.edge_list()) {
        int bv = idx[v], bw = idx[w];
        if (bv != bw) edges.emplace_back(bv, bw);
    }
    return Graph::from_edges(c, edges);
}

inline bool is_connected(const Graph& g) {
    int n = g.vertex_count();
    if (n < 1) throw std::invalid_argument("connectivity of empty graph");
    int words = g.row_words();
    std::vector<std::uint64_t> seen(words, 0), frontier(words, 0);
    seen[0] = frontier[0] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint64_t> next(words, 0);
        for (int i = 0; i < words; ++i) {
            std::uint64_t bits = frontier[i];
            while (bits) {
                int v = i * 64 + Graph::ctz(bits);
                bits &= bits - 1;
                const std::uint64_t* r = g.row(v);
                for (int j = 0; j < words; ++j) next[j] |= r[j];
            }
        }
        for (int i = 0; i < words; ++i) {
            std::uint64_t fresh = next[i] & ~seen[i];
            if (fresh) grew = true;
            seen[i] |= fresh;
            frontier[i] = fresh;
        }
    }
    int reached = 0;
    for (int i = 0; i < words; ++i) reached += Graph::popcount(seen[i]);
    return reached == n;
}

inline bool is_k_regular(const Graph& g, int k) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) != k) return false;
    return true;
}

inline bool is_complete(const Graph& g) {
    return is_k_regular(g, g.vertex_count() - 1);
}

// Connected components as vertex lists, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace vtham
