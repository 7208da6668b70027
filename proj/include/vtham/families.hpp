#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <string>
#include <vector>

#include "vtham/errors.hpp"
#include "vtham/graph.hpp"

namespace vtham {

// Multiplication table of a finite group over elements 0..n-1. Construction
// verifies closure, associativity, a two-sided identity, and inverses, so a
// held value is always a genuine group.
class GroupTable {
public:
    explicit GroupTable(std::vector<std::vector<int>> table) : table_(std::move(table)) {
        int n = static_cast<int>(table_.size());
        if (n == 0) throw std::invalid_argument("group table is empty");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("group table is not square");
            for (int x : row)
                if (x < 0 || x >= n)
                    throw std::invalid_argument("group table entry out of range");
        }
        identity_ = -1;
        for (int e = 0; e < n && identity_ < 0; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                ok = table_[e][x] == x && table_[x][e] == x;
            if (ok) identity_ = e;
        }
        if (identity_ < 0) throw std::invalid_argument("group table has no identity");
        inverse_.assign(n, -1);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y)
                if (table_[x][y] == identity_ && table_[y][x] == identity_) {
                    inverse_[x] = y;
                    break;
                }
            if (inverse_[x] < 0)
                throw std::invalid_argument("group table element " + std::to_string(x) +
                                            " has no inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw std::invalid_argument("group table is not associative");
    }

    int size() const noexcept { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return table_[a][b]; }
    int identity() const noexcept { return identity_; }
    int inverse(int x) const { return inverse_[x]; }

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = -1;
};

// Plain-text table format: the element count n followed by the n*n products
// row-major, whitespace-separated.
inline GroupTable parse_group_table(const std::string& text) {
    std::istringstream in(text);
    long long n = 0;
    if (!(in >> n) || n <= 0 || n > 4096)
        throw std::invalid_argument("group table text must start with a positive element count");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (long long i = 0; i < n * n; ++i) {
        long long v;
        if (!(in >> v))
            throw std::invalid_argument("group table text ended after " + std::to_string(i) +
                                        " of " + std::to_string(n * n) + " entries");
        table[i / n][i % n] = static_cast<int>(v);
    }
    long long extra;
    if (in >> extra) throw std::invalid_argument("group table text has trailing entries");
    return GroupTable(std::move(table));
}

inline std::string format_group_table(const GroupTable& t) {
    std::ostringstream out;
    out << t.size() << "\n";
    for (int a = 0; a < t.size(); ++a) {
        for (int b = 0; b < t.size(); ++b) out << (b ? " " : "") << t.mul(a, b);
        out << "\n";
    }
    return out.str();
}

inline GroupTable cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group needs positive order");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return GroupTable(std::move(table));
}

// Elements (a, b) encoded as a*|B| + b, multiplied componentwise.
inline GroupTable direct_product(const GroupTable& ga, const GroupTable& gb) {
    int na = ga.size(), nb = gb.size();
    std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y)
            table[x][y] = ga.mul(x / nb, y / nb) * nb + gb.mul(x % nb, y % nb);
    return GroupTable(std::move(table));
}

// The nonabelian group of order 21: pairs (a, b) with a mod 7, b mod 3,
// encoded as 3a + b, multiplied by (a1,b1)(a2,b2) = (a1 + 2^b1 * a2, b1 + b2).
inline GroupTable frobenius21() {
    auto pow2 = [](int b) { return b == 0 ? 1 : (b == 1 ? 2 : 4); };
    std::vector<std::vector<int>> table(21, std::vector<int>(21));
    for (int x = 0; x < 21; ++x)
        for (int y = 0; y < 21; ++y) {
            int a1 = x / 3, b1 = x % 3, a2 = y / 3, b2 = y % 3;
            table[x][y] = ((a1 + pow2(b1) * a2) % 7) * 3 + (b1 + b2) % 3;
        }
    return GroupTable(std::move(table));
}

// Circulant on an odd number of vertices: edges join v to v +- d for each step.
inline Graph gen_circulant(int n, const std::vector<int>& steps) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("circulant generator needs odd n >= 3");
    std::vector<std::pair<int, int>> edges;
    std::vector<char> seen(n / 2 + 1, 0);
    for (int d : steps) {
        if (d < 1 || d > n / 2)
            throw std::invalid_argument("circulant step " + std::to_string(d) +
                                        " outside 1.." + std::to_string(n / 2));
        if (seen[d]) throw std::invalid_argument("duplicate circulant step");
        seen[d] = 1;
        for (int v = 0; v < n; ++v) edges.push_back({v, (v + d) % n});
    }
    return make_graph(n, edges);
}

// Cayley graph: vertices are group elements, x adjacent to x*s for every
// connection element s. The connection set must exclude the identity and be
// closed under inverses so the edge relation is symmetric and irreflexive.
inline Graph gen_cayley(const GroupTable& t, const std::vector<int>& conn) {
    int n = t.size();
    std::vector<char> in_conn(n, 0);
    for (int s : conn) {
        if (s < 0 || s >= n) throw std::invalid_argument("connection element out of range");
        in_conn[s] = 1;
    }
    for (int s = 0; s < n; ++s) {
        if (!in_conn[s]) continue;
        if (s == t.identity())
            throw std::invalid_argument("connection set contains the identity");
        if (!in_conn[t.inverse(s)])
            throw std::invalid_argument("connection set is not closed under inverses");
    }
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x)
        for (int s = 0; s < n; ++s)
            if (in_conn[s]) edges.push_back({x, t.mul(x, s)});
    return make_graph(n, edges);
}

// Kneser graph: vertices are the k-subsets of {0..n-1} in lexicographic
// order, adjacent when disjoint.
inline Graph gen_kneser(int n, int k) {
    if (k < 1 || n < 2 * k + 1)
        throw std::invalid_argument("kneser generator needs n >= 2k+1 and k >= 1");
    std::vector<std::uint64_t> subsets;
    std::vector<int> pick(k);
    std::function<void(int, int)> build = [&](int from, int depth) {
        if (depth == k) {
            std::uint64_t mask = 0;
            for (int e : pick) mask |= std::uint64_t{1} << e;
            subsets.push_back(mask);
            return;
        }
        for (int e = from; e < n; ++e) {
            pick[depth] = e;
            build(e + 1, depth + 1);
        }
    };
    build(0, 0);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j)
            if ((subsets[i] & subsets[j]) == 0)
                edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    return make_graph(static_cast<int>(subsets.size()), edges);
}

} // namespace vtham
