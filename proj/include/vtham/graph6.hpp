#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "vtham/graph.hpp"

namespace vtham {

// graph6 text interchange: 6-bit printable encoding of the upper adjacency
// triangle in column order x(0,1), x(0,2), x(1,2), x(0,3), ...

namespace graph6_detail {

inline constexpr int kBias = 63;

inline int decode_sextet(std::string_view line, std::size_t pos) {
    if (pos >= line.size()) throw parse_error("graph6 line truncated", pos);
    unsigned char ch = static_cast<unsigned char>(line[pos]);
    if (ch < 63 || ch > 126) throw parse_error("graph6 character out of range", pos);
    return ch - kBias;
}

} // namespace graph6_detail

inline Graph parse_graph6(std::string_view line) {
    using graph6_detail::decode_sextet;
    // strip a trailing newline so whole lines can be passed as-is
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
        line.remove_suffix(1);
    if (line.empty()) throw parse_error("empty graph6 line", 0);

    std::size_t pos = 0;
    long long n = 0;
    if (line[0] != '~') {
        n = decode_sextet(line, pos++);
    } else if (line.size() >= 2 && line[1] != '~') {
        ++pos;
        for (int i = 0; i < 3; ++i) n = (n << 6) | decode_sextet(line, pos++);
    } else {
        pos += 2;
        for (int i = 0; i < 6; ++i) n = (n << 6) | decode_sextet(line, pos++);
    }
    if (n == 0) throw parse_error("graph6 line encodes an empty vertex set", 0);
    if (n > 100000) throw parse_error("graph6 vertex count too large", 0);

    int nn = static_cast<int>(n);
    std::vector<std::pair<int, int>> edges;
    long long total_bits = static_cast<long long>(nn) * (nn - 1) / 2;
    int value = 0, have = 0;
    for (long long bit = 0, j = 1, i = 0; bit < total_bits; ++bit) {
        if (have == 0) {
            value = decode_sextet(line, pos++);
            have = 6;
        }
        if (value & (1 << (have - 1))) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        --have;
        if (++i == j) {
            i = 0;
            ++j;
        }
    }
    if (pos != line.size()) throw parse_error("trailing characters after graph6 data", pos);
    return Graph::from_edges(nn, edges);
}

inline std::string to_graph6(const Graph& g) {
    int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + graph6_detail::kBias));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + graph6_detail::kBias));
        out.push_back(static_cast<char>(((n >> 6) & 63) + graph6_detail::kBias));
        out.push_back(static_cast<char>((n & 63) + graph6_detail::kBias));
    }
    int value = 0, have = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            value = (value << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++have == 6) {
                out.push_back(static_cast<char>(value + graph6_detail::kBias));
                value = 0;
                have = 0;
            }
        }
    if (have > 0) {
        value <<= (6 - have);
        out.push_back(static_cast<char>(value + graph6_detail::kBias));
    }
    return out;
}

} // namespace vtham
