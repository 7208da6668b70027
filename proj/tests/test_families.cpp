#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "vtham/families.hpp"
#include "vtham/graph6.hpp"
#include "vtham/symmetry.hpp"

using namespace vtham;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int element_order(const GroupTable& t, int x) {
    int y = x, order = 1;
    while (y != t.identity()) {
        y = t.mul(y, x);
        ++order;
    }
    return order;
}

} // namespace

TEST_CASE("group tables validate the group axioms") {
    // not a latin square / no inverses
    REQUIRE_THROWS_AS(GroupTable({{0, 1}, {1, 1}}), std::invalid_argument);
    // latin square without a two-sided identity
    REQUIRE_THROWS_AS(GroupTable({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}), std::invalid_argument);
    // latin square with identity but broken associativity: rows 0..4 form a
    // quasigroup of order 5 that is not a group
    REQUIRE_THROWS_AS(GroupTable({{0, 1, 2, 3, 4},
                                  {1, 0, 3, 4, 2},
                                  {2, 4, 0, 1, 3},
                                  {3, 2, 4, 0, 1},
                                  {4, 3, 1, 2, 0}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(GroupTable({{0, 1}, {1, 2}}), std::invalid_argument); // out of range
}

TEST_CASE("cyclic groups behave as expected") {
    GroupTable z7 = cyclic_group(7);
    REQUIRE(z7.size() == 7);
    REQUIRE(z7.identity() == 0);
    REQUIRE(z7.mul(3, 5) == 1);
    REQUIRE(z7.inverse(2) == 5);
    for (int x = 1; x < 7; ++x) REQUIRE(element_order(z7, x) == 7);
}

TEST_CASE("direct products multiply componentwise") {
    GroupTable g = direct_product(cyclic_group(3), cyclic_group(5));
    REQUIRE(g.size() == 15);
    // (1,2) * (2,4) = (0,1): encoded as a*5+b
    REQUIRE(g.mul(1 * 5 + 2, 2 * 5 + 4) == 0 * 5 + 1);
    REQUIRE(g.inverse(1 * 5 + 2) == 2 * 5 + 3);
    // Z3 x Z5 is cyclic of order 15
    REQUIRE(element_order(g, 1 * 5 + 1) == 15);
}

TEST_CASE("the order-21 frobenius group is a nonabelian group") {
    GroupTable f = frobenius21();
    REQUIRE(f.size() == 21);
    bool commutes_everywhere = true;
    for (int a = 0; a < 21 && commutes_everywhere; ++a)
        for (int b = 0; b < 21; ++b)
            if (f.mul(a, b) != f.mul(b, a)) {
                commutes_everywhere = false;
                break;
            }
    REQUIRE_FALSE(commutes_everywhere);

    int order3 = 0, order7 = 0;
    for (int x = 1; x < 21; ++x) {
        int o = element_order(f, x);
        REQUIRE((o == 3 || o == 7));
        (o == 3 ? order3 : order7) += 1;
    }
    REQUIRE(order3 == 14);
    REQUIRE(order7 == 6);
}

TEST_CASE("table text format round-trips") {
    for (const GroupTable& t : {cyclic_group(9), frobenius21(),
                                direct_product(cyclic_group(3), cyclic_group(3))}) {
        GroupTable back = parse_group_table(format_group_table(t));
        REQUIRE(back.size() == t.size());
        for (int a = 0; a < t.size(); ++a)
            for (int b = 0; b < t.size(); ++b) REQUIRE(back.mul(a, b) == t.mul(a, b));
    }
    REQUIRE_THROWS_AS(parse_group_table("2\n0 1 1"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_group_table("2\n0 1 1 0 1"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_group_table(""), std::invalid_argument);
}

TEST_CASE("bundled table files match the built-in constructors") {
    const std::string dir = std::string(VTHAM_SOURCE_DIR) + "/data/groups/";
    for (int n = 3; n <= 21; n += 2)
        REQUIRE(read_file(dir + "z" + std::to_string(n) + ".txt") ==
                format_group_table(cyclic_group(n)));
    REQUIRE(read_file(dir + "z3x3.txt") ==
            format_group_table(direct_product(cyclic_group(3), cyclic_group(3))));
    REQUIRE(read_file(dir + "z3x5.txt") ==
            format_group_table(direct_product(cyclic_group(3), cyclic_group(5))));
    REQUIRE(read_file(dir + "f21.txt") == format_group_table(frobenius21()));
}

TEST_CASE("circulant generation and validation") {
    Graph c5 = gen_circulant(5, {1});
    REQUIRE(c5.vertex_count() == 5);
    REQUIRE(is_k_regular(c5, 2));
    REQUIRE(to_graph6(c5) == "Dhc");

    Graph g = gen_circulant(15, {3, 5});
    REQUIRE(is_k_regular(g, 4));
    REQUIRE(is_connected(g));
    REQUIRE(gen_circulant(9, {3}).degree(0) == 2);
    REQUIRE_FALSE(is_connected(gen_circulant(9, {3})));

    REQUIRE_THROWS_AS(gen_circulant(4, {1}), std::invalid_argument);  // even order
    REQUIRE_THROWS_AS(gen_circulant(9, {0}), std::invalid_argument);  // step out of range
    REQUIRE_THROWS_AS(gen_circulant(9, {5}), std::invalid_argument);  // step beyond half
    REQUIRE_THROWS_AS(gen_circulant(9, {1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_circulant(1, {1}), std::invalid_argument);
}

TEST_CASE("cayley graphs from tables") {
    REQUIRE(gen_cayley(cyclic_group(7), {1, 6}) == gen_circulant(7, {1}));

    GroupTable z3z5 = direct_product(cyclic_group(3), cyclic_group(5));
    Graph g = gen_cayley(z3z5, {5, 10, 1, 4}); // (1,0),(2,0),(0,1),(0,4)
    REQUIRE(g.vertex_count() == 15);
    REQUIRE(is_k_regular(g, 4));
    REQUIRE(is_connected(g));
    REQUIRE(is_vertex_transitive(g));

    Graph f = gen_cayley(frobenius21(), {1, 2, 13, 17});
    REQUIRE(f.vertex_count() == 21);
    REQUIRE(is_connected(f));
    REQUIRE(is_vertex_transitive(f));

    REQUIRE_THROWS_AS(gen_cayley(cyclic_group(7), {0, 1, 6}), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_cayley(cyclic_group(7), {1}), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_cayley(cyclic_group(7), {1, 7}), std::invalid_argument);
}

TEST_CASE("kneser graphs from subset intersections") {
    REQUIRE(gen_kneser(5, 1) == gen_circulant(5, {1, 2}));

    Graph pet = gen_kneser(5, 2);
    REQUIRE(pet.vertex_count() == 10);
    REQUIRE(is_k_regular(pet, 3));
    // lexicographic vertex order: 0 = {1,2}, 9 = {4,5}
    REQUIRE(pet.adjacent(0, 9));
    REQUIRE_FALSE(pet.adjacent(0, 1)); // {1,2} meets {1,3}

    Graph big = gen_kneser(7, 2);
    REQUIRE(big.vertex_count() == 21);
    REQUIRE(is_k_regular(big, 10));

    REQUIRE_THROWS_AS(gen_kneser(4, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_kneser(0, 1), std::invalid_argument);
}
