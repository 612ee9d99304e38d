#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boxkoszul/qlinalg.hpp"

#include <random>

using namespace boxk;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rows[i][j] != 0) m.entries[{i, j}] = Rat(rows[i][j]);
    return m;
}

} // namespace

TEST_CASE("rational arithmetic stays reduced") {
    Rat a(2, 4), b(1, 2);
    CHECK(a == b);
    CHECK((a + b) == Rat(1));
    CHECK((a - b).is_zero());
    CHECK((Rat(3, 2) * Rat(2, 3)) == Rat(1));
    CHECK(Rat(1, -2).den() == 2);
    CHECK(Rat(1, -2).num() == -1);
    CHECK(Rat(7, 3).str() == "7/3");
    CHECK(Rat(-4, 2).str() == "-2");
}

TEST_CASE("rank of small matrices") {
    CHECK(rank(from_rows({{1, 2}, {2, 4}}, 2)) == 1); // proportional rows
    CHECK(rank(RatMatrix(3, 5)) == 0);                // zero matrix
    RatMatrix id(4, 4);
    for (std::size_t i = 0; i < 4; ++i) id.entries[{i, i}] = Rat(1);
    CHECK(rank(id) == 4);
}

TEST_CASE("rank agrees with transpose and across strategies") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                int v = dist(rng);
                if (v) m.entries[{i, j}] = Rat(v);
            }
        std::size_t rk = rank_dense(m);
        CHECK(rk == rank_sparse(m));
        CHECK(rk == rank(m.transpose()));
    }
}

TEST_CASE("kernel basis solves the system") {
    RatMatrix m = from_rows({{1, 2, 3}, {2, 4, 6}}, 3);
    auto ker = kernel_basis(m);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        Rat s0 = v[0] + Rat(2) * v[1] + Rat(3) * v[2];
        CHECK(s0.is_zero());
    }
    CHECK(span_dim(ker) == 2);
}

namespace {

ChainSlice two_term(const Rat& d) {
    // 0 -> Q --d--> Q -> 0 in degrees 1, 0
    ChainSlice c;
    c.deg_min = 0;
    c.deg_max = 1;
    c.basis[0] = {"x"};
    c.basis[1] = {"y"};
    RatMatrix m(1, 1);
    if (!d.is_zero()) m.entries[{0, 0}] = d;
    c.diff[1] = m;
    return c;
}

} // namespace

TEST_CASE("homology of tiny complexes") {
    auto iso = homology_dims(two_term(Rat(1)));
    CHECK(iso[0] == 0);
    CHECK(iso[1] == 0);
    auto zero = homology_dims(two_term(Rat(0)));
    CHECK(zero[0] == 1);
    CHECK(zero[1] == 1);
}

TEST_CASE("non-complex slices are rejected with a witness") {
    ChainSlice c;
    c.deg_min = 0;
    c.deg_max = 2;
    c.basis[0] = {"a"};
    c.basis[1] = {"b"};
    c.basis[2] = {"c"};
    RatMatrix d1(1, 1), d2(1, 1);
    d1.entries[{0, 0}] = Rat(1);
    d2.entries[{0, 0}] = Rat(1);
    c.diff[1] = d1;
    c.diff[2] = d2;
    CHECK_THROWS_AS(c.check_complex(), NonComplex);
    try {
        c.check_complex();
    } catch (const NonComplex& e) {
        CHECK(e.degree == 2);
        CHECK(e.witness == "c");
    }
}

TEST_CASE("spectral pages: trivial filtration reproduces homology") {
    FilteredChainSlice c;
    static_cast<ChainSlice&>(c) = two_term(Rat(0));
    c.level[0] = {0};
    c.level[1] = {0};
    auto pages = spectral_pages(c, 2);
    CHECK(pages[1].dims.at({0, 0}) == 1);
    CHECK(pages[1].dims.at({0, 1}) == 1);
    auto h = homology_dims(c);
    for (int d = 0; d <= 1; ++d) CHECK(pages[1].dim_at_degree(d) == h[d]);
}

TEST_CASE("spectral pages: rank-1 crossing map dies on page 2") {
    // identity differential crossing one filtration level: E^1 nonzero, E^2 = 0
    FilteredChainSlice c;
    static_cast<ChainSlice&>(c) = two_term(Rat(1));
    c.level[0] = {1};
    c.level[1] = {0};
    auto pages = spectral_pages(c, 2);
    CHECK(pages[1].dims.count({0, 1}) == 1);
    CHECK(pages[1].dims.count({1, 0}) == 1);
    CHECK(pages[1].diff_rank.at({0, 1}) == 1);
    CHECK(pages[2].dims.empty());
    // E^infty totals match homology (all zero here)
    auto h = homology_dims(c);
    CHECK(pages[2].dim_at_degree(0) == h[0]);
    CHECK(pages[2].dim_at_degree(1) == h[1]);
}
