#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ordercalc/topology.hpp"

using namespace ordercalc;

namespace {
std::vector<unsigned> random_perm(unsigned n, std::mt19937_64& rng) {
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (unsigned i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
    return p;
}

FinTop discrete(unsigned n) {
    FinTop t{n, {}};
    for (std::uint32_t s = 0; s < (1u << n); ++s) t.opens.push_back(s);
    return t;
}
}  // namespace

TEST_CASE("make_tau builds P(S) plus the ground set") {
    auto t = make_tau(4, 0b0011);
    CHECK(t.opens == std::vector<std::uint32_t>{0, 1, 2, 3, 15});
    CHECK(is_topology(t));

    auto u = make_tau(3, 0b001);
    CHECK(u.opens.size() == 3);
    CHECK(is_topology(u));

    CHECK_THROWS_AS(make_tau(2, 0b11), OrdercalcError);  // S equal to the ground set
    CHECK_THROWS_AS(make_tau(3, 0), OrdercalcError);
    CHECK_THROWS_AS(make_tau(3, 0b1000), OrdercalcError);
}

TEST_CASE("make_tau always passes the exhaustive axiom check") {
    for (unsigned n = 2; n <= 6; ++n)
        for (std::uint32_t S = 1; S < (1u << n) - 1; ++S) CHECK(is_topology(make_tau(n, S)));
}

TEST_CASE("image_top") {
    auto t = make_tau(4, 0b0011);
    std::vector<unsigned> id{0, 1, 2, 3};
    CHECK(image_top(id, t) == t);

    std::vector<unsigned> swap02{2, 1, 0, 3};
    CHECK(image_top(swap02, t) == make_tau(4, 0b0110));  // {0,1} -> {2,1}

    std::mt19937_64 rng(8128);
    for (int i = 0; i < 200; ++i) {
        auto f = random_perm(4, rng);
        auto g = random_perm(4, rng);
        std::vector<unsigned> gf(4);
        for (unsigned x = 0; x < 4; ++x) gf[x] = g[f[x]];
        CHECK(image_top(g, image_top(f, t)) == image_top(gf, t));
    }
}

TEST_CASE("homeo_class sizes") {
    CHECK(homeo_class(make_tau(4, 0b0011)).size() == 6);
    CHECK(homeo_class(make_tau(3, 0b001)).size() == 3);
    CHECK(homeo_class(discrete(3)).size() == 1);
    for (unsigned n = 2; n <= 6; ++n)
        for (unsigned s = 1; s < n; ++s)
            CHECK(homeo_class(make_tau(n, (1u << s) - 1)).size() == binomial(n, s));
    CHECK_THROWS_AS(homeo_class(discrete(8)), CapError);
}

TEST_CASE("phi recovers the distinguished set") {
    CHECK(phi(make_tau(4, 0b0011), 4, 2) == 0b0011);
    std::vector<unsigned> swap02{2, 1, 0, 3};
    CHECK(phi(image_top(swap02, make_tau(4, 0b0011)), 4, 2) == 0b0110);
    CHECK_THROWS_AS(phi(discrete(3), 3, 1), OrdercalcError);
    CHECK_THROWS_AS(phi(make_tau(4, 0b0011), 4, 3), OrdercalcError);  // size mismatch

    // phi inverts make_tau on the whole class
    for (std::uint32_t S = 1; S < 15; ++S) {
        if (std::popcount(S) == 4) continue;
        CHECK(phi(make_tau(4, S), 4, static_cast<unsigned>(std::popcount(S))) == S);
    }
}

TEST_CASE("phi commutes with permutation images") {
    std::mt19937_64 rng(60902);
    auto base = make_tau(6, 0b000111);
    for (int i = 0; i < 1000; ++i) {
        auto f = random_perm(6, rng);
        CHECK(phi(image_top(f, base), 6, 3) == image_set(f, 0b000111));
    }
}

TEST_CASE("verify_iso") {
    auto r = verify_iso(4, 2);
    CHECK(r.class_size == 6);
    CHECK(r.bijective);
    CHECK(r.pairs_checked == 36);
    CHECK(r.pair_failures == 0);
    CHECK(r.passed);
    CHECK_FALSE(r.note.empty());  // the finite-scale degeneracy is spelled out

    auto r31 = verify_iso(3, 1);
    CHECK(r31.class_size == 3);
    CHECK(r31.passed);

    CHECK_THROWS_AS(verify_iso(5, 5), CapError);
    CHECK_THROWS_AS(verify_iso(8, 2), CapError);
}
