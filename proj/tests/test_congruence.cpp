#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsd/congruence.hpp"
#include "tsd/numeric.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace tsd;

namespace {

const int kResidues[6] = {3, 5, 7, -7, -5, -3};
const int kDeltas[4] = {0, 2, 4, 6};

// frozen expected labels, rows delta = 0,2,4,6, columns r = 3,5,7,-7,-5,-3
const char* kExpected[4][6] = {
    {"c0", "a2", "b1", "a1", "c2", "a2"},
    {"a2", "c2", "a1", "b1", "a2", "c0"},
    {"c1", "a2", "b2", "a1", "c1", "a2"},
    {"a2", "c1", "a1", "b2", "a2", "c1"},
};

Rat eval_ad(const MPoly& p, long a, long d) {
    return p.eval({{"a", Rat(a)}, {"d", Rat(d)}});
}

} // namespace

TEST_CASE("counting polynomials at the known design") {
    // d=2, a=0, delta=0 is the E8 configuration: N = n = 8
    auto P = moment_polys(0);
    CHECK(eval_ad(P[0], 0, 2) == Rat(120));
    CHECK(eval_ad(P[1], 0, 2) == Rat(240));
    CHECK(eval_ad(P[2], 0, 2) == Rat(1152));
    CHECK(eval_ad(P[3], 0, 2) == Rat(7680));

    auto [A, B] = integrality_combos(0);
    CHECK(eval_ad(A, 0, 2) == Rat(-21, 16));
    CHECK(eval_ad(B, 0, 2) == Rat(315, 128));

    CHECK_THROWS_AS(moment_polys(1), std::invalid_argument);
    CHECK_THROWS_AS(moment_polys(8), std::invalid_argument);
}

TEST_CASE("degree-two consistency of the counting identities") {
    // P2 * (3d^2-4) == P0 * d * N must hold as polynomials for every delta
    for (int delta : kDeltas) {
        auto P = moment_polys(delta);
        const MPoly a = MPoly::var("a").with_vars({"a", "d"});
        const MPoly d = MPoly::var("d").with_vars({"a", "d"});
        const MPoly four = MPoly::constant(Rat(4)).with_vars({"a", "d"});
        const MPoly n = 3 * (d * d) - four;
        const MPoly N =
            n + MPoly::constant(Rat(delta)).with_vars({"a", "d"}) - 8 * a;
        CHECK(P[1] * n == P[0] * d * N);
    }
}

TEST_CASE("pointwise divisibility behind the 2-adic scalings") {
    // the two combinations are integer multiples of 2^7 resp. 2^10 3^2 5
    // of integers at every odd k
    for (long k = 1; k <= 999; k += 2) {
        Int kk(k);
        Int k2 = kk * kk;
        Int p4 = k2 * k2 - 10 * k2 + 9;
        Int p6 = k2 * k2 * k2 - 35 * k2 * k2 + 259 * k2 - 225;
        CHECK(p4 % 128 == 0);
        CHECK(p6 % (1024 * 45) == 0);
    }
}

TEST_CASE("cell classification matches the frozen table") {
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 6; ++col) {
            CongruenceCase c = classify(kResidues[col], kDeltas[row]);
            CHECK(c.label == kExpected[row][col]);
            CHECK(c.r == kResidues[col]);
            CHECK(c.delta == kDeltas[row]);
            const bool survives = c.label == "c0";
            CHECK((c.conclusion == CellConclusion::BEven) == survives);
            CHECK(!c.diagnostics.empty());
        }
    }
    CHECK_THROWS_AS(classify(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(classify(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(classify(19, 0), std::invalid_argument);
}

TEST_CASE("full table verification") {
    TableReport rep = verify_table();
    CHECK(rep.pass);
    CHECK(rep.cells.size() == 24);
    for (const auto& cell : rep.cells) {
        CHECK(cell.ok);
        CHECK(cell.label == cell.expected);
    }
    REQUIRE(rep.conclusions.size() == 2);
    CHECK(rep.conclusions[0].find("b must be even") != std::string::npos);
    CHECK(rep.conclusions[1].find("32") != std::string::npos);
}

TEST_CASE("perturbed coefficients cannot pass") {
    // one sixteenth breaks every admissible 2-adic shape
    for (char source : {'A', 'B'}) {
        Perturbation p;
        p.r = source == 'A' ? -7 : 7; // an a-family and a b-family cell
        p.delta = 0;
        p.source = source;
        p.amount = Rat(1, 16);
        TableReport rep = verify_table({p});
        CHECK(!rep.pass);
        int failing = 0;
        for (const auto& cell : rep.cells)
            if (!cell.ok) {
                ++failing;
                CHECK(cell.r == p.r);
                CHECK(cell.delta == p.delta);
                CHECK(!cell.detail.empty());
            }
        CHECK(failing == 1);
    }

    // a perturbation on one cell leaves the other 23 untouched
    Perturbation p;
    p.r = 3;
    p.delta = 0;
    p.source = 'B';
    p.a_power = 1;
    p.amount = Rat(1, 16);
    TableReport rep = verify_table({p});
    CHECK(!rep.pass);
    for (const auto& cell : rep.cells)
        if (cell.r != 3 || cell.delta != 0) CHECK(cell.ok);
}

TEST_CASE("residue scan agrees with the conclusions") {
    std::set<std::pair<int, int>> survivors = {{3, 0}, {-3, 2}};
    for (int delta : kDeltas) {
        for (int r : kResidues) {
            std::vector<std::pair<int, int>> hits = scan_clearances(r, delta);
            if (survivors.count({r, delta})) {
                CHECK(!hits.empty());
                for (const auto& [a, b] : hits) {
                    CHECK(b % 2 == 0);
                    CHECK(a >= 0);
                    CHECK(a < 32);
                    CHECK(b >= 0);
                    CHECK(b < 32);
                }
            } else {
                CHECK(hits.empty());
            }
        }
    }
}

TEST_CASE("symbolic substitution agrees with pointwise evaluation") {
    std::mt19937 rng(7101642u);
    std::uniform_int_distribution<long> coord(-50, 50);
    for (int delta : kDeltas) {
        auto [A, B] = integrality_combos(delta);
        for (int r : kResidues) {
            MPoly repl =
                16 * MPoly::var("b") + MPoly::constant(Rat(r)).with_vars({"b"});
            MPoly As = A.substitute("d", repl);
            MPoly Bs = B.substitute("d", repl);
            for (int trial = 0; trial < 50; ++trial) {
                long a = coord(rng), b = coord(rng);
                std::map<std::string, Rat> pt = {{"a", Rat(a)}, {"b", Rat(b)}};
                std::map<std::string, Rat> pt_ad = {{"a", Rat(a)},
                                                    {"d", Rat(16 * b + r)}};
                CHECK(As.eval(pt) == A.eval(pt_ad));
                CHECK(Bs.eval(pt) == B.eval(pt_ad));
            }
        }
    }
}
