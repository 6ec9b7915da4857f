#include <cmath>

#include "doctest.h"
#include "skeledim/rho.hpp"
#include "support/testutil.hpp"

using namespace skeledim;
using namespace skeledim::test;

TEST_SUITE_BEGIN("rho");

TEST_CASE("single-unit chain is one entry of kind both") {
    MinimaChain c = sample_minima_chain(123, 0, 1);
    REQUIRE(c.entries.size() == 1);
    CHECK(c.entries[0].pos == 1);
    CHECK(c.entries[0].kind == MinKind::Both);
    CHECK(c.global_min().value == c.entries[0].value);
}

TEST_CASE("chain structure invariants") {
    for (uint64_t seed = 0; seed < 50; seed++) {
        for (uint32_t units : {1u, 2u, 12u, 120u, 1200u}) {
            MinimaChain c = sample_minima_chain(seed, 7, units);
            REQUIRE(!c.entries.empty());
            CHECK(c.entries.front().pos == 1);  // first element is a prefix minimum
            size_t both = 0;
            for (size_t i = 0; i < c.entries.size(); i++) {
                const ChainEntry& e = c.entries[i];
                CHECK(e.pos >= 1);
                CHECK(e.pos <= units);
                if (e.kind == MinKind::Both) {
                    both++;
                    CHECK(i == c.global_index);
                }
                if (i + 1 < c.entries.size()) CHECK(e.pos < c.entries[i + 1].pos);
                if (i + 1 <= c.global_index)  // prefix part: values strictly decrease
                    CHECK(c.entries[i + 1].value < e.value);
                if (i >= c.global_index && i + 1 < c.entries.size())  // suffix part: increase
                    CHECK(c.entries[i + 1].value > e.value);
            }
            CHECK(both == 1);
            for (const ChainEntry& e : c.entries) CHECK(e.value >= c.global_min().value);
        }
    }
}

TEST_CASE("same inputs give the same chain") {
    MinimaChain a = sample_minima_chain(99, 3, 240);
    MinimaChain b = sample_minima_chain(99, 3, 240);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); i++) {
        CHECK(a.entries[i].pos == b.entries[i].pos);
        CHECK(a.entries[i].value == b.entries[i].value);
    }
    MinimaChain c = sample_minima_chain(100, 3, 240);
    CHECK(a.entries.size() != c.entries.size());  // overwhelmingly likely
}

TEST_CASE("materialized sequences reproduce the chain") {
    for (uint64_t seed = 0; seed < 200; seed++) {
        uint32_t units = 1 + static_cast<uint32_t>(prf64(seed, 1, 1) % 240);
        MinimaChain c = sample_minima_chain(seed, 11, units);
        std::vector<double> values = materialize_chain(c, seed ^ 0xfeed);
        std::vector<uint32_t> positions = minima_positions(values);
        REQUIRE_MESSAGE(positions.size() == c.entries.size(), "seed ", seed);
        for (size_t i = 0; i < positions.size(); i++) {
            CHECK(positions[i] == c.entries[i].pos);
            CHECK(values[positions[i]] == c.entries[i].value);
        }
    }
}

TEST_CASE("mean chain length matches the explicit-sampling oracle") {
    const uint32_t units = 120;
    const int trials = 10000;
    double impl_sum = 0, oracle_sum = 0;
    for (int i = 0; i < trials; i++) {
        MinimaChain c = sample_minima_chain(1000 + i, 5, units);
        impl_sum += static_cast<double>(c.entries.size());
        // oracle: draw the full sequence independently, count its minima
        std::vector<double> vals(units + 1);
        for (uint32_t p = 1; p <= units; p++)
            vals[p] = unit_open(prf64(0x0c00 + i, 0x6f7261636cULL, p));
        oracle_sum += static_cast<double>(minima_positions(vals).size());
    }
    double impl_mean = impl_sum / trials;
    double oracle_mean = oracle_sum / trials;
    // 2*H_120 - 1 = 9.7378...
    double expected = -1;
    for (uint32_t k = 1; k <= units; k++) expected += 2.0 / k;
    CHECK(std::abs(impl_mean - expected) <= 0.15 * expected);
    CHECK(std::abs(impl_mean - oracle_mean) <= 0.15 * oracle_mean);
}

TEST_CASE("boundary-window minima agree with materialized sequences") {
    int trials = 20000;
    for (int i = 0; i < trials; i++) {
        uint64_t seed = 0xabc0 + i;
        uint32_t units = 1 + static_cast<uint32_t>(prf64(seed, 2, 0) % 240);
        MinimaChain c = sample_minima_chain(seed, 13, units);
        std::vector<double> values = materialize_chain(c, seed ^ 0xf111);

        uint32_t a = 1 + static_cast<uint32_t>(prf64(seed, 3, 0) % units);
        uint32_t b = 1 + static_cast<uint32_t>(prf64(seed, 4, 0) % units);
        if (a > b) std::swap(a, b);
        uint32_t lo = a, hi = b;
        if (prf64(seed, 5, 0) & 1)
            lo = 1;  // prefix window
        else
            hi = units;  // suffix window

        const ChainEntry* got = c.min_in_window(lo, hi);
        REQUIRE(got != nullptr);
        double want = 2.0;
        for (uint32_t p = lo; p <= hi; p++) want = std::min(want, values[p]);
        CHECK(got->value == want);
        CHECK(values[got->pos] == want);
    }
}

TEST_CASE("tiny sequences have the right mean chain length") {
    for (uint32_t units : {1u, 2u, 3u, 5u}) {
        double expected = -1;
        for (uint32_t k = 1; k <= units; k++) expected += 2.0 / k;
        double sum = 0;
        const int trials = 4000;
        for (int i = 0; i < trials; i++)
            sum += static_cast<double>(sample_minima_chain(0x7171 + i, 2, units).entries.size());
        double mean = sum / trials;
        CHECK(std::abs(mean - expected) <= 0.1 * expected + 0.02);
    }
}

TEST_CASE("interior windows are refused") {
    MinimaChain c = sample_minima_chain(1, 0, 120);
    CHECK(c.min_in_window(2, 119) == nullptr);
    CHECK(c.min_in_window(1, 120) == &c.global_min());
}

TEST_CASE("node rho values are deterministic and in (0,1)") {
    for (NodeId v = 0; v < 100; v++) {
        double r = node_rho(7, v);
        CHECK(r > 0.0);
        CHECK(r < 1.0);
        CHECK(r == node_rho(7, v));
    }
    CHECK(node_rho(7, 3) != node_rho(8, 3));
}

TEST_SUITE_END();
