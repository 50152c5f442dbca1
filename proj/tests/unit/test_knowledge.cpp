#include <random>

#include "doctest.h"
#include "lrpt/comms.hpp"
#include "lrpt/knowledge.hpp"

using namespace lrpt;

TEST_CASE("tick ages assumptions and keeps update times") {
    AssumedIdleness h(1, 4);
    h.tick();
    for (const auto& e : h.entries()) CHECK(e == AssumedEntry{1, 0});

    h.record_patrol(2, 100);
    for (int i = 0; i < 50; ++i) h.tick();
    CHECK(h[2] == AssumedEntry{50, 100});
    h.tick();
    CHECK(h[2] == AssumedEntry{51, 100});
    CHECK(h[0] == AssumedEntry{52, 0});
}

TEST_CASE("record_patrol overwrites and composes with ticks") {
    AssumedIdleness h(3, 20);
    h.record_patrol(17, 250);
    CHECK(h[17] == AssumedEntry{0, 250});
    for (int i = 0; i < 5; ++i) h.tick();
    CHECK(h[17] == AssumedEntry{5, 250});
    h.record_patrol(17, 300);
    CHECK(h[17] == AssumedEntry{0, 300});
}

TEST_CASE("merge adopts strictly newer entries verbatim") {
    AssumedIdleness h(1, 3);
    h.record_patrol(0, 100);
    for (int i = 0; i < 50; ++i) h.tick();  // (50, 100)
    CHECK(h.merge_received(KnowledgeSlice{{0, 10, 140}}) == 0);
    CHECK(h[0] == AssumedEntry{10, 140});

    AssumedIdleness g(1, 3);
    g.record_patrol(1, 200);
    g.tick();
    g.tick();  // (2, 200)
    g.merge_received(KnowledgeSlice{{1, 90, 150}});
    CHECK(g[1] == AssumedEntry{2, 200});

    // Equal update time keeps the local entry.
    g.merge_received(KnowledgeSlice{{1, 77, 200}});
    CHECK(g[1] == AssumedEntry{2, 200});
}

TEST_CASE("merge picks the newest across slices, first sender on ties") {
    AssumedIdleness h(0, 2);
    const KnowledgeSlice a{{0, 5, 10}, {1, 3, 30}};
    const KnowledgeSlice b{{0, 1, 20}, {1, 9, 30}};
    const KnowledgeSlice* both[] = {&a, &b};
    h.merge_received(both);
    CHECK(h[0] == AssumedEntry{1, 20});
    CHECK(h[1] == AssumedEntry{3, 30});
}

TEST_CASE("slices naming grids outside the map are dropped whole") {
    AssumedIdleness h(0, 4);
    const KnowledgeSlice bad{{1, 0, 9}, {4, 0, 9}};
    const KnowledgeSlice good{{2, 0, 7}};
    const KnowledgeSlice* in[] = {&bad, &good};
    CHECK(h.merge_received(in) == 1);
    CHECK(h[1] == AssumedEntry{});
    CHECK(h[2] == AssumedEntry{0, 7});
}

TEST_CASE("one hop leaves the receiver exactly one step stale") {
    AssumedIdleness visitor(1, 5), neighbour(2, 5);
    const Timestep tv = 40;
    visitor.record_patrol(3, tv);
    const auto sent = truncate_knowledge(visitor, 5);
    neighbour.tick();  // step tv + 1
    neighbour.merge_received(sent);
    CHECK(neighbour[3] == AssumedEntry{0, tv});
    // True idleness at tv + 1 is 1; the received value is not corrected.
    CHECK((tv + 1) - neighbour[3].update_time == 1);
}

TEST_CASE("truncate_knowledge keeps the newest entries, lower grid on ties") {
    AssumedIdleness h(0, 4);
    h.record_patrol(0, 10);
    h.record_patrol(1, 50);
    h.record_patrol(2, 30);
    h.record_patrol(3, 50);
    const auto top2 = truncate_knowledge(h, 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].grid == 1);
    CHECK(top2[1].grid == 3);

    CHECK(truncate_knowledge(h, 4).size() == 4);
    CHECK(truncate_knowledge(h, 100).size() == 4);

    AssumedIdleness big(0, 400);
    CHECK(truncate_knowledge(big, 8).size() == 8);
    CHECK(truncate_knowledge(big, 400).size() == 400);
}

TEST_CASE("knowledge base size does not depend on swarm size") {
    for (std::size_t n : {2u, 10u, 50u}) {
        std::vector<AssumedIdleness> swarm;
        for (RobotId r = 0; r < n; ++r) swarm.emplace_back(r, 400);
        for (const auto& h : swarm) CHECK(h.entries().size_bytes() == 2 * 400 * sizeof(Timestep));
    }
}

TEST_CASE("recency index matches truncate_knowledge over random histories") {
    std::mt19937_64 rng(5);
    for (int run = 0; run < 20; ++run) {
        const std::size_t k = 1 + rng() % 60;
        AssumedIdleness h(1, k);
        RecencyIndex index;
        for (Timestep t = 1; t <= 200; ++t) {
            h.tick();
            for (std::size_t i = 0; i < rng() % 3; ++i) h.record_patrol(static_cast<GridIndex>(rng() % k), t);
            if (rng() % 4 == 0) {
                KnowledgeSlice in{{static_cast<GridIndex>(rng() % k), rng() % 9, t - 1 - rng() % std::min<Timestep>(t, 30)}};
                h.merge_received(in);
            }
            const std::size_t s = 1 + rng() % (k + 3);
            REQUIRE(index.top(h, s) == truncate_knowledge(h, s));
        }
    }
}

TEST_CASE("slices are ordered newest first") {
    std::mt19937_64 rng(9);
    AssumedIdleness h(0, 100);
    for (Timestep t = 1; t < 300; ++t) h.record_patrol(static_cast<GridIndex>(rng() % 100), t);
    const auto slice = truncate_knowledge(h, 30);
    for (std::size_t i = 1; i < slice.size(); ++i) {
        CHECK(slice[i - 1].update_time >= slice[i].update_time);
    }
}
