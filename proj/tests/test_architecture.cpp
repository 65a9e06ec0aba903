#include <doctest.h>

#include <algorithm>
#include <set>

#include "treeprep/architecture.hpp"

using namespace treeprep;

TEST_CASE("2pn qubit count is 3*2^n - 2 + n") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    CHECK(arch->qubit_count() == 12);
    for (int n = 1; n <= 8; ++n) {
        CHECK(Architecture::make(Protocol::TwoPerNode, n)->qubit_count() == 3 * (1 << n) - 2 + n);
    }
}

TEST_CASE("3pn has 6N-3 QRAM qubits plus n outputs") {
    auto arch = Architecture::make(Protocol::ThreePerNode, 2);
    int qram = 0;
    for (int id = 0; id < arch->qubit_count(); ++id) {
        if (!arch->is_output(id)) ++qram;
    }
    CHECK(qram == 21);
    CHECK(arch->qubit_count() == 23);
}

TEST_CASE("2pn n=1 is the five-qubit graph") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    CHECK(arch->qubit_count() == 5);
    CHECK(arch->has({Role::Upper, 0, 0}));
    CHECK(arch->has({Role::Lower, 0, 0}));
    CHECK(arch->has({Role::Upper, 1, 0}));
    CHECK(arch->has({Role::Upper, 1, 1}));
    CHECK(arch->has({Role::Output, 1, 1}));
    CHECK_FALSE(arch->has({Role::Lower, 1, 0}));   // leaf layer has no lower sublayer
    CHECK_FALSE(arch->has({Role::Middle, 0, 0}));  // no middle sublayer in 2pn
    // lower root touches the upper root and both children
    CHECK(arch->neighbors(arch->lower(0, 0)).size() == 3);
}

TEST_CASE("max degree is 3") {
    for (int n = 1; n <= 6; ++n) {
        CHECK(Architecture::make(Protocol::TwoPerNode, n)->max_degree() == 3);
        CHECK(Architecture::make(Protocol::ThreePerNode, n)->max_degree() == 3);
    }
}

TEST_CASE("graph is a tree plus a path: |edges| = |vertices| - 1") {
    for (int n = 1; n <= 6; ++n) {
        for (Protocol p : {Protocol::TwoPerNode, Protocol::ThreePerNode}) {
            auto arch = Architecture::make(p, n);
            CHECK(arch->edge_count() == arch->qubit_count() - 1);
        }
    }
}

TEST_CASE("parent map follows the chain conventions") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    CHECK(arch->parent(arch->lower(2, 3)) == arch->upper(2, 3));
    CHECK(arch->parent(arch->upper(2, 3)) == arch->lower(1, 1));  // floor(3/2)
    CHECK(arch->parent(arch->upper(0, 0)) == arch->output(1));
    CHECK(arch->parent(arch->output(1)) == arch->output(2));
    CHECK_FALSE(arch->parent(arch->output(3)).has_value());

    auto arch3 = Architecture::make(Protocol::ThreePerNode, 2);
    CHECK(arch3->parent(arch3->middle(1, 1)) == arch3->upper(1, 1));
    CHECK(arch3->parent(arch3->lower(1, 1)) == arch3->middle(1, 1));
    CHECK(arch3->parent(arch3->upper(1, 1)) == arch3->lower(0, 0));
    CHECK_FALSE(arch3->parent(arch3->output(2)).has_value());
}

TEST_CASE("ancestor chains") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    auto chain = arch->ancestors(1, 0);
    CHECK(chain == std::vector<int>{arch->lower(0, 0), arch->upper(0, 0), arch->output(1)});

    auto arch2 = Architecture::make(Protocol::TwoPerNode, 2);
    for (int j = 0; j < 4; ++j) CHECK(arch2->ancestors(2, j).size() == 6);  // 2n + n

    // chain from any leaf terminates at O_n within 3n steps (2pn) / 4n (3pn)
    for (int n = 1; n <= 4; ++n) {
        auto a2 = Architecture::make(Protocol::TwoPerNode, n);
        auto a3 = Architecture::make(Protocol::ThreePerNode, n);
        for (int j = 0; j < (1 << n); ++j) {
            auto c2 = a2->ancestors(n, j);
            CHECK(static_cast<int>(c2.size()) == 3 * n);
            CHECK(c2.back() == a2->output(n));
            auto c3 = a3->ancestors(n, j);
            CHECK(static_cast<int>(c3.size()) == 4 * n);
            CHECK(c3.back() == a3->output(n));
        }
    }
}

TEST_CASE("hat ancestors contain the ancestors and are child-monotone") {
    for (int n = 1; n <= 4; ++n) {
        for (Protocol p : {Protocol::TwoPerNode, Protocol::ThreePerNode}) {
            auto arch = Architecture::make(p, n);
            for (int l = 0; l < n; ++l) {
                for (int j = 0; j < (1 << l); ++j) {
                    auto anc = arch->ancestors(l, j);
                    auto hat = arch->hat_ancestors(l, j);
                    for (int q : anc) CHECK(std::binary_search(hat.begin(), hat.end(), q));

                    std::set<int> child_union;
                    for (int c : {2 * j, 2 * j + 1}) {
                        auto h = arch->hat_ancestors(l + 1, c);
                        child_union.insert(h.begin(), h.end());
                    }
                    for (int q : hat) CHECK(child_union.count(q) == 1);
                }
            }
        }
    }
}

TEST_CASE("lookups reject unknown qubits") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    CHECK_THROWS_AS(arch->id_of({Role::Middle, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(arch->id_of({Role::Upper, 1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(arch->parent(-1), std::invalid_argument);
    CHECK_THROWS_AS(Architecture::make(Protocol::TwoPerNode, 0), std::invalid_argument);
}
