#include <gtest/gtest.h>

#include "fockbridge/basis.hpp"

using namespace fockbridge;

namespace {
const Statistics kBoson = Statistics::boson();
const Statistics kFermion = Statistics::fermion();
}  // namespace

TEST(Statistics, GAndDelta) {
    EXPECT_EQ(kBoson.g(), 1);
    EXPECT_EQ(kBoson.delta(), 0);
    EXPECT_EQ(kFermion.g(), -1);
    EXPECT_EQ(kFermion.delta(), 1);
}

TEST(IndexHilbert, Examples) {
    EXPECT_EQ(index_hilbert(4, {3, 4}), 12);
    EXPECT_EQ(index_hilbert(4, {1, 1}), 1);
    EXPECT_EQ(index_hilbert(4, {4, 4}), 16);
    EXPECT_THROW(index_hilbert(4, {0, 1}), DomainError);
    EXPECT_THROW(index_hilbert(4, {1, 5}), DomainError);
}

TEST(IndexFock, Examples) {
    EXPECT_EQ(index_fock(4, kBoson, {3, 4}), 9);
    EXPECT_EQ(index_fock(4, kFermion, {3, 4}), 6);
    EXPECT_EQ(index_fock(4, kBoson, {1, 1}), 1);
    EXPECT_THROW(index_fock(4, kBoson, {3, 2}), DomainError);
    EXPECT_THROW(index_fock(4, kFermion, {2, 2}), DomainError);
}

TEST(UnindexFock, Examples) {
    EXPECT_EQ(unindex_fock(4, kBoson, 9), (ModePair{3, 4}));
    EXPECT_EQ(unindex_fock(4, kFermion, 6), (ModePair{3, 4}));
    EXPECT_EQ(unindex_fock(4, kFermion, 1), (ModePair{1, 2}));
    EXPECT_THROW(unindex_fock(4, kFermion, 7), DomainError);
    EXPECT_THROW(unindex_fock(4, kBoson, 0), DomainError);
}

TEST(UnindexHilbert, Examples) {
    EXPECT_EQ(unindex_hilbert(4, 12), (ModePair{3, 4}));
    EXPECT_EQ(unindex_hilbert(4, 1), (ModePair{1, 1}));
    EXPECT_EQ(unindex_hilbert(4, 16), (ModePair{4, 4}));
    EXPECT_THROW(unindex_hilbert(4, 17), DomainError);
}

TEST(EnumerateBasis, MatchesTable) {
    const std::vector<ModePair> fermions{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    EXPECT_EQ(enumerate_basis(4, kFermion), fermions);
    EXPECT_EQ(enumerate_basis(4, kBoson).size(), 10u);
    EXPECT_EQ(enumerate_basis(4).size(), 16u);
    EXPECT_TRUE(enumerate_basis(1, kFermion).empty());
}

TEST(BasisIndexer, ModeCap) {
    EXPECT_NO_THROW(BasisIndexer{kMaxModes});
    EXPECT_THROW(BasisIndexer{kMaxModes + 1}, DomainError);
    EXPECT_THROW(BasisIndexer{0}, DomainError);
}

TEST(BasisProperties, RoundTripExhaustive) {
    for (int K = 1; K <= 16; ++K) {
        for (const auto stat : {kBoson, kFermion}) {
            const auto pairs = enumerate_basis(K, stat);
            ASSERT_EQ(static_cast<int>(pairs.size()), fock_dim(K, stat));
            for (int m = 1; m <= fock_dim(K, stat); ++m) {
                const ModePair p = unindex_fock(K, stat, m);
                EXPECT_EQ(index_fock(K, stat, p), m);
                // list position equals global index
                EXPECT_EQ(pairs[m - 1], p);
            }
        }
        for (int m = 1; m <= hilbert_dim(K); ++m) EXPECT_EQ(index_hilbert(K, unindex_hilbert(K, m)), m);
    }
}

TEST(BasisProperties, MonotoneAndBoundedByHilbert) {
    for (int K = 1; K <= 12; ++K) {
        for (const auto stat : {kBoson, kFermion}) {
            int previous = 0;
            for (const auto& p : enumerate_basis(K, stat)) {
                const int m = index_fock(K, stat, p);
                EXPECT_GT(m, previous);
                EXPECT_LE(m, index_hilbert(K, p));
                previous = m;
            }
        }
    }
}

TEST(BasisProperties, DimensionsSumToHilbert) {
    for (int K = 1; K <= 64; ++K) {
        EXPECT_EQ(fock_dim(K, kBoson), K * (K + 1) / 2);
        EXPECT_EQ(fock_dim(K, kFermion), K * (K - 1) / 2);
        EXPECT_EQ(fock_dim(K, kBoson) + fock_dim(K, kFermion), hilbert_dim(K));
    }
}

TEST(BasisProperties, LargeKInverseStaysExact) {
    const int K = kMaxModes;
    for (const auto stat : {kBoson, kFermion}) {
        const int last = fock_dim(K, stat);
        EXPECT_EQ(unindex_fock(K, stat, last), (ModePair{K - stat.delta(), K}));
        const ModePair mid{K / 2, K / 2 + 7};
        EXPECT_EQ(unindex_fock(K, stat, index_fock(K, stat, mid)), mid);
    }
}
