#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "girthlab/codes.hpp"
#include "girthlab/common.hpp"
#include "girthlab/numbers.hpp"

using namespace girthlab;
using codes::ParityCheckMatrix;

namespace {

ParityCheckMatrix identity_matrix(std::uint64_t q, unsigned t) {
    ParityCheckMatrix H;
    H.q = q;
    H.t = t;
    H.n = t;
    H.entries.assign(std::size_t(t) * t, 0);
    for (unsigned i = 0; i < t; ++i) H.at(i, i) = 1;
    return H;
}

}  // namespace

TEST_CASE("min_distance on the identity") {
    auto H = identity_matrix(5, 4);
    auto d = codes::min_distance(H, 4);
    CHECK_FALSE(d.exact);
    CHECK(d.value == 5);  // ">= t+1"
}

TEST_CASE("min_distance detects scalar-multiple columns") {
    ParityCheckMatrix H;
    H.q = 5;
    H.t = 3;
    H.n = 2;
    H.entries = {1, 2, 2, 4, 3, 1};  // column2 = 2 * column1
    auto d = codes::min_distance(H, 2);
    REQUIRE(d.exact);
    CHECK(d.value == 2);
    CHECK(d.dependent_columns == std::vector<unsigned>{0, 1});
}

TEST_CASE("rs_parity is MDS at desk scale") {
    for (unsigned dd : {2u, 5u, 6u}) {
        auto H = codes::rs_parity(7, dd);
        CHECK(H.t == dd - 1);
        CHECK(H.n == 7);
        auto d = codes::min_distance(H, dd);
        REQUIRE(d.exact);
        CHECK(d.value == dd);
    }
    // exhaustive exactness for q = 11 as well
    auto H11 = codes::rs_parity(11, 5);
    auto d11 = codes::min_distance(H11, 5);
    REQUIRE(d11.exact);
    CHECK(d11.value == 5);
    CHECK_THROWS_AS(codes::rs_parity(7, 8), std::invalid_argument);
    CHECK_THROWS_AS(codes::rs_parity(8, 3), std::invalid_argument);
}

TEST_CASE("4x7 Vandermonde over F_7 has distance exactly 5") {
    auto H = codes::rs_parity(7, 5);  // rows x^0..x^3 at the 7 field points
    auto d = codes::min_distance(H, 5);
    REQUIRE(d.exact);
    CHECK(d.value == 5);
}

TEST_CASE("min_distance parallel matches the serial reference") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        ParityCheckMatrix H;
        H.q = 5;
        H.t = 4;
        H.n = 9;
        H.entries.resize(std::size_t(H.t) * H.n);
        for (auto& v : H.entries) v = rng() % 5;
        auto a = codes::min_distance(H, 5);
        auto b = codes::min_distance_serial(H, 5);
        CHECK(a.value == b.value);
        CHECK(a.exact == b.exact);
        if (a.exact) CHECK(a.dependent_columns == b.dependent_columns);
    }
}

TEST_CASE("min_distance invariant under column permutation and scaling") {
    std::mt19937_64 rng(71);
    auto H = codes::rs_parity(7, 4);
    auto base = codes::min_distance(H, 4);
    for (int trial = 0; trial < 10; ++trial) {
        auto P = H;
        // scale a random column by a nonzero field element
        unsigned c = rng() % P.n;
        std::uint64_t s = rng() % 6 + 1;
        for (unsigned r = 0; r < P.t; ++r) P.at(r, c) = P.at(r, c) * s % 7;
        // swap two columns
        unsigned c2 = rng() % P.n;
        for (unsigned r = 0; r < P.t; ++r) std::swap(P.at(r, c), P.at(r, c2));
        auto d = codes::min_distance(P, 4);
        CHECK(d.value == base.value);
        CHECK(d.exact == base.exact);
    }
}

TEST_CASE("dumer matrix reproduces the published fragments") {
    auto H = codes::dumer_d5(5, 2);
    CHECK(H.t == 6);
    CHECK(H.n == 25);
    // P row (last row): starts [1, 3, 4], ends [..., 2, 0]
    CHECK(H.at(5, 0) == 1);
    CHECK(H.at(5, 1) == 3);
    CHECK(H.at(5, 2) == 4);
    CHECK(H.at(5, 23) == 2);
    CHECK(H.at(5, 24) == 0);
    // first column is the expansion of alpha^0 = 1
    CHECK(H.column(0) == std::vector<std::uint64_t>{1, 0, 1, 0, 1, 1});
    // second and third columns of the printed matrix
    CHECK(H.column(1) == std::vector<std::uint64_t>{1, 1, 0, 3, 2, 3});
    CHECK(H.column(2) == std::vector<std::uint64_t>{1, 3, 2, 4, 2, 4});
    // zero element sits in the last column
    CHECK(H.column(24) == std::vector<std::uint64_t>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("dumer m=2 has the affine-line degeneracy (true distance 4)") {
    // The norm x^{1+q} is quadratic on every affine F_q-line, so the four
    // nonzero subfield columns are dependent: the published example's matrix
    // has minimum distance 4, not 5.
    auto H = codes::dumer_d5(5, 2);
    auto d = codes::min_distance(H, 5);
    REQUIRE(d.exact);
    CHECK(d.value == 4);
    // the witness is a genuine dependency
    std::vector<std::vector<std::uint64_t>> cols;
    for (auto c : d.dependent_columns) cols.push_back(H.column(c));
    algebra::Fq f5(5);
    CHECK(algebra::rank_columns(f5, cols) < cols.size());

    auto H7 = codes::dumer_d5(7, 2);
    CHECK(H7.t == 6);
    CHECK(H7.n == 49);
    auto d7 = codes::min_distance(H7, 4);
    REQUIRE(d7.exact);
    CHECK(d7.value == 4);
}

TEST_CASE("dumer m=3 reaches distance 5") {
    auto H = codes::dumer_d5(5, 3);
    CHECK(H.t == 8);  // 2m + ceil(m/3) + 1
    CHECK(H.n == 125);
    auto d = codes::min_distance(H, 4, 0, 0);
    CHECK_FALSE(d.exact);  // no 4 dependent columns
    CHECK(d.value == 5);
}

TEST_CASE("dumer rejects unsupported parameters") {
    CHECK_THROWS_AS(codes::dumer_d5(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(codes::dumer_d5(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(codes::dumer_d5(2, 2), std::invalid_argument);
}

TEST_CASE("bch_d6 toy instance has distance exactly 6") {
    auto H = codes::bch_d6(7, 1);
    CHECK(H.n == 6);
    auto d = codes::min_distance(H, 6);
    REQUIRE(d.exact);
    CHECK(d.value == 6);
}

TEST_CASE("bch_d6 at length 48 reaches designed distance 6") {
    auto H = codes::bch_d6(7, 2);
    CHECK(H.n == 48);
    CHECK(H.t <= 10);
    // no two dependent columns: distinct nonzero powers
    auto d2 = codes::min_distance(H, 2);
    CHECK_FALSE(d2.exact);
    // full check: no 5 dependent columns
    auto d = codes::min_distance(H, 5);
    CHECK_FALSE(d.exact);
    CHECK(d.value == 6);
}

TEST_CASE("remove_redundant_rows") {
    ParityCheckMatrix H;
    H.q = 5;
    H.t = 3;
    H.n = 4;
    H.entries = {1, 2, 3, 4, 1, 2, 3, 4, 0, 1, 1, 0};  // row 2 duplicates row 1
    auto R = codes::remove_redundant_rows(H);
    CHECK(R.t == 2);
    CHECK(codes::rank_of(R) == 2);

    auto full = codes::rs_parity(7, 5);
    auto same = codes::remove_redundant_rows(full);
    CHECK(same.t == full.t);
    CHECK(same.entries == full.entries);
}

TEST_CASE("remove_redundant_rows preserves the null space") {
    std::mt19937_64 rng(73);
    auto H = codes::bch_d6(7, 2);
    ParityCheckMatrix padded = H;  // append sums of existing rows
    padded.t = H.t + 2;
    padded.entries.resize(std::size_t(padded.t) * padded.n);
    for (unsigned c = 0; c < H.n; ++c) {
        padded.at(H.t, c) = (H.at(0, c) + H.at(1, c)) % 7;
        padded.at(H.t + 1, c) = (3 * H.at(2, c)) % 7;
    }
    auto R = codes::remove_redundant_rows(padded);
    CHECK(R.t == codes::rank_of(padded));
    CHECK(codes::rank_of(R) == codes::rank_of(padded));
    // random null-space membership transfer: vectors in ker(padded) stay in ker(R)
    for (int trial = 0; trial < 100; ++trial) {
        // build a random codeword from the kernel by solving is hard here;
        // instead check row spans: every row of R is a row of padded
        unsigned row = rng() % R.t;
        bool found = false;
        for (unsigned r2 = 0; r2 < padded.t && !found; ++r2) {
            bool same = true;
            for (unsigned c = 0; c < R.n; ++c)
                if (R.at(row, c) != padded.at(r2, c)) {
                    same = false;
                    break;
                }
            found = same;
        }
        CHECK(found);
    }
}

TEST_CASE("sphere packing gap arithmetic") {
    codes::CodeParams cp;
    cp.n = 7;
    cp.k = 2;
    cp.q = 7;
    cp.d_exact = 6;
    cp.label = "rs(7,6)";
    auto rows = codes::sphere_packing_report({&cp, 1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].gap == doctest::Approx(3.0));  // 5 - 2*log_7(7)
    auto text = codes::sphere_packing_text(rows);
    CHECK(text.find("rs(7,6)") != std::string::npos);
}

TEST_CASE("matrix text round trip") {
    auto H = codes::dumer_d5(5, 2);
    auto text = codes::to_text(H);
    auto back = codes::from_text(text);
    CHECK(back.q == H.q);
    CHECK(back.t == H.t);
    CHECK(back.n == H.n);
    CHECK(back.entries == H.entries);
    CHECK_THROWS_AS(codes::from_text("5 1 2\n9 1\n"), std::invalid_argument);
}
