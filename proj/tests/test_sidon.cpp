#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "girthlab/algebra.hpp"
#include "girthlab/numbers.hpp"
#include "girthlab/sidon.hpp"

using namespace girthlab;
using sidon::Lambda;

namespace {

// independent oracle: exhaustive quadruple scan
bool sidon_by_quadruples(const std::vector<std::int64_t>& v, std::uint64_t mod) {
    auto red = [&](std::int64_t x) {
        if (mod == 0) return x;
        std::int64_t m = static_cast<std::int64_t>(mod);
        return ((x % m) + m) % m;
    };
    const std::size_t n = v.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    if (red(v[a] + v[b]) != red(v[c] + v[d])) continue;
                    std::multiset<std::int64_t> l{v[a], v[b]}, r{v[c], v[d]};
                    if (l != r) return false;
                }
    return true;
}

}  // namespace

TEST_CASE("is_sidon examples") {
    std::vector<std::int64_t> davini = {1, 35, 161, 170, 251, 545};
    CHECK(sidon::is_sidon(davini).sidon);

    std::vector<std::int64_t> not_sidon = {1, 2, 5, 6};
    auto res = sidon::is_sidon(not_sidon);
    CHECK_FALSE(res.sidon);
    REQUIRE(res.witness.has_value());
    // 6 - 2 = 5 - 1: witness pairs share a sum with different multisets
    auto w = *res.witness;
    CHECK(w.a1 + w.a2 == w.a3 + w.a4);
    CHECK(std::multiset<std::int64_t>{w.a1, w.a2} != std::multiset<std::int64_t>{w.a3, w.a4});

    std::vector<std::int64_t> small = {1, 2, 5, 7};
    CHECK(sidon::is_sidon(small).sidon);

    std::vector<std::int64_t> dup = {1, 1, 2};
    CHECK_THROWS_AS(sidon::is_sidon(dup), std::invalid_argument);
}

TEST_CASE("is_sidon agrees with the quadruple oracle, order and shift invariant") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<std::int64_t> sset;
        int n = 3 + static_cast<int>(rng() % 4);
        while (static_cast<int>(sset.size()) < n)
            sset.insert(static_cast<std::int64_t>(rng() % 40) + 1);
        std::vector<std::int64_t> v(sset.begin(), sset.end());
        bool expect = sidon_by_quadruples(v, 0);
        CHECK(sidon::is_sidon(v).sidon == expect);
        // order invariance
        std::shuffle(v.begin(), v.end(), rng);
        CHECK(sidon::is_sidon(v).sidon == expect);
        // translation invariance over Z
        for (auto& x : v) x += 1000;
        CHECK(sidon::is_sidon(v).sidon == expect);
    }
    // modular case against the oracle
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t mod = 7 + rng() % 30;
        std::set<std::int64_t> sset;
        int n = 3 + static_cast<int>(rng() % 3);
        while (static_cast<int>(sset.size()) < n)
            sset.insert(static_cast<std::int64_t>(rng() % mod));
        std::vector<std::int64_t> v(sset.begin(), sset.end());
        CHECK(sidon::is_sidon(v, mod).sidon == sidon_by_quadruples(v, mod));
    }
}

TEST_CASE("square_free_products paper examples") {
    Lambda l1({1, 28, 33, 36, 43});
    CHECK(sidon::square_free_products(l1) == std::vector<std::uint64_t>{7});

    Lambda davini({1, 35, 161, 170, 251, 545});
    CHECK(sidon::square_free_products(davini) == std::vector<std::uint64_t>{21, 51});

    Lambda triple({1, 2, 5});
    CHECK(sidon::square_free_products(triple).empty());
}

TEST_CASE("admissible_class paper classes") {
    std::vector<std::uint64_t> S = {21, 51};
    auto cls = sidon::admissible_class(S, 5);
    REQUIRE(cls.has_value());
    CHECK(cls->modulus == 1428);
    CHECK(cls->contains(953));
    REQUIRE(cls->witness_primes.size() == 5);
    for (auto p : cls->witness_primes) {
        CHECK(numbers::is_prime(p));
        CHECK(cls->contains(p % 1428));
        CHECK(algebra::legendre(21, p) == -1);
        CHECK(algebra::legendre(51, p) == -1);
    }

    std::vector<std::uint64_t> S7 = {7};
    auto c7 = sidon::admissible_class(S7);
    REQUIRE(c7.has_value());
    CHECK(c7->modulus == 28);
    // the valid units are exactly +-5, +-11, +-13 mod 28
    CHECK(c7->residues == std::vector<std::uint64_t>{5, 11, 13, 15, 17, 23});

    auto cempty = sidon::admissible_class({});
    REQUIRE(cempty.has_value());
    CHECK(cempty->unconstrained());
    CHECK(cempty->contains(12345));
}

TEST_CASE("has_square_products_property certificates") {
    Lambda davini({1, 35, 161, 170, 251, 545});
    auto cert = sidon::has_square_products_property(davini);
    REQUIRE(cert.has_value());
    CHECK(cert->S == std::vector<std::uint64_t>{21, 51});
    CHECK(cert->cls.contains(953 % cert->cls.modulus));

    Lambda ex({1, 28, 33, 36, 43});
    auto c2 = sidon::has_square_products_property(ex);
    REQUIRE(c2.has_value());
    CHECK(c2->S == std::vector<std::uint64_t>{7});

    // subsets inherit the property
    Lambda prefix({1, 35, 161, 170});
    CHECK(sidon::has_square_products_property(prefix).has_value());

    Lambda notsidon({1, 2, 5, 6});
    CHECK_THROWS_AS(sidon::has_square_products_property(notsidon), std::invalid_argument);
}

TEST_CASE("certificate witness primes re-verify") {
    Lambda prefix({1, 35, 161, 170});
    auto cert = sidon::has_square_products_property(prefix, 4);
    REQUIRE(cert.has_value());
    REQUIRE(cert->cls.witness_primes.size() >= 3);
    for (auto p : cert->cls.witness_primes)
        for (auto s : cert->S)
            CHECK(algebra::legendre(static_cast<std::int64_t>(s), p) == -1);
}

TEST_CASE("search_square_products_sidon finds witnesses") {
    auto l4 = sidon::search_square_products_sidon(4, 170);
    REQUIRE(l4.has_value());
    CHECK(l4->size() == 4);
    CHECK(sidon::is_sidon(l4->entries).sidon);
    CHECK(sidon::has_square_products_property(*l4).has_value());

    // (1,35,161,170) must itself pass the certificate checker
    Lambda known({1, 35, 161, 170});
    CHECK(sidon::has_square_products_property(known).has_value());

    // r = 3: no 4-tuples, S empty, every Sidon triple qualifies
    auto l3 = sidon::search_square_products_sidon(3, 10);
    REQUIRE(l3.has_value());
    CHECK(sidon::square_free_products(*l3).empty());
}

TEST_CASE("appendix table structure for the Davini set") {
    Lambda davini({1, 35, 161, 170, 251, 545});
    auto rows = sidon::appendix_table(davini);
    REQUIRE(rows.size() == 15);

    // row {1,2,3,4}
    CHECK(rows[0].index_set == std::vector<int>{1, 2, 3, 4});
    CHECK(rows[0].product_1 == 6609600);
    CHECK(rows[0].product_2 == 459950400);
    CHECK(rows[0].squarefree_parts == std::vector<std::uint64_t>{21, 51});

    // row {1,2,4,6} is all-square
    auto& r146 = rows[4];
    CHECK(r146.index_set == std::vector<int>{1, 2, 4, 6});
    CHECK(r146.product_1 == 1098922500);
    CHECK(r146.squarefree_parts.empty());

    // row {1,2,5,6}
    CHECK(rows[5].index_set == std::vector<int>{1, 2, 5, 6});
    CHECK(rows[5].product_2 == 14981760000ULL);
    CHECK(rows[5].squarefree_parts.empty());

    // last row {3,4,5,6}
    CHECK(rows[14].product_1 == 89302500);
    CHECK(rows[14].product_2 == 1049760000);
    CHECK(rows[14].squarefree_parts.empty());

    // union of parts over all rows equals square_free_products
    std::set<std::uint64_t> un;
    for (const auto& row : rows) un.insert(row.squarefree_parts.begin(), row.squarefree_parts.end());
    auto S = sidon::square_free_products(davini);
    CHECK(std::vector<std::uint64_t>(un.begin(), un.end()) == S);
}

TEST_CASE("appendix union property on other lambdas") {
    std::mt19937_64 rng(53);
    int done = 0;
    while (done < 20) {
        std::set<std::int64_t> sset;
        while (sset.size() < 5) sset.insert(static_cast<std::int64_t>(rng() % 60) + 1);
        std::vector<std::int64_t> v(sset.begin(), sset.end());
        if (!sidon::is_sidon(v).sidon) continue;
        Lambda lam(v);
        std::set<std::uint64_t> un;
        for (const auto& row : sidon::appendix_table(lam))
            un.insert(row.squarefree_parts.begin(), row.squarefree_parts.end());
        auto S = sidon::square_free_products(lam);
        CHECK(std::vector<std::uint64_t>(un.begin(), un.end()) == S);
        ++done;
    }
}

TEST_CASE("factorizations in the table multiply back to the products") {
    Lambda davini({1, 35, 161, 170, 251, 545});
    for (const auto& row : sidon::appendix_table(davini)) {
        for (auto [prod, fact] :
             {std::pair{row.product_1, row.factorization_1}, {row.product_2, row.factorization_2}}) {
            std::uint64_t back = 1;
            for (auto [p, e] : fact)
                for (int i = 0; i < e; ++i) back *= p;
            CHECK(back == prod);
        }
    }
}

TEST_CASE("appendix csv shape") {
    Lambda davini({1, 35, 161, 170, 251, 545});
    auto rows = sidon::appendix_table(davini);
    auto csv = sidon::appendix_csv(rows);
    CHECK(csv.find("index_set,product_1") == 0);
    CHECK(csv.find("{1 2 3 4},6609600,2^6*3^5*5^2*17^1,459950400,") != std::string::npos);
    CHECK(csv.find("None") != std::string::npos);
}
