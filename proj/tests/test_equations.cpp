#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "girthlab/common.hpp"
#include "girthlab/equations.hpp"
#include "girthlab/numbers.hpp"

using namespace girthlab;
using equations::IntLinearEquation;
using equations::RingSpec;

namespace {

// independent genus oracle: recursive set-partition enumeration (no
// restricted-growth strings)
unsigned genus_oracle(const IntLinearEquation& eq) {
    const std::size_t k = eq.arity();
    std::vector<std::vector<std::size_t>> parts;
    unsigned best = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            for (const auto& part : parts) {
                std::int64_t s = 0;
                for (auto j : part) s += eq.coeffs[j];
                if (s != 0) return;
            }
            best = std::max(best, static_cast<unsigned>(parts.size()));
            return;
        }
        for (std::size_t pi = 0; pi < parts.size(); ++pi) {
            parts[pi].push_back(i);
            rec(i + 1);
            parts[pi].pop_back();
        }
        parts.push_back({i});
        rec(i + 1);
        parts.pop_back();
    };
    rec(0);
    return best;
}

// independent naive find_nontrivial: plain odometer, no first-index split
std::optional<std::vector<std::uint64_t>> naive_find_nontrivial(
    const IntLinearEquation& eq, const std::vector<std::uint64_t>& B, const RingSpec& ring) {
    const std::size_t k = eq.arity();
    std::vector<std::size_t> idx(k, 0);
    std::vector<std::uint64_t> vals(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) vals[i] = B[idx[i]];
        if (equations::satisfies(eq, vals, ring) &&
            !equations::is_trivial_solution(eq, vals, ring))
            return vals;
        std::size_t i = k;
        while (i-- > 0) {
            if (++idx[i] < B.size()) break;
            idx[i] = 0;
            if (i == 0) return std::nullopt;
        }
    }
}

}  // namespace

TEST_CASE("cycle_equation reproduces the published 4-cycle equations") {
    std::vector<std::int64_t> lambda = {1, 2, 5, 6};
    std::vector<int> parts = {1, 2, 3, 4};
    auto eq = equations::cycle_equation(parts, lambda);
    CHECK(eq.coeffs == std::vector<std::int64_t>{1, 3, 1, -5});  // X1+3X2+X3 = 5X4

    parts = {1, 2, 4, 3};
    eq = equations::cycle_equation(parts, lambda);
    CHECK(eq.coeffs == std::vector<std::int64_t>{1, 4, -1, -4});  // X1+4X2 = X3+4X4

    parts = {1, 3, 2, 4};
    eq = equations::cycle_equation(parts, lambda);
    CHECK(eq.coeffs == std::vector<std::int64_t>{4, -3, 4, -5});  // 4X1+4X3 = 3X2+5X4

    std::vector<int> bad = {1, 1, 2};
    CHECK_THROWS_AS(equations::cycle_equation(bad, lambda), std::invalid_argument);
    std::vector<int> oob = {1, 5};
    CHECK_THROWS_AS(equations::cycle_equation(oob, lambda), std::invalid_argument);
}

TEST_CASE("cycle_equation output sums to zero with nonzero coefficients") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        int r = 3 + static_cast<int>(rng() % 4);
        std::vector<std::int64_t> lambda;
        std::int64_t v = 1 + static_cast<std::int64_t>(rng() % 5);
        for (int i = 0; i < r; ++i) {
            lambda.push_back(v);
            v += 1 + static_cast<std::int64_t>(rng() % 9);
        }
        int k = 2 + static_cast<int>(rng() % 5);
        std::vector<int> parts(k);
        bool ok = true;
        for (int j = 0; j < k; ++j) {
            int prev = j == 0 ? -1 : parts[j - 1];
            int cand;
            int guard = 0;
            do {
                cand = 1 + static_cast<int>(rng() % r);
            } while ((cand == prev || (j == k - 1 && cand == parts[0])) && ++guard < 100);
            if (guard >= 100) ok = false;
            parts[j] = cand;
        }
        if (!ok || parts[0] == parts[k - 1]) continue;
        auto eq = equations::cycle_equation(parts, lambda);
        CHECK(eq.coefficient_sum() == 0);
        for (auto c : eq.coeffs) CHECK(c != 0);
    }
}

TEST_CASE("genus of the published equations") {
    CHECK(equations::genus({{1, 3, 1, -5}}) == 1);
    CHECK(equations::genus({{1, 4, -1, -4}}) == 2);
    CHECK(equations::genus({{4, -3, 4, -5}}) == 1);
    CHECK_THROWS_AS(equations::genus({{1, 2}}), std::invalid_argument);
}

TEST_CASE("genus agrees with the partition-enumeration oracle on random equations") {
    std::mt19937_64 rng(37);
    int done = 0;
    while (done < 200) {
        int k = 2 + static_cast<int>(rng() % 5);  // up to 6 variables
        std::vector<std::int64_t> c(k);
        std::int64_t sum = 0;
        for (int i = 0; i + 1 < k; ++i) {
            c[i] = static_cast<std::int64_t>(rng() % 9) - 4;
            if (c[i] == 0) c[i] = 1;
            sum += c[i];
        }
        c[k - 1] = -sum;
        if (c[k - 1] == 0) continue;
        IntLinearEquation eq{c};
        CHECK(equations::genus(eq) == genus_oracle(eq));
        ++done;
    }
}

TEST_CASE("genus invariances") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 3 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> c(k);
        std::int64_t sum = 0;
        for (int i = 0; i + 1 < k; ++i) {
            c[i] = static_cast<std::int64_t>(rng() % 7) - 3;
            if (c[i] == 0) c[i] = 2;
            sum += c[i];
        }
        c[k - 1] = -sum;
        if (c[k - 1] == 0) continue;
        unsigned g = equations::genus({c});
        auto neg = c;
        for (auto& v : neg) v = -v;
        CHECK(equations::genus({neg}) == g);
        std::shuffle(c.begin(), c.end(), rng);
        CHECK(equations::genus({c}) == g);
    }
}

TEST_CASE("is_trivial_solution classes") {
    IntLinearEquation sidon{{1, -1, 1, -1}};
    std::vector<std::uint64_t> uuvv = {4, 4, 9, 9};
    CHECK(equations::is_trivial_solution(sidon, uuvv, RingSpec::integers()));
    std::vector<std::uint64_t> uvuv = {4, 9, 4, 9};
    CHECK_FALSE(equations::is_trivial_solution(sidon, uvuv, RingSpec::integers()));
    // all-equal is trivial for any zero-sum equation
    IntLinearEquation eq{{1, 3, 1, -5}};
    std::vector<std::uint64_t> all = {6, 6, 6, 6};
    CHECK(equations::is_trivial_solution(eq, all, RingSpec::integers()));
    std::vector<std::uint64_t> wrong_arity = {1, 2};
    CHECK_THROWS_AS((void)equations::is_trivial_solution(eq, wrong_arity, RingSpec::integers()),
                    std::invalid_argument);
}

TEST_CASE("find_nontrivial basics") {
    // X + Y = 2Z over Z_13 on {0,1,3,9}: 1+... check via oracle
    IntLinearEquation ap3{{1, 1, -2}};
    std::vector<std::uint64_t> B = {0, 1, 3, 9};
    auto ring = RingSpec::mod(13);
    auto hit = equations::find_nontrivial(ap3, B, ring, 1'000'000);
    auto expect = naive_find_nontrivial(ap3, B, ring);
    CHECK(hit == expect);

    std::vector<std::uint64_t> single = {5};
    CHECK_FALSE(equations::find_nontrivial(ap3, single, ring, 1000).has_value());

    // genus-2 trivial pattern: (1,2,1,2) satisfies X1+4X2-X3-4X4 = 0 trivially
    IntLinearEquation g2{{1, 4, -1, -4}};
    std::vector<std::uint64_t> B12 = {1, 2};
    CHECK_FALSE(equations::find_nontrivial(g2, B12, RingSpec::integers(), 1000).has_value());

    CHECK_THROWS_AS(equations::find_nontrivial(ap3, B, ring, 10), budget_error);
}

TEST_CASE("find_nontrivial agrees with the naive oracle and the serial reference") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> c(k);
        std::int64_t sum = 0;
        for (int i = 0; i + 1 < k; ++i) {
            c[i] = static_cast<std::int64_t>(rng() % 7) - 3;
            if (c[i] == 0) c[i] = 1;
            sum += c[i];
        }
        c[k - 1] = -sum;
        if (c[k - 1] == 0) c[k - 1] = -1;  // keep nonzero; may break zero-sum, fine
        IntLinearEquation eq{c};
        std::uint64_t p = 11 + 2 * (rng() % 20);
        while (!numbers::is_prime(p)) ++p;
        std::vector<std::uint64_t> B;
        for (std::uint64_t v = 0; v < p; ++v)
            if (rng() % 3 == 0) B.push_back(v);
        if (B.empty()) continue;
        auto ring = RingSpec::mod(p);
        auto a = equations::find_nontrivial(eq, B, ring, 100'000'000);
        auto b = equations::find_nontrivial_serial(eq, B, ring, 100'000'000);
        auto n = naive_find_nontrivial(eq, B, ring);
        CHECK(a == b);
        CHECK(a == n);
    }
}

TEST_CASE("enumerate_family golden counts") {
    auto f13 = equations::enumerate_family(1, 3);
    REQUIRE(f13.members.size() == 2);
    CHECK(f13.members[0].coeffs == std::vector<std::int64_t>{1, -1});      // X1 = X2
    CHECK(f13.members[1].coeffs == std::vector<std::int64_t>{1, 1, -2});   // X1+X2 = 2X3

    auto f22 = equations::enumerate_family(2, 2);
    REQUIRE(f22.members.size() == 2);
    CHECK(f22.members[0].coeffs == std::vector<std::int64_t>{1, -1});
    CHECK(f22.members[1].coeffs == std::vector<std::int64_t>{2, -2});

    // left multisets {1},{2} (k=2) and {1,1},{1,2},{2,2} (k=3)
    auto f23 = equations::enumerate_family(2, 3);
    CHECK(f23.members.size() == 5);

    for (const auto& eq : f23.members) CHECK(eq.coefficient_sum() == 0);
}

TEST_CASE("equation text round trip") {
    auto fam = equations::enumerate_family(2, 4);
    auto text = equations::to_text(fam.members);
    auto back = equations::from_text(text);
    CHECK(back == fam.members);
}
