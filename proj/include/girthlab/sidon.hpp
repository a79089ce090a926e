#pragma once

// Sidon-set verification and search, the square-products property, and the
// appendix table of cyclic 4-products.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "girthlab/numbers.hpp"

namespace girthlab::sidon {

// Strictly increasing positive integers lambda_1 < ... < lambda_r.
struct Lambda {
    std::vector<std::int64_t> entries;

    explicit Lambda(std::vector<std::int64_t> e);
    std::size_t size() const { return entries.size(); }
};

struct SidonWitness {
    // a1 + a2 = a3 + a4 with {a1,a2} != {a3,a4}
    std::int64_t a1, a2, a3, a4;
};

// Sidon test in Z (modulus = 0) or Z_n.  Elements must be distinct.
// Exhaustive over pair sums; throws budget_error if |set|^2 exceeds budget.
struct SidonResult {
    bool sidon;
    std::optional<SidonWitness> witness;
};
SidonResult is_sidon(std::span<const std::int64_t> set, std::uint64_t modulus = 0,
                     std::uint64_t budget = 100'000'000);

// S(lambda): square-free parts of the positive non-square cyclic 4-products
// of differences, over all index 4-tuples with i1!=i2, i2!=i3, i3!=i4, i4!=i1.
std::vector<std::uint64_t> square_free_products(const Lambda& lambda);

// Residues a mod M (all with gcd(a,M) = 1) on which every s in S is a
// certified non-residue; kronecker(s,.) is constant on each residue class
// mod M since M is a multiple of the period 4s.
struct AdmissibleClass {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> residues;       // sorted; {0} with modulus 1 = unconstrained
    std::vector<std::uint64_t> witness_primes; // first few primes in the class

    bool contains(std::uint64_t x) const;
    std::uint64_t representative() const { return residues.empty() ? 0 : residues.front(); }
    bool unconstrained() const { return modulus == 1; }
};

// Empty optional when no unit mod lcm(4s) works.  For S = {} returns the
// unconstrained class.  Caps the scan modulus at ~10^6.
std::optional<AdmissibleClass> admissible_class(std::span<const std::uint64_t> S,
                                                int witness_count = 3);

struct SquareProductsCertificate {
    Lambda lambda;
    std::vector<std::uint64_t> S;
    AdmissibleClass cls;
};

// Checks lambda is Sidon (throws otherwise), computes S(lambda) and an
// admissible class with verified witness primes.  Empty when no class exists.
std::optional<SquareProductsCertificate> has_square_products_property(const Lambda& lambda,
                                                                      int witness_count = 3);

// Depth-first search over increasing integer vectors with entries in
// [1, max_entry], pruning non-Sidon prefixes; first lexicographic witness.
// A prefix resumes a longer hunt from that branch of the tree.
std::optional<Lambda> search_square_products_sidon(int r, std::int64_t max_entry,
                                                   std::span<const std::int64_t> prefix = {});

struct AppendixRow {
    std::vector<int> index_set;  // j1 < j2 < j3 < j4, 1-based
    std::uint64_t product_1;     // ordering (j1, j2, j4, j3)
    std::uint64_t product_2;     // ordering (j1, j3, j2, j4)
    std::vector<std::pair<std::uint64_t, int>> factorization_1;
    std::vector<std::pair<std::uint64_t, int>> factorization_2;
    std::vector<std::uint64_t> squarefree_parts;  // parts > 1, ascending
};

// C(r,4) rows; per 4-subset the orderings are classified by sign from all 24
// permutations, asserting one negative and two positive orbits.
std::vector<AppendixRow> appendix_table(const Lambda& lambda);

std::string factorization_string(std::span<const std::pair<std::uint64_t, int>> f);
std::string appendix_csv(std::span<const AppendixRow> rows);
std::string certificate_json(const SquareProductsCertificate& cert);

}  // namespace girthlab::sidon
