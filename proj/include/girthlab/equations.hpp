#pragma once

// Homogeneous invariant linear equations arising from Berge cycles: genus,
// trivial-solution tests, exhaustive solution search, and the E_{C,l} family.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace girthlab::equations {

// sum_i coeffs[i] * X_i = 0 with every coefficient nonzero.
// Cycle-derived equations additionally satisfy sum_i coeffs[i] = 0.
struct IntLinearEquation {
    std::vector<std::int64_t> coeffs;

    std::size_t arity() const { return coeffs.size(); }
    std::int64_t coefficient_sum() const;
    bool operator==(const IntLinearEquation&) const = default;
};

// Values live either in Z or in Z_p.  Equation satisfaction is evaluated in
// the ring; triviality (zero class sums) is always evaluated over Z.
struct RingSpec {
    bool modular = false;
    std::uint64_t p = 0;

    static RingSpec integers() { return {false, 0}; }
    static RingSpec mod(std::uint64_t p) { return {true, p}; }
};

struct Lambda;  // sidon.hpp owns the full definition; equations only needs entries

// Coefficients (lambda[i2]-lambda[i1], ..., lambda[i1]-lambda[ik]) for a
// part-index tuple (1-based indices into lambda).  Throws on adjacent-equal
// indices (cyclically) or out-of-range indices.
IntLinearEquation cycle_equation(std::span<const int> parts,
                                 std::span<const std::int64_t> lambda);

// Largest m such that [k] partitions into m classes each with zero
// coefficient sum.  Requires sum coeffs = 0 and k <= 12 (exhaustive
// restricted-growth-string enumeration).
unsigned genus(const IntLinearEquation& eq);

// True iff the partition of indices by equal assignment values has every
// class coefficient sum equal to zero (in Z).  Meaningful for assignments
// that satisfy the equation; the classification itself never needs the ring.
bool is_trivial_solution(const IntLinearEquation& eq, std::span<const std::uint64_t> values,
                         const RingSpec& ring);

bool satisfies(const IntLinearEquation& eq, std::span<const std::uint64_t> values,
               const RingSpec& ring);

// First (lexicographic in B-index order) nontrivial satisfying assignment
// with values from B, or nullopt if none exists.  Exhaustive over |B|^k;
// throws budget_error beyond the budget.  Deterministic for any thread count.
std::optional<std::vector<std::uint64_t>> find_nontrivial(const IntLinearEquation& eq,
                                                          std::span<const std::uint64_t> B,
                                                          const RingSpec& ring,
                                                          std::uint64_t budget,
                                                          int threads = 0);

// Single-threaded reference implementation, kept for differential tests.
std::optional<std::vector<std::uint64_t>> find_nontrivial_serial(const IntLinearEquation& eq,
                                                                 std::span<const std::uint64_t> B,
                                                                 const RingSpec& ring,
                                                                 std::uint64_t budget);

// E_{C,l}: equations b_1 X_1 + ... + b_{k-1} X_{k-1} = b_k X_k with
// k in {2..l}, b_i in [1..C], b_k = sum of the left side; deduplicated up to
// permutation of the left coefficients.  Stored with the right-hand
// coefficient negated so each member has zero coefficient sum.
struct EquationFamily {
    int C = 1;
    int l = 2;
    std::vector<IntLinearEquation> members;
};

EquationFamily enumerate_family(int C, int l, std::uint64_t budget = 10'000'000);

// One equation per line, whitespace-separated signed coefficients.
std::string to_text(std::span<const IntLinearEquation> eqs);
std::vector<IntLinearEquation> from_text(const std::string& text);

}  // namespace girthlab::equations
