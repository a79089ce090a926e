#pragma once

// Sets with only trivial solutions to the genus-1 family E_{C,l}: the
// digit-sphere construction, an exact greedy oracle for small moduli, and the
// translate-intersection combiner.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "girthlab/equations.hpp"

namespace girthlab::behrend {

enum class Method { digit_sphere, greedy, intersected, file };

struct SolutionFreeSet {
    std::vector<std::uint64_t> elements;  // sorted
    std::uint64_t modulus = 0;            // 0: integers in [0, bound)
    std::uint64_t bound = 0;              // integer-range size when modulus = 0
    int C = 1;
    int l = 2;
    bool verified = false;
    Method method = Method::digit_sphere;

    equations::RingSpec ring() const {
        return modulus ? equations::RingSpec::mod(modulus) : equations::RingSpec::integers();
    }
};

// Integers in [0, n) whose base-D digit vectors have all digits below
// floor(D/(C*l)) and squared digit-norm on the best shell.  Base and digit
// count are chosen to maximize the shell size.  For l = 2 the family forces
// nothing beyond equality and the full range is returned.
SolutionFreeSet behrend_digit_set(std::uint64_t n, int C, int l,
                                  std::uint64_t budget = 0);

// Grows B in increasing residue order, adding x iff no family member gains a
// nontrivial solution.  Result is re-verified exhaustively.
SolutionFreeSet greedy_avoider(std::uint64_t p, std::span<const equations::IntLinearEquation> family,
                               int C, int l, std::uint64_t budget = 0, int threads = 0);

// B1 intersect (B2 + m) for the size-maximizing shift m (ties: smallest m).
SolutionFreeSet intersect_translates(const SolutionFreeSet& B1, const SolutionFreeSet& B2,
                                     std::uint64_t p, std::uint64_t budget = 0);

struct VerifyResult {
    bool solution_free;
    std::optional<equations::IntLinearEquation> offending;  // member with a hit
    std::optional<std::vector<std::uint64_t>> witness;
};

VerifyResult verify_solution_free(std::span<const std::uint64_t> B,
                                  std::span<const equations::IntLinearEquation> family,
                                  const equations::RingSpec& ring, std::uint64_t budget = 0,
                                  int threads = 0);

// `# modulus=<p> C=<C> l=<l> verified=<bool>` then one element per line.
std::string to_text(const SolutionFreeSet& set);
SolutionFreeSet from_text(const std::string& text);

}  // namespace girthlab::behrend
