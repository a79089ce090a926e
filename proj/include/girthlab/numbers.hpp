#pragma once

// Integer-side number theory: primality, square-free factorization, CRT,
// primes in arithmetic progressions.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace girthlab::numbers {

// Residue class a mod M with 0 <= a < M.
struct ResidueClass {
    std::uint64_t a = 0;
    std::uint64_t modulus = 1;

    bool contains(std::uint64_t x) const { return x % modulus == a; }
    bool operator==(const ResidueClass&) const = default;
};

// n = s * t^2 with s square-free.
struct SquareFreeSplit {
    std::uint64_t n = 1;
    std::uint64_t s = 1;  // square-free part
    std::uint64_t t = 1;  // cofactor
};

// Exact deterministic primality for n < 2^64 (Miller-Rabin, fixed base set).
bool is_prime(std::uint64_t n);

// Prime factorization as (prime, exponent) pairs, primes ascending.
// Trial division up to 10^6 with Pollard rho fallback.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Throws std::invalid_argument on n = 0.
SquareFreeSplit squarefree_split(std::uint64_t n);

// Combines congruences into the unique class mod lcm of the moduli.
// Throws std::invalid_argument on inconsistent congruences or empty input.
ResidueClass crt(std::span<const ResidueClass> classes);

enum class Pick { smallest, largest };

// A prime p in [lo, hi] with p in the class, or nullopt if the window has none.
// Requires gcd(a, M) = 1.
std::optional<std::uint64_t> prime_in_ap(const ResidueClass& cls, std::uint64_t lo,
                                         std::uint64_t hi, Pick pick = Pick::smallest);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace girthlab::numbers
