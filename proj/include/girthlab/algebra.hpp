#pragma once

// Exact arithmetic over prime fields F_p, extension fields F_{p^m}, vectors
// over F_q, and quadratic-residue machinery.  All operations are pure.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace girthlab::algebra {

struct PrimeFieldElement {
    std::uint64_t value = 0;
    std::uint64_t p = 2;
};

// Legendre symbol (a/p) for odd prime p, by Euler's criterion.
// Throws std::invalid_argument unless p is an odd prime.
int legendre(std::int64_t a, std::uint64_t p);

// Kronecker symbol (s/r); for odd primes p coprime to s it agrees with the
// Legendre symbol, and for fixed positive s it is periodic with period 4s on
// odd r (the residue-class certificates only evaluate it at units mod 4s).
int kronecker(std::int64_t s, std::int64_t r);

// Some root of X^2 = a (mod p), or nullopt when a is a non-residue.
// Either root may be returned; callers must not depend on which.
std::optional<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t p);

// F_{p^m} for prime p, elements stored as coefficient vectors in the power
// basis of a verified-irreducible monic modulus polynomial.  Element indices
// encode coefficient vectors in base p: index = sum c_i p^i.
class ExtensionField {
  public:
    // modulus_poly: coefficients of the monic modulus, c_0..c_m (c_m = 1).
    // If omitted, the lexicographically first irreducible monic polynomial is
    // used.  The primitive element is the lexicographically first generator
    // (ordered by coefficient vector).
    static ExtensionField build(std::uint64_t p, unsigned m,
                                std::optional<std::vector<std::uint64_t>> modulus_poly = {});

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint64_t order() const { return order_; }  // p^m
    const std::vector<std::uint64_t>& modulus_poly() const { return modulus_; }
    std::uint64_t primitive_element() const { return primitive_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;

    // Coefficient vector c_0..c_{m-1} of an element index.
    std::vector<std::uint64_t> coeffs(std::uint64_t a) const;
    std::uint64_t from_coeffs(std::span<const std::uint64_t> c) const;

    // x^{(p^m-1)/(p^e-1)}: the norm onto the degree-e subfield, as an element
    // of this field.  Requires e | m.
    std::uint64_t norm_to_subdegree(std::uint64_t x, unsigned e) const;

    bool element_is_primitive(std::uint64_t a) const;

  private:
    std::uint64_t p_ = 2;
    unsigned m_ = 1;
    std::uint64_t order_ = 2;
    std::vector<std::uint64_t> modulus_;   // c_0..c_m, monic
    std::vector<std::uint64_t> reduction_; // x^m = reduction_ (length m)
    std::uint64_t primitive_ = 0;
};

// Runtime field of order q used for matrix/hypergraph scalar arithmetic.
// Prime q works directly mod q; prime powers go through an ExtensionField
// with elements indexed by coefficient vectors.
class Fq {
  public:
    explicit Fq(std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint64_t characteristic() const { return p_; }
    bool prime() const { return ext_ == nullptr; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t inv(std::uint64_t a) const;

  private:
    std::uint64_t q_ = 2;
    std::uint64_t p_ = 2;
    std::shared_ptr<const ExtensionField> ext_;  // null for prime q
};

struct FieldVector {
    std::uint64_t q = 2;
    std::vector<std::uint64_t> entries;
};

// Gaussian-elimination rank over F_q.  All vectors must share q and length.
unsigned rank(std::span<const FieldVector> vectors);
bool is_independent(std::span<const FieldVector> vectors);

// Rank of the t x n matrix given by columns[i] = length-t entry vectors.
unsigned rank_columns(const Fq& field, std::span<const std::vector<std::uint64_t>> columns);

}  // namespace girthlab::algebra
