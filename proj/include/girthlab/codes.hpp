#pragma once

// Parity-check-matrix constructions (distance-5 norm construction, BCH
// distance-6 baseline, Reed-Solomon desk-scale oracle), minimum-distance
// verification via column dependence, and sphere-packing reporting.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "girthlab/algebra.hpp"

namespace girthlab::codes {

enum class Provenance { dumer_d5, bch_d6, rs, file };

struct ParityCheckMatrix {
    std::uint64_t q = 2;
    unsigned t = 0;  // rows
    unsigned n = 0;  // columns
    std::vector<std::uint64_t> entries;  // row-major, t*n values in [0,q)
    Provenance provenance = Provenance::file;

    std::uint64_t at(unsigned row, unsigned col) const { return entries[std::size_t(row) * n + col]; }
    std::uint64_t& at(unsigned row, unsigned col) { return entries[std::size_t(row) * n + col]; }
    std::vector<std::uint64_t> column(unsigned col) const;
};

struct CodeParams {
    unsigned n = 0;
    unsigned k = 0;
    unsigned d_lower = 0;
    std::optional<unsigned> d_exact;
    std::uint64_t q = 2;
    std::string label;
};

struct DistanceResult {
    unsigned value = 0;
    bool exact = false;  // false: "value" is a lower bound (cap exhausted, >= cap+1)
    std::vector<unsigned> dependent_columns;  // witness when exact
};

// Smallest d with some d columns dependent, by exhaustive subset rank checks
// in increasing size; returns {cap+1, false} when all subsets up to cap are
// independent.  Deterministic for any thread count.
DistanceResult min_distance(const ParityCheckMatrix& H, unsigned cap,
                            std::uint64_t budget = 0, int threads = 0);
DistanceResult min_distance_serial(const ParityCheckMatrix& H, unsigned cap,
                                   std::uint64_t budget = 0);

// Norm-row distance-5 construction at length q^m (Example layout: columns
// are powers of the primitive element, zero last; the constant row of the
// first block is dropped; the norm row i^{1+q+...+q^{m-1}} is appended).
// Supported: prime q odd, m in {2, 3}.
ParityCheckMatrix dumer_d5(std::uint64_t q, unsigned m);

// Narrow-sense BCH-style baseline with designed distance 6: rows are the
// F_q-expansions of i^j, j = 1..5, over the q^m - 1 nonzero field elements,
// redundant rows removed.  Supported: prime q >= 7 odd, m in {1, 2}.
ParityCheckMatrix bch_d6(std::uint64_t q, unsigned m);

// (d-1) x q Vandermonde rows x^0..x^{d-2} over all field points: distance
// exactly d (MDS).  Prime q.
ParityCheckMatrix rs_parity(std::uint64_t q, unsigned d);

// Keeps a maximal independent set of rows scanning top-down; verifies that
// every dropped row lies in the span of the kept ones.
ParityCheckMatrix remove_redundant_rows(const ParityCheckMatrix& H);

unsigned rank_of(const ParityCheckMatrix& H);

struct SpherePackingRow {
    CodeParams code;
    double gap;  // n - k - 2 log_q n
};

std::vector<SpherePackingRow> sphere_packing_report(std::span<const CodeParams> codes);
std::string sphere_packing_text(std::span<const SpherePackingRow> rows);

// Line 1: `q t n`; then t lines of n integers in [0, q).
std::string to_text(const ParityCheckMatrix& H);
ParityCheckMatrix from_text(const std::string& text);

}  // namespace girthlab::codes
