#pragma once

// End-to-end reproductions: the girth-5 code construction, the girth-6 code
// construction, the square-products construction over F_p x F_p, the
// distance-6 graph, and the appendix table, each with a verified report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "girthlab/behrend.hpp"
#include "girthlab/codes.hpp"
#include "girthlab/equations.hpp"
#include "girthlab/hypergraph.hpp"
#include "girthlab/sidon.hpp"

namespace girthlab::pipelines {

struct ConstructionReport {
    std::string theorem;  // "1.2", "1.3a", "1.3b", "1.4"
    std::map<std::string, std::string> params;
    bool substitute = false;  // desk-scale substitution
    bool paper = false;       // paper-parameter run
    std::uint64_t N = 0;
    std::uint64_t E = 0;
    double exponent = 0;
    double target_exponent = 0;
    unsigned target_girth = 0;
    std::optional<unsigned> girth_exact;
    unsigned girth_lower = 0;  // 0 = none established
    unsigned girth_upper = 0;  // 0 = none established
    bool achieved = false;     // girth_exact or girth_lower meets the target
    std::string verification;  // oracle | algebraic | both | partial
    hypergraph::GirthCertificate lower_cert;
    std::optional<hypergraph::GirthCertificate> upper_cert;
    std::vector<equations::IntLinearEquation> family_checked;  // theorem12 only
    std::optional<codes::SpherePackingRow> sphere_row;         // code-based runs
    std::vector<std::string> notes;
};

std::string report_json(const ConstructionReport& rep);
std::string report_text(const ConstructionReport& rep);

enum class CodeSource { dumer, bch, rs };

struct PipelineOptions {
    int threads = 0;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    // instances whose vertex count is at most this run the exhaustive BFS
    // oracle; larger ones certify algebraically with sampled-BFS upper bounds
    std::uint64_t bfs_vertex_threshold = 120'000;
    std::uint64_t sample_roots = 2'000;
};

// Lexicographically first size-r Sidon set in Z_q (prime q), or nullopt.
std::optional<std::vector<std::int64_t>> sidon_in_zq(std::uint64_t q, int r);

// Girth-5 hypergraph from a distance-5 parity check matrix (columns = A)
// with a size-r Sidon set in F_q; R' = F_q^t.
std::pair<hypergraph::BergeHypergraph, ConstructionReport> theorem13_d5(
    int r, std::uint64_t q, unsigned m, CodeSource source, const PipelineOptions& opts = {});

// Girth-6 analogue from a distance-6 matrix.
std::pair<hypergraph::BergeHypergraph, ConstructionReport> theorem13_d6(
    int r, std::uint64_t q, unsigned m, CodeSource source, const PipelineOptions& opts = {});

enum class BSource { greedy, digit };

struct Theorem12Options {
    int r = 4;
    std::uint64_t p = 0;  // 0: smallest admissible prime >= 2*max_diff(lambda)
    BSource b_source = BSource::greedy;
    std::optional<std::vector<std::int64_t>> lambda_override;  // substitute lambda
    PipelineOptions common;
};

// Square-products construction: B avoiding the reachable equation family,
// A = {(x, x^2)}, R' = F_p^2, girth-5 verified.
std::pair<hypergraph::BergeHypergraph, ConstructionReport> theorem12(const Theorem12Options& opts);

// The equation family the girth-5 argument needs at desk scale: 3-cycle
// coefficient triples, negative-product 4-cycle equations, and the s = 1
// positive-product reductions.
std::vector<equations::IntLinearEquation> theorem12_family(std::span<const std::int64_t> lambda);

// r = 3 graph from a verified distance-6 parity check; girth-6 certified,
// sphere-packing row attached.
std::pair<hypergraph::BergeHypergraph, ConstructionReport> theorem14_graph(
    const codes::ParityCheckMatrix& H_code, const PipelineOptions& opts = {});

struct AppendixDiff {
    struct RowDiff {
        std::vector<int> index_set;
        bool match = false;
        std::string detail;  // empty when matching
    };
    std::vector<RowDiff> rows;
    int matches = 0;
    std::vector<std::string> notes;
};

// Recomputes the 15-row table for (1,35,161,170,251,545) and diffs it against
// the embedded expected values.
AppendixDiff reproduce_appendix();
std::string appendix_diff_text(const AppendixDiff& diff);

const sidon::Lambda& davini_lambda();

}  // namespace girthlab::pipelines
