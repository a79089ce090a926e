#pragma once

// H(A, lambda) construction over F_q^t (with F_q scalars) or F_p x F_p (with
// integer scalars), Berge-girth computation by incidence-graph BFS, the
// algebraic girth certificate, and the trivial long-cycle generators.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "girthlab/algebra.hpp"

namespace girthlab::hypergraph {

struct RingDescriptor {
    enum class Kind { fq_vectors, fp_pairs };
    Kind kind = Kind::fq_vectors;
    std::uint64_t q = 2;  // coordinate field order (the prime p for fp_pairs)
    unsigned t = 1;       // coordinates (2 for fp_pairs)

    std::string to_string() const;
    static RingDescriptor fq_vectors(std::uint64_t q, unsigned t);
    static RingDescriptor fp_pairs(std::uint64_t p);
    bool operator==(const RingDescriptor&) const = default;
};

// Ring elements are encoded as base-q digit vectors packed into uint64.
class BergeHypergraph {
  public:
    // lambda entries are given as integers; for fq_vectors they must already
    // be canonical F_q element codes, for fp_pairs they reduce mod p.  The
    // reduced scalars must be pairwise distinct.  rprime empty = full ring.
    static BergeHypergraph build(RingDescriptor ring, std::span<const std::int64_t> lambda,
                                 std::span<const std::uint64_t> a_set,
                                 std::span<const std::uint64_t> rprime = {});

    const RingDescriptor& ring() const { return ring_; }
    unsigned r() const { return static_cast<unsigned>(lambda_.size()); }
    std::span<const std::uint64_t> lambda_scalars() const { return lambda_; }
    std::span<const std::int64_t> lambda_given() const { return lambda_given_; }
    std::span<const std::uint64_t> a_set() const { return a_; }
    std::uint64_t rprime_size() const { return rp_size_; }
    bool full_ring() const { return rp_.empty(); }
    std::uint64_t rprime_element(std::uint64_t pos) const { return rp_.empty() ? pos : rp_[pos]; }
    // position of an element in R', or nullopt when absent
    std::optional<std::uint64_t> rprime_position(std::uint64_t element) const;

    std::uint64_t vertex_count() const { return rp_size_ * r(); }
    std::uint64_t edge_count() const { return rp_size_ * a_.size(); }

    // element arithmetic
    std::uint64_t elem_add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t elem_sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t scalar_mul(std::uint64_t scalar, std::uint64_t elem) const;

    // vertex of edge e(x, a_idx) in part i
    std::uint64_t edge_vertex_element(std::uint64_t x_element, std::size_t a_idx,
                                      unsigned part) const;
    std::optional<std::size_t> a_index(std::uint64_t element) const;

    const algebra::Fq& field() const { return *field_; }

  private:
    RingDescriptor ring_;
    std::shared_ptr<const algebra::Fq> field_;
    std::vector<std::uint64_t> lambda_;        // reduced scalar codes, distinct
    std::vector<std::int64_t> lambda_given_;   // as supplied
    std::vector<std::uint64_t> a_;             // element codes, distinct
    std::unordered_map<std::uint64_t, std::size_t> a_index_;
    std::vector<std::uint64_t> rp_;            // empty = full ring
    std::unordered_map<std::uint64_t, std::uint64_t> rp_index_;
    std::uint64_t rp_size_ = 0;
};

struct BergeCycle {
    // vertices[l] = (element code, part); edges[l] = (x element code, a index)
    std::vector<std::pair<std::uint64_t, unsigned>> vertices;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::size_t length() const { return edges.size(); }
};

// Independent validator: distinct vertices, distinct edges, and
// {v_l, v_{l+1}} within E_l cyclically, memberships recomputed from scratch.
bool validate_berge_cycle(const BergeHypergraph& H, const BergeCycle& cycle,
                          std::string* why = nullptr);

enum class ClaimKind {
    exact,         // girth is exactly g (exhaustive search below cap)
    at_least,      // no Berge cycle of length < g exists
    at_most,       // a validated cycle of length g exists (sampled search)
    inconclusive,  // certificate could not decide
};

struct GirthCertificate {
    ClaimKind kind = ClaimKind::inconclusive;
    unsigned g = 0;
    std::string method;  // bfs-oracle | bfs-sampled | algebraic
    std::optional<BergeCycle> refutation;
    std::uint64_t parameters_hash = 0;
    // populated for inconclusive algebraic results
    std::vector<int> offending_parts;
    std::vector<std::uint64_t> offending_assignment;
};

struct GirthOptions {
    unsigned cap = 7;           // report ">= cap" when no shorter cycle exists
    std::uint64_t sample_roots = 0;  // 0 = all roots (exhaustive)
    std::uint64_t seed = 0;
    int threads = 0;
    std::uint64_t budget = 0;
};

// BFS over the bipartite incidence graph; a Berge k-cycle is exactly a
// 2k-cycle there.  Exhaustive roots give `exact` (cycle found; the shortest)
// or `at_least cap`; sampled roots give `at_most` when a cycle is found.
GirthCertificate berge_girth(const BergeHypergraph& H, const GirthOptions& opts);
GirthCertificate berge_girth_serial(const BergeHypergraph& H, const GirthOptions& opts);

// Sufficient condition only: certifies girth >= g when every solution of
// every cycle equation with k < g has a cyclically adjacent equal pair.
// Never claims a refutation.
GirthCertificate algebraic_girth_certificate(const BergeHypergraph& H, unsigned g,
                                             std::uint64_t budget = 0, int threads = 0);
GirthCertificate algebraic_girth_certificate_serial(const BergeHypergraph& H, unsigned g,
                                                    std::uint64_t budget = 0);

// The unavoidable patterns: k = 6 alternating two parts, k = 7 per the
// three-part system.  Requires |A| >= 3 (and r >= 3 for k = 7).
BergeCycle trivial_cycle(const BergeHypergraph& H, unsigned k);

// Hunts a Berge k-cycle by enumerating cycle-equation solutions over A and
// lifting them; returns the first solution whose lift validates.
std::optional<BergeCycle> find_cycle_of_length(const BergeHypergraph& H, unsigned k,
                                               std::uint64_t budget = 0, int threads = 0);

struct Stats {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    double exponent = 0;  // log |E| / log N
    std::uint64_t degree_min = 0;
    std::uint64_t degree_max = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> degree_histogram;  // (degree, count)
};

Stats stats(const BergeHypergraph& H);

// header `r |A| |R'| ring=<desc>` + `lambda=...`; A elements one per line;
// edges implicit.  Only full-ring hypergraphs serialize.
std::string to_text(const BergeHypergraph& H);
BergeHypergraph from_text(const std::string& text);

std::string certificate_json(const GirthCertificate& cert);
std::optional<BergeCycle> cycle_from_json(const std::string& text);

std::uint64_t parameters_hash(const BergeHypergraph& H);

}  // namespace girthlab::hypergraph
