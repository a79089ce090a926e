#include "girthlab/hypergraph.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "girthlab/common.hpp"
#include "girthlab/numbers.hpp"

namespace girthlab::hypergraph {

std::string RingDescriptor::to_string() const {
    std::ostringstream os;
    if (kind == Kind::fq_vectors)
        os << "fq_vectors(q=" << q << ",t=" << t << ")";
    else
        os << "fp_pairs(p=" << q << ")";
    return os.str();
}

RingDescriptor RingDescriptor::fq_vectors(std::uint64_t q, unsigned t) {
    return RingDescriptor{Kind::fq_vectors, q, t};
}

RingDescriptor RingDescriptor::fp_pairs(std::uint64_t p) {
    if (!numbers::is_prime(p)) throw std::invalid_argument("fp_pairs: p must be prime");
    return RingDescriptor{Kind::fp_pairs, p, 2};
}

BergeHypergraph BergeHypergraph::build(RingDescriptor ring, std::span<const std::int64_t> lambda,
                                       std::span<const std::uint64_t> a_set,
                                       std::span<const std::uint64_t> rprime) {
    if (lambda.size() < 2) throw std::invalid_argument("build: need r >= 2 parts");
    if (a_set.empty()) throw std::invalid_argument("build: A must be nonempty");
    BergeHypergraph H;
    H.ring_ = ring;
    H.field_ = std::make_shared<const algebra::Fq>(ring.q);
    H.lambda_given_.assign(lambda.begin(), lambda.end());

    for (auto lv : lambda) {
        std::uint64_t scalar;
        if (ring.kind == RingDescriptor::Kind::fp_pairs) {
            std::int64_t r = lv % static_cast<std::int64_t>(ring.q);
            if (r < 0) r += static_cast<std::int64_t>(ring.q);
            scalar = static_cast<std::uint64_t>(r);
        } else {
            if (lv < 0 || static_cast<std::uint64_t>(lv) >= ring.q)
                throw std::invalid_argument("build: lambda entry is not an F_q element code");
            scalar = static_cast<std::uint64_t>(lv);
        }
        if (std::find(H.lambda_.begin(), H.lambda_.end(), scalar) != H.lambda_.end())
            throw std::invalid_argument("build: lambda entries collide under scalar reduction");
        H.lambda_.push_back(scalar);
    }

    std::uint64_t ring_size = 1;
    for (unsigned i = 0; i < ring.t; ++i) {
        if (ring_size > UINT64_MAX / ring.q) throw std::invalid_argument("build: ring too large");
        ring_size *= ring.q;
    }
    for (auto a : a_set) {
        if (a >= ring_size) throw std::invalid_argument("build: A element out of ring range");
        if (!H.a_index_.emplace(a, H.a_.size()).second)
            throw std::invalid_argument("build: duplicate A element");
        H.a_.push_back(a);
    }

    if (rprime.empty()) {
        H.rp_size_ = ring_size;
    } else {
        for (auto x : rprime) {
            if (x >= ring_size) throw std::invalid_argument("build: R' element out of ring range");
            if (!H.rp_index_.emplace(x, H.rp_.size()).second)
                throw std::invalid_argument("build: duplicate R' element");
            H.rp_.push_back(x);
        }
        H.rp_size_ = H.rp_.size();
        // closure: every vertex element of every edge must land in R'
        for (auto x : H.rp_)
            for (auto a : H.a_)
                for (unsigned i = 0; i < H.r(); ++i)
                    if (!H.rp_index_.count(H.edge_vertex_element(x, H.a_index_[a], i)))
                        throw std::invalid_argument("build: R' not closed under x + lambda_i a");
    }
    return H;
}

std::optional<std::uint64_t> BergeHypergraph::rprime_position(std::uint64_t element) const {
    if (rp_.empty()) return element < rp_size_ ? std::optional<std::uint64_t>(element) : std::nullopt;
    auto it = rp_index_.find(element);
    if (it == rp_index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t BergeHypergraph::elem_add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t q = ring_.q;
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < ring_.t; ++i) {
        out += mult * field_->add(a % q, b % q);
        a /= q;
        b /= q;
        mult *= q;
    }
    return out;
}

std::uint64_t BergeHypergraph::elem_sub(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t q = ring_.q;
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < ring_.t; ++i) {
        out += mult * field_->sub(a % q, b % q);
        a /= q;
        b /= q;
        mult *= q;
    }
    return out;
}

std::uint64_t BergeHypergraph::scalar_mul(std::uint64_t scalar, std::uint64_t elem) const {
    const std::uint64_t q = ring_.q;
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < ring_.t; ++i) {
        out += mult * field_->mul(scalar, elem % q);
        elem /= q;
        mult *= q;
    }
    return out;
}

std::uint64_t BergeHypergraph::edge_vertex_element(std::uint64_t x_element, std::size_t a_idx,
                                                   unsigned part) const {
    return elem_add(x_element, scalar_mul(lambda_[part], a_[a_idx]));
}

std::optional<std::size_t> BergeHypergraph::a_index(std::uint64_t element) const {
    auto it = a_index_.find(element);
    if (it == a_index_.end()) return std::nullopt;
    return it->second;
}

bool validate_berge_cycle(const BergeHypergraph& H, const BergeCycle& cycle, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const std::size_t k = cycle.length();
    if (k < 2) return fail("cycle shorter than 2");
    if (cycle.vertices.size() != k) return fail("vertex/edge count mismatch");
    std::set<std::pair<std::uint64_t, unsigned>> vs(cycle.vertices.begin(), cycle.vertices.end());
    if (vs.size() != k) return fail("repeated vertex");
    std::set<std::pair<std::uint64_t, std::uint64_t>> es(cycle.edges.begin(), cycle.edges.end());
    if (es.size() != k) return fail("repeated edge");
    for (const auto& [v, part] : cycle.vertices) {
        if (part >= H.r()) return fail("part out of range");
        if (!H.rprime_position(v)) return fail("vertex element outside R'");
    }
    for (std::size_t l = 0; l < k; ++l) {
        auto [x, ai] = cycle.edges[l];
        if (ai >= H.a_set().size()) return fail("A index out of range");
        if (!H.rprime_position(x)) return fail("edge x outside R'");
        auto member = [&](const std::pair<std::uint64_t, unsigned>& v) {
            return H.edge_vertex_element(x, ai, v.second) == v.first;
        };
        if (!member(cycle.vertices[l])) return fail("v_l not in E_l");
        if (!member(cycle.vertices[(l + 1) % k])) return fail("v_{l+1} not in E_l");
    }
    return true;
}

std::uint64_t parameters_hash(const BergeHypergraph& H) {
    std::ostringstream os;
    os << H.ring().to_string() << "|lambda=";
    for (auto l : H.lambda_given()) os << l << ',';
    os << "|A=";
    for (auto a : H.a_set()) os << a << ',';
    os << "|R'=" << H.rprime_size();
    return fnv1a(os.str());
}

namespace {

// Incidence-graph node ids: vertex nodes are part * |R'| + x_pos in
// [0, r*|R'|); edge nodes follow, x_pos * |A| + a_idx offset by r*|R'|.
struct IncidenceView {
    const BergeHypergraph& H;
    std::uint64_t nv;  // vertex node count
    std::uint64_t ne;  // edge node count

    explicit IncidenceView(const BergeHypergraph& h)
        : H(h), nv(h.vertex_count()), ne(h.edge_count()) {}

    std::uint64_t total() const { return nv + ne; }

    template <typename F>
    void neighbors(std::uint64_t node, F&& visit) const {
        const std::uint64_t rp = H.rprime_size();
        const std::size_t na = H.a_set().size();
        if (node < nv) {
            const unsigned part = static_cast<unsigned>(node / rp);
            const std::uint64_t xpos = node % rp;
            const std::uint64_t w = H.rprime_element(xpos);
            for (std::size_t ai = 0; ai < na; ++ai) {
                // x = w - lambda_part * a
                std::uint64_t x =
                    H.elem_sub(w, H.scalar_mul(H.lambda_scalars()[part], H.a_set()[ai]));
                auto xp = H.rprime_position(x);
                if (xp) visit(nv + *xp * na + ai);
            }
        } else {
            const std::uint64_t e = node - nv;
            const std::uint64_t xpos = e / na;
            const std::size_t ai = static_cast<std::size_t>(e % na);
            const std::uint64_t x = H.rprime_element(xpos);
            for (unsigned part = 0; part < H.r(); ++part) {
                std::uint64_t w = H.edge_vertex_element(x, ai, part);
                auto wp = H.rprime_position(w);
                // closure guarantees membership; guard for full-ring anyway
                if (wp) visit(static_cast<std::uint64_t>(part) * rp + *wp);
            }
        }
    }
};

struct BfsScratch {
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> dist;
    std::vector<std::uint64_t> parent;
    std::vector<std::uint64_t> queue;
    std::uint32_t round = 0;
    std::uint64_t visits = 0;  // popped nodes, for budget accounting
};

// Shortest cycle length <= max_len (in incidence-graph edges) found from
// this root, or UINT32_MAX.  Incidence cycles have even length 2k <=> Berge
// k-cycle.
std::uint32_t bfs_shortest_cycle(const IncidenceView& G, std::uint64_t root,
                                 std::uint32_t max_len, BfsScratch& S,
                                 std::uint64_t* out_u = nullptr,
                                 std::uint64_t* out_v = nullptr) {
    const std::uint64_t n = G.total();
    if (S.stamp.size() != n) {
        S.stamp.assign(n, 0);
        S.dist.assign(n, 0);
        S.parent.assign(n, 0);
        S.round = 0;
    }
    ++S.round;
    const std::uint32_t round = S.round;
    S.queue.clear();
    S.queue.push_back(root);
    S.stamp[root] = round;
    S.dist[root] = 0;
    S.parent[root] = root;
    std::uint32_t best = UINT32_MAX;
    std::size_t head = 0;
    while (head < S.queue.size()) {
        std::uint64_t cur = S.queue[head++];
        ++S.visits;
        std::uint32_t dcur = S.dist[cur];
        // expanding cur can only reveal cycles of length >= 2*dcur
        std::uint32_t bound = std::min(best == UINT32_MAX ? max_len : best - 2, max_len);
        if (2 * dcur > bound) continue;
        G.neighbors(cur, [&](std::uint64_t nb) {
            if (S.stamp[nb] != round) {
                S.stamp[nb] = round;
                S.dist[nb] = dcur + 1;
                S.parent[nb] = cur;
                S.queue.push_back(nb);
                return;
            }
            if (S.parent[cur] == nb) return;
            // non-tree edge: genuine cycle through the lowest common ancestor
            std::uint64_t a = cur, b = nb;
            std::uint32_t da = S.dist[a], db = S.dist[b];
            while (da > db) {
                a = S.parent[a];
                --da;
            }
            while (db > da) {
                b = S.parent[b];
                --db;
            }
            while (a != b) {
                a = S.parent[a];
                b = S.parent[b];
            }
            std::uint32_t actual = S.dist[cur] + S.dist[nb] + 1 - 2 * S.dist[a];
            if (actual <= max_len && actual < best) {
                best = actual;
                if (out_u) *out_u = cur;
                if (out_v) *out_v = nb;
            }
        });
    }
    return best;
}

// Rebuilds the cycle through (u, v) as node lists using the parents of the
// most recent BFS in S.
std::vector<std::uint64_t> extract_cycle_nodes(const BfsScratch& S, std::uint64_t u,
                                               std::uint64_t v) {
    std::vector<std::uint64_t> pu{u}, pv{v};
    std::uint64_t a = u, b = v;
    std::uint32_t da = S.dist[a], db = S.dist[b];
    while (da > db) {
        a = S.parent[a];
        pu.push_back(a);
        --da;
    }
    while (db > da) {
        b = S.parent[b];
        pv.push_back(b);
        --db;
    }
    while (a != b) {
        a = S.parent[a];
        b = S.parent[b];
        pu.push_back(a);
        pv.push_back(b);
    }
    // pu ends at the LCA, pv ends just before it (or both at it)
    std::vector<std::uint64_t> cycle(pu.begin(), pu.end());   // u ... lca
    for (std::size_t i = pv.size() - 1; i-- > 0;) cycle.push_back(pv[i]);  // ... back to v
    return cycle;  // closed by the (u,v) edge
}

BergeCycle cycle_from_nodes(const BergeHypergraph& H, std::span<const std::uint64_t> nodes) {
    const std::uint64_t nv = H.vertex_count();
    const std::uint64_t rp = H.rprime_size();
    const std::size_t na = H.a_set().size();
    // rotate so a vertex node leads
    std::vector<std::uint64_t> seq(nodes.begin(), nodes.end());
    if (seq[0] >= nv) std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    BergeCycle cycle;
    for (std::size_t i = 0; i < seq.size(); i += 2) {
        std::uint64_t vn = seq[i];
        std::uint64_t en = seq[i + 1];
        unsigned part = static_cast<unsigned>(vn / rp);
        cycle.vertices.emplace_back(H.rprime_element(vn % rp), part);
        std::uint64_t e = en - nv;
        cycle.edges.emplace_back(H.rprime_element(e / na), e % na);
    }
    std::string why;
    if (!validate_berge_cycle(H, cycle, &why))
        throw std::logic_error("berge_girth: extracted cycle failed validation: " + why);
    return cycle;
}

GirthCertificate berge_girth_impl(const BergeHypergraph& H, const GirthOptions& opts,
                                  bool parallel) {
    IncidenceView G(H);
    const std::uint64_t nv = G.nv;
    if (opts.cap < 2) throw std::invalid_argument("berge_girth: cap must be >= 2");
    std::uint64_t budget = opts.budget ? opts.budget : default_budget();
    const bool sampled = opts.sample_roots > 0 && opts.sample_roots < nv;

    std::vector<std::uint64_t> roots;
    if (sampled) {
        std::mt19937_64 rng(opts.seed);
        std::set<std::uint64_t> chosen;
        while (chosen.size() < opts.sample_roots) chosen.insert(rng() % nv);
        roots.assign(chosen.begin(), chosen.end());
    } else {
        roots.resize(nv);
        for (std::uint64_t i = 0; i < nv; ++i) roots[i] = i;
    }
    // Berge cycles of length < cap correspond to incidence cycles of length
    // <= 2*(cap-1)
    const std::uint32_t max_len = 2 * (opts.cap - 1);
    std::uint32_t global_best = UINT32_MAX;
    std::uint64_t total_visits = 0;
    bool out_of_budget = false;

    if (parallel) {
#pragma omp parallel num_threads(opts.threads > 0 ? opts.threads : omp_get_max_threads())
        {
            BfsScratch S;
            std::uint32_t local_best = UINT32_MAX;
            std::uint64_t reported = 0;
#pragma omp for schedule(dynamic, 16)
            for (std::size_t i = 0; i < roots.size(); ++i) {
                bool stop;
#pragma omp atomic read
                stop = out_of_budget;
                if (stop) continue;
                std::uint32_t cut;
#pragma omp atomic read
                cut = global_best;
                if (cut <= 4) continue;  // nothing below a Berge 2-cycle exists
                std::uint32_t lim = std::min<std::uint32_t>(
                    max_len, std::min(cut, local_best) == UINT32_MAX
                                 ? max_len
                                 : std::min(cut, local_best) - 2);
                std::uint32_t found = bfs_shortest_cycle(G, roots[i], lim, S);
                if (found < local_best) {
                    local_best = found;
#pragma omp critical
                    {
                        if (found < global_best) global_best = found;
                    }
                }
                if (S.visits - reported > 65536) {
                    std::uint64_t snapshot;
#pragma omp atomic capture
                    snapshot = total_visits += S.visits - reported;
                    reported = S.visits;
                    if (snapshot > budget) {
#pragma omp atomic write
                        out_of_budget = true;
                    }
                }
            }
        }
    } else {
        BfsScratch S;
        for (std::uint64_t root : roots) {
            if (global_best <= 4) break;
            if (S.visits > budget) {
                out_of_budget = true;
                break;
            }
            std::uint32_t lim =
                global_best == UINT32_MAX ? max_len : std::min(max_len, global_best - 2);
            std::uint32_t found = bfs_shortest_cycle(G, root, lim, S);
            if (found < global_best) global_best = found;
        }
    }
    if (out_of_budget)
        throw budget_error("berge_girth: incidence BFS exceeded its visit budget");

    GirthCertificate cert;
    cert.parameters_hash = parameters_hash(H);
    cert.method = sampled ? "bfs-sampled" : "bfs-oracle";
    if (global_best == UINT32_MAX) {
        // exhaustive: no cycle of Berge length < cap through any root.
        // sampled roots prove nothing; report the vacuous at_least 2.
        cert.kind = ClaimKind::at_least;
        cert.g = sampled ? 2 : opts.cap;
        return cert;
    }
    const unsigned girth = global_best / 2;
    // deterministic witness: first root (in root order) achieving the best
    BfsScratch S;
    for (std::uint64_t root : roots) {
        std::uint64_t u = 0, v = 0;
        std::uint32_t found = bfs_shortest_cycle(G, root, global_best, S, &u, &v);
        if (found == global_best) {
            auto nodes = extract_cycle_nodes(S, u, v);
            cert.refutation = cycle_from_nodes(H, nodes);
            break;
        }
    }
    if (!cert.refutation) throw std::logic_error("berge_girth: failed to rebuild witness cycle");
    cert.kind = sampled ? ClaimKind::at_most : ClaimKind::exact;
    cert.g = girth;
    return cert;
}

}  // namespace

GirthCertificate berge_girth(const BergeHypergraph& H, const GirthOptions& opts) {
    return berge_girth_impl(H, opts, true);
}

GirthCertificate berge_girth_serial(const BergeHypergraph& H, const GirthOptions& opts) {
    return berge_girth_impl(H, opts, false);
}

namespace {

// cyclically-adjacent-distinct index tuples of length k over [r]
void for_each_index_tuple(unsigned r, unsigned k, const std::function<void(std::span<const int>)>& f) {
    std::vector<int> tup(k, 0);
    while (true) {
        bool ok = true;
        for (unsigned j = 0; j < k; ++j)
            if (tup[j] == tup[(j + 1) % k]) {
                ok = false;
                break;
            }
        if (ok) f(tup);
        unsigned i = 0;
        while (i < k && ++tup[i] == static_cast<int>(r)) tup[i++] = 0;
        if (i == k) break;
    }
}

struct TupleScanResult {
    bool clean = true;
    std::vector<int> parts;
    std::vector<std::uint64_t> assignment;
};

// Enumerates assignments (a_1..a_k) from A solving the cycle equation of
// `tup` that have no cyclically adjacent equal pair, by meet-in-the-middle
// on the partial sums: left half hashed, right half solved against it.
// `sink` returns true to stop the scan.
void enumerate_clean_solutions(const BergeHypergraph& H, std::span<const int> tup,
                               const std::function<bool(std::span<const std::uint64_t>)>& sink) {
    const unsigned k = static_cast<unsigned>(tup.size());
    const auto& A = H.a_set();
    const auto& field = H.field();
    const auto lambda = H.lambda_scalars();
    std::vector<std::uint64_t> coeff(k);
    for (unsigned j = 0; j < k; ++j)
        coeff[j] = field.sub(lambda[tup[(j + 1) % k]], lambda[tup[j]]);

    const unsigned h1 = k / 2;  // positions [0, h1) hashed, [h1, k) enumerated
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> left;  // sum -> packed indices
    {
        std::vector<std::size_t> idx(h1, 0);
        while (true) {
            std::uint64_t sum = 0;
            std::uint32_t packed = 0;
            for (unsigned j = 0; j < h1; ++j) {
                sum = H.elem_add(sum, H.scalar_mul(coeff[j], A[idx[j]]));
                packed = packed * static_cast<std::uint32_t>(A.size()) +
                         static_cast<std::uint32_t>(idx[j]);
            }
            left[sum].push_back(packed);
            unsigned i = 0;
            while (i < h1 && ++idx[i] == A.size()) idx[i++] = 0;
            if (i == h1) break;
        }
    }
    std::vector<std::size_t> idx(k - h1, 0);
    std::vector<std::uint64_t> vals(k);
    while (true) {
        std::uint64_t sum = 0;
        for (unsigned j = h1; j < k; ++j) {
            vals[j] = A[idx[j - h1]];
            sum = H.elem_add(sum, H.scalar_mul(coeff[j], vals[j]));
        }
        auto it = left.find(H.elem_sub(0, sum));
        if (it != left.end()) {
            for (std::uint32_t packed : it->second) {
                std::uint32_t rem = packed;
                for (unsigned j = h1; j-- > 0;) {
                    vals[j] = A[rem % A.size()];
                    rem /= static_cast<std::uint32_t>(A.size());
                }
                bool adjacent_equal = false;
                for (unsigned j = 0; j < k; ++j)
                    if (vals[j] == vals[(j + 1) % k]) {
                        adjacent_equal = true;
                        break;
                    }
                if (!adjacent_equal && sink(vals)) return;
            }
        }
        unsigned i = 0;
        while (i < k - h1 && ++idx[i] == A.size()) idx[i++] = 0;
        if (i == k - h1) break;
    }
}

// First solution of the cycle equation of `tup` with no cyclically adjacent
// equal pair, if any.
TupleScanResult scan_tuple(const BergeHypergraph& H, std::span<const int> tup) {
    TupleScanResult res;
    enumerate_clean_solutions(H, tup, [&](std::span<const std::uint64_t> vals) {
        res.clean = false;
        res.parts.assign(tup.begin(), tup.end());
        res.assignment.assign(vals.begin(), vals.end());
        return true;
    });
    return res;
}

GirthCertificate algebraic_impl(const BergeHypergraph& H, unsigned g, std::uint64_t budget,
                                int threads, bool parallel) {
    if (g < 3 || g > 6) throw std::invalid_argument("algebraic_girth_certificate: need 3 <= g <= 6");
    budget = budget ? budget : default_budget();
    const unsigned r = H.r();
    // collect tuples for k = 2..g-1 (k = 2 is vacuous: a_1 = a_2 forced by
    // cancellation, which is an adjacent equal pair)
    std::vector<std::vector<int>> tuples;
    double cost = 0;
    const double ring_size = static_cast<double>(H.rprime_size());
    for (unsigned k = 3; k < g; ++k) {
        for_each_index_tuple(r, k, [&](std::span<const int> tup) {
            tuples.emplace_back(tup.begin(), tup.end());
            double na = static_cast<double>(H.a_set().size());
            // meet-in-the-middle halves plus the expected number of matches
            cost += std::pow(na, (k + 1) / 2) + std::pow(na, k) / std::max(1.0, ring_size);
        });
    }
    if (cost > static_cast<double>(budget))
        throw budget_error("algebraic_girth_certificate: tuple scan exceeds budget");

    GirthCertificate cert;
    cert.parameters_hash = parameters_hash(H);
    cert.method = "algebraic";
    std::size_t first_bad = tuples.size();
    if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            std::size_t cut;
#pragma omp atomic read
            cut = first_bad;
            if (i > cut) continue;
            auto res = scan_tuple(H, tuples[i]);
            if (!res.clean) {
#pragma omp critical
                {
                    if (i < first_bad) first_bad = i;
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            if (!scan_tuple(H, tuples[i]).clean) {
                first_bad = i;
                break;
            }
        }
    }
    if (first_bad == tuples.size()) {
        cert.kind = ClaimKind::at_least;
        cert.g = g;
        return cert;
    }
    auto res = scan_tuple(H, tuples[first_bad]);
    cert.kind = ClaimKind::inconclusive;
    cert.g = g;
    cert.offending_parts = res.parts;
    cert.offending_assignment = res.assignment;
    return cert;
}

}  // namespace

GirthCertificate algebraic_girth_certificate(const BergeHypergraph& H, unsigned g,
                                             std::uint64_t budget, int threads) {
    return algebraic_impl(H, g, budget, threads, true);
}

GirthCertificate algebraic_girth_certificate_serial(const BergeHypergraph& H, unsigned g,
                                                    std::uint64_t budget) {
    return algebraic_impl(H, g, budget, 1, false);
}

BergeCycle trivial_cycle(const BergeHypergraph& H, unsigned k) {
    if (H.a_set().size() < 3) throw std::invalid_argument("trivial_cycle: need |A| >= 3");
    if (k != 6 && k != 7) throw std::invalid_argument("trivial_cycle: k must be 6 or 7");
    const auto& A = H.a_set();
    const unsigned r = H.r();
    auto lam = H.lambda_scalars();

    auto try_cycle = [&](const BergeCycle& c) {
        return validate_berge_cycle(H, c);
    };

    if (k == 6) {
        for (unsigned i = 0; i < r; ++i) {
            for (unsigned j = 0; j < r; ++j) {
                if (i == j) continue;
                for (std::size_t ia = 0; ia < A.size(); ++ia)
                    for (std::size_t ib = 0; ib < A.size(); ++ib)
                        for (std::size_t ic = 0; ic < A.size(); ++ic) {
                            if (ia == ib || ib == ic || ia == ic) continue;
                            std::uint64_t a = A[ia], b = A[ib], c = A[ic];
                            for (std::uint64_t x1q = 0; x1q < std::min<std::uint64_t>(H.rprime_size(), 8); ++x1q) {
                                std::uint64_t x1 = H.rprime_element(x1q);
                                auto step = [&](std::uint64_t x, std::uint64_t lamv,
                                                std::uint64_t u, std::uint64_t v) {
                                    return H.elem_add(x, H.scalar_mul(lamv, H.elem_sub(u, v)));
                                };
                                std::uint64_t x2 = step(x1, lam[j], a, b);
                                std::uint64_t x3 = step(x2, lam[i], b, c);
                                std::uint64_t x4 = step(x3, lam[j], c, a);
                                std::uint64_t x5 = step(x4, lam[i], a, b);
                                std::uint64_t x6 = step(x5, lam[j], b, c);
                                BergeCycle cyc;
                                cyc.edges = {{x1, ia}, {x2, ib}, {x3, ic},
                                             {x4, ia}, {x5, ib}, {x6, ic}};
                                auto vx = [&](std::uint64_t x, std::uint64_t aa, unsigned part) {
                                    return std::make_pair(
                                        H.elem_add(x, H.scalar_mul(lam[part], aa)), part);
                                };
                                cyc.vertices = {vx(x1, a, i), vx(x1, a, j), vx(x2, b, i),
                                                vx(x3, c, j), vx(x4, a, i), vx(x5, b, j)};
                                if (try_cycle(cyc)) return cyc;
                            }
                        }
            }
        }
        throw std::runtime_error("trivial_cycle: no valid 6-cycle found");
    }

    // k = 7: three distinct parts lambda, mu, rho and a, b, c from A
    if (r < 3) throw std::invalid_argument("trivial_cycle: k = 7 needs r >= 3");
    for (unsigned il = 0; il < r; ++il)
        for (unsigned im = 0; im < r; ++im)
            for (unsigned ir2 = 0; ir2 < r; ++ir2) {
                if (il == im || im == ir2 || il == ir2) continue;
                for (std::size_t ia = 0; ia < A.size(); ++ia)
                    for (std::size_t ib = 0; ib < A.size(); ++ib)
                        for (std::size_t ic = 0; ic < A.size(); ++ic) {
                            if (ia == ib || ib == ic || ia == ic) continue;
                            std::uint64_t a = A[ia], b = A[ib], c = A[ic];
                            for (std::uint64_t x1q = 0; x1q < std::min<std::uint64_t>(H.rprime_size(), 8); ++x1q) {
                                std::uint64_t x1 = H.rprime_element(x1q);
                                auto step = [&](std::uint64_t x, std::uint64_t lamv,
                                                std::uint64_t u, std::uint64_t v) {
                                    return H.elem_add(x, H.scalar_mul(lamv, H.elem_sub(u, v)));
                                };
                                std::uint64_t x2 = step(x1, lam[im], a, b);
                                std::uint64_t x3 = step(x2, lam[ir2], b, a);
                                std::uint64_t x4 = step(x3, lam[il], a, c);
                                std::uint64_t x5 = step(x4, lam[im], c, a);
                                std::uint64_t x6 = step(x5, lam[ir2], a, b);
                                std::uint64_t x7 = step(x6, lam[im], b, c);
                                BergeCycle cyc;
                                cyc.edges = {{x1, ia}, {x2, ib}, {x3, ia}, {x4, ic},
                                             {x5, ia}, {x6, ib}, {x7, ic}};
                                auto vx = [&](std::uint64_t x, std::uint64_t aa, unsigned part) {
                                    return std::make_pair(
                                        H.elem_add(x, H.scalar_mul(lam[part], aa)), part);
                                };
                                cyc.vertices = {vx(x1, a, il), vx(x1, a, im), vx(x2, b, ir2),
                                                vx(x3, a, il), vx(x4, c, im), vx(x5, a, ir2),
                                                vx(x6, b, im)};
                                if (try_cycle(cyc)) return cyc;
                            }
                        }
            }
    throw std::runtime_error("trivial_cycle: no valid 7-cycle found");
}

std::optional<BergeCycle> find_cycle_of_length(const BergeHypergraph& H, unsigned k,
                                               std::uint64_t budget, int threads) {
    if (k < 3) throw std::invalid_argument("find_cycle_of_length: k must be >= 3");
    budget = budget ? budget : default_budget();
    std::vector<std::vector<int>> tuples;
    double cost = 0;
    for_each_index_tuple(H.r(), k, [&](std::span<const int> tup) {
        tuples.emplace_back(tup.begin(), tup.end());
        double na = static_cast<double>(H.a_set().size());
        cost += std::pow(na, (k + 1) / 2) +
                std::pow(na, k) / std::max(1.0, static_cast<double>(H.rprime_size()));
    });
    if (cost > static_cast<double>(budget))
        throw budget_error("find_cycle_of_length: tuple scan exceeds budget");

    auto lift = [&](std::span<const int> tup,
                    std::span<const std::uint64_t> vals) -> std::optional<BergeCycle> {
        // x_{j+1} = x_j + lambda_{i_{j+1}} (a_j - a_{j+1}); vertex j is
        // x_j + lambda_{i_j} a_j.  Whether the lift validates does not depend
        // on x_1 (shifting x_1 shifts everything), so one choice suffices.
        BergeCycle cyc;
        std::uint64_t x = H.rprime_element(0);
        auto lam = H.lambda_scalars();
        for (unsigned j = 0; j < k; ++j) {
            auto ai = H.a_index(vals[j]);
            cyc.edges.emplace_back(x, *ai);
            cyc.vertices.emplace_back(H.elem_add(x, H.scalar_mul(lam[tup[j]], vals[j])),
                                      static_cast<unsigned>(tup[j]));
            if (j + 1 < k)
                x = H.elem_add(x, H.scalar_mul(lam[tup[j + 1]], H.elem_sub(vals[j], vals[j + 1])));
        }
        if (!validate_berge_cycle(H, cyc)) return std::nullopt;
        return cyc;
    };

    std::size_t first_hit = tuples.size();
    std::vector<std::optional<BergeCycle>> found(tuples.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        std::size_t cut;
#pragma omp atomic read
        cut = first_hit;
        if (i > cut) continue;
        enumerate_clean_solutions(H, tuples[i], [&](std::span<const std::uint64_t> vals) {
            auto cyc = lift(tuples[i], vals);
            if (!cyc) return false;
            found[i] = std::move(cyc);
#pragma omp critical
            {
                if (i < first_hit) first_hit = i;
            }
            return true;
        });
    }
    for (std::size_t i = 0; i < tuples.size(); ++i)
        if (found[i]) return found[i];
    return std::nullopt;
}

Stats stats(const BergeHypergraph& H) {
    Stats s;
    s.vertices = H.vertex_count();
    s.edges = H.edge_count();
    s.exponent = std::log(static_cast<double>(s.edges)) / std::log(static_cast<double>(s.vertices));
    // vertex (w, i) degree = #{a : w - lambda_i a in R'}
    if (H.full_ring()) {
        s.degree_min = s.degree_max = H.a_set().size();
        s.degree_histogram = {{H.a_set().size(), s.vertices}};
    } else {
        std::map<std::uint64_t, std::uint64_t> hist;
        s.degree_min = UINT64_MAX;
        for (unsigned i = 0; i < H.r(); ++i) {
            for (std::uint64_t pos = 0; pos < H.rprime_size(); ++pos) {
                std::uint64_t w = H.rprime_element(pos);
                std::uint64_t deg = 0;
                for (std::size_t ai = 0; ai < H.a_set().size(); ++ai) {
                    std::uint64_t x =
                        H.elem_sub(w, H.scalar_mul(H.lambda_scalars()[i], H.a_set()[ai]));
                    if (H.rprime_position(x)) ++deg;
                }
                ++hist[deg];
                s.degree_min = std::min(s.degree_min, deg);
                s.degree_max = std::max(s.degree_max, deg);
            }
        }
        s.degree_histogram.assign(hist.begin(), hist.end());
    }
    return s;
}

std::string to_text(const BergeHypergraph& H) {
    if (!H.full_ring())
        throw std::invalid_argument("hypergraph to_text: only full-ring hypergraphs serialize");
    std::ostringstream os;
    os << H.r() << ' ' << H.a_set().size() << ' ' << H.rprime_size() << " ring="
       << H.ring().to_string() << '\n';
    os << "lambda=";
    for (std::size_t i = 0; i < H.lambda_given().size(); ++i) {
        if (i) os << ',';
        os << H.lambda_given()[i];
    }
    os << '\n';
    for (auto a : H.a_set()) os << a << '\n';
    return os.str();
}

BergeHypergraph from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("hypergraph file: empty");
    std::istringstream hs(line);
    std::uint64_t r, asize, rpsize;
    std::string ringdesc;
    if (!(hs >> r >> asize >> rpsize >> ringdesc))
        throw std::invalid_argument("hypergraph file: bad header");
    if (ringdesc.rfind("ring=", 0) != 0) throw std::invalid_argument("hypergraph file: bad ring");
    ringdesc = ringdesc.substr(5);
    RingDescriptor ring;
    unsigned long long q = 0;
    unsigned t = 0;
    if (ringdesc.rfind("fq_vectors(q=", 0) == 0) {
        if (std::sscanf(ringdesc.c_str(), "fq_vectors(q=%llu,t=%u)", &q, &t) != 2)
            throw std::invalid_argument("hypergraph file: bad fq_vectors descriptor");
        ring = RingDescriptor::fq_vectors(q, t);
    } else if (ringdesc.rfind("fp_pairs(p=", 0) == 0) {
        if (std::sscanf(ringdesc.c_str(), "fp_pairs(p=%llu)", &q) != 1)
            throw std::invalid_argument("hypergraph file: bad fp_pairs descriptor");
        ring = RingDescriptor::fp_pairs(q);
    } else {
        throw std::invalid_argument("hypergraph file: unknown ring kind");
    }
    if (!std::getline(is, line) || line.rfind("lambda=", 0) != 0)
        throw std::invalid_argument("hypergraph file: missing lambda line");
    std::vector<std::int64_t> lambda;
    {
        std::istringstream ls(line.substr(7));
        std::string tok;
        while (std::getline(ls, tok, ',')) lambda.push_back(std::stoll(tok));
    }
    if (lambda.size() != r) throw std::invalid_argument("hypergraph file: lambda arity mismatch");
    std::vector<std::uint64_t> a_set;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        a_set.push_back(std::stoull(line));
    }
    if (a_set.size() != asize) throw std::invalid_argument("hypergraph file: |A| mismatch");
    auto H = BergeHypergraph::build(ring, lambda, a_set);
    if (H.rprime_size() != rpsize) throw std::invalid_argument("hypergraph file: |R'| mismatch");
    return H;
}

std::string certificate_json(const GirthCertificate& cert) {
    nlohmann::json j;
    switch (cert.kind) {
        case ClaimKind::exact: j["claim"] = {{"kind", "exact"}, {"girth", cert.g}}; break;
        case ClaimKind::at_least: j["claim"] = {{"kind", "at_least"}, {"girth", cert.g}}; break;
        case ClaimKind::at_most: j["claim"] = {{"kind", "at_most"}, {"girth", cert.g}}; break;
        case ClaimKind::inconclusive: j["claim"] = {{"kind", "inconclusive"}, {"girth", cert.g}}; break;
    }
    j["method"] = cert.method;
    j["parameters_hash"] = cert.parameters_hash;
    if (cert.refutation) {
        nlohmann::json jc;
        for (auto& [v, part] : cert.refutation->vertices) jc["vertices"].push_back({v, part});
        for (auto& [x, ai] : cert.refutation->edges) jc["edges"].push_back({x, ai});
        j["refutation"] = jc;
    }
    if (!cert.offending_parts.empty()) {
        j["offending"]["parts"] = cert.offending_parts;
        j["offending"]["assignment"] = cert.offending_assignment;
    }
    return j.dump(2);
}

std::optional<BergeCycle> cycle_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const nlohmann::json* jc = nullptr;
    if (j.contains("refutation"))
        jc = &j["refutation"];
    else if (j.contains("vertices"))
        jc = &j;
    else
        return std::nullopt;
    BergeCycle c;
    for (auto& v : (*jc)["vertices"])
        c.vertices.emplace_back(v[0].get<std::uint64_t>(), v[1].get<unsigned>());
    for (auto& e : (*jc)["edges"])
        c.edges.emplace_back(e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>());
    return c;
}

}  // namespace girthlab::hypergraph
