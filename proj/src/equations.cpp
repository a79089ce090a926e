#include "girthlab/equations.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "girthlab/common.hpp"

namespace girthlab::equations {

std::int64_t IntLinearEquation::coefficient_sum() const {
    std::int64_t s = 0;
    for (auto c : coeffs) s += c;
    return s;
}

IntLinearEquation cycle_equation(std::span<const int> parts,
                                 std::span<const std::int64_t> lambda) {
    const std::size_t k = parts.size();
    if (k < 2) throw std::invalid_argument("cycle_equation: need k >= 2");
    for (std::size_t j = 0; j < k; ++j) {
        if (parts[j] < 1 || static_cast<std::size_t>(parts[j]) > lambda.size())
            throw std::invalid_argument("cycle_equation: part index out of range");
        if (parts[j] == parts[(j + 1) % k])
            throw std::invalid_argument("cycle_equation: cyclically adjacent indices equal");
    }
    IntLinearEquation eq;
    eq.coeffs.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        eq.coeffs[j] = lambda[parts[(j + 1) % k] - 1] - lambda[parts[j] - 1];
    return eq;
}

unsigned genus(const IntLinearEquation& eq) {
    const std::size_t k = eq.arity();
    if (k == 0 || k > 12) throw std::invalid_argument("genus: arity must be in [1,12]");
    if (eq.coefficient_sum() != 0)
        throw std::invalid_argument("genus: coefficient sum must be zero");
    // Enumerate set partitions via restricted growth strings.
    std::vector<unsigned> rg(k, 0);
    unsigned best = 1;
    while (true) {
        unsigned parts = *std::max_element(rg.begin(), rg.end()) + 1;
        if (parts > best) {
            std::vector<std::int64_t> sums(parts, 0);
            for (std::size_t i = 0; i < k; ++i) sums[rg[i]] += eq.coeffs[i];
            if (std::all_of(sums.begin(), sums.end(), [](std::int64_t s) { return s == 0; }))
                best = parts;
        }
        // next restricted growth string
        std::size_t i = k;
        while (i-- > 1) {
            unsigned maxprefix = 0;
            for (std::size_t j = 0; j < i; ++j) maxprefix = std::max(maxprefix, rg[j]);
            if (rg[i] <= maxprefix) {
                ++rg[i];
                std::fill(rg.begin() + static_cast<std::ptrdiff_t>(i) + 1, rg.end(), 0);
                break;
            }
            if (i == 1) return best;
        }
        if (k == 1) return best;
    }
}

bool satisfies(const IntLinearEquation& eq, std::span<const std::uint64_t> values,
               const RingSpec& ring) {
    if (values.size() != eq.arity())
        throw std::invalid_argument("satisfies: assignment arity mismatch");
    if (ring.modular) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::int64_t c = eq.coeffs[i] % static_cast<std::int64_t>(ring.p);
            std::uint64_t cu = c < 0 ? static_cast<std::uint64_t>(c + static_cast<std::int64_t>(ring.p))
                                     : static_cast<std::uint64_t>(c);
            acc = (acc + mulmod(cu, values[i] % ring.p, ring.p)) % ring.p;
        }
        return acc == 0;
    }
    __int128 acc = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        acc += static_cast<__int128>(eq.coeffs[i]) * static_cast<__int128>(values[i]);
    return acc == 0;
}

bool is_trivial_solution(const IntLinearEquation& eq, std::span<const std::uint64_t> values,
                         const RingSpec& ring) {
    (void)ring;  // class sums are evaluated over Z regardless of the value ring
    if (values.size() != eq.arity())
        throw std::invalid_argument("is_trivial_solution: assignment arity mismatch");
    const std::size_t k = values.size();
    std::vector<bool> seen(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (seen[i]) continue;
        std::int64_t sum = 0;
        for (std::size_t j = i; j < k; ++j) {
            if (values[j] == values[i]) {
                sum += eq.coeffs[j];
                seen[j] = true;
            }
        }
        if (sum != 0) return false;
    }
    return true;
}

namespace {

// Nontrivial check without the satisfies() precondition split, for scan loops.
bool nontrivial_classes(const IntLinearEquation& eq, std::span<const std::uint64_t> values) {
    const std::size_t k = values.size();
    std::vector<bool> seen(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (seen[i]) continue;
        std::int64_t sum = 0;
        for (std::size_t j = i; j < k; ++j) {
            if (values[j] == values[i]) {
                sum += eq.coeffs[j];
                seen[j] = true;
            }
        }
        if (sum != 0) return true;
    }
    return false;
}

// Scans assignments with a fixed first index, in lexicographic order of the
// remaining indices; returns the first nontrivial hit.
std::optional<std::vector<std::uint64_t>> scan_with_first(const IntLinearEquation& eq,
                                                          std::span<const std::uint64_t> B,
                                                          const RingSpec& ring,
                                                          std::size_t first_index) {
    const std::size_t k = eq.arity();
    std::vector<std::size_t> idx(k, 0);
    idx[0] = first_index;
    std::vector<std::uint64_t> vals(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) vals[i] = B[idx[i]];
        if (satisfies(eq, vals, ring) && nontrivial_classes(eq, vals)) return vals;
        std::size_t i = k;
        while (i-- > 1) {
            if (++idx[i] < B.size()) break;
            idx[i] = 0;
            if (i == 1) return std::nullopt;
        }
        if (k == 1) return std::nullopt;
    }
}

}  // namespace

std::optional<std::vector<std::uint64_t>> find_nontrivial_serial(const IntLinearEquation& eq,
                                                                 std::span<const std::uint64_t> B,
                                                                 const RingSpec& ring,
                                                                 std::uint64_t budget) {
    const std::size_t k = eq.arity();
    if (k == 0 || B.empty()) return std::nullopt;
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(B.size());
    if (total > static_cast<double>(budget))
        throw budget_error("find_nontrivial: |B|^k exceeds budget");
    for (std::size_t f = 0; f < B.size(); ++f)
        if (auto hit = scan_with_first(eq, B, ring, f)) return hit;
    return std::nullopt;
}

std::optional<std::vector<std::uint64_t>> find_nontrivial(const IntLinearEquation& eq,
                                                          std::span<const std::uint64_t> B,
                                                          const RingSpec& ring,
                                                          std::uint64_t budget, int threads) {
    const std::size_t k = eq.arity();
    if (k == 0 || B.empty()) return std::nullopt;
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(B.size());
    if (total > static_cast<double>(budget))
        throw budget_error("find_nontrivial: |B|^k exceeds budget");

    // Partition by first index.  The witness yielded is the one with the
    // smallest first index (and lexicographically first below it), so the
    // result matches the serial scan regardless of thread count.
    const std::size_t n = B.size();
    std::vector<std::optional<std::vector<std::uint64_t>>> hits(n);
    std::size_t found_at = n;
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads()) \
    shared(hits, found_at)
    for (std::size_t f = 0; f < n; ++f) {
        std::size_t cutoff;
#pragma omp atomic read
        cutoff = found_at;
        if (f > cutoff) continue;
        if (auto hit = scan_with_first(eq, B, ring, f)) {
            hits[f] = std::move(hit);
#pragma omp critical
            {
                if (f < found_at) found_at = f;
            }
        }
    }
    for (std::size_t f = 0; f < n; ++f)
        if (hits[f]) return hits[f];
    return std::nullopt;
}

EquationFamily enumerate_family(int C, int l, std::uint64_t budget) {
    if (C < 1 || l < 2) throw std::invalid_argument("enumerate_family: need C >= 1, l >= 2");
    EquationFamily fam;
    fam.C = C;
    fam.l = l;
    std::set<std::vector<std::int64_t>> seen;  // sorted left multiset, then arity marker
    std::uint64_t count = 0;
    for (int k = 2; k <= l; ++k) {
        // non-decreasing left coefficient tuples of length k-1 (multiset dedup)
        std::vector<std::int64_t> left(static_cast<std::size_t>(k - 1), 1);
        while (true) {
            if (++count > budget) throw budget_error("enumerate_family: budget exceeded");
            std::int64_t rhs = 0;
            for (auto b : left) rhs += b;
            IntLinearEquation eq;
            eq.coeffs = left;
            eq.coeffs.push_back(-rhs);
            if (seen.insert(eq.coeffs).second) fam.members.push_back(std::move(eq));
            // next non-decreasing tuple with entries in [1, C]
            std::size_t i = left.size();
            while (i-- > 0) {
                if (left[i] < C) {
                    ++left[i];
                    for (std::size_t j = i + 1; j < left.size(); ++j) left[j] = left[i];
                    break;
                }
                if (i == 0) goto next_k;
            }
        }
    next_k:;
    }
    return fam;
}

std::string to_text(std::span<const IntLinearEquation> eqs) {
    std::ostringstream os;
    for (const auto& eq : eqs) {
        for (std::size_t i = 0; i < eq.coeffs.size(); ++i) {
            if (i) os << ' ';
            os << eq.coeffs[i];
        }
        os << '\n';
    }
    return os.str();
}

std::vector<IntLinearEquation> from_text(const std::string& text) {
    std::vector<IntLinearEquation> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        IntLinearEquation eq;
        std::int64_t c;
        while (ls >> c) eq.coeffs.push_back(c);
        if (!eq.coeffs.empty()) out.push_back(std::move(eq));
    }
    return out;
}

}  // namespace girthlab::equations
