#include "girthlab/behrend.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "girthlab/common.hpp"

namespace girthlab::behrend {

namespace {

std::uint64_t resolve_budget(std::uint64_t budget) {
    return budget ? budget : default_budget();
}

// verification cost estimate: sum over members of |B|^k
double verify_cost(std::size_t bsize, std::span<const equations::IntLinearEquation> family) {
    double total = 0;
    for (const auto& eq : family) total += std::pow(static_cast<double>(bsize), eq.arity());
    return total;
}

}  // namespace

VerifyResult verify_solution_free(std::span<const std::uint64_t> B,
                                  std::span<const equations::IntLinearEquation> family,
                                  const equations::RingSpec& ring, std::uint64_t budget,
                                  int threads) {
    budget = resolve_budget(budget);
    if (verify_cost(B.size(), family) > static_cast<double>(budget))
        throw budget_error("verify_solution_free: budget exceeded");
    VerifyResult res{true, std::nullopt, std::nullopt};
    std::size_t first_bad = family.size();
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::size_t cut;
#pragma omp atomic read
        cut = first_bad;
        if (i > cut) continue;
        auto hit = equations::find_nontrivial_serial(family[i], B, ring, budget);
        if (hit) {
#pragma omp critical
            {
                if (i < first_bad) {
                    first_bad = i;
                    res.solution_free = false;
                    res.offending = family[i];
                    res.witness = std::move(hit);
                }
            }
        }
    }
    if (res.solution_free) return res;
    // deterministic report: re-derive the smallest offending member's witness
    res.offending = family[first_bad];
    res.witness = equations::find_nontrivial_serial(family[first_bad], B, ring, budget);
    return res;
}

SolutionFreeSet behrend_digit_set(std::uint64_t n, int C, int l, std::uint64_t budget) {
    if (n == 0) throw std::invalid_argument("behrend_digit_set: n must be positive");
    if (C < 1 || l < 2) throw std::invalid_argument("behrend_digit_set: need C >= 1, l >= 2");
    budget = resolve_budget(budget);
    SolutionFreeSet out;
    out.bound = n;
    out.C = C;
    out.l = l;
    out.method = Method::digit_sphere;

    auto family = equations::enumerate_family(C, l);
    if (l == 2) {
        // only k = 2 members: nothing beyond equality is expressible
        out.elements.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) out.elements[i] = i;
        out.verified = true;
        return out;
    }

    const std::uint64_t cap_cl = static_cast<std::uint64_t>(C) * static_cast<std::uint64_t>(l);
    std::vector<std::uint64_t> best;
    // digit counts m and a few bases D >= n^(1/m); digits < floor(D/(C*l))
    for (unsigned m = 1; m <= 40; ++m) {
        std::uint64_t D0 = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 / m)));
        while (std::pow(static_cast<double>(D0), m) < static_cast<double>(n)) ++D0;
        for (double scale : {1.0, 1.25, 1.5, 2.0, 3.0, 4.0}) {
            std::uint64_t D = static_cast<std::uint64_t>(std::ceil(D0 * scale));
            std::uint64_t digit_cap = D / cap_cl;
            if (digit_cap < 2) continue;
            // keep the enumeration near-linear in n
            if (std::pow(static_cast<double>(digit_cap), m) > 64.0 * static_cast<double>(n))
                continue;
            // enumerate digit vectors with all digits < digit_cap and value < n
            std::map<std::uint64_t, std::vector<std::uint64_t>> shells;
            std::vector<std::uint64_t> digits(m, 0);
            while (true) {
                unsigned __int128 value = 0;
                std::uint64_t norm = 0;
                for (unsigned i = m; i-- > 0;) {
                    value = value * D + digits[i];
                    norm += digits[i] * digits[i];
                }
                if (value < n) shells[norm].push_back(static_cast<std::uint64_t>(value));
                unsigned i = 0;
                while (i < m && ++digits[i] == digit_cap) digits[i++] = 0;
                if (i == m) break;
            }
            for (auto& [norm, members] : shells) {
                if (members.size() > best.size()) {
                    std::sort(members.begin(), members.end());
                    best = members;
                }
            }
        }
    }
    if (best.empty()) throw std::invalid_argument("behrend_digit_set: construction empty at this n");
    out.elements = std::move(best);

    if (verify_cost(out.elements.size(), family.members) <= static_cast<double>(budget)) {
        auto vr = verify_solution_free(out.elements, family.members, out.ring(), budget);
        if (!vr.solution_free)
            throw std::logic_error("behrend_digit_set: construction failed verification");
        out.verified = true;
    } else {
        out.verified = false;  // sampled spot-checks only
        std::mt19937_64 rng(0xb3f1u);
        for (const auto& eq : family.members) {
            const std::size_t k = eq.arity();
            std::vector<std::uint64_t> vals(k);
            for (int trial = 0; trial < 2000; ++trial) {
                for (auto& v : vals) v = out.elements[rng() % out.elements.size()];
                if (equations::satisfies(eq, vals, out.ring()) &&
                    !equations::is_trivial_solution(eq, vals, out.ring()))
                    throw std::logic_error("behrend_digit_set: sampled check found a violation");
            }
        }
    }
    return out;
}

namespace {

// Does adding x to B create a nontrivial solution of eq mod p?  Enumerates
// assignments of all positions except a pivot with invertible coefficient and
// solves for the pivot value; assignments not using x are skipped (they were
// screened when their elements were added).
bool creates_nontrivial(const equations::IntLinearEquation& eq,
                        std::span<const std::uint64_t> cand,  // sorted, includes x
                        const std::vector<bool>& in_cand, std::uint64_t x, std::uint64_t p) {
    const std::size_t k = eq.arity();
    std::vector<std::uint64_t> cmod(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t r = eq.coeffs[i] % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        cmod[i] = static_cast<std::uint64_t>(r);
    }
    auto nontrivial = [&](std::span<const std::uint64_t> vals) {
        std::uint64_t seen_mask = 0;  // k <= 12 fits in a mask
        for (std::size_t i = 0; i < k; ++i) {
            if (seen_mask & (1ULL << i)) continue;
            std::int64_t sum = 0;
            for (std::size_t j = i; j < k; ++j)
                if (vals[j] == vals[i]) {
                    sum += eq.coeffs[j];
                    seen_mask |= 1ULL << j;
                }
            if (sum != 0) return true;
        }
        return false;
    };

    std::size_t pivot = k;
    for (std::size_t i = k; i-- > 0;)
        if (cmod[i] != 0) {
            pivot = i;
            break;
        }
    std::vector<std::uint64_t> vals(k);
    if (pivot == k) {
        // all coefficients vanish mod p: every assignment satisfies the
        // equation; fall back to full enumeration
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            bool uses_x = false;
            for (std::size_t i = 0; i < k; ++i) {
                vals[i] = cand[idx[i]];
                if (vals[i] == x) uses_x = true;
            }
            if (uses_x && nontrivial(vals)) return true;
            std::size_t i = 0;
            while (i < k && ++idx[i] == cand.size()) idx[i++] = 0;
            if (i == k) return false;
        }
    }
    const std::uint64_t pivot_inv = powmod(cmod[pivot], p - 2, p);
    std::vector<std::size_t> free_pos;
    for (std::size_t i = 0; i < k; ++i)
        if (i != pivot) free_pos.push_back(i);
    std::vector<std::size_t> idx(free_pos.size(), 0);
    while (true) {
        std::uint64_t partial = 0;
        bool uses_x = false;
        for (std::size_t fi = 0; fi < free_pos.size(); ++fi) {
            std::uint64_t v = cand[idx[fi]];
            vals[free_pos[fi]] = v;
            if (v == x) uses_x = true;
            partial = (partial + mulmod(cmod[free_pos[fi]], v, p)) % p;
        }
        std::uint64_t pv = mulmod((p - partial) % p, pivot_inv, p);
        if ((uses_x || pv == x) && pv < in_cand.size() && in_cand[pv]) {
            vals[pivot] = pv;
            if (nontrivial(vals)) return true;
        }
        std::size_t i = 0;
        while (i < free_pos.size() && ++idx[i] == cand.size()) idx[i++] = 0;
        if (i == free_pos.size()) return false;
    }
}

}  // namespace

SolutionFreeSet greedy_avoider(std::uint64_t p, std::span<const equations::IntLinearEquation> family,
                               int C, int l, std::uint64_t budget, int threads) {
    if (p < 2) throw std::invalid_argument("greedy_avoider: modulus must be >= 2");
    budget = resolve_budget(budget);
    auto ring = equations::RingSpec::mod(p);

    std::vector<std::uint64_t> B;
    std::vector<bool> in_cand(p, false);
    std::uint64_t spent = 0;

    for (std::uint64_t x = 0; x < p; ++x) {
        std::vector<std::uint64_t> cand(B);
        cand.push_back(x);
        in_cand[x] = true;
        for (const auto& eq : family)
            spent += static_cast<std::uint64_t>(
                std::pow(static_cast<double>(cand.size()), eq.arity() - 1));
        if (spent > budget) throw budget_error("greedy_avoider: budget exceeded");

        bool clean = true;
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
        for (std::size_t mi = 0; mi < family.size(); ++mi) {
            bool stop;
#pragma omp atomic read
            stop = clean;
            if (!stop) continue;
            if (creates_nontrivial(family[mi], cand, in_cand, x, p)) {
#pragma omp atomic write
                clean = false;
            }
        }
        if (clean)
            B.push_back(x);
        else
            in_cand[x] = false;
    }

    SolutionFreeSet out;
    out.elements = std::move(B);
    out.modulus = p;
    out.C = C;
    out.l = l;
    out.method = Method::greedy;
    auto vr = verify_solution_free(out.elements, family, ring, budget, threads);
    if (!vr.solution_free) throw std::logic_error("greedy_avoider: verification failed");
    out.verified = true;
    return out;
}

SolutionFreeSet intersect_translates(const SolutionFreeSet& B1, const SolutionFreeSet& B2,
                                     std::uint64_t p, std::uint64_t budget) {
    if (B1.modulus != p || B2.modulus != p)
        throw std::invalid_argument("intersect_translates: modulus mismatch");
    if (!B1.verified || !B2.verified)
        throw std::invalid_argument("intersect_translates: both inputs must be verified");
    std::vector<bool> in1(p, false);
    for (auto v : B1.elements) in1[v] = true;
    std::uint64_t best_shift = 0;
    std::size_t best_size = 0;
    for (std::uint64_t m = 0; m < p; ++m) {
        std::size_t size = 0;
        for (auto v : B2.elements)
            if (in1[(v + m) % p]) ++size;
        if (size > best_size) {
            best_size = size;
            best_shift = m;
        }
    }
    SolutionFreeSet out;
    out.modulus = p;
    out.C = std::max(B1.C, B2.C);
    out.l = std::max(B1.l, B2.l);
    out.method = Method::intersected;
    for (auto v : B2.elements) {
        std::uint64_t w = (v + best_shift) % p;
        if (in1[w]) out.elements.push_back(w);
    }
    std::sort(out.elements.begin(), out.elements.end());
    // re-verify against the union family of both parents
    auto f1 = equations::enumerate_family(B1.C, B1.l);
    auto f2 = equations::enumerate_family(B2.C, B2.l);
    std::vector<equations::IntLinearEquation> joint(f1.members);
    joint.insert(joint.end(), f2.members.begin(), f2.members.end());
    auto vr = verify_solution_free(out.elements, joint, equations::RingSpec::mod(p),
                                   resolve_budget(budget));
    if (!vr.solution_free) throw std::logic_error("intersect_translates: verification failed");
    out.verified = true;
    return out;
}

std::string to_text(const SolutionFreeSet& set) {
    std::ostringstream os;
    os << "# modulus=" << set.modulus << " C=" << set.C << " l=" << set.l
       << " verified=" << (set.verified ? "true" : "false") << '\n';
    for (auto v : set.elements) os << v << '\n';
    return os.str();
}

SolutionFreeSet from_text(const std::string& text) {
    SolutionFreeSet set;
    std::istringstream is(text);
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string kv;
            while (hs >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "modulus") set.modulus = std::stoull(val);
                else if (key == "C") set.C = std::stoi(val);
                else if (key == "l") set.l = std::stoi(val);
                else if (key == "verified") set.verified = (val == "true");
            }
            header = true;
            continue;
        }
        set.elements.push_back(std::stoull(line));
    }
    if (!header) throw std::invalid_argument("SolutionFreeSet: missing header line");
    set.method = Method::file;
    std::sort(set.elements.begin(), set.elements.end());
    return set;
}

}  // namespace girthlab::behrend
