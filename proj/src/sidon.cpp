#include "girthlab/sidon.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "girthlab/algebra.hpp"
#include "girthlab/common.hpp"

namespace girthlab::sidon {

Lambda::Lambda(std::vector<std::int64_t> e) : entries(std::move(e)) {
    if (entries.empty()) throw std::invalid_argument("Lambda: empty");
    if (entries.front() < 1) throw std::invalid_argument("Lambda: entries must be positive");
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i] <= entries[i - 1])
            throw std::invalid_argument("Lambda: entries must be strictly increasing");
}

SidonResult is_sidon(std::span<const std::int64_t> set, std::uint64_t modulus,
                     std::uint64_t budget) {
    const std::size_t n = set.size();
    if (n * n > budget) throw budget_error("is_sidon: |set|^2 exceeds budget");
    auto reduce = [&](std::int64_t v) -> std::int64_t {
        if (modulus == 0) return v;
        std::int64_t m = static_cast<std::int64_t>(modulus);
        std::int64_t r = v % m;
        return r < 0 ? r + m : r;
    };
    {
        std::set<std::int64_t> distinct;
        for (auto v : set) {
            if (!distinct.insert(reduce(v)).second)
                throw std::invalid_argument("is_sidon: elements must be distinct");
        }
    }
    // a1+a2 = a3+a4 nontrivially <=> two different unordered pairs (with
    // repetition) share a sum
    std::map<std::int64_t, std::pair<std::size_t, std::size_t>> sums;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::int64_t s = reduce(set[i] + set[j]);
            auto [it, fresh] = sums.emplace(s, std::make_pair(i, j));
            if (!fresh) {
                auto [a, b] = it->second;
                return {false, SidonWitness{set[a], set[b], set[i], set[j]}};
            }
        }
    }
    return {true, std::nullopt};
}

namespace {

// pi over the ordered tuple (i1,i2,i3,i4), 0-based indices
std::int64_t cyclic_product(const Lambda& l, int i1, int i2, int i3, int i4) {
    const auto& e = l.entries;
    return (e[i2] - e[i1]) * (e[i3] - e[i2]) * (e[i4] - e[i3]) * (e[i1] - e[i4]);
}

}  // namespace

std::vector<std::uint64_t> square_free_products(const Lambda& lambda) {
    const int r = static_cast<int>(lambda.size());
    std::set<std::uint64_t> parts;
    for (int i1 = 0; i1 < r; ++i1)
        for (int i2 = 0; i2 < r; ++i2)
            for (int i3 = 0; i3 < r; ++i3)
                for (int i4 = 0; i4 < r; ++i4) {
                    if (i1 == i2 || i2 == i3 || i3 == i4 || i4 == i1) continue;
                    std::int64_t pi = cyclic_product(lambda, i1, i2, i3, i4);
                    if (pi <= 0) continue;
                    auto sp = numbers::squarefree_split(static_cast<std::uint64_t>(pi));
                    if (sp.s > 1) parts.insert(sp.s);
                }
    return {parts.begin(), parts.end()};
}

bool AdmissibleClass::contains(std::uint64_t x) const {
    return std::binary_search(residues.begin(), residues.end(), x % modulus);
}

std::optional<AdmissibleClass> admissible_class(std::span<const std::uint64_t> S,
                                                int witness_count) {
    if (S.empty()) return AdmissibleClass{1, {0}, {}};
    std::uint64_t M = 1;
    for (auto s : S) {
        std::uint64_t g = numbers::gcd(M, 4 * s);
        if (M / g > 1'000'000 / (4 * s)) throw budget_error("admissible_class: modulus cap exceeded");
        M = M / g * (4 * s);
    }
    AdmissibleClass cls;
    cls.modulus = M;
    for (std::uint64_t a = 1; a < M; ++a) {
        if (numbers::gcd(a, M) != 1) continue;
        bool ok = true;
        for (auto s : S) {
            if (algebra::kronecker(static_cast<std::int64_t>(s), static_cast<std::int64_t>(a)) != -1) {
                ok = false;
                break;
            }
        }
        if (ok) cls.residues.push_back(a);
    }
    if (cls.residues.empty()) return std::nullopt;
    // witness primes: smallest primes in the class, legendre re-verified
    const std::uint64_t scan_cap = std::max<std::uint64_t>(1'000'000, 200 * M);
    for (std::uint64_t c = 2; c < scan_cap; ++c) {
        if (static_cast<int>(cls.witness_primes.size()) >= witness_count) break;
        if (!cls.contains(c) || !numbers::is_prime(c)) continue;
        for (auto s : S)
            if (algebra::legendre(static_cast<std::int64_t>(s), c) != -1)
                throw std::logic_error("admissible_class: witness prime failed legendre re-check");
        cls.witness_primes.push_back(c);
    }
    return cls;
}

std::optional<SquareProductsCertificate> has_square_products_property(const Lambda& lambda,
                                                                      int witness_count) {
    auto sr = is_sidon(lambda.entries);
    if (!sr.sidon) throw std::invalid_argument("has_square_products_property: lambda is not Sidon");
    auto S = square_free_products(lambda);
    auto cls = admissible_class(S, witness_count);
    if (!cls) return std::nullopt;
    return SquareProductsCertificate{lambda, std::move(S), std::move(*cls)};
}

namespace {

bool prefix_is_sidon(const std::vector<std::int64_t>& v) {
    // incremental check: all pair sums distinct
    std::set<std::int64_t> sums;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i; j < v.size(); ++j)
            if (!sums.insert(v[i] + v[j]).second) return false;
    return true;
}

bool dfs_search(std::vector<std::int64_t>& acc, int r, std::int64_t max_entry) {
    if (static_cast<int>(acc.size()) == r) {
        Lambda l(acc);
        auto S = square_free_products(l);
        try {
            return admissible_class(S).has_value();
        } catch (const budget_error&) {
            return false;  // class modulus beyond the scan cap: not certifiable
        }
    }
    std::int64_t lo = acc.empty() ? 1 : acc.back() + 1;
    for (std::int64_t v = lo; v <= max_entry; ++v) {
        acc.push_back(v);
        if (prefix_is_sidon(acc) && dfs_search(acc, r, max_entry)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

std::optional<Lambda> search_square_products_sidon(int r, std::int64_t max_entry,
                                                   std::span<const std::int64_t> prefix) {
    if (r < 1) throw std::invalid_argument("search_square_products_sidon: r must be positive");
    std::vector<std::int64_t> acc(prefix.begin(), prefix.end());
    if (!prefix.empty() && !prefix_is_sidon(acc))
        throw std::invalid_argument("search_square_products_sidon: prefix is not Sidon");
    if (!dfs_search(acc, r, max_entry)) return std::nullopt;
    return Lambda(acc);
}

std::vector<AppendixRow> appendix_table(const Lambda& lambda) {
    const int r = static_cast<int>(lambda.size());
    if (r < 4) return {};
    std::vector<AppendixRow> rows;
    std::vector<int> comb(4);
    for (comb[0] = 0; comb[0] < r - 3; ++comb[0])
        for (comb[1] = comb[0] + 1; comb[1] < r - 2; ++comb[1])
            for (comb[2] = comb[1] + 1; comb[2] < r - 1; ++comb[2])
                for (comb[3] = comb[2] + 1; comb[3] < r; ++comb[3]) {
                    // classify the 24 orderings into orbits under rotation and
                    // reversal; expect one negative orbit and two positive ones
                    std::set<std::vector<int>> seen_orbits;
                    std::vector<std::int64_t> pos_products, neg_products;
                    std::vector<int> perm = comb;
                    std::sort(perm.begin(), perm.end());
                    do {
                        // canonical form of the orbit: lexicographically
                        // smallest among rotations and reflected rotations
                        std::vector<int> canon = perm;
                        std::vector<int> cur = perm;
                        for (int rev = 0; rev < 2; ++rev) {
                            for (int rot = 0; rot < 4; ++rot) {
                                std::rotate(cur.begin(), cur.begin() + 1, cur.end());
                                if (cur < canon) canon = cur;
                            }
                            std::reverse(cur.begin(), cur.end());
                        }
                        if (!seen_orbits.insert(canon).second) continue;
                        std::int64_t pi = cyclic_product(lambda, perm[0], perm[1], perm[2], perm[3]);
                        (pi < 0 ? neg_products : pos_products).push_back(pi);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    if (neg_products.size() != 1 || pos_products.size() != 2)
                        throw std::logic_error("appendix_table: unexpected orbit structure");

                    AppendixRow row;
                    row.index_set = {comb[0] + 1, comb[1] + 1, comb[2] + 1, comb[3] + 1};
                    std::int64_t p1 =
                        cyclic_product(lambda, comb[0], comb[1], comb[3], comb[2]);
                    std::int64_t p2 =
                        cyclic_product(lambda, comb[0], comb[2], comb[1], comb[3]);
                    if (p1 <= 0 || p2 <= 0)
                        throw std::logic_error("appendix_table: displayed orderings not positive");
                    row.product_1 = static_cast<std::uint64_t>(p1);
                    row.product_2 = static_cast<std::uint64_t>(p2);
                    row.factorization_1 = numbers::factorize(row.product_1);
                    row.factorization_2 = numbers::factorize(row.product_2);
                    std::set<std::uint64_t> parts;
                    for (auto prod : {row.product_1, row.product_2}) {
                        auto sp = numbers::squarefree_split(prod);
                        if (sp.s > 1) parts.insert(sp.s);
                    }
                    row.squarefree_parts.assign(parts.begin(), parts.end());
                    rows.push_back(std::move(row));
                }
    return rows;
}

std::string factorization_string(std::span<const std::pair<std::uint64_t, int>> f) {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) os << '*';
        os << f[i].first << '^' << f[i].second;
    }
    return os.str();
}

std::string appendix_csv(std::span<const AppendixRow> rows) {
    std::ostringstream os;
    os << "index_set,product_1,factorization_1,product_2,factorization_2,squarefree_parts\n";
    for (const auto& row : rows) {
        os << '{';
        for (std::size_t i = 0; i < row.index_set.size(); ++i)
            os << (i ? " " : "") << row.index_set[i];
        os << "}," << row.product_1 << ',' << factorization_string(row.factorization_1) << ','
           << row.product_2 << ',' << factorization_string(row.factorization_2) << ',';
        if (row.squarefree_parts.empty()) {
            os << "None";
        } else {
            for (std::size_t i = 0; i < row.squarefree_parts.size(); ++i)
                os << (i ? " " : "") << row.squarefree_parts[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string certificate_json(const SquareProductsCertificate& cert) {
    nlohmann::json j;
    j["lambda"] = cert.lambda.entries;
    j["S"] = cert.S;
    j["class"]["modulus"] = cert.cls.modulus;
    j["class"]["residues"] = cert.cls.residues;
    j["class"]["representative"] = cert.cls.representative();
    j["witness_primes"] = cert.cls.witness_primes;
    return j.dump(2);
}

}  // namespace girthlab::sidon
