#include "girthlab/codes.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "girthlab/common.hpp"
#include "girthlab/numbers.hpp"

namespace girthlab::codes {

std::vector<std::uint64_t> ParityCheckMatrix::column(unsigned col) const {
    std::vector<std::uint64_t> c(t);
    for (unsigned r = 0; r < t; ++r) c[r] = at(r, col);
    return c;
}

namespace {

// rank of the submatrix given by a column subset, elimination scratch reused
unsigned subset_rank(const ParityCheckMatrix& H, const algebra::Fq& field,
                     std::span<const unsigned> cols,
                     std::vector<std::vector<std::uint64_t>>& scratch) {
    scratch.clear();
    for (unsigned c : cols) scratch.push_back(H.column(c));
    unsigned r = 0;
    const std::size_t t = H.t;
    for (std::size_t col = 0; col < t && r < scratch.size(); ++col) {
        std::size_t piv = r;
        while (piv < scratch.size() && scratch[piv][col] == 0) ++piv;
        if (piv == scratch.size()) continue;
        std::swap(scratch[r], scratch[piv]);
        std::uint64_t inv = field.inv(scratch[r][col]);
        for (std::size_t j = col; j < t; ++j) scratch[r][j] = field.mul(scratch[r][j], inv);
        for (std::size_t i = r + 1; i < scratch.size(); ++i) {
            if (scratch[i][col] == 0) continue;
            std::uint64_t f = scratch[i][col];
            for (std::size_t j = col; j < t; ++j)
                scratch[i][j] = field.sub(scratch[i][j], field.mul(f, scratch[r][j]));
        }
        ++r;
    }
    return r;
}

double binom(unsigned n, unsigned k) {
    double r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

bool next_combination(std::vector<unsigned>& comb, unsigned n) {
    const unsigned k = static_cast<unsigned>(comb.size());
    unsigned i = k;
    while (i-- > 0) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (unsigned j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// index -> d-th lexicographic combination of [0,n)
std::vector<unsigned> unrank_combination(std::uint64_t rank, unsigned n, unsigned k) {
    std::vector<unsigned> comb(k);
    unsigned cur = 0;
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned v = cur;; ++v) {
            double count = binom(n - v - 1, k - i - 1);
            if (rank < count) {
                comb[i] = v;
                cur = v + 1;
                break;
            }
            rank -= static_cast<std::uint64_t>(count);
        }
    }
    return comb;
}

std::optional<std::vector<unsigned>> find_dependent_subset_serial(
    const ParityCheckMatrix& H, const algebra::Fq& field, unsigned d) {
    std::vector<unsigned> comb(d);
    for (unsigned i = 0; i < d; ++i) comb[i] = i;
    std::vector<std::vector<std::uint64_t>> scratch;
    do {
        if (subset_rank(H, field, comb, scratch) < d) return comb;
    } while (next_combination(comb, H.n));
    return std::nullopt;
}

std::optional<std::vector<unsigned>> find_dependent_subset_parallel(
    const ParityCheckMatrix& H, const algebra::Fq& field, unsigned d, int threads) {
    const double total_d = binom(H.n, d);
    const std::uint64_t total = static_cast<std::uint64_t>(total_d);
    std::uint64_t first_hit = total;
#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads())
    {
        std::vector<std::vector<std::uint64_t>> scratch;
        const int nt = omp_get_num_threads();
        const int tid = omp_get_thread_num();
        const std::uint64_t chunk = (total + nt - 1) / nt;
        const std::uint64_t lo = tid * chunk;
        const std::uint64_t hi = std::min(total, lo + chunk);
        if (lo < hi) {
            std::vector<unsigned> comb = unrank_combination(lo, H.n, d);
            for (std::uint64_t r = lo; r < hi; ++r) {
                std::uint64_t cut;
#pragma omp atomic read
                cut = first_hit;
                if (r >= cut) break;
                if (subset_rank(H, field, comb, scratch) < d) {
#pragma omp critical
                    {
                        if (r < first_hit) first_hit = r;
                    }
                    break;
                }
                next_combination(comb, H.n);
            }
        }
    }
    if (first_hit == total) return std::nullopt;
    return unrank_combination(first_hit, H.n, d);
}

DistanceResult min_distance_impl(const ParityCheckMatrix& H, unsigned cap, std::uint64_t budget,
                                 int threads, bool parallel) {
    if (budget == 0) budget = default_budget();
    if (cap == 0 || cap > H.n) cap = H.n;
    double checks = 0;
    for (unsigned d = 1; d <= cap; ++d) checks += binom(H.n, d) * d * d;
    if (checks > static_cast<double>(budget) * 64.0)
        throw budget_error("min_distance: subset scan exceeds budget");
    algebra::Fq field(H.q);
    for (unsigned d = 1; d <= cap; ++d) {
        auto hit = parallel ? find_dependent_subset_parallel(H, field, d, threads)
                            : find_dependent_subset_serial(H, field, d);
        if (hit) return {d, true, std::move(*hit)};
    }
    return {cap + 1, false, {}};
}

}  // namespace

DistanceResult min_distance(const ParityCheckMatrix& H, unsigned cap, std::uint64_t budget,
                            int threads) {
    return min_distance_impl(H, cap, budget, threads, true);
}

DistanceResult min_distance_serial(const ParityCheckMatrix& H, unsigned cap, std::uint64_t budget) {
    return min_distance_impl(H, cap, budget, 1, false);
}

namespace {

// F_{q^m} columns in the Example layout: alpha^0, ..., alpha^{q^m-2}, zero.
std::vector<std::uint64_t> example_column_order(const algebra::ExtensionField& F) {
    std::vector<std::uint64_t> cols;
    cols.reserve(F.order());
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i + 1 < F.order(); ++i) {
        cols.push_back(x);
        x = F.mul(x, F.primitive_element());
    }
    cols.push_back(0);
    return cols;
}

// expansion rows of an element: coefficient vector, highest coefficient first
void append_expansion_rows(std::vector<std::vector<std::uint64_t>>& rows,
                           const algebra::ExtensionField& F,
                           std::span<const std::uint64_t> elements) {
    const unsigned m = F.degree();
    std::size_t base = rows.size();
    for (unsigned i = 0; i < m; ++i) rows.emplace_back(elements.size(), 0);
    for (std::size_t c = 0; c < elements.size(); ++c) {
        auto coeffs = F.coeffs(elements[c]);  // c_0..c_{m-1}
        for (unsigned i = 0; i < m; ++i) rows[base + i][c] = coeffs[m - 1 - i];
    }
}

}  // namespace

ParityCheckMatrix dumer_d5(std::uint64_t q, unsigned m) {
    if (!numbers::is_prime(q) || q == 2)
        throw std::invalid_argument("dumer_d5: q must be an odd prime");
    if (m != 2 && m != 3) throw std::invalid_argument("dumer_d5: unsupported m (need 2 or 3)");
    // The (5,2) instance pins the published modulus so the matrix fragments
    // and P row reproduce bit-exactly.
    std::optional<std::vector<std::uint64_t>> modulus;
    if (q == 5 && m == 2) modulus = std::vector<std::uint64_t>{3, 2, 1};  // x^2 + 2x + 3
    auto F = algebra::ExtensionField::build(q, m, modulus);

    auto cols = example_column_order(F);
    std::vector<std::vector<std::uint64_t>> rows;
    rows.emplace_back(cols.size(), 1);  // surviving row of the constant block
    append_expansion_rows(rows, F, cols);
    std::vector<std::uint64_t> squares(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) squares[i] = F.mul(cols[i], cols[i]);
    append_expansion_rows(rows, F, squares);
    // norm row: i^{1+q+...+q^{m-1}} lands in F_q
    std::vector<std::uint64_t> norm_row(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::uint64_t nv = F.norm_to_subdegree(cols[i], 1);
        auto c = F.coeffs(nv);
        for (unsigned j = 1; j < F.degree(); ++j)
            if (c[j] != 0) throw std::logic_error("dumer_d5: norm left the base field");
        norm_row[i] = c[0];
    }
    rows.push_back(std::move(norm_row));

    ParityCheckMatrix H;
    H.q = q;
    H.t = static_cast<unsigned>(rows.size());
    H.n = static_cast<unsigned>(cols.size());
    H.provenance = Provenance::dumer_d5;
    H.entries.resize(std::size_t(H.t) * H.n);
    for (unsigned r = 0; r < H.t; ++r)
        for (unsigned c = 0; c < H.n; ++c) H.at(r, c) = rows[r][c];
    if (H.t != 2 * m + (m + 2) / 3 + 1)
        throw std::logic_error("dumer_d5: unexpected row count");
    return H;
}

ParityCheckMatrix bch_d6(std::uint64_t q, unsigned m) {
    if (!numbers::is_prime(q) || q < 7)
        throw std::invalid_argument("bch_d6: q must be an odd prime >= 7");
    if (m < 1 || m > 2) throw std::invalid_argument("bch_d6: unsupported m (need 1 or 2)");
    auto F = algebra::ExtensionField::build(q, m);
    // nonzero elements only (narrow-sense layout)
    std::vector<std::uint64_t> cols;
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i + 1 < F.order(); ++i) {
        cols.push_back(x);
        x = F.mul(x, F.primitive_element());
    }
    std::vector<std::vector<std::uint64_t>> rows;
    for (unsigned j = 1; j <= 5; ++j) {
        std::vector<std::uint64_t> powers(cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) powers[i] = F.pow(cols[i], j);
        append_expansion_rows(rows, F, powers);
    }
    ParityCheckMatrix H;
    H.q = q;
    H.t = static_cast<unsigned>(rows.size());
    H.n = static_cast<unsigned>(cols.size());
    H.provenance = Provenance::bch_d6;
    H.entries.resize(std::size_t(H.t) * H.n);
    for (unsigned r = 0; r < H.t; ++r)
        for (unsigned c = 0; c < H.n; ++c) H.at(r, c) = rows[r][c];
    return remove_redundant_rows(H);
}

ParityCheckMatrix rs_parity(std::uint64_t q, unsigned d) {
    if (!numbers::is_prime(q)) throw std::invalid_argument("rs_parity: q must be prime");
    if (d < 2 || d > q) throw std::invalid_argument("rs_parity: need 2 <= d <= q");
    ParityCheckMatrix H;
    H.q = q;
    H.t = d - 1;
    H.n = static_cast<unsigned>(q);
    H.provenance = Provenance::rs;
    H.entries.resize(std::size_t(H.t) * H.n);
    for (unsigned c = 0; c < H.n; ++c) {
        std::uint64_t v = 1;
        for (unsigned r = 0; r < H.t; ++r) {
            H.at(r, c) = v;
            v = mulmod(v, c, q);
        }
    }
    return H;
}

unsigned rank_of(const ParityCheckMatrix& H) {
    algebra::Fq field(H.q);
    std::vector<std::vector<std::uint64_t>> rows(H.t);
    for (unsigned r = 0; r < H.t; ++r) {
        rows[r].resize(H.n);
        for (unsigned c = 0; c < H.n; ++c) rows[r][c] = H.at(r, c);
    }
    return algebra::rank_columns(field, rows);
}

ParityCheckMatrix remove_redundant_rows(const ParityCheckMatrix& H) {
    algebra::Fq field(H.q);
    std::vector<std::vector<std::uint64_t>> kept;
    std::vector<unsigned> kept_idx;
    for (unsigned r = 0; r < H.t; ++r) {
        std::vector<std::vector<std::uint64_t>> trial(kept);
        std::vector<std::uint64_t> row(H.n);
        for (unsigned c = 0; c < H.n; ++c) row[c] = H.at(r, c);
        trial.push_back(row);
        if (algebra::rank_columns(field, trial) > kept.size()) {
            kept = std::move(trial);
            kept_idx.push_back(r);
        }
    }
    ParityCheckMatrix out;
    out.q = H.q;
    out.t = static_cast<unsigned>(kept.size());
    out.n = H.n;
    out.provenance = H.provenance;
    out.entries.resize(std::size_t(out.t) * out.n);
    for (unsigned r = 0; r < out.t; ++r)
        for (unsigned c = 0; c < out.n; ++c) out.at(r, c) = kept[r][c];
    // dropped rows must lie in the span of the kept ones
    if (rank_of(out) != rank_of(H)) throw std::logic_error("remove_redundant_rows: span changed");
    return out;
}

std::vector<SpherePackingRow> sphere_packing_report(std::span<const CodeParams> codes) {
    std::vector<SpherePackingRow> rows;
    for (const auto& c : codes) {
        double gap = static_cast<double>(c.n) - static_cast<double>(c.k) -
                     2.0 * std::log(static_cast<double>(c.n)) / std::log(static_cast<double>(c.q));
        rows.push_back({c, gap});
    }
    return rows;
}

std::string sphere_packing_text(std::span<const SpherePackingRow> rows) {
    std::ostringstream os;
    os << "label\tq\tn\tk\td\tgap=n-k-2log_q(n)\n";
    for (const auto& r : rows) {
        os << r.code.label << '\t' << r.code.q << '\t' << r.code.n << '\t' << r.code.k << '\t';
        if (r.code.d_exact)
            os << *r.code.d_exact;
        else
            os << ">=" << r.code.d_lower;
        os << '\t' << r.gap << '\n';
    }
    return os.str();
}

std::string to_text(const ParityCheckMatrix& H) {
    std::ostringstream os;
    os << H.q << ' ' << H.t << ' ' << H.n << '\n';
    for (unsigned r = 0; r < H.t; ++r) {
        for (unsigned c = 0; c < H.n; ++c) {
            if (c) os << ' ';
            os << H.at(r, c);
        }
        os << '\n';
    }
    return os.str();
}

ParityCheckMatrix from_text(const std::string& text) {
    std::istringstream is(text);
    ParityCheckMatrix H;
    if (!(is >> H.q >> H.t >> H.n)) throw std::invalid_argument("matrix file: bad header");
    H.entries.resize(std::size_t(H.t) * H.n);
    for (unsigned r = 0; r < H.t; ++r)
        for (unsigned c = 0; c < H.n; ++c) {
            std::uint64_t v;
            if (!(is >> v)) throw std::invalid_argument("matrix file: truncated");
            if (v >= H.q) throw std::invalid_argument("matrix file: entry out of range");
            H.at(r, c) = v;
        }
    H.provenance = Provenance::file;
    return H;
}

}  // namespace girthlab::codes
