#include "girthlab/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "girthlab/common.hpp"
#include "girthlab/numbers.hpp"

namespace girthlab::algebra {

int legendre(std::int64_t a, std::uint64_t p) {
    if (p == 2 || !numbers::is_prime(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    std::uint64_t e = powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

int kronecker(std::int64_t s, std::int64_t r) {
    // Standard Kronecker symbol algorithm (handles r <= 0 and even r).
    std::int64_t a = s, n = r;
    if (a == 0) return (n == 1 || n == -1) ? 1 : 0;
    int result = 1;
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // factor out 2s from n; (a/2) = 0 if a even, else +1 for a = +-1 mod 8, -1 otherwise
    while ((n & 1) == 0) {
        n >>= 1;
        if ((a & 1) == 0) return 0;
        std::int64_t am8 = a % 8;
        if (am8 < 0) am8 += 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::optional<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t p) {
    if (p == 2 || !numbers::is_prime(p))
        throw std::invalid_argument("sqrt_mod: p must be an odd prime");
    std::int64_t rr = a % static_cast<std::int64_t>(p);
    if (rr < 0) rr += static_cast<std::int64_t>(p);
    std::uint64_t n = static_cast<std::uint64_t>(rr);
    if (n == 0) return 0;
    if (legendre(static_cast<std::int64_t>(n), p) == -1) return std::nullopt;
    if (p % 4 == 3) {
        std::uint64_t r = powmod(n, (p + 1) / 4, p);
        return r;
    }
    // Tonelli-Shanks.  Deterministic non-residue: smallest z with (z/p) = -1.
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (legendre(static_cast<std::int64_t>(z), p) != -1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(n, q, p);
    std::uint64_t r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = powmod(c, 1ULL << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

namespace {

// Polynomial helpers over F_p; polys are coefficient vectors c_0..c_k.

std::vector<std::uint64_t> poly_mod_reduce(std::vector<std::uint64_t> a,
                                           const std::vector<std::uint64_t>& monic_mod,
                                           std::uint64_t p) {
    const std::size_t m = monic_mod.size() - 1;
    for (std::size_t k = a.size(); k-- > m;) {
        std::uint64_t c = a[k];
        if (c == 0) continue;
        a[k] = 0;
        for (std::size_t j = 0; j < m; ++j) {
            // x^k = x^{k-m} * (x^m); x^m = -(c_0 + ... + c_{m-1} x^{m-1})
            std::uint64_t sub = mulmod(c, monic_mod[j], p);
            std::uint64_t& slot = a[k - m + j];
            slot = (slot + p - sub % p) % p;
        }
    }
    a.resize(m);
    return a;
}

std::vector<std::uint64_t> poly_mulmod(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       const std::vector<std::uint64_t>& monic_mod,
                                       std::uint64_t p) {
    std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    return poly_mod_reduce(std::move(r), monic_mod, p);
}

bool poly_has_root(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    for (std::uint64_t t = 0; t < p; ++t) {
        std::uint64_t v = 0;
        for (std::size_t k = f.size(); k-- > 0;) v = (mulmod(v, t, p) + f[k]) % p;
        if (v == 0) return true;
    }
    return false;
}

// Irreducibility over F_p for degree <= 4: root test plus, for degree 4, a
// scan over monic quadratic factors.
bool poly_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    if (poly_has_root(f, p)) return false;
    if (deg <= 3) return true;
    if (deg == 4) {
        for (std::uint64_t b = 0; b < p; ++b) {
            for (std::uint64_t c = 0; c < p; ++c) {
                // divide f by x^2 + b x + c and check remainder
                std::vector<std::uint64_t> rem(f);
                for (std::size_t k = rem.size(); k-- > 2;) {
                    std::uint64_t coef = rem[k];
                    if (coef == 0) continue;
                    rem[k] = 0;
                    rem[k - 1] = (rem[k - 1] + p - mulmod(coef, b, p) % p) % p;
                    rem[k - 2] = (rem[k - 2] + p - mulmod(coef, c, p) % p) % p;
                }
                if (rem[0] == 0 && rem[1] == 0) return false;
            }
        }
        return true;
    }
    throw std::invalid_argument("poly_irreducible: degree > 4 unsupported");
}

}  // namespace

ExtensionField ExtensionField::build(std::uint64_t p, unsigned m,
                                     std::optional<std::vector<std::uint64_t>> modulus_poly) {
    if (!numbers::is_prime(p)) throw std::invalid_argument("ext_field_build: base must be prime");
    if (m == 0 || m > 4) throw std::invalid_argument("ext_field_build: degree must be in [1,4]");
    ExtensionField F;
    F.p_ = p;
    F.m_ = m;
    F.order_ = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (F.order_ > UINT64_MAX / p) throw std::invalid_argument("ext_field_build: field too large");
        F.order_ *= p;
    }

    if (m == 1) {
        F.modulus_ = {0, 1};
        F.reduction_ = {0};
    } else if (modulus_poly) {
        auto& f = *modulus_poly;
        if (f.size() != m + 1 || f[m] != 1)
            throw std::invalid_argument("ext_field_build: modulus must be monic of degree m");
        for (auto& c : f) c %= p;
        if (!poly_irreducible(f, p))
            throw std::invalid_argument("ext_field_build: supplied modulus is reducible");
        F.modulus_ = f;
    } else {
        // lexicographically first monic irreducible: order by (c_{m-1},...,c_0)
        bool found = false;
        std::vector<std::uint64_t> f(m + 1, 0);
        f[m] = 1;
        std::vector<std::uint64_t> digits(m, 0);  // digits[0] = c_{m-1} ... digits[m-1] = c_0
        while (true) {
            for (unsigned i = 0; i < m; ++i) f[m - 1 - i] = digits[i];
            if (poly_irreducible(f, p)) {
                found = true;
                break;
            }
            unsigned k = m;
            while (k > 0 && digits[k - 1] == p - 1) digits[--k] = 0;
            if (k == 0) break;
            ++digits[k - 1];
        }
        if (!found) throw std::logic_error("ext_field_build: no irreducible polynomial found");
        F.modulus_ = f;
    }
    F.reduction_.assign(F.modulus_.begin(), F.modulus_.begin() + m);

    // lexicographically first primitive element, ordered by coefficient
    // vector (c_{m-1},...,c_0), i.e. by element index
    bool found = false;
    for (std::uint64_t a = 1; a < F.order_; ++a) {
        if (F.element_is_primitive(a)) {
            F.primitive_ = a;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("ext_field_build: no primitive element found");
    return F;
}

std::vector<std::uint64_t> ExtensionField::coeffs(std::uint64_t a) const {
    std::vector<std::uint64_t> c(m_);
    for (unsigned i = 0; i < m_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

std::uint64_t ExtensionField::from_coeffs(std::span<const std::uint64_t> c) const {
    std::uint64_t a = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), m_); i-- > 0;)
        a = a * p_ + c[i] % p_;
    return a;
}

std::uint64_t ExtensionField::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += mult * ((a % p_ + b % p_) % p_);
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

std::uint64_t ExtensionField::sub(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += mult * ((a % p_ + p_ - b % p_) % p_);
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

std::uint64_t ExtensionField::mul(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return mulmod(a, b, p_);
    auto r = poly_mulmod(coeffs(a), coeffs(b), modulus_, p_);
    return from_coeffs(r);
}

std::uint64_t ExtensionField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t ExtensionField::inv(std::uint64_t a) const {
    if (a == 0) throw std::invalid_argument("ExtensionField::inv of zero");
    return pow(a, order_ - 2);
}

std::uint64_t ExtensionField::norm_to_subdegree(std::uint64_t x, unsigned e) const {
    if (e == 0 || m_ % e != 0)
        throw std::invalid_argument("norm_map: subfield degree must divide m");
    if (x == 0) return 0;
    // exponent (q^m - 1)/(q^e - 1) with q = p
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p_;
    return pow(x, (order_ - 1) / (pe - 1));
}

bool ExtensionField::element_is_primitive(std::uint64_t a) const {
    if (a == 0) return false;
    std::uint64_t n = order_ - 1;
    if (pow(a, n) != 1) return false;
    for (auto [prime, e] : numbers::factorize(n)) {
        (void)e;
        if (pow(a, n / prime) == 1) return false;
    }
    return true;
}

Fq::Fq(std::uint64_t q) : q_(q) {
    auto fs = numbers::factorize(q);
    if (q < 2 || fs.size() != 1) throw std::invalid_argument("Fq: order must be a prime power");
    p_ = fs[0].first;
    if (fs[0].second > 1)
        ext_ = std::make_shared<const ExtensionField>(
            ExtensionField::build(p_, static_cast<unsigned>(fs[0].second)));
}

std::uint64_t Fq::add(std::uint64_t a, std::uint64_t b) const {
    return ext_ ? ext_->add(a, b) : (a + b) % q_;
}
std::uint64_t Fq::sub(std::uint64_t a, std::uint64_t b) const {
    return ext_ ? ext_->sub(a, b) : (a + q_ - b % q_) % q_;
}
std::uint64_t Fq::mul(std::uint64_t a, std::uint64_t b) const {
    return ext_ ? ext_->mul(a, b) : mulmod(a, b, q_);
}
std::uint64_t Fq::neg(std::uint64_t a) const { return sub(0, a); }
std::uint64_t Fq::inv(std::uint64_t a) const {
    if (a % q_ == 0) throw std::invalid_argument("Fq::inv of zero");
    return ext_ ? ext_->inv(a) : powmod(a, q_ - 2, q_);
}

unsigned rank_columns(const Fq& field, std::span<const std::vector<std::uint64_t>> columns) {
    if (columns.empty()) return 0;
    const std::size_t t = columns[0].size();
    for (const auto& c : columns)
        if (c.size() != t) throw std::invalid_argument("rank: mixed vector lengths");
    // eliminate on the transpose: rows = columns of the input
    std::vector<std::vector<std::uint64_t>> rows(columns.begin(), columns.end());
    unsigned r = 0;
    for (std::size_t col = 0; col < t && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        std::uint64_t inv = field.inv(rows[r][col]);
        for (std::size_t j = col; j < t; ++j) rows[r][j] = field.mul(rows[r][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            std::uint64_t f = rows[i][col];
            for (std::size_t j = col; j < t; ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[r][j]));
        }
        ++r;
    }
    return r;
}

unsigned rank(std::span<const FieldVector> vectors) {
    if (vectors.empty()) return 0;
    const std::uint64_t q = vectors[0].q;
    std::vector<std::vector<std::uint64_t>> cols;
    cols.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.q != q) throw std::invalid_argument("rank: mixed fields");
        cols.push_back(v.entries);
    }
    Fq field(q);
    return rank_columns(field, cols);
}

bool is_independent(std::span<const FieldVector> vectors) {
    return rank(vectors) == vectors.size();
}

}  // namespace girthlab::algebra
