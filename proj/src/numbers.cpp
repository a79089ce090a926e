#include "girthlab/numbers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "girthlab/common.hpp"

namespace girthlab::numbers {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic base set for n < 3.3 * 10^24, in particular all of 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d <= 1'000'000 && d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.emplace_back(rest[i], static_cast<int>(j - i));
            i = j;
        }
    }
    return out;
}

SquareFreeSplit squarefree_split(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("squarefree_split: n must be positive");
    SquareFreeSplit sp;
    sp.n = n;
    for (auto [p, e] : factorize(n)) {
        if (e & 1) sp.s *= p;
        for (int i = 0; i < e / 2; ++i) sp.t *= p;
    }
    return sp;
}

namespace {

// Extended gcd on signed 128-bit to stay exact for 64-bit moduli.
__int128 egcd(__int128 a, __int128 b, __int128& x, __int128& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    __int128 x1, y1;
    __int128 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

ResidueClass crt_pair(const ResidueClass& c1, const ResidueClass& c2) {
    __int128 x, y;
    __int128 g = egcd(c1.modulus, c2.modulus, x, y);
    std::uint64_t g64 = static_cast<std::uint64_t>(g);
    std::uint64_t a1 = c1.a % c1.modulus, a2 = c2.a % c2.modulus;
    if (a1 % g64 != a2 % g64) throw std::invalid_argument("crt: inconsistent congruences");
    std::uint64_t l = c1.modulus / g64 * c2.modulus;
    // a = a1 + m1 * ((a2 - a1)/g * x mod (m2/g))
    __int128 diff = (static_cast<__int128>(a2) - static_cast<__int128>(a1)) / g;
    __int128 m2g = c2.modulus / g64;
    __int128 k = (diff % m2g) * (x % m2g) % m2g;
    if (k < 0) k += m2g;
    std::uint64_t a = static_cast<std::uint64_t>((static_cast<__int128>(a1) +
                                                  static_cast<__int128>(c1.modulus) * k) %
                                                 l);
    return ResidueClass{a, l};
}

}  // namespace

ResidueClass crt(std::span<const ResidueClass> classes) {
    if (classes.empty()) throw std::invalid_argument("crt: empty input");
    ResidueClass acc{classes[0].a % classes[0].modulus, classes[0].modulus};
    for (std::size_t i = 1; i < classes.size(); ++i) acc = crt_pair(acc, classes[i]);
    return acc;
}

std::optional<std::uint64_t> prime_in_ap(const ResidueClass& cls, std::uint64_t lo,
                                         std::uint64_t hi, Pick pick) {
    if (gcd(cls.a, cls.modulus) != 1 && !(cls.a == 0 && cls.modulus == 1))
        throw std::invalid_argument("prime_in_ap: residue not coprime to modulus");
    if (lo < 2) lo = 2;
    if (hi < lo) return std::nullopt;
    // first candidate >= lo in the progression
    std::uint64_t first = cls.a;
    if (first < lo) first += ((lo - first + cls.modulus - 1) / cls.modulus) * cls.modulus;
    std::optional<std::uint64_t> found;
    for (std::uint64_t c = first; c <= hi; c += cls.modulus) {
        if (is_prime(c)) {
            if (pick == Pick::smallest) return c;
            found = c;
        }
        if (c > hi - cls.modulus) break;  // overflow guard
    }
    return found;
}

}  // namespace girthlab::numbers
