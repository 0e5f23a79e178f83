#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgl2reg {

using BigInt = boost::multiprecision::cpp_int;

struct not_unimodular_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class IntMat {
public:
    IntMat() = default;
    explicit IntMat(int r) : r_(r), a_(std::size_t(r) * r, BigInt(0)) {}
    IntMat(int r, const std::vector<long long>& rowmajor) : IntMat(r)
    {
        if (int(rowmajor.size()) != r * r) throw std::invalid_argument("IntMat: wrong number of entries");
        for (int i = 0; i < r * r; ++i) a_[i] = rowmajor[i];
    }
    static IntMat identity(int r)
    {
        IntMat m(r);
        for (int i = 0; i < r; ++i) m(i, i) = 1;
        return m;
    }

    int size() const { return r_; }
    BigInt& operator()(int i, int j) { return a_[std::size_t(i) * r_ + j]; }
    const BigInt& operator()(int i, int j) const { return a_[std::size_t(i) * r_ + j]; }

    friend IntMat operator*(const IntMat& x, const IntMat& y)
    {
        IntMat z(x.r_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.r_; ++k) {
                if (x(i, k) == 0) continue;
                for (int j = 0; j < x.r_; ++j) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend bool operator==(const IntMat&, const IntMat&) = default;

    // Bareiss fraction-free elimination
    BigInt det() const
    {
        std::vector<BigInt> m(a_);
        int n = r_;
        auto at = [&](int i, int j) -> BigInt& { return m[std::size_t(i) * n + j]; };
        BigInt prev = 1;
        int sign = 1;
        for (int k = 0; k + 1 < n; ++k) {
            if (at(k, k) == 0) {
                int p = k + 1;
                while (p < n && at(p, k) == 0) ++p;
                if (p == n) return 0;
                for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
                sign = -sign;
            }
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            prev = at(k, k);
        }
        return sign * at(n - 1, n - 1);
    }

    bool is_upper_unipotent() const { return unipotent(true); }
    bool is_lower_unipotent() const { return unipotent(false); }

    // inverse of a unipotent triangular matrix, exact
    IntMat unipotent_inverse() const
    {
        bool upper = is_upper_unipotent();
        if (!upper && !is_lower_unipotent()) throw std::invalid_argument("unipotent_inverse: not unipotent");
        IntMat t = upper ? *this : transposed();
        IntMat inv = identity(r_);
        for (int j = 0; j < r_; ++j)
            for (int i = j - 1; i >= 0; --i) {
                BigInt acc = 0;
                for (int k = i + 1; k <= j; ++k) acc += t(i, k) * inv(k, j);
                inv(i, j) = -acc;
            }
        return upper ? inv : inv.transposed();
    }

    IntMat transposed() const
    {
        IntMat t(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // conjugation by the antidiagonal permutation: reverse rows and columns
    IntMat flipped() const
    {
        IntMat t(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) t(r_ - 1 - i, r_ - 1 - j) = (*this)(i, j);
        return t;
    }

    std::string str() const
    {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < r_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    bool unipotent(bool upper) const
    {
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) {
                if (i == j && (*this)(i, j) != 1) return false;
                if ((upper ? i > j : i < j) && (*this)(i, j) != 0) return false;
            }
        return true;
    }

    int r_ = 0;
    std::vector<BigInt> a_;
};

enum class CosetFlavor { gamma0, gamma0_minus };

struct CosetRep {
    IntMat n_minus; // lower unipotent
    IntMat n_plus;  // upper unipotent
    long long N = 0;
    CosetFlavor flavor = CosetFlavor::gamma0;
};

namespace detail {
inline long long mod(const BigInt& x, long long N)
{
    BigInt r = x % N;
    if (r < 0) r += N;
    return static_cast<long long>(r);
}

// representative in [-N/2, N/2], tie at N/2 toward +N/2
inline long long centered(long long x, long long N)
{
    long long r = ((x % N) + N) % N;
    if (2 * r > N) r -= N;
    return r;
}

inline long long inv_mod(long long a, long long N)
{
    long long r0 = N, r1 = ((a % N) + N) % N, x0 = 0, x1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
        std::tie(x0, x1) = std::pair(x1, x0 - q * x1);
    }
    if (r0 != 1) return 0;
    return ((x0 % N) + N) % N;
}

using ModMat = std::vector<std::vector<long long>>;

inline ModMat reduce(const IntMat& A, long long N)
{
    int r = A.size();
    ModMat m(r, std::vector<long long>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = mod(A(i, j), N);
    return m;
}

inline long long det_mod(ModMat m, long long N)
{
    // cofactor expansion mod N (blocks are at most 3 x 3)
    int n = int(m.size());
    if (n == 0) return 1 % N;
    if (n == 1) return m[0][0] % N;
    long long acc = 0;
    for (int j = 0; j < n; ++j) {
        ModMat sub;
        for (int i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (int k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        long long term = m[0][j] * det_mod(sub, N) % N;
        acc = (acc + ((j % 2) ? N - term : term)) % N;
    }
    return acc;
}

// bottom-right k x k minors are units mod N for k = 1..r-1
inline bool trailing_minors_units(const ModMat& m, long long N)
{
    int r = int(m.size());
    for (int k = 1; k < r; ++k) {
        ModMat sub(k, std::vector<long long>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = m[r - k + i][r - k + j];
        if (std::gcd(det_mod(sub, N), N) != 1) return false;
    }
    return true;
}

// M mod N with unit trailing minors: lower unipotent L (entries mod N) with M L^{-1} upper triangular mod N
inline ModMat lower_factor(ModMat M, long long N)
{
    int r = int(M.size());
    ModMat Linv(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) Linv[i][i] = 1;
    for (int p = r - 1; p >= 1; --p) {
        long long piv = inv_mod(M[p][p], N);
        for (int j = 0; j < p; ++j) {
            long long f = (N - M[p][j] * piv % N) % N;
            if (f == 0) continue;
            // column j += f * column p, in M and in Linv
            for (int i = 0; i < r; ++i) {
                M[i][j] = (M[i][j] + f * M[i][p]) % N;
                Linv[i][j] = (Linv[i][j] + f * Linv[i][p]) % N;
            }
        }
    }
    // invert the lower unipotent Linv mod N
    ModMat L(r, std::vector<long long>(r, 0));
    for (int j = 0; j < r; ++j) {
        L[j][j] = 1;
        for (int i = j + 1; i < r; ++i) {
            long long acc = 0;
            for (int k = j; k < i; ++k) acc = (acc + Linv[i][k] * L[k][j]) % N;
            L[i][j] = (N - acc) % N;
        }
    }
    return L;
}

// upper unipotent candidates with entries in [-N/2, N/2], by max-norm then lexicographic
template <class Visit>
bool search_upper(int r, long long N, Visit&& visit)
{
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) slots.push_back({i, j});
    long long lo = -(N - 1) / 2, hi = N / 2;
    long long bound = std::max(-lo, hi);
    std::vector<long long> v(slots.size());
    for (long long b = 0; b <= bound; ++b) {
        // all vectors with max |entry| == b, entries in [lo, hi] ∩ [-b, b], lexicographic
        long long a0 = std::max(lo, -b), a1 = std::min(hi, b);
        std::fill(v.begin(), v.end(), a0);
        while (true) {
            bool hits = false;
            for (long long x : v)
                if (std::abs(x) == b) hits = true;
            if (hits) {
                IntMat U = IntMat::identity(r);
                for (std::size_t k = 0; k < slots.size(); ++k) U(slots[k].first, slots[k].second) = v[k];
                if (visit(U)) return true;
            }
            std::size_t k = v.size();
            while (k > 0 && v[k - 1] == a1) {
                v[k - 1] = a0;
                --k;
            }
            if (k == 0) break;
            ++v[k - 1];
        }
        if (slots.empty()) break;
    }
    return false;
}

inline CosetRep decompose_gamma0(const IntMat& A, long long N)
{
    int r = A.size();
    CosetRep rep{IntMat::identity(r), IntMat::identity(r), N, CosetFlavor::gamma0};
    bool found = search_upper(r, N, [&](const IntMat& U) {
        IntMat M = A * U.unipotent_inverse();
        ModMat m = reduce(M, N);
        if (!trailing_minors_units(m, N)) return false;
        ModMat L = lower_factor(m, N);
        IntMat Lm = IntMat::identity(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < i; ++j) Lm(i, j) = centered(L[i][j], N);
        rep.n_minus = Lm;
        rep.n_plus = U;
        return true;
    });
    if (!found) throw std::runtime_error("decompose: no normal form found");
    return rep;
}
} // namespace detail

// membership of A (N- N+)^{-1} in Gamma_0(N) (upper triangular mod N), resp. A (N+ N-)^{-1} lower triangular
inline bool verify(const IntMat& A, const CosetRep& rep)
{
    int r = A.size();
    if (rep.n_minus.size() != r || rep.n_plus.size() != r || rep.N < 1) return false;
    if (!rep.n_minus.is_lower_unipotent() || !rep.n_plus.is_upper_unipotent()) return false;
    IntMat prod = rep.flavor == CosetFlavor::gamma0 ? rep.n_minus * rep.n_plus : rep.n_plus * rep.n_minus;
    IntMat inv = rep.flavor == CosetFlavor::gamma0
                     ? rep.n_plus.unipotent_inverse() * rep.n_minus.unipotent_inverse()
                     : rep.n_minus.unipotent_inverse() * rep.n_plus.unipotent_inverse();
    if (!(prod * inv == IntMat::identity(r))) return false;
    IntMat g = A * inv;
    if (g.det() != 1) return false;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            bool must_vanish = rep.flavor == CosetFlavor::gamma0 ? i > j : i < j;
            if (must_vanish && g(i, j) % rep.N != 0) return false;
        }
    return true;
}

// all off-diagonal entries in [-N/2, N/2]
inline bool within_bound(const CosetRep& rep)
{
    int r = rep.n_plus.size();
    for (const IntMat* m : {&rep.n_minus, &rep.n_plus})
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (i != j && (2 * (*m)(i, j) > rep.N || 2 * (*m)(i, j) < -rep.N)) return false;
    return true;
}

inline CosetRep decompose(const IntMat& A, long long N, CosetFlavor flavor = CosetFlavor::gamma0)
{
    if (N < 2) throw std::invalid_argument("decompose: N must be >= 2");
    if (A.det() != 1) throw not_unimodular_error("decompose: det A != 1");
    if (flavor == CosetFlavor::gamma0) return detail::decompose_gamma0(A, N);
    CosetRep f = detail::decompose_gamma0(A.flipped(), N);
    return {f.n_plus.flipped(), f.n_minus.flipped(), N, CosetFlavor::gamma0_minus};
}

// [SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)
inline long long gamma0_index(long long N)
{
    long long num = N, den = 1, m = N;
    for (long long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            num *= p + 1;
            den *= p;
            while (m % p == 0) m /= p;
        }
    if (m > 1) {
        num *= m + 1;
        den *= m;
    }
    return num / den;
}

struct CosetEnumeration {
    long long count = 0;        // classes of primitive bottom rows mod N up to units
    long long verified = 0;     // classes whose decompose output verifies into the class
    bool injective = false;     // distinct classes received distinct representatives
    std::vector<CosetRep> reps;
};

namespace detail {
// canonical form of a bottom row (c, d) mod N up to unit scalars
inline std::pair<long long, long long> p1_canonical(long long c, long long d, long long N)
{
    std::pair<long long, long long> best{N, N};
    for (long long u = 1; u < N; ++u) {
        if (std::gcd(u, N) != 1) continue;
        std::pair<long long, long long> v{c * u % N, d * u % N};
        best = std::min(best, v);
    }
    if (N == 1) best = {0, 0};
    return best;
}

inline IntMat sl2_with_bottom_row(long long c, long long d, long long N)
{
    long long c0 = c == 0 ? N : c;
    for (long long k = 0;; ++k) {
        long long dd = d + k * N;
        if (std::gcd(c0, dd) != 1) continue;
        // a dd - b c0 = 1
        long long old_r = dd, r = c0, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            long long q = old_r / r;
            std::tie(old_r, r) = std::pair(r, old_r - q * r);
            std::tie(old_s, s) = std::pair(s, old_s - q * s);
            std::tie(old_t, t) = std::pair(t, old_t - q * t);
        }
        // old_s dd + old_t c0 = 1
        return IntMat(2, {old_s, -old_t, c0, dd});
    }
}
} // namespace detail

// Cosets Gamma_0(N)\SL_2(Z) via bottom rows mod N (P^1(Z/N)); each class decomposed and verified.
inline CosetEnumeration enumerate_cosets_r2(long long N)
{
    if (N < 2 || N > 60) throw std::invalid_argument("enumerate_cosets_r2: need 2 <= N <= 60");
    std::set<std::pair<long long, long long>> classes;
    for (long long c = 0; c < N; ++c)
        for (long long d = 0; d < N; ++d)
            if (std::gcd(std::gcd(c, d), N) == 1) classes.insert(detail::p1_canonical(c, d, N));
    CosetEnumeration out;
    out.count = (long long)classes.size();
    std::set<std::pair<long long, long long>> rep_classes;
    std::set<std::string> rep_strings;
    for (auto [c, d] : classes) {
        IntMat g = detail::sl2_with_bottom_row(c, d, N);
        CosetRep rep = decompose(g, N);
        IntMat h = rep.n_minus * rep.n_plus;
        auto cls = detail::p1_canonical(detail::mod(h(1, 0), N), detail::mod(h(1, 1), N), N);
        if (verify(g, rep) && within_bound(rep) && cls == std::pair(c, d)) ++out.verified;
        rep_classes.insert(cls);
        rep_strings.insert(h.str());
        out.reps.push_back(rep);
    }
    out.injective = rep_strings.size() == classes.size() && rep_classes.size() == classes.size();
    return out;
}

// random element of SL_r(Z) from elementary moves, entries bounded by max_entry
inline IntMat random_sl(int r, int max_entry, std::mt19937_64& rng, int moves = 60)
{
    IntMat A = IntMat::identity(r);
    std::uniform_int_distribution<int> pick(0, r - 1), coef(-3, 3);
    for (int m = 0; m < moves; ++m) {
        int i = pick(rng), j = pick(rng), k = coef(rng);
        if (i == j || k == 0) continue;
        IntMat B = A;
        for (int col = 0; col < r; ++col) B(i, col) += k * A(j, col);
        bool ok = true;
        for (int a = 0; a < r && ok; ++a)
            for (int b = 0; b < r; ++b)
                if (abs(B(a, b)) > max_entry) ok = false;
        if (ok) A = B;
    }
    return A;
}

} // namespace pgl2reg
