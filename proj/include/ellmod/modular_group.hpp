#pragma once

/**
 * @file modular_group.hpp
 * @brief Exact arithmetic in SL(2,Z).
 *
 * Matrices are stored row-major, [[a,b],[c,d]], and act on the upper
 * half-plane on the left by z -> (az+b)/(cz+d). With this convention
 * T = [[1,1],[0,1]] is the translation z -> z+1 and S = [[0,-1],[1,0]]
 * is z -> -1/z. A right action by the transposed matrices describes the
 * same orbits and stabilizers; transpose() is the dictionary between them.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ellmod {

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline std::int64_t checked_neg(std::int64_t x) { return checked_sub(0, x); }

// x*y + z*w without intermediate overflow
inline std::int64_t checked_dot(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
    return checked_add(checked_mul(x, y), checked_mul(z, w));
}

} // namespace detail

/// An element of SL(2,Z). Construction rejects any determinant other than 1.
class SL2Matrix {
public:
    constexpr SL2Matrix() = default; // identity

    SL2Matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
        : a_(a), b_(b), c_(c), d_(d) {
        const __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
        if (det != 1) {
            throw std::invalid_argument("SL2Matrix: determinant must be 1 (got [[" + std::to_string(a) + "," +
                                        std::to_string(b) + "],[" + std::to_string(c) + "," +
                                        std::to_string(d) + "]])");
        }
    }

    constexpr std::int64_t a() const { return a_; }
    constexpr std::int64_t b() const { return b_; }
    constexpr std::int64_t c() const { return c_; }
    constexpr std::int64_t d() const { return d_; }

    std::int64_t max_abs_entry() const {
        return std::max({std::llabs(a_), std::llabs(b_), std::llabs(c_), std::llabs(d_)});
    }

    static SL2Matrix identity() { return {}; }

    constexpr bool operator==(const SL2Matrix&) const = default;
    constexpr auto operator<=>(const SL2Matrix&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const SL2Matrix& m) {
        return os << "[[" << m.a_ << "," << m.b_ << "],[" << m.c_ << "," << m.d_ << "]]";
    }

private:
    std::int64_t a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

inline SL2Matrix multiply(const SL2Matrix& x, const SL2Matrix& y) {
    using detail::checked_dot;
    return {checked_dot(x.a(), y.a(), x.b(), y.c()), checked_dot(x.a(), y.b(), x.b(), y.d()),
            checked_dot(x.c(), y.a(), x.d(), y.c()), checked_dot(x.c(), y.b(), x.d(), y.d())};
}

inline SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) { return multiply(x, y); }

inline SL2Matrix operator-(const SL2Matrix& m) {
    using detail::checked_neg;
    return {checked_neg(m.a()), checked_neg(m.b()), checked_neg(m.c()), checked_neg(m.d())};
}

// det = 1, so the inverse is the adjugate.
inline SL2Matrix inverse(const SL2Matrix& m) {
    using detail::checked_neg;
    return {m.d(), checked_neg(m.b()), checked_neg(m.c()), m.a()};
}

inline SL2Matrix transpose(const SL2Matrix& m) { return {m.a(), m.c(), m.b(), m.d()}; }

inline SL2Matrix power(SL2Matrix base, std::int64_t n) {
    if (n < 0) {
        base = inverse(base);
        n = -n;
    }
    SL2Matrix result;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

/// Equality in PSL(2,Z) = SL(2,Z)/{+-I}.
inline bool psl_equal(const SL2Matrix& x, const SL2Matrix& y) { return x == y || x == -y; }

/// Representative of the PSL class: first nonzero entry of (c, d) made positive.
inline SL2Matrix psl_canonical(const SL2Matrix& m) {
    const bool flip = m.c() < 0 || (m.c() == 0 && m.d() < 0);
    return flip ? -m : m;
}

enum class Generator { S, T, R, I, NegI };

inline SL2Matrix generator(Generator g) {
    switch (g) {
    case Generator::S: return {0, -1, 1, 0};
    case Generator::T: return {1, 1, 0, 1};
    case Generator::R: return {0, -1, 1, 1};
    case Generator::I: return {1, 0, 0, 1};
    case Generator::NegI: return {-1, 0, 0, -1};
    }
    throw std::invalid_argument("generator: unknown generator");
}

/// Accepts the tokens S, T, R, I, NEG_I.
inline SL2Matrix generator(std::string_view name) {
    if (name == "S") return generator(Generator::S);
    if (name == "T") return generator(Generator::T);
    if (name == "R") return generator(Generator::R);
    if (name == "I") return generator(Generator::I);
    if (name == "NEG_I") return generator(Generator::NegI);
    throw std::invalid_argument("generator: unknown token '" + std::string(name) + "'");
}

enum class Letter { S, T, Tinv };

inline std::string_view letter_name(Letter l) {
    switch (l) {
    case Letter::S: return "S";
    case Letter::T: return "T";
    case Letter::Tinv: return "Tinv";
    }
    return "?";
}

inline Letter parse_letter(std::string_view s) {
    if (s == "S") return Letter::S;
    if (s == "T") return Letter::T;
    if (s == "Tinv") return Letter::Tinv;
    throw std::invalid_argument("word: unknown letter '" + std::string(s) + "'");
}

inline SL2Matrix letter_matrix(Letter l) {
    switch (l) {
    case Letter::S: return {0, -1, 1, 0};
    case Letter::T: return {1, 1, 0, 1};
    case Letter::Tinv: return {1, -1, 0, 1};
    }
    throw std::invalid_argument("word: unknown letter");
}

/// sign * (product of letters, left to right).
struct GeneratorWord {
    std::vector<Letter> letters;
    int sign = 1;

    bool operator==(const GeneratorWord&) const = default;
};

inline SL2Matrix evaluate_word(const GeneratorWord& w) {
    if (w.sign != 1 && w.sign != -1) throw std::invalid_argument("word: sign must be +1 or -1");
    SL2Matrix m;
    for (Letter l : w.letters) m = m * letter_matrix(l);
    return w.sign < 0 ? -m : m;
}

namespace detail {

// Nearest integer to p/q (q != 0); on an exact tie the one of smaller magnitude.
inline std::int64_t nearest_quotient(std::int64_t p, std::int64_t q) {
    __int128 num = p, den = q;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 fl = num / den;
    if (num % den != 0 && num < 0) --fl; // floor
    const __int128 rem = num - fl * den;  // 0 <= rem < den
    __int128 k = fl;
    if (2 * rem > den) {
        k = fl + 1;
    } else if (2 * rem == den) {
        k = fl >= 0 ? fl : fl + 1; // tie: smaller |k|
    }
    return static_cast<std::int64_t>(k);
}

inline void append_translation(std::vector<Letter>& out, std::int64_t k) {
    constexpr std::int64_t max_run = 10'000'000;
    if (k > max_run || k < -max_run) throw std::length_error("decompose_word: translation exponent too large");
    const Letter l = k >= 0 ? Letter::T : Letter::Tinv;
    for (std::int64_t i = 0, n = k >= 0 ? k : -k; i < n; ++i) out.push_back(l);
}

} // namespace detail

/// Word over {S, T, T^-1} with evaluate_word(decompose_word(m)) == m.
///
/// Euclidean descent on the first column: peel T^k (k the nearest integer to
/// a/c) and then S^-1 = -S off the left until c = 0, which leaves +-T^b.
/// Word length is the sum of the |k| plus the number of S letters.
inline GeneratorWord decompose_word(const SL2Matrix& m) {
    using namespace detail;
    GeneratorWord w;
    SL2Matrix cur = m;
    while (cur.c() != 0) {
        const std::int64_t k = nearest_quotient(cur.a(), cur.c());
        append_translation(w.letters, k);
        // T^-k * cur
        cur = SL2Matrix(checked_sub(cur.a(), checked_mul(k, cur.c())),
                        checked_sub(cur.b(), checked_mul(k, cur.d())), cur.c(), cur.d());
        // cur = (-S) * (S * cur)
        w.letters.push_back(Letter::S);
        w.sign = -w.sign;
        cur = SL2Matrix(checked_neg(cur.c()), checked_neg(cur.d()), cur.a(), cur.b());
    }
    if (cur.a() == 1) {
        append_translation(w.letters, cur.b());
    } else {
        // [[-1,b],[0,-1]] = -T^{-b}
        w.sign = -w.sign;
        append_translation(w.letters, checked_neg(cur.b()));
    }
    return w;
}

struct PresentationReport {
    bool s4_is_identity = false;
    bool r6_is_identity = false;
    bool s2_equals_r3_equals_minus_identity = false;

    bool all() const { return s4_is_identity && r6_is_identity && s2_equals_r3_equals_minus_identity; }
};

/// Checks the defining relations of SL(2,Z) = <S, R | S^2 = R^3, S^4 = R^6 = 1>.
inline PresentationReport verify_presentation() {
    const SL2Matrix s = generator(Generator::S);
    const SL2Matrix r = generator(Generator::R);
    const SL2Matrix id = generator(Generator::I);
    const SL2Matrix neg = generator(Generator::NegI);
    PresentationReport rep;
    rep.s4_is_identity = power(s, 4) == id;
    rep.r6_is_identity = power(r, 6) == id;
    rep.s2_equals_r3_equals_minus_identity = power(s, 2) == power(r, 3) && power(s, 2) == neg;
    return rep;
}

/// Smallest n >= 1 with m^n = I, or 0 if none up to max_order.
inline int element_order(const SL2Matrix& m, int max_order = 12) {
    SL2Matrix p = m;
    for (int n = 1; n <= max_order; ++n) {
        if (p == SL2Matrix::identity()) return n;
        p = p * m;
    }
    return 0;
}

} // namespace ellmod
