#ifndef GWQ_SERIES_HPP
#define GWQ_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gwq/rational.hpp>

namespace gwq
{

// Raised by inverse() when the constant term is zero.
struct zero_constant_term : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised by log() when the constant term is not 1.
struct non_unit_constant_term : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised by exp() when the constant term is not zero.
struct nonzero_constant_term : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when parsing the textual form "c0 c1 ... cN" fails.
struct series_parse_error : std::invalid_argument {
    series_parse_error(const std::string &msg, std::size_t token_index)
        : std::invalid_argument(msg), token(token_index)
    {
    }
    std::size_t token;
};

// Dense truncated power series c_0 + c_1 t + ... + c_N t^N.
//
// The truncation order N is part of the value. Binary operations between
// series of different orders truncate to the smaller order, never extend.
// Values are immutable once constructed.
template <typename T>
class basic_series
{
public:
    using coefficient_type = T;

    // The zero series of the given order.
    explicit basic_series(std::size_t order = 0) : m_coeffs(order + 1, T(0)) {}

    explicit basic_series(std::vector<T> coeffs) : m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw std::invalid_argument("basic_series: at least one coefficient is required");
        }
    }

    static basic_series constant(const T &c, std::size_t order)
    {
        basic_series s(order);
        s.m_coeffs[0] = c;
        return s;
    }

    // c * t^k, truncated (so zero if k > order).
    static basic_series monomial(const T &c, std::size_t k, std::size_t order)
    {
        basic_series s(order);
        if (k <= order) {
            s.m_coeffs[k] = c;
        }
        return s;
    }

    template <typename F>
    static basic_series generate(std::size_t order, F &&f)
    {
        std::vector<T> c;
        c.reserve(order + 1);
        for (std::size_t d = 0; d <= order; ++d) {
            c.push_back(T(f(d)));
        }
        return basic_series(std::move(c));
    }

    std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1u;
    }
    const T &operator[](std::size_t d) const
    {
        return m_coeffs.at(d);
    }
    std::span<const T> coeffs() const noexcept
    {
        return m_coeffs;
    }

    basic_series truncated(std::size_t order) const
    {
        if (order > this->order()) {
            throw std::invalid_argument("basic_series: cannot truncate to a higher order");
        }
        return basic_series(std::vector<T>(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(order + 1)));
    }

    // Copy with one coefficient replaced.
    basic_series with_coefficient(std::size_t d, T value) const
    {
        auto c = m_coeffs;
        c.at(d) = std::move(value);
        return basic_series(std::move(c));
    }

    friend bool operator==(const basic_series &, const basic_series &) = default;

private:
    std::vector<T> m_coeffs;
};

using series = basic_series<rational>;

namespace detail
{

inline std::size_t common_order(std::size_t a, std::size_t b)
{
    return std::min(a, b);
}

} // namespace detail

template <typename T>
basic_series<T> add(const basic_series<T> &a, const basic_series<T> &b)
{
    const auto n = detail::common_order(a.order(), b.order());
    return basic_series<T>::generate(n, [&](std::size_t d) { return a[d] + b[d]; });
}

template <typename T>
basic_series<T> sub(const basic_series<T> &a, const basic_series<T> &b)
{
    const auto n = detail::common_order(a.order(), b.order());
    return basic_series<T>::generate(n, [&](std::size_t d) { return a[d] - b[d]; });
}

template <typename T>
basic_series<T> scale(const T &c, const basic_series<T> &a)
{
    return basic_series<T>::generate(a.order(), [&](std::size_t d) { return c * a[d]; });
}

// Cauchy product truncated at the common order.
template <typename T>
basic_series<T> mul(const basic_series<T> &a, const basic_series<T> &b)
{
    const auto n = detail::common_order(a.order(), b.order());
    std::vector<T> out(n + 1, T(0));
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == T(0)) {
            continue;
        }
        for (std::size_t j = 0; i + j <= n; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return basic_series<T>(std::move(out));
}

// The Euler operator t d/dt: multiplies the t^d coefficient by d.
template <typename T>
basic_series<T> t_ddt(const basic_series<T> &a)
{
    return basic_series<T>::generate(a.order(), [&](std::size_t d) { return T(d) * a[d]; });
}

// Multiplicative inverse. Any nonzero constant term is accepted.
template <typename T>
basic_series<T> inverse(const basic_series<T> &a)
{
    if (a[0] == T(0)) {
        throw zero_constant_term("inverse: constant term is zero");
    }
    const auto n = a.order();
    const T inv0 = T(1) / a[0];
    std::vector<T> b(n + 1, T(0));
    b[0] = inv0;
    for (std::size_t d = 1; d <= n; ++d) {
        T acc(0);
        for (std::size_t k = 1; k <= d; ++k) {
            acc += a[k] * b[d - k];
        }
        b[d] = -acc * inv0;
    }
    return basic_series<T>(std::move(b));
}

// From t*b' = (t*a')*b: d*b_d = sum_{k=1}^{d} k*a_k*b_{d-k}.
template <typename T>
basic_series<T> exp(const basic_series<T> &a)
{
    if (a[0] != T(0)) {
        throw nonzero_constant_term("exp: constant term must be zero");
    }
    const auto n = a.order();
    std::vector<T> b(n + 1, T(0));
    b[0] = T(1);
    for (std::size_t d = 1; d <= n; ++d) {
        T acc(0);
        for (std::size_t k = 1; k <= d; ++k) {
            acc += T(k) * a[k] * b[d - k];
        }
        b[d] = acc / T(d);
    }
    return basic_series<T>(std::move(b));
}

// Requires constant term 1. From t*a' = (t*l')*a with a_0 = 1.
template <typename T>
basic_series<T> log(const basic_series<T> &a)
{
    if (a[0] != T(1)) {
        throw non_unit_constant_term("log: constant term must be 1");
    }
    const auto n = a.order();
    std::vector<T> l(n + 1, T(0));
    for (std::size_t d = 1; d <= n; ++d) {
        T acc = T(d) * a[d];
        for (std::size_t k = 1; k < d; ++k) {
            acc -= T(k) * l[k] * a[d - k];
        }
        l[d] = acc / T(d);
    }
    return basic_series<T>(std::move(l));
}

namespace detail
{

template <typename T>
basic_series<T> pow_unsigned(basic_series<T> base, std::uint64_t k)
{
    auto result = basic_series<T>::constant(T(1), base.order());
    while (k != 0u) {
        if (k & 1u) {
            result = mul(result, base);
        }
        k >>= 1u;
        if (k != 0u) {
            base = mul(base, base);
        }
    }
    return result;
}

} // namespace detail

// Negative exponents go through inverse().
template <typename T>
basic_series<T> pow_int(const basic_series<T> &a, std::int64_t e)
{
    if (e < 0) {
        return detail::pow_unsigned(inverse(a), static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(e));
    }
    return detail::pow_unsigned(a, static_cast<std::uint64_t>(e));
}

// prod_{d>=1} (1 - t^d)^e truncated at the given order.
//
// Computed as exp(-e * sum_{m>=1} (sigma(m)/m) t^m); the logarithm's
// coefficients are accumulated as sum_{k | m} 1/k without a divisor-sum call.
inline series eta_power(std::int64_t e, std::size_t order)
{
    std::vector<rational> l(order + 1, rational(0));
    if (e != 0) {
        for (std::size_t d = 1; d <= order; ++d) {
            for (std::size_t k = 1; d * k <= order; ++k) {
                l[d * k] += rational(1, static_cast<long>(k));
            }
        }
        const rational factor(-e);
        for (auto &c : l) {
            c *= factor;
        }
    }
    return exp(series(std::move(l)));
}

// Same object as eta_power, by multiplying out the finite product
// prod_{d=1}^{order} (1 - t^d)^e. Kept as an independent cross-check.
inline series eta_power_product(std::int64_t e, std::size_t order)
{
    auto result = series::constant(rational(1), order);
    if (e == 0) {
        return result;
    }
    // (1 - t^d)^e = sum_k c_k t^{dk} with c_k = C(-e + k - 1, k) for e < 0
    // and (-1)^k C(e, k) for e > 0.
    const auto abs_e = e < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e);
    for (std::size_t d = 1; d <= order; ++d) {
        std::vector<rational> factor(order + 1, rational(0));
        for (std::size_t k = 0; d * k <= order; ++k) {
            mpz_class c;
            if (e < 0) {
                mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(abs_e + k - 1u), static_cast<unsigned long>(k));
            } else {
                mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(abs_e), static_cast<unsigned long>(k));
                if (k % 2u == 1u) {
                    c = -c;
                }
            }
            factor[d * k] = rational(std::move(c));
        }
        result = mul(series(std::move(factor)), result);
    }
    return result;
}

// Canonical text form: "c0 c1 ... cN".
template <typename T>
std::string to_string(const basic_series<T> &s)
{
    std::ostringstream os;
    for (std::size_t d = 0; d <= s.order(); ++d) {
        if (d != 0) {
            os << ' ';
        }
        os << to_string(s[d]);
    }
    return os.str();
}

template <typename T>
std::ostream &operator<<(std::ostream &os, const basic_series<T> &s)
{
    return os << to_string(s);
}

// Inverse of to_string for rational series. Any whitespace separates tokens.
inline series parse_series(std::string_view text)
{
    std::vector<rational> coeffs;
    std::size_t pos = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (pos < text.size()) {
        while (pos < text.size() && is_space(text[pos])) {
            ++pos;
        }
        if (pos == text.size()) {
            break;
        }
        const auto start = pos;
        while (pos < text.size() && !is_space(text[pos])) {
            ++pos;
        }
        const auto token = text.substr(start, pos - start);
        try {
            coeffs.push_back(rational::parse(token));
        } catch (const std::exception &) {
            throw series_parse_error("series: bad coefficient '" + std::string(token) + "' at token "
                                         + std::to_string(coeffs.size()) + " (offset " + std::to_string(start) + ")",
                                     coeffs.size());
        }
    }
    if (coeffs.empty()) {
        throw series_parse_error("series: no coefficients", 0);
    }
    return series(std::move(coeffs));
}

} // namespace gwq

#endif
