#ifndef GWQ_RATIONAL_HPP
#define GWQ_RATIONAL_HPP

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace gwq
{

// Exact rational number, always in lowest terms with a positive denominator.
class rational
{
public:
    rational() = default;

    template <std::signed_integral I>
    rational(I n) : m_value(static_cast<signed long>(n))
    {
    }
    template <std::unsigned_integral I>
    rational(I n) : m_value(static_cast<unsigned long>(n))
    {
    }

    rational(long num, long den)
    {
        if (den == 0) {
            throw std::domain_error("rational: zero denominator");
        }
        m_value = mpq_class(num, den);
        m_value.canonicalize();
    }

    explicit rational(mpz_class n) : m_value(std::move(n)) {}
    explicit rational(mpq_class q) : m_value(std::move(q))
    {
        if (m_value.get_den() == 0) {
            throw std::domain_error("rational: zero denominator");
        }
        m_value.canonicalize();
    }

    // Accepts "p" or "p/q" with an optional leading sign on p.
    static rational parse(std::string_view text)
    {
        auto bad = [&] { return std::invalid_argument("rational: cannot parse '" + std::string(text) + "'"); };
        if (text.empty()) {
            throw bad();
        }
        const auto slash = text.find('/');
        auto integer_part = [&](std::string_view s, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
                ++i;
            }
            if (i == s.size()) {
                throw bad();
            }
            for (auto j = i; j < s.size(); ++j) {
                if (s[j] < '0' || s[j] > '9') {
                    throw bad();
                }
            }
            // mpz_class rejects a leading '+'.
            return mpz_class(std::string(s[0] == '+' ? s.substr(1) : s), 10);
        };
        if (slash == std::string_view::npos) {
            return rational(integer_part(text, true));
        }
        auto num = integer_part(text.substr(0, slash), true);
        auto den = integer_part(text.substr(slash + 1), false);
        if (den == 0) {
            throw std::domain_error("rational: zero denominator in '" + std::string(text) + "'");
        }
        return rational(mpq_class(num, den));
    }

    const mpq_class &get() const noexcept
    {
        return m_value;
    }
    mpz_class numerator() const
    {
        return m_value.get_num();
    }
    mpz_class denominator() const
    {
        return m_value.get_den();
    }
    bool is_integer() const
    {
        return m_value.get_den() == 1;
    }
    bool is_zero() const
    {
        return sgn(m_value) == 0;
    }
    int sign() const
    {
        return sgn(m_value);
    }

    // "p" when the denominator is 1, otherwise "p/q".
    std::string to_string() const
    {
        return m_value.get_str(10);
    }

    rational &operator+=(const rational &o)
    {
        m_value += o.m_value;
        return *this;
    }
    rational &operator-=(const rational &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    rational &operator*=(const rational &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    rational &operator/=(const rational &o)
    {
        if (o.is_zero()) {
            throw std::domain_error("rational: division by zero");
        }
        m_value /= o.m_value;
        return *this;
    }

    friend rational operator+(rational a, const rational &b)
    {
        return a += b;
    }
    friend rational operator-(rational a, const rational &b)
    {
        return a -= b;
    }
    friend rational operator*(rational a, const rational &b)
    {
        return a *= b;
    }
    friend rational operator/(rational a, const rational &b)
    {
        return a /= b;
    }
    friend rational operator-(const rational &a)
    {
        return rational(mpq_class(-a.m_value));
    }

    friend bool operator==(const rational &a, const rational &b)
    {
        return a.m_value == b.m_value;
    }
    friend std::strong_ordering operator<=>(const rational &a, const rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const rational &q)
    {
        return os << q.to_string();
    }

private:
    mpq_class m_value{0};
};

inline std::string to_string(const rational &q)
{
    return q.to_string();
}

} // namespace gwq

#endif
