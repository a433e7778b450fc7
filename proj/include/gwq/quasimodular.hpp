#ifndef GWQ_QUASIMODULAR_HPP
#define GWQ_QUASIMODULAR_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gwq/arith.hpp>
#include <gwq/rational.hpp>
#include <gwq/report.hpp>
#include <gwq/series.hpp>

namespace gwq
{

struct odd_weight : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// E2^e2 E4^e4 E6^e6, of weight 2 e2 + 4 e4 + 6 e6.
struct qm_monomial {
    unsigned e2 = 0;
    unsigned e4 = 0;
    unsigned e6 = 0;

    unsigned weight() const noexcept
    {
        return 2u * e2 + 4u * e4 + 6u * e6;
    }

    friend bool operator==(const qm_monomial &, const qm_monomial &) = default;
};

// Canonical order: lexicographically descending in (e2, e4, e6).
struct qm_monomial_order {
    bool operator()(const qm_monomial &a, const qm_monomial &b) const noexcept
    {
        return std::tie(b.e2, b.e4, b.e6) < std::tie(a.e2, a.e4, a.e6);
    }
};

// All monomials of the given weight in canonical order.
inline std::vector<qm_monomial> monomial_basis(unsigned weight)
{
    if (weight % 2u != 0u) {
        throw odd_weight("monomial_basis: weight " + std::to_string(weight) + " is odd");
    }
    std::vector<qm_monomial> out;
    for (unsigned a = weight / 2u + 1u; a-- > 0u;) {
        const unsigned rest_a = weight - 2u * a;
        for (unsigned b = rest_a / 4u + 1u; b-- > 0u;) {
            const unsigned rest_b = rest_a - 4u * b;
            if (rest_b % 6u == 0u) {
                out.push_back({a, b, rest_b / 6u});
            }
        }
    }
    return out;
}

// Homogeneous polynomial in E2, E4, E6 with rational coefficients.
class qm_poly
{
public:
    using term_map = std::map<qm_monomial, rational, qm_monomial_order>;

    explicit qm_poly(unsigned weight) : m_weight(weight)
    {
        if (weight % 2u != 0u) {
            throw odd_weight("qm_poly: weight " + std::to_string(weight) + " is odd");
        }
    }

    unsigned weight() const noexcept
    {
        return m_weight;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }

    // Adds c to the coefficient of m; zero coefficients are not stored.
    qm_poly &add_term(const qm_monomial &m, const rational &c)
    {
        if (m.weight() != m_weight) {
            throw std::invalid_argument("qm_poly: monomial weight " + std::to_string(m.weight())
                                        + " does not match polynomial weight " + std::to_string(m_weight));
        }
        auto &slot = m_terms[m];
        slot += c;
        if (slot.is_zero()) {
            m_terms.erase(m);
        }
        return *this;
    }

    friend bool operator==(const qm_poly &, const qm_poly &) = default;

private:
    unsigned m_weight;
    term_map m_terms;
};

// Canonical text: "c * E2^a E4^b E6^c" summands joined by " + ", exponent-zero
// factors omitted, non-integer coefficients parenthesised.
inline std::string to_string(const qm_poly &p)
{
    if (p.terms().empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        if (c.is_integer()) {
            os << c.to_string();
        } else {
            os << '(' << c.to_string() << ')';
        }
        std::vector<std::string> factors;
        if (m.e2 != 0u) {
            factors.push_back("E2^" + std::to_string(m.e2));
        }
        if (m.e4 != 0u) {
            factors.push_back("E4^" + std::to_string(m.e4));
        }
        if (m.e6 != 0u) {
            factors.push_back("E6^" + std::to_string(m.e6));
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            os << (i == 0 ? " * " : " ") << factors[i];
        }
    }
    return os.str();
}

namespace detail
{

// q-expansions of E2^a E4^b E6^c up to a fixed order, with power caches.
class eisenstein_powers
{
public:
    explicit eisenstein_powers(std::size_t order)
        : m_order(order), m_base{eisenstein(eisenstein_kind::e2, order), eisenstein(eisenstein_kind::e4, order),
                                 eisenstein(eisenstein_kind::e6, order)}
    {
        for (auto &cache : m_powers) {
            cache.push_back(series::constant(rational(1), order));
        }
    }

    series monomial(const qm_monomial &m)
    {
        return mul(mul(power(0, m.e2), power(1, m.e4)), power(2, m.e6));
    }

private:
    const series &power(std::size_t which, unsigned e)
    {
        auto &cache = m_powers[which];
        while (cache.size() <= e) {
            cache.push_back(mul(cache.back(), m_base[which]));
        }
        return cache[e];
    }

    std::size_t m_order;
    series m_base[3];
    std::vector<series> m_powers[3];
};

} // namespace detail

inline series expand(const qm_poly &p, std::size_t order)
{
    detail::eisenstein_powers powers(order);
    series out(order);
    for (const auto &[m, c] : p.terms()) {
        out = add(out, scale(c, powers.monomial(m)));
    }
    return out;
}

enum class recognition_status { found, no_solution, ambiguous };

struct recognition {
    recognition_status status = recognition_status::no_solution;
    std::optional<qm_poly> poly;
    // Coefficients t^0..t^solve_order entered the linear solve; the candidate
    // was then re-checked through check_order.
    std::size_t solve_order = 0;
    std::size_t check_order = 0;
};

// Extra equations beyond the basis size used in the linear solve.
inline constexpr std::size_t recognition_margin = 8;

// Finds the unique weight-w polynomial in E2, E4, E6 whose expansion equals s.
//
// The system is solved on the first (basis size + margin) coefficients and
// the solution is then checked against every available coefficient. Series
// too short to supply that many equations are reported as ambiguous.
inline recognition recognize(const series &s, unsigned weight)
{
    const auto basis = monomial_basis(weight);
    const std::size_t m = basis.size();
    const std::size_t rows = m + recognition_margin;

    recognition out;
    out.check_order = s.order();
    if (s.order() + 1u < rows) {
        out.status = recognition_status::ambiguous;
        out.solve_order = s.order();
        return out;
    }
    out.solve_order = rows - 1u;

    detail::eisenstein_powers powers(rows - 1u);
    std::vector<series> columns;
    columns.reserve(m);
    for (const auto &mono : basis) {
        columns.push_back(powers.monomial(mono));
    }

    // Augmented matrix [A | s], reduced in place.
    std::vector<std::vector<rational>> a(rows, std::vector<rational>(m + 1u));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a[i][j] = columns[j][i];
        }
        a[i][m] = s[i];
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && a[piv][col].is_zero()) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[r]);
        const rational inv = rational(1) / a[r][col];
        for (std::size_t j = col; j <= m; ++j) {
            a[r][j] *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && !a[i][col].is_zero()) {
                const rational f = a[i][col];
                for (std::size_t j = col; j <= m; ++j) {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivot_cols.push_back(col);
        ++r;
    }

    for (std::size_t i = r; i < rows; ++i) {
        if (!a[i][m].is_zero()) {
            out.status = recognition_status::no_solution;
            return out;
        }
    }
    if (r < m) {
        out.status = recognition_status::ambiguous;
        return out;
    }

    qm_poly poly(weight);
    for (std::size_t k = 0; k < r; ++k) {
        poly.add_term(basis[pivot_cols[k]], a[k][m]);
    }
    if (expand(poly, s.order()) != s) {
        out.status = recognition_status::no_solution;
        return out;
    }
    out.status = recognition_status::found;
    out.poly = std::move(poly);
    return out;
}

// Ramanujan's derivative identities for explicitly supplied E2, E4, E6:
//   t E2' = (E2^2 - E4)/12,  t E4' = (E2 E4 - E6)/3,  t E6' = (E2 E6 - E4^2)/2.
inline std::vector<identity_report> ramanujan_check(const series &e2, const series &e4, const series &e6)
{
    std::vector<identity_report> out;
    out.push_back(compare_series("Ramanujan t E2' = (E2^2 - E4)/12", 0, t_ddt(e2),
                                 scale(rational(1, 12), sub(mul(e2, e2), e4))));
    out.push_back(compare_series("Ramanujan t E4' = (E2 E4 - E6)/3", 0, t_ddt(e4),
                                 scale(rational(1, 3), sub(mul(e2, e4), e6))));
    out.push_back(compare_series("Ramanujan t E6' = (E2 E6 - E4^2)/2", 0, t_ddt(e6),
                                 scale(rational(1, 2), sub(mul(e2, e6), mul(e4, e4)))));
    return out;
}

inline std::vector<identity_report> ramanujan_check(std::size_t order, fault hook = fault::none)
{
    auto e4 = eisenstein(eisenstein_kind::e4, order);
    if (hook == fault::e4_leading) {
        e4 = series::generate(order, [](std::size_t d) { return d == 0 ? rational(1) : rational(241) * sigma_k(3, d); });
    }
    return ramanujan_check(eisenstein(eisenstein_kind::e2, order), e4, eisenstein(eisenstein_kind::e6, order));
}

} // namespace gwq

#endif
