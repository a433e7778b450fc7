#ifndef GWQ_GW_SERIES_HPP
#define GWQ_GW_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gwq/arith.hpp>
#include <gwq/rational.hpp>
#include <gwq/report.hpp>
#include <gwq/series.hpp>

// Generating functions for the family invariants of the elliptic surface E(n)
// in the section classes s + d f:
//
//   F_g(t) = sum_d GW_{s+df,g}(pt^g) t^d,
//   G(t)   = sum_{d>=1} sigma(d) t^d,
//   H(t)   = sum_d GW_{s+df,1}(tau(f*)) t^d,
//
// together with the identities relating them. Every object is produced by at
// least two independent routes so that the routes can be compared exactly.

namespace gwq
{

struct invalid_surface : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// E(n) together with its derived numerical data. n = 0 (the product T^2 x S^2)
// is representable but rejected by every generating-function routine.
class surface_params
{
public:
    explicit surface_params(unsigned n) : m_n(n) {}

    unsigned n() const noexcept
    {
        return m_n;
    }
    // K = (n - 2) f.
    int canonical_multiple() const noexcept
    {
        return static_cast<int>(m_n) - 2;
    }
    // c_1(E(n)) . (s + d f) = 2 - n, independent of d.
    int c1_dot_A() const noexcept
    {
        return 2 - static_cast<int>(m_n);
    }
    int pg() const noexcept
    {
        return static_cast<int>(m_n) - 1;
    }
    // Real dimension of the family of anti-invariant forms.
    int param_dim() const noexcept
    {
        return 2 * pg();
    }

    friend bool operator==(const surface_params &, const surface_params &) = default;

private:
    unsigned m_n;
};

inline void require_valid(const surface_params &p)
{
    if (p.n() == 0) {
        throw invalid_surface("the product formula is established only for E(n) with n >= 1; got n = 0");
    }
}

// Real dimension of the moduli space of genus g maps with k marked points:
// 2 c_1(A) + 2(g - 1) + 2k + dim H, which collapses to 2(g + k).
inline unsigned dimension(const surface_params &p, unsigned g, unsigned k)
{
    require_valid(p);
    const long dim = 2L * p.c1_dot_A() + 2L * (static_cast<long>(g) - 1) + 2L * k + p.param_dim();
    if (dim != 2L * (g + k)) {
        throw std::logic_error("dimension: formula does not reduce to 2(g + k)");
    }
    return static_cast<unsigned>(dim);
}

inline series G_series(std::size_t order)
{
    return series::generate(order, [](std::size_t d) { return d == 0 ? rational(0) : sigma(d); });
}

// F_0 = prod_{d>=1} (1 - t^d)^{-12n}.
inline series F0_product(const surface_params &p, std::size_t order)
{
    require_valid(p);
    return eta_power(-12 * static_cast<std::int64_t>(p.n()), order);
}

namespace detail
{

// Routines below take G explicitly so that verification can feed them a
// deliberately perturbed divisor-sum sequence.

// Unique solution of t F' = 12 n G F with F(0) = 1:
// d a_d = 12 n sum_{k=1}^{d} sigma(k) a_{d-k}.
inline series f0_ode(unsigned n, const series &G)
{
    const auto order = G.order();
    const rational c(12L * n);
    std::vector<rational> a(order + 1, rational(0));
    a[0] = rational(1);
    for (std::size_t d = 1; d <= order; ++d) {
        rational acc(0);
        for (std::size_t k = 1; k <= d; ++k) {
            acc += G[k] * a[d - k];
        }
        a[d] = c * acc / rational(d);
    }
    return series(std::move(a));
}

// The weights d sigma(d) of the genus-raising convolution. Under the
// extended convention the d = 0 weight is 0 * sigma(0); check it vanishes.
inline series genus_step_weights(const series &G)
{
    const auto w0 = rational(0) * sigma(0, sigma_convention::extended);
    if (!w0.is_zero()) {
        throw std::logic_error("genus step: the d = 0 weight must vanish");
    }
    return series::generate(G.order(), [&](std::size_t d) { return d == 0 ? w0 : rational(d) * G[d]; });
}

// F_g from F_{g-1} by GW_{g,d} = sum_{d1+d2=d} GW_{g-1,d1} d2 sigma(d2).
inline series genus_step(const series &prev, const series &weights)
{
    const auto order = std::min(prev.order(), weights.order());
    std::vector<rational> out(order + 1, rational(0));
    for (std::size_t d = 0; d <= order; ++d) {
        for (std::size_t d2 = 0; d2 <= d; ++d2) {
            out[d] += prev[d - d2] * weights[d2];
        }
    }
    return series(std::move(out));
}

inline series fg_recursive(unsigned n, unsigned g, const series &G)
{
    auto f = f0_ode(n, G);
    const auto w = genus_step_weights(G);
    for (unsigned h = 1; h <= g; ++h) {
        f = genus_step(f, w);
    }
    return f;
}

inline series fg_closed(unsigned g, const series &F0, const series &G)
{
    return mul(pow_int(t_ddt(G), g), F0);
}

// H = (1/12) t F_0' - (1/12) F_0 + (2 - n) F_0 G.
inline series h_trr(unsigned n, const series &F0, const series &G)
{
    const auto a = scale(rational(1, 12), t_ddt(F0));
    const auto b = scale(rational(-1, 12), F0);
    const auto c = scale(rational(2 - static_cast<long>(n)), mul(F0, G));
    return add(add(a, b), c);
}

// H = 2 F_0 (G - 1/24).
inline series h_sum(const series &F0, const series &G)
{
    const auto shifted = sub(G, series::constant(rational(1, 24), G.order()));
    return scale(rational(2), mul(F0, shifted));
}

// H_d = sum_{d1+d2=d} 2 GW_{0,d1} sigma(d2) with sigma(0) = -1/24.
inline series h_convolution(const series &F0, const series &G)
{
    const auto order = std::min(F0.order(), G.order());
    const auto sigma0 = sigma(0, sigma_convention::extended);
    std::vector<rational> out(order + 1, rational(0));
    for (std::size_t d = 0; d <= order; ++d) {
        rational acc(0);
        for (std::size_t d2 = 0; d2 <= d; ++d2) {
            acc += F0[d - d2] * (d2 == 0 ? sigma0 : G[d2]);
        }
        out[d] = rational(2) * acc;
    }
    return series(std::move(out));
}

// The two boundary contributions to the genus-1 descendent invariant:
//   SC_d = ((2d - n)/24) GW_{0,d}
//   FC_d = (2 - n) sum_{1<=d2<=d} GW_{0,d-d2} sigma(d2) + ((n - 2)/24) GW_{0,d}.
inline std::pair<series, series> trr_boundary(unsigned n, const series &F0, const series &G)
{
    const auto order = std::min(F0.order(), G.order());
    const long nl = static_cast<long>(n);
    std::vector<rational> sc(order + 1), fc(order + 1);
    for (std::size_t d = 0; d <= order; ++d) {
        sc[d] = rational(2 * static_cast<long>(d) - nl, 24) * F0[d];
        rational conv(0);
        for (std::size_t d2 = 1; d2 <= d; ++d2) {
            conv += F0[d - d2] * G[d2];
        }
        fc[d] = rational(2 - nl) * conv + rational(nl - 2, 24) * F0[d];
    }
    return {series(std::move(sc)), series(std::move(fc))};
}

// log F_0 = 12 n sum_{m>=1} (sigma(m)/m) t^m.
inline series log_f0_expected(unsigned n, const series &G)
{
    return series::generate(G.order(), [&](std::size_t m) {
        return m == 0 ? rational(0) : rational(12L * n) * G[m] / rational(m);
    });
}

} // namespace detail

// Solves t F_0' = 12 n G F_0, F_0(0) = 1 by the coefficient recursion alone.
inline series F0_ode(const surface_params &p, std::size_t order)
{
    require_valid(p);
    return detail::f0_ode(p.n(), G_series(order));
}

// F_g = (t G')^g F_0 with the product-formula F_0.
inline series Fg_closed(const surface_params &p, unsigned g, std::size_t order)
{
    require_valid(p);
    return detail::fg_closed(g, F0_product(p, order), G_series(order));
}

// F_g by g genus steps starting from the ODE solution.
inline series Fg_recursive(const surface_params &p, unsigned g, std::size_t order)
{
    require_valid(p);
    return detail::fg_recursive(p.n(), g, G_series(order));
}

inline series H_trr(const surface_params &p, std::size_t order)
{
    require_valid(p);
    return detail::h_trr(p.n(), F0_product(p, order), G_series(order));
}

inline series H_sum(const surface_params &p, std::size_t order)
{
    require_valid(p);
    return detail::h_sum(F0_product(p, order), G_series(order));
}

inline series H_sum_convolution(const surface_params &p, std::size_t order)
{
    require_valid(p);
    return detail::h_convolution(F0_product(p, order), G_series(order));
}

// Returns (SC, FC); their sum is H_trr.
inline std::pair<series, series> trr_boundary_decomposition(const surface_params &p, std::size_t order)
{
    require_valid(p);
    return detail::trr_boundary(p.n(), F0_product(p, order), G_series(order));
}

// Runs every identity among the generating functions for one surface.
// Failures are reported, never thrown.
inline std::vector<identity_report> verify_all(const surface_params &p, unsigned g_max, std::size_t order,
                                               fault hook = fault::none)
{
    require_valid(p);
    const unsigned n = p.n();

    auto G = G_series(order);
    if (hook == fault::sigma && order >= 3) {
        G = G.with_coefficient(3, G[3] + rational(1));
    }
    auto F0 = F0_product(p, order);
    if (hook == fault::f0_coeff && order >= 3) {
        F0 = F0.with_coefficient(3, F0[3] + rational(1));
    }

    std::vector<identity_report> out;
    out.push_back(compare_series("initial condition F0(0) = 1", n, F0.truncated(0), series::constant(rational(1), 0)));
    out.push_back(compare_series("eta power: log/exp route = finite product", n, F0,
                                 eta_power_product(-12 * static_cast<std::int64_t>(n), order)));
    out.push_back(compare_series("ODE t F0' = 12 n G F0", n, t_ddt(F0), scale(rational(12L * n), mul(G, F0))));
    out.push_back(compare_series("F0 product = F0 ODE recursion", n, F0, detail::f0_ode(n, G)));
    out.push_back(compare_series("log F0 = 12 n sum sigma(m)/m t^m", n, log(F0), detail::log_f0_expected(n, G)));

    const auto h_trr = detail::h_trr(n, F0, G);
    out.push_back(compare_series("H constant term = -1/12", n, h_trr.truncated(0),
                                 series::constant(rational(-1, 12), 0)));
    out.push_back(compare_series("H: TRR = sum formula", n, h_trr, detail::h_sum(F0, G)));
    out.push_back(
        compare_series("H: sum formula = convolution with sigma(0) = -1/24", n, detail::h_sum(F0, G),
                       detail::h_convolution(F0, G)));
    const auto [sc, fc] = detail::trr_boundary(n, F0, G);
    out.push_back(compare_series("H: boundary strata SC + FC = TRR", n, add(sc, fc), h_trr));

    const auto tGp = t_ddt(G);
    auto prev = F0;
    for (unsigned g = 1; g <= g_max; ++g) {
        const auto closed = detail::fg_closed(g, F0, G);
        const auto tag = " (g=" + std::to_string(g) + ")";
        out.push_back(compare_series("F_g closed = genus recursion" + tag, n, closed, detail::fg_recursive(n, g, G)));
        out.push_back(compare_series("F_g = F_{g-1} t G'" + tag, n, closed, mul(prev, tGp)));
        prev = closed;
    }
    return out;
}

// Point lookups of GW_{s+df,g}(pt^g) keyed by (n, g, d).
class gw_table
{
public:
    using key_type = std::tuple<unsigned, unsigned, std::size_t>;

    explicit gw_table(std::size_t order) : m_order(order) {}

    std::size_t order() const noexcept
    {
        return m_order;
    }

    // Fills (n, g, d) for g <= g_max and d <= order from the closed formula.
    void populate(const surface_params &p, unsigned g_max)
    {
        for (unsigned g = 0; g <= g_max; ++g) {
            insert(p, g, Fg_closed(p, g, m_order));
        }
    }

    void insert(const surface_params &p, unsigned g, const series &Fg)
    {
        require_valid(p);
        if (Fg.order() < m_order) {
            throw std::invalid_argument("gw_table: series order is below the table order");
        }
        if (g == 0 && Fg[0] != rational(1)) {
            throw std::invalid_argument("gw_table: genus-0 constant term must be 1");
        }
        for (std::size_t d = 0; d <= m_order; ++d) {
            m_entries[key_type{p.n(), g, d}] = Fg[d];
        }
    }

    const rational &at(unsigned n, unsigned g, std::size_t d) const
    {
        const auto it = m_entries.find(key_type{n, g, d});
        if (it == m_entries.end()) {
            throw std::out_of_range("gw_table: no entry for (n=" + std::to_string(n) + ", g=" + std::to_string(g)
                                    + ", d=" + std::to_string(d) + ")");
        }
        return it->second;
    }

    bool contains(unsigned n, unsigned g, std::size_t d) const
    {
        return m_entries.count(key_type{n, g, d}) != 0u;
    }

    const std::map<key_type, rational> &entries() const noexcept
    {
        return m_entries;
    }

private:
    std::size_t m_order;
    std::map<key_type, rational> m_entries;
};

} // namespace gwq

#endif
