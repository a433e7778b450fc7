#ifndef GWQ_RELATIVE_TABLES_HPP
#define GWQ_RELATIVE_TABLES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include <gwq/arith.hpp>
#include <gwq/gw_series.hpp>
#include <gwq/rational.hpp>
#include <gwq/report.hpp>
#include <gwq/series.hpp>

// Relative invariants of E(0) = T^2 x S^2 and E(n) relative to a smooth fiber
// V, in the classes s + d f, and the two-factor symplectic-sum convolution
// that glues them back into absolute invariants of E(n).
//
// The E(0) values are inputs (they come from the analysis, not from this
// library) and live in a single literal table below. E(n) rows are either
// zero or equal to the absolute generating-function coefficients.

namespace gwq
{

enum class rel_surface { e0, en };

enum class rel_constraint {
    tau_fstar, // descendent psi . ev^*(f^*)
    pt_power,  // pt^m; a single point is m = 1, no constraint is m = 0
    gamma11,   // (gamma_1, gamma_1), only the (gamma_1, gamma_2) reading is tabulated
    gamma12,   // (gamma_1, gamma_2), a basis of H^1(E(0))
};

enum class rel_contact {
    c_pt,    // C(pt) along V
    c_f,     // C(f) along V
    c_pt_pt, // C(pt) along both fibers V and U
};

struct rel_key {
    rel_surface surface = rel_surface::e0;
    unsigned genus = 0;
    std::size_t degree = 0;
    rel_constraint constraint = rel_constraint::pt_power;
    unsigned points = 0; // exponent m when constraint is pt_power
    rel_contact contact = rel_contact::c_pt;
};

struct unknown_table_row : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct nonzero_neck_correction : std::logic_error {
    using std::logic_error::logic_error;
};

enum class rel_row {
    e0_descendent_genus0_fiber,   // Phi^V_{s+df,0}(tau(f*); C(f)) = 0
    e0_descendent_genus1_point,   // Phi^V_{s+df,1}(tau(f*); C(pt)) = 2 sigma(d)
    e0_point_genus0_fiber,        // Phi^V_{s+df,0}(pt; C(f)) = [d = 0]
    e0_empty_genus0_point,        // Phi^V_{s+df,0}(C(pt)) = [d = 0]
    e0_point_genus1_point,        // Phi^V_{s+df,1}(pt; C(pt)) = d sigma(d)
    e0_neck_genus1,               // Phi^{V,U}_{s+df,1}(C(pt), C(pt)) = 0
    e0_gamma_genus0_fiber,        // Phi^V_{s+df,0}(gamma_1, gamma_2; C(f)) = [d = 0]
    e0_gamma_genus1_point,        // Phi^V_{s+df,1}(gamma_1, gamma_2; C(pt)) = 0
    en_points_point_contact,      // GW^V_{s+df,g}(pt^{g-1}; C(pt)) = 0
    en_points_fiber_contact,      // GW^V_{s+df,g}(pt^g; C(f)) = GW_{s+df,g}(pt^g)
};

namespace detail
{

// How a row's value depends on d. sigma(0) = -1/24 applies wherever sigma
// appears, so 2 sigma(0) = -1/12 and 0 * sigma(0) = 0.
enum class rel_rule { zero, delta0, two_sigma, d_sigma, absolute_fg };

struct rel_row_info {
    rel_row row;
    std::string_view id;
    std::string_view formula;
    rel_surface surface;
    std::optional<unsigned> genus; // nullopt: any genus
    rel_constraint constraint;
    int points_offset; // pt_power rows on E(n): m = genus + offset
    std::optional<unsigned> points; // pt_power rows on E(0): fixed m
    rel_contact contact;
    rel_rule rule;
};

inline constexpr std::array<rel_row_info, 10> rel_rows{{
    {rel_row::e0_descendent_genus0_fiber, "e0.descendent.g0.C(f)", "Phi^V_{s+df,0}(tau(f*); C(f)) = 0",
     rel_surface::e0, 0u, rel_constraint::tau_fstar, 0, std::nullopt, rel_contact::c_f, rel_rule::zero},
    {rel_row::e0_descendent_genus1_point, "e0.descendent.g1.C(pt)", "Phi^V_{s+df,1}(tau(f*); C(pt)) = 2 sigma(d)",
     rel_surface::e0, 1u, rel_constraint::tau_fstar, 0, std::nullopt, rel_contact::c_pt, rel_rule::two_sigma},
    {rel_row::e0_point_genus0_fiber, "e0.pt.g0.C(f)", "Phi^V_{s+df,0}(pt; C(f)) = [d = 0]", rel_surface::e0, 0u,
     rel_constraint::pt_power, 0, 1u, rel_contact::c_f, rel_rule::delta0},
    {rel_row::e0_empty_genus0_point, "e0.none.g0.C(pt)", "Phi^V_{s+df,0}(C(pt)) = [d = 0]", rel_surface::e0, 0u,
     rel_constraint::pt_power, 0, 0u, rel_contact::c_pt, rel_rule::delta0},
    {rel_row::e0_point_genus1_point, "e0.pt.g1.C(pt)", "Phi^V_{s+df,1}(pt; C(pt)) = d sigma(d)", rel_surface::e0, 1u,
     rel_constraint::pt_power, 0, 1u, rel_contact::c_pt, rel_rule::d_sigma},
    {rel_row::e0_neck_genus1, "e0.none.g1.C(pt),C(pt)", "Phi^{V,U}_{s+df,1}(C(pt), C(pt)) = 0", rel_surface::e0,
     1u, rel_constraint::pt_power, 0, 0u, rel_contact::c_pt_pt, rel_rule::zero},
    {rel_row::e0_gamma_genus0_fiber, "e0.gamma12.g0.C(f)", "Phi^V_{s+df,0}(gamma_1, gamma_2; C(f)) = [d = 0]",
     rel_surface::e0, 0u, rel_constraint::gamma12, 0, std::nullopt, rel_contact::c_f, rel_rule::delta0},
    {rel_row::e0_gamma_genus1_point, "e0.gamma12.g1.C(pt)", "Phi^V_{s+df,1}(gamma_1, gamma_2; C(pt)) = 0",
     rel_surface::e0, 1u, rel_constraint::gamma12, 0, std::nullopt, rel_contact::c_pt, rel_rule::zero},
    {rel_row::en_points_point_contact, "en.pt^(g-1).g.C(pt)", "GW^V_{s+df,g}(pt^(g-1); C(pt)) = 0", rel_surface::en,
     std::nullopt, rel_constraint::pt_power, -1, std::nullopt, rel_contact::c_pt, rel_rule::zero},
    {rel_row::en_points_fiber_contact, "en.pt^g.g.C(f)", "GW^V_{s+df,g}(pt^g; C(f)) = GW_{s+df,g}(pt^g)",
     rel_surface::en, std::nullopt, rel_constraint::pt_power, 0, std::nullopt, rel_contact::c_f,
     rel_rule::absolute_fg},
}};

inline const rel_row_info &row_info(rel_row r)
{
    for (const auto &info : rel_rows) {
        if (info.row == r) {
            return info;
        }
    }
    throw std::logic_error("relative table: row missing from the table");
}

inline bool row_matches(const rel_row_info &info, const rel_key &key)
{
    if (info.surface != key.surface || info.constraint != key.constraint || info.contact != key.contact) {
        return false;
    }
    if (info.genus && *info.genus != key.genus) {
        return false;
    }
    if (info.constraint == rel_constraint::pt_power) {
        if (info.points) {
            return *info.points == key.points;
        }
        return static_cast<long>(key.points) == static_cast<long>(key.genus) + info.points_offset;
    }
    return true;
}

inline std::string describe(const rel_key &key)
{
    return std::string(key.surface == rel_surface::e0 ? "E(0)" : "E(n)") + " genus " + std::to_string(key.genus)
           + " degree " + std::to_string(key.degree);
}

inline rational apply_rule(rel_rule rule, std::size_t d)
{
    switch (rule) {
        case rel_rule::zero:
            return rational(0);
        case rel_rule::delta0:
            return rational(d == 0 ? 1 : 0);
        case rel_rule::two_sigma:
            return rational(2) * sigma(d, sigma_convention::extended);
        case rel_rule::d_sigma:
            return rational(d) * sigma(d, sigma_convention::extended);
        case rel_rule::absolute_fg:
            break;
    }
    throw std::logic_error("relative table: rule needs surface data");
}

} // namespace detail

// Identifies the table row a key refers to; keys outside the table are rejected.
inline rel_row lookup_row(const rel_key &key)
{
    if (key.constraint == rel_constraint::gamma11) {
        throw unknown_table_row("relative table: only the (gamma_1, gamma_2) insertion is tabulated; "
                                "(gamma_1, gamma_1) is not a row");
    }
    for (const auto &info : detail::rel_rows) {
        if (detail::row_matches(info, key)) {
            return info.row;
        }
    }
    throw unknown_table_row("relative table: no row for " + detail::describe(key));
}

inline rational relative_E0(const rel_key &key)
{
    if (key.surface != rel_surface::e0) {
        throw unknown_table_row("relative_E0: key does not refer to E(0)");
    }
    return detail::apply_rule(detail::row_info(lookup_row(key)).rule, key.degree);
}

// The E(n)-side coefficients of a row as a series in d (absolute rows need
// the generating function F_g, so they are computed once per call).
inline series relative_En_series(const surface_params &p, rel_row row, unsigned genus, std::size_t order)
{
    require_valid(p);
    const auto &info = detail::row_info(row);
    if (info.surface != rel_surface::en) {
        throw unknown_table_row("relative_En: row does not refer to E(n)");
    }
    if (info.rule == detail::rel_rule::absolute_fg) {
        return Fg_closed(p, genus, order);
    }
    return series::generate(order, [&](std::size_t d) { return detail::apply_rule(info.rule, d); });
}

inline rational relative_En(const surface_params &p, const rel_key &key, std::size_t order)
{
    if (key.surface != rel_surface::en) {
        throw unknown_table_row("relative_En: key does not refer to E(n)");
    }
    if (key.degree > order) {
        throw std::invalid_argument("relative_En: degree exceeds the requested order");
    }
    const auto row = lookup_row(key);
    return relative_En_series(p, row, key.genus, order)[key.degree];
}

inline series e0_row_series(rel_row row, std::size_t order)
{
    const auto &info = detail::row_info(row);
    if (info.surface != rel_surface::e0) {
        throw unknown_table_row("e0_row_series: row does not refer to E(0)");
    }
    return series::generate(order, [&](std::size_t d) { return detail::apply_rule(info.rule, d); });
}

// Two-sum gluing formula
//   X_d = sum_{d1+d2=d} L(d1) R(d2) + sum_{d1+d2=d} L'(d1) R'(d2)
// plus the neck correction
//   sum_{d1+d2+d3=d} N_L(d1) Phi^{V,U}(d3) N_R(d2),
// whose middle factor is always read from the E(0) table.
struct sum_formula_spec {
    series left;
    series right;
    std::optional<series> second_left;
    std::optional<series> second_right;
    series neck_left;
    series neck_right;
};

// Every individual neck term with the given middle factor; returns the first
// nonzero one as (d1, d2, d3).
inline std::optional<std::tuple<std::size_t, std::size_t, std::size_t>>
first_nonzero_neck_term(const sum_formula_spec &spec, const series &neck, std::size_t order)
{
    for (std::size_t d3 = 0; d3 <= order; ++d3) {
        if (neck[d3].is_zero()) {
            continue; // every term with this d3 has a zero middle factor
        }
        for (std::size_t d1 = 0; d1 + d3 <= order; ++d1) {
            for (std::size_t d2 = 0; d1 + d2 + d3 <= order; ++d2) {
                if (!(spec.neck_left[d1] * neck[d3] * spec.neck_right[d2]).is_zero()) {
                    return std::tuple{d1, d2, d3};
                }
            }
        }
    }
    return std::nullopt;
}

inline std::optional<std::tuple<std::size_t, std::size_t, std::size_t>>
first_nonzero_neck_term(const sum_formula_spec &spec, std::size_t order)
{
    return first_nonzero_neck_term(spec, e0_row_series(rel_row::e0_neck_genus1, order), order);
}

inline series neck_correction(const sum_formula_spec &spec, std::size_t order)
{
    const auto neck = e0_row_series(rel_row::e0_neck_genus1, order);
    return mul(mul(spec.neck_left.truncated(order), neck), spec.neck_right.truncated(order));
}

inline series convolve_sum_formula(const sum_formula_spec &spec, std::size_t order)
{
    if (spec.second_left.has_value() != spec.second_right.has_value()) {
        throw std::invalid_argument("convolve_sum_formula: second product pair is incomplete");
    }
    auto total = mul(spec.left.truncated(order), spec.right.truncated(order));
    if (spec.second_left) {
        total = add(total, mul(spec.second_left->truncated(order), spec.second_right->truncated(order)));
    }
    if (const auto bad = first_nonzero_neck_term(spec, order)) {
        const auto [d1, d2, d3] = *bad;
        throw nonzero_neck_correction("convolve_sum_formula: neck term (" + std::to_string(d1) + ", "
                                      + std::to_string(d2) + ", " + std::to_string(d3) + ") is nonzero");
    }
    return total;
}

// Genus-1 descendent invariant with tau(f*) placed on the E(0) side.
inline sum_formula_spec descendent_sum_spec(const surface_params &p, std::size_t order)
{
    return sum_formula_spec{
        relative_En_series(p, rel_row::en_points_point_contact, 1, order),
        e0_row_series(rel_row::e0_descendent_genus0_fiber, order),
        relative_En_series(p, rel_row::en_points_fiber_contact, 0, order),
        e0_row_series(rel_row::e0_descendent_genus1_point, order),
        relative_En_series(p, rel_row::en_points_fiber_contact, 0, order),
        e0_row_series(rel_row::e0_descendent_genus0_fiber, order),
    };
}

// Genus g invariant with g - 1 points on E(n) and one point on E(0).
inline sum_formula_spec genus_sum_spec(const surface_params &p, unsigned g, std::size_t order)
{
    if (g == 0) {
        throw std::invalid_argument("genus_sum_spec: genus must be at least 1");
    }
    return sum_formula_spec{
        relative_En_series(p, rel_row::en_points_point_contact, g, order),
        e0_row_series(rel_row::e0_point_genus0_fiber, order),
        relative_En_series(p, rel_row::en_points_fiber_contact, g - 1, order),
        e0_row_series(rel_row::e0_point_genus1_point, order),
        relative_En_series(p, rel_row::en_points_fiber_contact, g - 1, order),
        e0_row_series(rel_row::e0_point_genus0_fiber, order),
    };
}

// All g points on E(n); the E(0) factor is a delta at d = 0.
inline sum_formula_spec point_split_spec(const surface_params &p, unsigned g, std::size_t order)
{
    return sum_formula_spec{
        relative_En_series(p, rel_row::en_points_fiber_contact, g, order),
        e0_row_series(rel_row::e0_empty_genus0_point, order),
        std::nullopt,
        std::nullopt,
        relative_En_series(p, rel_row::en_points_fiber_contact, g, order),
        e0_row_series(rel_row::e0_empty_genus0_point, order),
    };
}

// g - 1 points on E(n), gamma_1 and gamma_2 on E(0). The absolute invariant
// vanishes because E(n) is simply connected, so the gluing must give zero.
inline sum_formula_spec gamma_split_spec(const surface_params &p, unsigned g, std::size_t order)
{
    if (g == 0) {
        throw std::invalid_argument("gamma_split_spec: genus must be at least 1");
    }
    return sum_formula_spec{
        relative_En_series(p, rel_row::en_points_point_contact, g, order),
        e0_row_series(rel_row::e0_gamma_genus0_fiber, order),
        relative_En_series(p, rel_row::en_points_fiber_contact, g - 1, order),
        e0_row_series(rel_row::e0_gamma_genus1_point, order),
        relative_En_series(p, rel_row::en_points_fiber_contact, g - 1, order),
        e0_row_series(rel_row::e0_gamma_genus0_fiber, order),
    };
}

// Absolute genus-1 invariant of E(0) with insertions (pt, gamma_1, gamma_2): d sigma(d).
inline rational e0_absolute_gamma_point(std::size_t d)
{
    return rational(d) * sigma(d, sigma_convention::extended);
}

// Splitting (gamma_1, gamma_2 | pt) across E(0) = E(0) #_V E(0), in its
// simplified form: lhs = Phi_{s+df,1}(pt, gamma_1, gamma_2) and
// rhs = Phi^V_{s+df,0}(gamma_1, gamma_2; C(f)) + sum_{d1+d2=d} [d1 = 0] d2 sigma(d2).
// Defined for d >= 1 only: at d = 0 the simplified form reads 0 = 1.
inline std::pair<rational, rational> rederive_gamma_point_split(std::size_t d)
{
    if (d == 0) {
        throw std::domain_error("rederive_gamma_point_split: the simplified identity is not asserted at d = 0");
    }
    const auto gamma_fiber = e0_row_series(rel_row::e0_gamma_genus0_fiber, d);
    const auto point_point = e0_row_series(rel_row::e0_point_genus1_point, d);
    rational conv(0);
    for (std::size_t d1 = 0; d1 <= d; ++d1) {
        conv += gamma_fiber[d1] * point_point[d - d1];
    }
    return {e0_absolute_gamma_point(d), gamma_fiber[d] + conv};
}

// The same splitting before simplification: both two-term sums evaluated
// straight from the table. Unlike the simplified form this holds at d = 0 too.
inline std::pair<rational, rational> gamma_point_split_full(std::size_t d)
{
    const rel_key gamma_point{rel_surface::e0, 1, 0, rel_constraint::gamma12, 0, rel_contact::c_pt};
    const rel_key point_fiber{rel_surface::e0, 0, 0, rel_constraint::pt_power, 1, rel_contact::c_f};
    const rel_key gamma_fiber{rel_surface::e0, 0, 0, rel_constraint::gamma12, 0, rel_contact::c_f};
    const rel_key point_point{rel_surface::e0, 1, 0, rel_constraint::pt_power, 1, rel_contact::c_pt};
    auto at = [](rel_key k, std::size_t deg) {
        k.degree = deg;
        return relative_E0(k);
    };
    rational rhs(0);
    for (std::size_t d1 = 0; d1 <= d; ++d1) {
        rhs += at(gamma_point, d1) * at(point_fiber, d - d1);
        rhs += at(gamma_fiber, d1) * at(point_point, d - d1);
    }
    return {e0_absolute_gamma_point(d), rhs};
}

// Re-derives the sum formulas of one surface from the table rows and compares
// them with the generating-function routes.
inline std::vector<identity_report> rederivation_reports(const surface_params &p, unsigned g_max, std::size_t order)
{
    require_valid(p);
    const unsigned n = p.n();
    std::vector<identity_report> out;

    const auto descendent = descendent_sum_spec(p, order);
    out.push_back(compare_series("gluing: genus-1 descendent = 2 F0 (G - 1/24)", n,
                                 convolve_sum_formula(descendent, order), H_sum(p, order)));

    const auto G = G_series(order);
    const auto weights = detail::genus_step_weights(G);
    std::optional<identity_failure> neck_failure;
    for (unsigned g = 1; g <= g_max; ++g) {
        const auto tag = " (g=" + std::to_string(g) + ")";
        const auto spec = genus_sum_spec(p, g, order);
        out.push_back(compare_series("gluing: genus step" + tag, n, convolve_sum_formula(spec, order),
                                     detail::genus_step(Fg_closed(p, g - 1, order), weights)));
        out.push_back(compare_series("gluing: gamma split vanishes" + tag, n,
                                     convolve_sum_formula(gamma_split_spec(p, g, order), order), series(order)));
        out.push_back(compare_series("gluing: point split is the identity" + tag, n,
                                     convolve_sum_formula(point_split_spec(p, g, order), order),
                                     Fg_closed(p, g, order)));
        out.push_back(compare_series("gluing: neck correction vanishes" + tag, n, neck_correction(spec, order),
                                     series(order)));
    }

    identity_report split{"E(0) gamma/point split, d >= 1", n, order, std::nullopt};
    for (std::size_t d = 1; d <= order; ++d) {
        const auto [lhs, rhs] = rederive_gamma_point_split(d);
        if (lhs != rhs) {
            split.failure = identity_failure{d, lhs, rhs};
            break;
        }
    }
    out.push_back(std::move(split));
    return out;
}

// The lemma table as a document: one entry per row, sample values d = 0..samples.
// E(n) rows are sampled for the given surface and genus.
inline nlohmann::json relative_table_json(const surface_params &p, unsigned genus, std::size_t samples = 8)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &info : detail::rel_rows) {
        nlohmann::json values = nlohmann::json::array();
        series s = info.surface == rel_surface::e0 ? e0_row_series(info.row, samples)
                                                   : relative_En_series(p, info.row, genus, samples);
        for (std::size_t d = 0; d <= samples; ++d) {
            values.push_back(s[d].to_string());
        }
        nlohmann::json row{{"id", std::string(info.id)}, {"formula", std::string(info.formula)}, {"values", values}};
        if (info.surface == rel_surface::en) {
            row["n"] = p.n();
            row["genus"] = genus;
        }
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"schema_version", "1"}, {"sigma0", "-1/24"}, {"rows", rows}};
}

} // namespace gwq

#endif
