#include <catch_amalgamated.hpp>

#include <gwq/gw_series.hpp>
#include <gwq/relative_tables.hpp>

#include "test_utils.hpp"

using namespace gwq;

namespace
{

rel_key e0_key(unsigned genus, std::size_t d, rel_constraint c, unsigned points, rel_contact contact)
{
    return rel_key{rel_surface::e0, genus, d, c, points, contact};
}

rel_key en_key(unsigned genus, std::size_t d, unsigned points, rel_contact contact)
{
    return rel_key{rel_surface::en, genus, d, rel_constraint::pt_power, points, contact};
}

} // namespace

TEST_CASE("E(0) table rows")
{
    // descendent, genus 0, C(f): 0
    REQUIRE(relative_E0(e0_key(0, 5, rel_constraint::tau_fstar, 0, rel_contact::c_f)) == rational(0));
    // descendent, genus 1, C(pt): 2 sigma(d)
    REQUIRE(relative_E0(e0_key(1, 3, rel_constraint::tau_fstar, 0, rel_contact::c_pt)) == rational(8));
    REQUIRE(relative_E0(e0_key(1, 0, rel_constraint::tau_fstar, 0, rel_contact::c_pt)) == rational(-1, 12));
    // pt; C(f) and C(pt) with no constraint: delta at d = 0
    REQUIRE(relative_E0(e0_key(0, 0, rel_constraint::pt_power, 1, rel_contact::c_f)) == rational(1));
    REQUIRE(relative_E0(e0_key(0, 2, rel_constraint::pt_power, 1, rel_contact::c_f)) == rational(0));
    REQUIRE(relative_E0(e0_key(0, 0, rel_constraint::pt_power, 0, rel_contact::c_pt)) == rational(1));
    REQUIRE(relative_E0(e0_key(0, 2, rel_constraint::pt_power, 0, rel_contact::c_pt)) == rational(0));
    // pt; C(pt) in genus 1: d sigma(d)
    REQUIRE(relative_E0(e0_key(1, 4, rel_constraint::pt_power, 1, rel_contact::c_pt)) == rational(28));
    REQUIRE(relative_E0(e0_key(1, 0, rel_constraint::pt_power, 1, rel_contact::c_pt)) == rational(0));
    // two-fiber neck invariant
    REQUIRE(relative_E0(e0_key(1, 7, rel_constraint::pt_power, 0, rel_contact::c_pt_pt)) == rational(0));
    // gamma_1, gamma_2 rows
    REQUIRE(relative_E0(e0_key(0, 0, rel_constraint::gamma12, 0, rel_contact::c_f)) == rational(1));
    REQUIRE(relative_E0(e0_key(0, 3, rel_constraint::gamma12, 0, rel_contact::c_f)) == rational(0));
    REQUIRE(relative_E0(e0_key(1, 3, rel_constraint::gamma12, 0, rel_contact::c_pt)) == rational(0));
}

TEST_CASE("keys outside the table are rejected")
{
    REQUIRE_THROWS_AS(relative_E0(e0_key(2, 1, rel_constraint::tau_fstar, 0, rel_contact::c_pt)), unknown_table_row);
    REQUIRE_THROWS_AS(relative_E0(e0_key(0, 1, rel_constraint::pt_power, 2, rel_contact::c_f)), unknown_table_row);
    REQUIRE_THROWS_AS(relative_E0(e0_key(0, 0, rel_constraint::gamma11, 0, rel_contact::c_f)), unknown_table_row);
    REQUIRE_THROWS_AS(relative_E0(en_key(1, 0, 1, rel_contact::c_f)), unknown_table_row);
    REQUIRE_THROWS_AS(relative_En(surface_params(1), e0_key(0, 0, rel_constraint::pt_power, 1, rel_contact::c_f), 4),
                      unknown_table_row);
    REQUIRE_THROWS_AS(relative_En(surface_params(1), en_key(2, 0, 0, rel_contact::c_pt), 4), unknown_table_row);
    REQUIRE_THROWS_AS(relative_En(surface_params(0), en_key(1, 0, 0, rel_contact::c_pt), 4), invalid_surface);
}

TEST_CASE("E(n) table rows")
{
    const surface_params p1(1), p2(2);
    for (unsigned g = 1; g <= 3; ++g) {
        for (std::size_t d = 0; d <= 4; ++d) {
            REQUIRE(relative_En(p1, en_key(g, d, g - 1, rel_contact::c_pt), 4) == rational(0));
        }
    }
    REQUIRE(relative_En(p1, en_key(0, 2, 0, rel_contact::c_f), 4) == rational(90));
    REQUIRE(relative_En(p2, en_key(1, 0, 1, rel_contact::c_f), 4) == rational(0));
    REQUIRE(relative_En(p2, en_key(2, 5, 2, rel_contact::c_f), 8) == Fg_closed(p2, 2, 8)[5]);
    REQUIRE_THROWS_AS(relative_En(p1, en_key(0, 5, 0, rel_contact::c_f), 4), std::invalid_argument);
}

TEST_CASE("gluing reproduces the descendent sum formula")
{
    for (unsigned n = 1; n <= 5; ++n) {
        const surface_params p(n);
        REQUIRE(convolve_sum_formula(descendent_sum_spec(p, 32), 32) == H_sum(p, 32));
    }
}

TEST_CASE("gluing reproduces the genus step")
{
    const auto w = detail::genus_step_weights(G_series(32));
    for (unsigned n = 1; n <= 3; ++n) {
        const surface_params p(n);
        for (unsigned g = 1; g <= 4; ++g) {
            const auto glued = convolve_sum_formula(genus_sum_spec(p, g, 32), 32);
            REQUIRE(glued == detail::genus_step(Fg_recursive(p, g - 1, 32), w));
            REQUIRE(glued == Fg_recursive(p, g, 32));
        }
    }
}

TEST_CASE("point split is a delta convolution and gamma split vanishes")
{
    const surface_params p(2);
    for (unsigned g = 0; g <= 3; ++g) {
        REQUIRE(convolve_sum_formula(point_split_spec(p, g, 32), 32) == Fg_closed(p, g, 32));
    }
    for (unsigned g = 1; g <= 3; ++g) {
        REQUIRE(convolve_sum_formula(gamma_split_spec(p, g, 32), 32) == series(32));
    }
    REQUIRE_THROWS_AS(gamma_split_spec(p, 0, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(genus_sum_spec(p, 0, 4), std::invalid_argument);
}

TEST_CASE("neck correction vanishes term by term")
{
    const surface_params p(3);
    const auto spec = genus_sum_spec(p, 2, 32);
    REQUIRE_FALSE(first_nonzero_neck_term(spec, 32).has_value());
    REQUIRE(neck_correction(spec, 32) == series(32));
}

TEST_CASE("the neck detector finds a nonzero term")
{
    const auto spec = genus_sum_spec(surface_params(1), 1, 6);
    // A hypothetical nonzero two-fiber invariant at d3 = 2; the left factor is F_0.
    const auto fake_neck = series::monomial(rational(1), 2, 6);
    const auto hit = first_nonzero_neck_term(spec, fake_neck, 6);
    REQUIRE(hit.has_value());
    REQUIRE(std::get<2>(*hit) == 2u);
}

TEST_CASE("an incomplete second product pair is rejected")
{
    auto spec = genus_sum_spec(surface_params(1), 1, 4);
    spec.second_right.reset();
    REQUIRE_THROWS_AS(convolve_sum_formula(spec, 4), std::invalid_argument);
}

TEST_CASE("gamma/point split of E(0)")
{
    REQUIRE(rederive_gamma_point_split(1) == std::pair{rational(1), rational(1)});
    REQUIRE(rederive_gamma_point_split(2) == std::pair{rational(6), rational(6)});
    REQUIRE(rederive_gamma_point_split(4) == std::pair{rational(28), rational(28)});
    for (std::size_t d = 1; d <= 32; ++d) {
        const auto [lhs, rhs] = rederive_gamma_point_split(d);
        REQUIRE(lhs == rhs);
    }
    REQUIRE_THROWS_AS(rederive_gamma_point_split(0), std::domain_error);
    // The unsimplified form holds for every d, including d = 0.
    for (std::size_t d = 0; d <= 32; ++d) {
        const auto [lhs, rhs] = gamma_point_split_full(d);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("rederivation reports")
{
    for (unsigned n = 1; n <= 3; ++n) {
        const auto reports = rederivation_reports(surface_params(n), 3, 24);
        REQUIRE(reports.size() == 1u + 4u * 3u + 1u);
        REQUIRE(all_verified(reports));
    }
}

TEST_CASE("relative table export")
{
    const auto j = relative_table_json(surface_params(1), 1, 8);
    REQUIRE(j.at("schema_version") == "1");
    REQUIRE(j.at("rows").size() == 10u);
    bool found = false;
    for (const auto &row : j.at("rows")) {
        REQUIRE(row.at("values").size() == 9u);
        if (row.at("id") == "e0.descendent.g1.C(pt)") {
            found = true;
            REQUIRE(row.at("values")[0] == "-1/12");
            REQUIRE(row.at("values")[3] == "8");
        }
        if (row.at("id") == "en.pt^g.g.C(f)") {
            REQUIRE(row.at("values")[2] == "18");
        }
    }
    REQUIRE(found);
}
