#ifndef GWQ_TABLE_DOCUMENT_HPP
#define GWQ_TABLE_DOCUMENT_HPP

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <gwq/gw_series.hpp>
#include <gwq/rational.hpp>
#include <gwq/report.hpp>
#include <gwq/series.hpp>

namespace gwq
{

inline constexpr const char *table_schema_version = "1";

struct table_row {
    unsigned g = 0;
    std::size_t d = 0;
    rational value;

    friend bool operator==(const table_row &, const table_row &) = default;
};

// F_g coefficients of one surface, ordered by g then d.
struct table_document {
    std::string schema_version = table_schema_version;
    unsigned surface_n = 0;
    std::vector<unsigned> genus_range;
    std::size_t order = 0;
    std::vector<table_row> rows;
    std::vector<std::string> provenance;

    friend bool operator==(const table_document &, const table_document &) = default;
};

// The two routes producing a table disagreed.
struct cross_check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rows come from the closed formula and are only returned if the genus
// recursion (ODE start, divisor-sum steps) reproduces every one of them.
inline table_document build_table(const surface_params &p, unsigned g_max, std::size_t order,
                                  fault hook = fault::none)
{
    require_valid(p);
    auto G = G_series(order);
    auto G_checked = G;
    if (hook == fault::sigma && order >= 3) {
        G_checked = G.with_coefficient(3, G[3] + rational(1));
    }
    const auto F0 = F0_product(p, order);

    table_document doc;
    doc.surface_n = p.n();
    doc.order = order;
    doc.provenance = {"Fg_closed", "Fg_recursive"};
    for (unsigned g = 0; g <= g_max; ++g) {
        doc.genus_range.push_back(g);
        const auto closed = detail::fg_closed(g, F0, G);
        const auto check = compare_series("F_g closed = genus recursion", p.n(), closed,
                                          detail::fg_recursive(p.n(), g, G_checked));
        if (!check.verified()) {
            const auto &f = *check.failure;
            throw cross_check_failure("table: routes disagree for n=" + std::to_string(p.n()) + " g="
                                      + std::to_string(g) + " at d=" + std::to_string(f.degree) + " ("
                                      + f.lhs.to_string() + " vs " + f.rhs.to_string() + ")");
        }
        for (std::size_t d = 0; d <= order; ++d) {
            doc.rows.push_back({g, d, closed[d]});
        }
    }
    return doc;
}

inline nlohmann::json to_json(const table_document &doc)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : doc.rows) {
        rows.push_back({{"g", r.g}, {"d", r.d}, {"value", r.value.to_string()}});
    }
    return nlohmann::json{{"schema_version", doc.schema_version},
                          {"surface_n", doc.surface_n},
                          {"genus_range", doc.genus_range},
                          {"order", doc.order},
                          {"rows", rows},
                          {"provenance", doc.provenance}};
}

// Throws std::invalid_argument on schema mismatch or malformed values.
inline table_document table_from_json(const nlohmann::json &j)
{
    try {
        table_document doc;
        doc.schema_version = j.at("schema_version").get<std::string>();
        if (doc.schema_version != table_schema_version) {
            throw std::invalid_argument("unsupported schema_version '" + doc.schema_version + "'");
        }
        doc.surface_n = j.at("surface_n").get<unsigned>();
        doc.genus_range = j.at("genus_range").get<std::vector<unsigned>>();
        doc.order = j.at("order").get<std::size_t>();
        doc.provenance = j.at("provenance").get<std::vector<std::string>>();
        for (const auto &r : j.at("rows")) {
            doc.rows.push_back(
                {r.at("g").get<unsigned>(), r.at("d").get<std::size_t>(), rational::parse(r.at("value").get<std::string>())});
        }
        return doc;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("table document: ") + e.what());
    }
}

inline std::string to_csv(const table_document &doc)
{
    std::ostringstream os;
    os << "g,d,value\n";
    for (const auto &r : doc.rows) {
        os << r.g << ',' << r.d << ',' << r.value << '\n';
    }
    return os.str();
}

} // namespace gwq

#endif
