// gwq: tables, identity verification and quasimodular recognition for the
// family GW generating functions of E(n).
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 internal cross-check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gwq/gw_series.hpp>
#include <gwq/quasimodular.hpp>
#include <gwq/relative_tables.hpp>
#include <gwq/report.hpp>
#include <gwq/series.hpp>
#include <gwq/table_document.hpp>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_usage = 2;
constexpr int exit_cross_check = 3;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::size_t default_order()
{
    const char *v = std::getenv("GWQ_ORDER_DEFAULT");
    if (v == nullptr) {
        return 64;
    }
    try {
        std::size_t pos = 0;
        const auto parsed = std::stoul(v, &pos);
        if (pos != std::string(v).size()) {
            throw std::invalid_argument(v);
        }
        return parsed;
    } catch (const std::exception &) {
        throw usage_error(std::string("GWQ_ORDER_DEFAULT must be a non-negative integer, got '") + v + "'");
    }
}

// Writes to --out when given, otherwise stdout.
void emit(const std::string &text, const std::string &out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) {
        throw usage_error("cannot open '" + out_path + "' for writing");
    }
    f << text;
}

struct table_options {
    unsigned n = 1;
    unsigned g_max = 0;
    std::optional<std::size_t> order;
    std::string format = "json";
    std::string out;
};

int run_table(const table_options &opt)
{
    if (opt.n == 0) {
        std::cerr << "table: --n must be at least 1 (the product formula is established only for E(n), n >= 1)\n";
        return exit_usage;
    }
    const auto order = opt.order.value_or(default_order());
    gwq::table_document doc;
    try {
        doc = gwq::build_table(gwq::surface_params(opt.n), opt.g_max, order, gwq::fault_from_env());
    } catch (const gwq::cross_check_failure &e) {
        std::cerr << e.what() << '\n';
        return exit_cross_check;
    }
    emit(opt.format == "csv" ? gwq::to_csv(doc) : gwq::to_json(doc).dump(2) + "\n", opt.out);
    return exit_ok;
}

struct verify_options {
    unsigned n_max = 5;
    unsigned g_max = 4;
    std::optional<std::size_t> order;
    std::string format = "text";
    std::string out;
};

nlohmann::json report_json(const gwq::identity_report &r)
{
    nlohmann::json j{{"identity", r.identity_name}, {"n", r.n}, {"order", r.order}, {"verified", r.verified()}};
    if (r.failure) {
        j["failure"] = {{"d", r.failure->degree}, {"lhs", r.failure->lhs.to_string()}, {"rhs", r.failure->rhs.to_string()}};
    }
    return j;
}

int run_verify(const verify_options &opt)
{
    const auto order = opt.order.value_or(default_order());
    const auto hook = gwq::fault_from_env();

    std::vector<gwq::identity_report> reports;
    for (unsigned n = 1; n <= opt.n_max; ++n) {
        const gwq::surface_params p(n);
        for (auto &r : gwq::verify_all(p, opt.g_max, order, hook)) {
            reports.push_back(std::move(r));
        }
        for (auto &r : gwq::rederivation_reports(p, opt.g_max, order)) {
            reports.push_back(std::move(r));
        }
    }
    for (auto &r : gwq::ramanujan_check(order, hook)) {
        reports.push_back(std::move(r));
    }

    std::ostringstream text;
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : reports) {
        text << r << '\n';
        j.push_back(report_json(r));
    }
    const bool ok = gwq::all_verified(reports);
    text << (ok ? "all " : "FAILED: ") << (ok ? std::to_string(reports.size()) + " identities verified" : "see above")
         << " (n <= " << opt.n_max << ", g <= " << opt.g_max << ", order " << order << ")\n";

    const nlohmann::json doc{{"schema_version", "1"}, {"order", order}, {"n_max", opt.n_max},
                             {"g_max", opt.g_max}, {"verified", ok}, {"reports", j}};
    if (opt.format == "json") {
        emit(doc.dump(2) + "\n", opt.out);
    } else {
        std::cout << text.str();
        if (!opt.out.empty()) {
            emit(doc.dump(2) + "\n", opt.out);
        }
    }

    if (!ok) {
        for (const auto &r : reports) {
            if (!r.verified()) {
                std::cerr << "first failure: " << r.identity_name << ", n=" << r.n << ", d=" << r.failure->degree
                          << ", lhs=" << r.failure->lhs << ", rhs=" << r.failure->rhs << '\n';
                break;
            }
        }
        return exit_verification;
    }
    return exit_ok;
}

struct recognize_options {
    std::string file;
    unsigned weight = 0;
};

int run_recognize(const recognize_options &opt)
{
    std::ifstream f(opt.file);
    if (!f) {
        std::cerr << "recognize: cannot open '" << opt.file << "'\n";
        return exit_usage;
    }
    const std::string text{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    gwq::series s;
    try {
        s = gwq::parse_series(text);
    } catch (const gwq::series_parse_error &e) {
        std::cerr << "recognize: " << e.what() << '\n';
        return exit_usage;
    }
    gwq::recognition r;
    try {
        r = gwq::recognize(s, opt.weight);
    } catch (const gwq::odd_weight &e) {
        std::cerr << "recognize: " << e.what() << '\n';
        return exit_usage;
    }
    switch (r.status) {
        case gwq::recognition_status::found:
            std::cout << gwq::to_string(*r.poly) << '\n';
            break;
        case gwq::recognition_status::no_solution:
            std::cout << "NoSolution: no weight-" << opt.weight << " polynomial in E2, E4, E6 matches (solved on t^0..t^"
                      << r.solve_order << ", checked to order " << r.check_order << ")\n";
            break;
        case gwq::recognition_status::ambiguous:
            std::cout << "AmbiguousSolution: order " << s.order() << " does not determine a unique weight-"
                      << opt.weight << " polynomial (need order >= "
                      << gwq::monomial_basis(opt.weight).size() + gwq::recognition_margin - 1 << ")\n";
            break;
    }
    return exit_ok;
}

struct relative_options {
    unsigned n = 1;
    unsigned genus = 1;
    std::size_t samples = 8;
    std::string out;
};

int run_relative(const relative_options &opt)
{
    if (opt.n == 0) {
        std::cerr << "relative-table: --n must be at least 1\n";
        return exit_usage;
    }
    emit(gwq::relative_table_json(gwq::surface_params(opt.n), opt.genus, opt.samples).dump(2) + "\n", opt.out);
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact q-series for family GW invariants of elliptic surfaces E(n)"};
    app.require_subcommand(1);

    table_options topt;
    auto *table = app.add_subcommand("table", "Emit F_g coefficients (cross-checked by two routes)");
    table->add_option("--n", topt.n, "Surface index n of E(n), n >= 1")->required();
    table->add_option("--g-max", topt.g_max, "Largest genus");
    table->add_option("--order", topt.order, "Truncation order (default 64 or GWQ_ORDER_DEFAULT)");
    table->add_option("--format", topt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    table->add_option("--out", topt.out, "Output file (default stdout)");

    verify_options vopt;
    auto *verify = app.add_subcommand("verify", "Check every series identity; exit 1 on any failure");
    verify->add_option("--n-max", vopt.n_max, "Check E(1)..E(n-max)");
    verify->add_option("--g-max", vopt.g_max, "Largest genus");
    verify->add_option("--order", vopt.order, "Truncation order (default 64 or GWQ_ORDER_DEFAULT)");
    verify->add_option("--format", vopt.format, "Report format on stdout")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", vopt.out, "Also write the JSON report to this file");

    recognize_options ropt;
    auto *recog = app.add_subcommand("recognize", "Express a series as a polynomial in E2, E4, E6");
    recog->add_option("series_file", ropt.file, "File holding \"c0 c1 ... cN\"")->required();
    recog->add_option("--weight", ropt.weight, "Weight of the target polynomial")->required();

    relative_options relopt;
    auto *rel = app.add_subcommand("relative-table", "Export the relative-invariant value table as JSON");
    rel->add_option("--n", relopt.n, "Surface for the E(n) rows");
    rel->add_option("--g", relopt.genus, "Genus for the E(n) rows");
    rel->add_option("--samples", relopt.samples, "Largest sampled degree");
    rel->add_option("--out", relopt.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*table) {
            return run_table(topt);
        }
        if (*verify) {
            return run_verify(vopt);
        }
        if (*recog) {
            return run_recognize(ropt);
        }
        return run_relative(relopt);
    } catch (const usage_error &e) {
        std::cerr << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << e.what() << '\n';
        return exit_usage;
    }
}
