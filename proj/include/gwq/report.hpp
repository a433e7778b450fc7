#ifndef GWQ_REPORT_HPP
#define GWQ_REPORT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gwq/rational.hpp>
#include <gwq/series.hpp>

namespace gwq
{

// First coefficient at which two sides of an identity disagree.
struct identity_failure {
    std::size_t degree;
    rational lhs;
    rational rhs;
};

struct identity_report {
    std::string identity_name;
    unsigned n = 0; // 0 for identities that do not involve a surface
    std::size_t order = 0;
    std::optional<identity_failure> failure;

    bool verified() const noexcept
    {
        return !failure.has_value();
    }
};

inline std::ostream &operator<<(std::ostream &os, const identity_report &r)
{
    os << (r.verified() ? "Verified " : "FAILED   ") << r.identity_name << " [";
    if (r.n != 0u) {
        os << "n=" << r.n << ", ";
    }
    os << "order=" << r.order << "]";
    if (r.failure) {
        os << " at d=" << r.failure->degree << ": lhs=" << r.failure->lhs << " rhs=" << r.failure->rhs;
    }
    return os;
}

// Coefficient-wise comparison through the common order.
inline identity_report compare_series(std::string name, unsigned n, const series &lhs, const series &rhs)
{
    identity_report r{std::move(name), n, std::min(lhs.order(), rhs.order()), std::nullopt};
    for (std::size_t d = 0; d <= r.order; ++d) {
        if (lhs[d] != rhs[d]) {
            r.failure = identity_failure{d, lhs[d], rhs[d]};
            break;
        }
    }
    return r;
}

inline bool all_verified(const std::vector<identity_report> &reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.verified(); });
}

// Test hooks that deliberately corrupt one input so that the verification
// layer can be shown to detect it.
enum class fault {
    none,
    sigma,      // sigma(3) += 1 in the divisor sums fed to the ODE/recursive routes
    f0_coeff,   // a_3 += 1 in the product-formula F_0
    e4_leading, // E4 built with 241 instead of 240
};

inline fault parse_fault(std::string_view s)
{
    if (s.empty() || s == "none") {
        return fault::none;
    }
    if (s == "sigma") {
        return fault::sigma;
    }
    if (s == "f0") {
        return fault::f0_coeff;
    }
    if (s == "e4") {
        return fault::e4_leading;
    }
    throw std::invalid_argument("unknown fault hook '" + std::string(s) + "' (expected none, sigma, f0 or e4)");
}

// Reads GWQ_INJECT_FAULT.
inline fault fault_from_env()
{
    const char *v = std::getenv("GWQ_INJECT_FAULT");
    return v == nullptr ? fault::none : parse_fault(v);
}

} // namespace gwq

#endif
