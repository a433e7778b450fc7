#ifndef GWQ_ARITH_HPP
#define GWQ_ARITH_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include <gwq/rational.hpp>
#include <gwq/series.hpp>

namespace gwq
{

// Whether sigma(0) is defined.
//
// strict: sigma_k(d) only for d >= 1.
// extended: additionally sigma_1(0) = -1/24, the bookkeeping value that makes
// the d = 0 term of genus-0 convolutions produce the -F_0/12 summand.
enum class sigma_convention { strict, extended };

struct undefined_at_zero : std::domain_error {
    using std::domain_error::domain_error;
};

// sum_{m | d} m^k, divisors found by trial division up to sqrt(d).
inline rational sigma_k(unsigned k, std::uint64_t d, sigma_convention conv = sigma_convention::strict)
{
    if (d == 0) {
        if (conv == sigma_convention::extended && k == 1) {
            return rational(-1, 24);
        }
        throw undefined_at_zero("sigma_k: sigma(0) is undefined under this convention");
    }
    mpz_class total = 0;
    auto power = [k](std::uint64_t m) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(m), k);
        return r;
    };
    for (std::uint64_t m = 1; m * m <= d; ++m) {
        if (d % m == 0) {
            total += power(m);
            if (m != d / m) {
                total += power(d / m);
            }
        }
    }
    return rational(total);
}

inline rational sigma(std::uint64_t d, sigma_convention conv = sigma_convention::strict)
{
    return sigma_k(1, d, conv);
}

namespace detail
{

// C(n + m - 1, m): multisets of size m drawn from n colours.
inline mpz_class multichoose(unsigned long n, unsigned long m)
{
    if (m == 0) {
        return 1;
    }
    if (n == 0) {
        return 0;
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n + m - 1, m);
    return r;
}

inline mpz_class colored_partitions_bounded(unsigned long d, unsigned long max_part, unsigned long colors)
{
    if (d == 0) {
        return 1;
    }
    if (max_part == 0) {
        return 0;
    }
    mpz_class total = 0;
    // Choose the multiplicity of the largest allowed part, then colour those copies.
    for (unsigned long mult = 0; mult * max_part <= d; ++mult) {
        total += multichoose(colors, mult) * colored_partitions_bounded(d - mult * max_part, max_part - 1, colors);
    }
    return total;
}

} // namespace detail

// Number of partitions of d in which every part carries one of `colors` labels.
// Direct enumeration; intended for small d only (it is an oracle for eta_power).
inline mpz_class colored_partitions(unsigned long d, unsigned long colors)
{
    return detail::colored_partitions_bounded(d, d, colors);
}

enum class eisenstein_kind { e2, e4, e6 };

// E2 = 1 - 24 sum sigma_1(d) t^d, E4 = 1 + 240 sum sigma_3(d) t^d,
// E6 = 1 - 504 sum sigma_5(d) t^d.
inline series eisenstein(eisenstein_kind which, std::size_t order)
{
    unsigned k = 1;
    long c = -24;
    switch (which) {
        case eisenstein_kind::e2:
            k = 1;
            c = -24;
            break;
        case eisenstein_kind::e4:
            k = 3;
            c = 240;
            break;
        case eisenstein_kind::e6:
            k = 5;
            c = -504;
            break;
    }
    return series::generate(order, [&](std::size_t d) {
        return d == 0 ? rational(1) : rational(c) * sigma_k(k, d);
    });
}

} // namespace gwq

#endif
