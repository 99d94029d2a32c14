#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "latvdw/numerics.hpp"
#include "latvdw/specialfn.hpp"

using latvdw::bessel_k;
using latvdw::bessel_k_upto3;
namespace mp = boost::multiprecision;

namespace {

using Big = mp::cpp_bin_float_100;

// Ascending series for integer order n:
//   K_n(x) = 1/2 (x/2)^-n sum_{k<n} (n-k-1)!/k! (-x^2/4)^k
//          + (-1)^(n+1) ln(x/2) I_n(x)
//          + (-1)^n 1/2 (x/2)^n sum_k (psi(k+1) + psi(n+k+1)) (x^2/4)^k / (k! (n+k)!)
// psi(m+1) = -gamma + H_m. Converges for all x; 100 decimal digits absorb the
// cancellation up to x = 50.
Big series_k(int n, const Big& x) {
    const Big half = x / 2;
    const Big q = half * half;
    const Big euler = boost::math::constants::euler<Big>();

    Big finite = 0;
    {
        Big term = 1;
        Big fact_k = 1;
        for (int k = 0; k < n; ++k) {
            if (k > 0) {
                fact_k *= k;
            }
            Big num = 1;
            for (int m = 2; m <= n - k - 1; ++m) {
                num *= m;
            }
            finite += num / fact_k * term;
            term *= -q;
        }
        finite *= 0.5 * pow(half, -n);
    }

    Big in = 0;
    Big digamma_sum = 0;
    {
        Big fact_k = 1;
        Big fact_nk = 1;
        for (int m = 2; m <= n; ++m) {
            fact_nk *= m;
        }
        Big hk = 0;
        Big hnk = 0;
        for (int m = 1; m <= n; ++m) {
            hnk += Big(1) / m;
        }
        Big qk = 1;
        for (int k = 0; k < 2000; ++k) {
            if (k > 0) {
                fact_k *= k;
                fact_nk *= (n + k);
                hk += Big(1) / k;
                hnk += Big(1) / (n + k);
                qk *= q;
            }
            const Big t = qk / (fact_k * fact_nk);
            in += t;
            digamma_sum += (2 * -euler + hk + hnk) * t;
            if (k > 10 && t < Big("1e-110") * in) {
                break;
            }
        }
        in *= pow(half, n);
        digamma_sum *= pow(half, n);
    }

    const Big sign_log = (n % 2 == 0) ? -1 : 1;
    const Big sign_psi = (n % 2 == 0) ? 1 : -1;
    return finite + sign_log * log(half) * in + sign_psi * 0.5 * digamma_sum;
}

} // namespace

TEST(SeriesOracle, MatchesFrozenValues) {
    // 60-digit values computed independently and frozen.
    EXPECT_NEAR(static_cast<double>(series_k(2, Big(1))), 1.62483889863517748281070738228, 1e-15);
    EXPECT_NEAR(static_cast<double>(series_k(0, Big(1))), 0.421024438240708333335627379213, 1e-15);
    EXPECT_NEAR(static_cast<double>(series_k(3, Big("7.5")) / Big("0.00043592330322192504382516042835")), 1.0,
                1e-15);
}

TEST(BesselK, K2AtOneMatchesFrozenConstant) {
    EXPECT_NEAR(bessel_k(2, 1.0) / 1.62483889863517748281070738228, 1.0, 1e-12);
    EXPECT_NEAR(bessel_k(1, 1.0) / 0.601907230197234574737540001536, 1.0, 1e-12);
    EXPECT_NEAR(bessel_k(3, 1.0) / 7.10126282473794450598036953067, 1.0, 1e-12);
    EXPECT_NEAR(bessel_k(2, 0.001) / 1999999.50000097171093725042011, 1.0, 1e-12);
}

TEST(BesselK, RelativeErrorAgainstSeriesOracle) {
    const auto grid = latvdw::numerics::logspace(1e-3, 50.0, 161);
    double worst = 0.0;
    for (double u : grid) {
        for (int n = 0; n <= 3; ++n) {
            const double ref = static_cast<double>(series_k(n, Big(u)));
            const double rel = std::abs(bessel_k(n, u) / ref - 1.0);
            worst = std::max(worst, rel);
            ASSERT_LE(rel, 1e-10) << "n=" << n << " u=" << u;
        }
    }
    RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(BesselK, AgreesWithStandardLibrary) {
    for (double u : latvdw::numerics::logspace(0.01, 40.0, 50)) {
        for (int n = 0; n <= 3; ++n) {
            EXPECT_NEAR(bessel_k(n, u) / std::cyl_bessel_k(static_cast<double>(n), u), 1.0, 1e-10)
                << "n=" << n << " u=" << u;
        }
    }
}

TEST(BesselK, RecurrenceResidual) {
    for (double u : latvdw::numerics::logspace(0.01, 30.0, 300)) {
        const auto s = bessel_k_upto3(u);
        const double k[4] = {s.k0, s.k1, s.k2, s.k3};
        for (int n = 1; n <= 2; ++n) {
            const double res = std::abs(k[n + 1] - k[n - 1] - (2.0 * n / u) * k[n]) / k[n + 1];
            EXPECT_LE(res, 1e-9) << "n=" << n << " u=" << u;
        }
        EXPECT_NEAR(k[3], k[1] + 4.0 / u * k[2], 1e-12 * k[3]);
    }
}

TEST(BesselK, SmallArgumentAsymptote) {
    const double u = 1e-4;
    EXPECT_NEAR(bessel_k(2, u) * u * u / 2.0, 1.0, 1e-6);
    EXPECT_NEAR(bessel_k(3, u) * u * u * u / 8.0, 1.0, 1e-6);
}

TEST(BesselK, PositiveAndDecreasing) {
    const auto grid = latvdw::numerics::logspace(1e-3, 50.0, 400);
    for (int n = 0; n <= 3; ++n) {
        double prev = std::numeric_limits<double>::infinity();
        for (double u : grid) {
            const double v = bessel_k(n, u);
            EXPECT_GT(v, 0.0);
            EXPECT_LT(v, prev);
            prev = v;
        }
    }
}

TEST(BesselK, LargeArgumentUnderflowsToZero) {
    EXPECT_EQ(bessel_k(3, 1e4), 0.0);
    EXPECT_EQ(bessel_k(0, std::numeric_limits<double>::infinity()), 0.0);
    EXPECT_GE(bessel_k(2, 700.0), 0.0);
}

TEST(BesselK, RejectsInvalidInput) {
    EXPECT_THROW(bessel_k(2, 0.0), latvdw::DomainError);
    EXPECT_THROW(bessel_k(2, -1.0), latvdw::DomainError);
    EXPECT_THROW(bessel_k(2, std::nan("")), latvdw::DomainError);
    EXPECT_THROW(bessel_k(4, 1.0), latvdw::ArgumentError);
    EXPECT_THROW(bessel_k(-1, 1.0), latvdw::ArgumentError);
}
