#include <cmath>

#include "doctest.h"
#include "netshift/numeric.hpp"
#include "netshift/rng.hpp"

#include <initializer_list>

using netshift::f_cdf;
using netshift::f_quantile;
using netshift::incomplete_beta;
using netshift::noncentral_f_cdf;

TEST_SUITE("numeric") {

TEST_CASE("incomplete beta reference values") {
    struct Row {
        double a, b, x, want;
    };
    // frozen from an independent high-precision evaluation
    const Row rows[] = {
        {0.5, 0.5, 0.3, 0.36901011956554536},
        {2.0, 3.0, 0.7, 0.9163},
        {5.0, 1.5, 0.2, 0.00079066357444397637},
        {10.0, 10.0, 0.5, 0.5},
        {0.5, 18.0, 0.02, 0.60296381643811781},
        {1.5, 18.0, 0.08, 0.61490600570927711},
        {18.0, 0.5, 0.98, 0.39703618356188181},
        {3.0, 2.0, 0.4, 0.17920000000000003},
    };
    for (const auto& r : rows)
        CHECK(incomplete_beta(r.a, r.b, r.x) == doctest::Approx(r.want).epsilon(1e-12));

    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // complement identity I_x(a,b) + I_{1-x}(b,a) = 1
    CHECK(incomplete_beta(4.0, 7.0, 0.37) + incomplete_beta(7.0, 4.0, 0.63) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("central f reference values") {
    struct Row {
        double x, d1, d2, want;
    };
    const Row rows[] = {
        {1.0, 3, 36, 0.59600742930294093},
        {2.87, 3, 36, 0.95020489719912127},
        {0.5, 1, 1, 0.39182655203060734},
        {4.5, 1, 2, 0.83205029433784394},
        {2.14, 20, 19, 0.94842396019398045},
        {9.4, 3, 36, 0.99989951941865152},
        {1.2, 2.5, 7.5, 0.6351133922530714},
        {3.3, 5, 34, 0.98448547140246656},
        {0.8, 20, 19, 0.3120258079989513},
        {2.0, 7, 32, 0.91396474516509352},
    };
    for (const auto& r : rows)
        CHECK(f_cdf(r.x, r.d1, r.d2) == doctest::Approx(r.want).epsilon(1e-12));

    CHECK(f_cdf(0.0, 3, 10) == 0.0);
    CHECK(f_cdf(-1.0, 3, 10) == 0.0);

    // the d1 = 1 case is a folded t distribution with a closed form
    double t = std::sqrt(4.5);
    CHECK(f_cdf(4.5, 1, 2) == doctest::Approx(t / std::sqrt(t * t + 2.0)).epsilon(1e-14));
}

TEST_CASE("noncentral f with zero noncentrality equals central") {
    const double xs[] = {0.1, 0.5, 1.0, 1.7, 2.5, 4.0, 8.0, 20.0};
    for (double d1 : {1.0, 3.0, 5.0, 20.0})
        for (double d2 : {2.0, 19.0, 36.0, 196.0})
            for (double x : xs)
                CHECK(noncentral_f_cdf(x, d1, d2, 0.0) ==
                      doctest::Approx(f_cdf(x, d1, d2)).epsilon(1e-14));
}

TEST_CASE("noncentral f reference values") {
    struct Row {
        double x, d1, d2, ncp, want;
    };
    const Row rows[] = {
        {2.0, 3, 36, 10, 0.14675300195866323},
        {4.0, 3, 36, 10, 0.48802709184823068},
        {9.4, 3, 36, 25, 0.52467156690022188},
        {1.5, 5, 196, 20, 0.011111893829095205},
        {2.5, 20, 19, 10, 0.86825328110094746},
        {3.0, 5, 34, 10, 0.53490807761378922},
        {1.0, 3, 96, 25, 0.00017655379940538675},
        {22.0, 3, 36, 50, 0.73173827043138095},
        {0.7, 2.5, 9.5, 3.3, 0.15689856486223069},
        {5.0, 1, 2, 1.0, 0.73264554530398662},
    };
    for (const auto& r : rows)
        CHECK(noncentral_f_cdf(r.x, r.d1, r.d2, r.ncp) ==
              doctest::Approx(r.want).epsilon(1e-10));
}

TEST_CASE("noncentral f against simulation") {
    // draw (chi2_d1(ncp)/d1) / (chi2_d2/d2) directly
    netshift::Rng rng(20240817);
    struct Par {
        int d1, d2;
        double ncp, x;
    };
    const Par pars[] = {
        {3, 36, 10.0, 4.0}, {5, 34, 6.0, 2.0},   {1, 10, 2.5, 3.0},
        {20, 19, 10.0, 2.5}, {3, 96, 25.0, 9.0}, {7, 50, 15.0, 3.5},
    };
    const int n_draws = 50000;
    int par_index = 0;
    for (const auto& par : pars) {
        auto stream = rng.split(++par_index);
        int below = 0;
        for (int r = 0; r < n_draws; ++r) {
            double num = 0.0;
            double z0 = stream.normal() + std::sqrt(par.ncp);
            num += z0 * z0;
            for (int i = 1; i < par.d1; ++i) {
                double z = stream.normal();
                num += z * z;
            }
            double den = 0.0;
            for (int i = 0; i < par.d2; ++i) {
                double z = stream.normal();
                den += z * z;
            }
            double f = (num / par.d1) / (den / par.d2);
            if (f <= par.x) ++below;
        }
        double mc = static_cast<double>(below) / n_draws;
        double want = noncentral_f_cdf(par.x, par.d1, par.d2, par.ncp);
        CHECK(std::abs(mc - want) < 0.01);
    }
}

TEST_CASE("f quantile") {
    struct Row {
        double p, d1, d2, want;
    };
    const Row rows[] = {
        {0.95, 3, 36, 2.86626555094018},
        {0.99, 5, 34, 3.610562062292646},
        {0.9999, 3, 36, 9.40588650947908},
        {0.9999, 3, 96, 7.8248924895641458},
        {0.95, 20, 19, 2.1554966371315079},
        {0.99, 1, 2, 98.50251256281399},
        {0.5, 4, 4, 1.0},
        {0.9999, 3, 196, 7.4089455280065541},
    };
    for (const auto& r : rows)
        CHECK(f_quantile(r.p, r.d1, r.d2) == doctest::Approx(r.want).epsilon(1e-8));

    for (double p : {0.01, 0.2, 0.5, 0.9, 0.999})
        CHECK(f_cdf(f_quantile(p, 4, 17), 4, 17) == doctest::Approx(p).epsilon(1e-10));

    CHECK_THROWS(f_quantile(0.0, 3, 3));
    CHECK_THROWS(f_quantile(1.0, 3, 3));
}

}  // TEST_SUITE numeric
