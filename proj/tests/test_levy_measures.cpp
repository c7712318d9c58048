#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "rspide/errors.hpp"
#include "rspide/levy_measures.hpp"
#include "test_models.hpp"
#include "test_oracles.hpp"

using namespace rspide;
using testref::levy_khintchine_jump_integral;

namespace {
using Complex = std::complex<double>;
}

TEST_SUITE("levy_measures") {

TEST_CASE("GTS density by direct substitution") {
    GtsParams p;
    p.c_plus = 1.0;
    p.beta_plus = 1.0;
    p.alpha_plus = 0.5;
    CHECK(gts_density(p, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    GtsParams q;
    q.c_minus = 1.0;
    q.beta_minus = 1.0;
    q.alpha_minus = 0.0;
    CHECK(gts_density(q, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    GtsParams cgmy1 = cgmy_params(0.1, 2.0, 1.0, 0.11);
    CHECK(gts_density(cgmy1, 0.5) ==
          doctest::Approx(0.1 * std::exp(-0.5) / std::pow(0.5, 1.11)).epsilon(1e-12));

    CHECK_THROWS_AS(gts_density(p, 0.0), Error);
}

TEST_CASE("VG mapping: symmetry and skew") {
    GtsParams sym = vg_params(0.2, 0.0, 0.1);
    CHECK(sym.beta_plus == doctest::Approx(sym.beta_minus).epsilon(1e-14));
    CHECK(sym.alpha_plus == 0.0);
    CHECK(sym.c_plus == doctest::Approx(10.0).epsilon(1e-14));

    // negative theta = fatter left tail = slower decay on the negative side
    GtsParams axa1 = vg_params(testmodels::kAxa.sigma[0], testmodels::kAxa.theta[0],
                               testmodels::kAxa.kappa[0]);
    CHECK(axa1.beta_plus > axa1.beta_minus);
}

TEST_CASE("VG uncompensated exponent equals the closed VG form") {
    // oracle: quadrature of int (e^{iuz}-1) nu(dz); equals
    // -(1/kappa) ln(1 - i u theta kappa + sigma^2 kappa u^2 / 2)
    const double sigma = 0.3, theta = 0.1, kappa = 0.05, u = 0.7;
    GtsParams p = vg_params(sigma, theta, kappa);

    auto integrand_re = [&](double z) {
        return (std::cos(u * z) - 1.0) * gts_density(p, z);
    };
    auto integrand_im = [&](double z) { return std::sin(u * z) * gts_density(p, z); };
    const double zmax = 60.0 / std::min(p.beta_plus, p.beta_minus);
    Complex integral(0.0, 0.0);
    for (double eps : {1e-6}) {
        integral = Complex(
            testref::simpson_converged(integrand_re, eps, zmax, 1e-13) +
                testref::simpson_converged(integrand_re, -zmax, -eps, 1e-13),
            testref::simpson_converged(integrand_im, eps, zmax, 1e-13) +
                testref::simpson_converged(integrand_im, -zmax, -eps, 1e-13));
    }
    const Complex closed =
        -std::log(Complex(1.0 + 0.5 * sigma * sigma * kappa * u * u, -u * theta * kappa)) / kappa;
    CHECK(std::abs(integral - closed) < 1e-10);
}

TEST_CASE("CGMY and KoBoL constructors") {
    GtsParams sym = cgmy_params(0.5, 3.0, 3.0, 0.7);
    CHECK(sym.beta_plus == sym.beta_minus);

    GtsParams s3 = cgmy_params(0.5, 6.0, 5.0, 0.33);
    CHECK(activity_class(s3) == ActivityClass::InfiniteActivityFiniteVariation);

    GtsParams k2 = kobol_params(0.11, 1.2, 0.4, 0.5, 2.0);
    CHECK(activity_class(k2) == ActivityClass::InfiniteVariation);
    CHECK(k2.c_plus == doctest::Approx(0.11 * 0.4));
    CHECK(k2.c_minus == doctest::Approx(0.11 * 0.5));

    CHECK_THROWS_AS(cgmy_params(0.5, 3.0, 3.0, 2.0), Error);
    try {
        kobol_params(0.1, 2.3, 0.5, 0.5, 1.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }

    GtsParams fa = cgmy_params(1.0, 2.0, 2.0, -0.5);
    CHECK(activity_class(fa) == ActivityClass::FiniteActivity);
}

TEST_CASE("characteristic exponent: trivial values") {
    RegimeModel diffusion;
    diffusion.mu = 0.1;
    diffusion.sigma = 0.3;
    CHECK(std::abs(characteristic_exponent(diffusion, 0.0)) < 1e-15);
    const Complex psi = characteristic_exponent(diffusion, 2.0);
    CHECK(psi.real() == doctest::Approx(-0.18).epsilon(1e-14));
    CHECK(psi.imag() == doctest::Approx(0.2).epsilon(1e-14));

    RegimeModel vg;
    vg.gts = vg_params(0.3227, -0.1576, 0.0306);
    CHECK(std::abs(characteristic_exponent(vg, 0.0)) < 1e-12);
}

TEST_CASE("characteristic exponent matches the brute-force integral") {
    // CGMY state 1 at omega = 1.5 (closed form with Gamma continuation and
    // drift corrections) against Richardson-extrapolated quadrature.
    RegimeModel m;
    m.gts = cgmy_params(0.1, 2.0, 1.0, 0.11);
    const Complex via_closed = characteristic_exponent(m, 1.5);
    const Complex via_quad = levy_khintchine_jump_integral(*m.gts, 1.5);
    CHECK(std::abs(via_closed - via_quad) < 1e-8);
}

TEST_CASE("characteristic exponent: quadrature fallback at alpha = 1") {
    RegimeModel m;
    GtsParams p;
    p.c_plus = p.c_minus = 0.2;
    p.beta_plus = 3.0;
    p.beta_minus = 2.5;
    p.alpha_plus = p.alpha_minus = 1.0;
    m.gts = p;
    const Complex via_impl = characteristic_exponent(m, 1.1);
    const Complex via_quad = levy_khintchine_jump_integral(p, 1.1);
    CHECK(std::abs(via_impl - via_quad) < 1e-7);
}

TEST_CASE("conjugate symmetry of the exponent") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> w(0.1, 25.0);
    RegimeModel models[3];
    models[0].gts = vg_params(0.3227, -0.1576, 0.0306);
    models[1].gts = cgmy_params(0.5, 6.0, 5.0, 0.33);
    models[2].gts = kobol_params(0.13, 1.8, 0.8, 0.7, 2.5);
    for (RegimeModel& m : models) {
        m.mu = 0.02;
        for (int t = 0; t < 25; ++t) {
            const double omega = w(rng);
            const Complex a = characteristic_exponent(m, omega);
            const Complex b = characteristic_exponent(m, -omega);
            CHECK(std::abs(a - std::conj(b)) < 1e-10 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("sync jump density: sign restriction, substitution, normalization") {
    Eigen::MatrixXd eta(2, 2);
    eta << 0.0, 0.0160, -0.0092, 0.0;
    SyncJumpSpec s{eta};

    CHECK(sync_jump_density(s, 0, 1, -0.5) == 0.0);  // positive-jump spec, negative z
    CHECK(sync_jump_density(s, 1, 0, -1.0) ==
          doctest::Approx(0.0092 * std::exp(-0.0092)).epsilon(1e-12));

    // total mass via quadrature over the support (40 decay lengths)
    auto density = [&](double z) { return sync_jump_density(s, 1, 0, z); };
    const double mass = testref::gl_composite(density, -40.0 / 0.0092, 0.0, 4000, 12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(sync_jump_density(s, 0, 0, 0.5), Error);
}

TEST_CASE("sync jump characteristic function") {
    Eigen::MatrixXd eta(2, 2);
    eta << 0.0, 2.0, 0.0132, 0.0;
    SyncJumpSpec s{eta};

    CHECK(std::abs(sync_jump_cf(s, 0, 1, 0.0) - 1.0) < 1e-15);
    const Complex v = sync_jump_cf(s, 0, 1, 2.0);
    CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(0.5).epsilon(1e-14));

    // SocGen state 1 -> 2 value against a numerical Fourier transform
    Eigen::MatrixXd eta_sg(2, 2);
    eta_sg << 0.0, 0.0132, -0.0117, 0.0;
    SyncJumpSpec sg{eta_sg};
    auto integrand_re = [&](double z) {
        return std::cos(1.0 * z) * sync_jump_density(sg, 0, 1, z);
    };
    auto integrand_im = [&](double z) {
        return std::sin(1.0 * z) * sync_jump_density(sg, 0, 1, z);
    };
    const double zmax = 2000.0 / 0.0132;
    const int panels = static_cast<int>(zmax / 1.2);  // ~5 panels per oscillation
    const Complex numeric(testref::gl_composite(integrand_re, 0.0, zmax, panels, 20),
                          testref::gl_composite(integrand_im, 0.0, zmax, panels, 20));
    CHECK(std::abs(numeric - sync_jump_cf(sg, 0, 1, 1.0)) < 1e-9);

    // modulus <= 1 everywhere
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int t = 0; t < 200; ++t) CHECK(std::abs(sync_jump_cf(sg, 1, 0, u(rng))) <= 1.0 + 1e-14);
}

TEST_CASE("symmetrized measure dominates the paper families") {
    GtsParams sym = cgmy_params(0.3, 4.0, 4.0, 0.22);
    GtsParams ssym = symmetrized_measure(sym);
    CHECK(ssym.c_plus == sym.c_plus);
    CHECK(ssym.beta_plus == sym.beta_plus);

    GtsParams c = cgmy_params(0.5, 6.0, 5.0, 0.33);
    CHECK(symmetrized_measure(c).beta_plus == doctest::Approx(5.0));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> zdist(-5.0, 5.0);
    const GtsParams families[] = {vg_params(0.3227, -0.1576, 0.0306),
                                  cgmy_params(0.1, 2.0, 1.0, 0.11),
                                  kobol_params(0.13, 1.8, 0.8, 0.7, 2.5)};
    for (const GtsParams& p : families) {
        const GtsParams s = symmetrized_measure(p);
        for (int t = 0; t < 200; ++t) {
            double z = zdist(rng);
            if (std::abs(z) < 1e-6) z = 1e-3;
            CHECK(gts_density(s, z) >= gts_density(p, z) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("moment finiteness for every benchmark parameter set") {
    std::vector<GtsParams> all;
    for (const auto& firm : {testmodels::kAxa, testmodels::kStm, testmodels::kSocGen})
        for (int j = 0; j < 2; ++j)
            all.push_back(vg_params(firm.sigma[j], firm.theta[j], firm.kappa[j]));
    for (int j = 0; j < 5; ++j)
        all.push_back(cgmy_params(testmodels::kCgmyC[j], testmodels::kCgmyG[j],
                                  testmodels::kCgmyM[j], testmodels::kCgmyY[j]));
    for (int j = 0; j < 3; ++j)
        all.push_back(kobol_params(testmodels::kKobolC[j], testmodels::kKobolY[j],
                                   testmodels::kKobolP[j], testmodels::kKobolQ[j],
                                   testmodels::kKobolLambda[j]));
    for (const GtsParams& p : all) {
        for (int n = 0; n <= 4; ++n) {
            const double m = gts_tail_moment(p, n);
            CHECK(std::isfinite(m));
            CHECK(m >= 0.0);
        }
        CHECK(std::isfinite(gts_inner_quadratic_moment(p)));
    }
}

TEST_CASE("activity-class integrals behave as classified") {
    // An integral \int_{|z|>eps} g nu converges as eps -> 0 iff successive
    // truncation increments shrink geometrically; they grow when it diverges.
    auto truncated = [](const GtsParams& p, int power, double eps) {
        auto f = [&](double z) { return std::pow(std::abs(z), power) * gts_density(p, z); };
        return testref::simpson_converged(f, eps, 1.0, 1e-13) +
               testref::simpson_converged(f, -1.0, -eps, 1e-13);
    };
    auto increments = [&](const GtsParams& p, int power) {
        const double d1 = truncated(p, power, 1e-4) - truncated(p, power, 1e-6);
        const double d2 = truncated(p, power, 1e-6) - truncated(p, power, 1e-8);
        return std::pair<double, double>(std::abs(d1), std::abs(d2));
    };

    // finite activity: total mass converges
    GtsParams fa = cgmy_params(1.0, 2.0, 2.0, -0.5);
    auto [fa1, fa2] = increments(fa, 0);
    CHECK(fa2 < 0.7 * fa1);

    // finite variation: int |z| nu converges
    GtsParams fv = cgmy_params(0.5, 6.0, 5.0, 0.33);
    auto [fv1, fv2] = increments(fv, 1);
    CHECK(fv2 < 0.7 * fv1);
    // ... but its total mass diverges (infinite activity)
    auto [m1, m2] = increments(fv, 0);
    CHECK(m2 > 2.0 * m1);

    // infinite variation: int z^2 nu converges while int |z| nu diverges
    GtsParams iv = kobol_params(0.13, 1.8, 0.8, 0.7, 2.5);
    auto [iv1, iv2] = increments(iv, 2);
    CHECK(iv2 < 0.7 * iv1);
    auto [v1, v2] = increments(iv, 1);
    CHECK(v2 > 2.0 * v1);
}

}  // TEST_SUITE
