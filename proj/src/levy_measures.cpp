#include "rspide/levy_measures.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <string>

#include "rspide/errors.hpp"
#include "rspide/pide_operator.hpp"
#include "rspide/quadrature.hpp"

namespace rspide {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Upper incomplete Gamma(s, x) extended to s in (-1, 0) by one recurrence
/// step; Boost covers s > 0.
double upper_inc_gamma(double s, double x) {
    if (s > 0.0) return boost::math::tgamma(s, x);
    // Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s
    return (boost::math::tgamma(s + 1.0, x) - std::pow(x, s) * std::exp(-x)) / s;
}

double lower_inc_gamma(double s, double x) { return boost::math::tgamma_lower(s, x); }

/// \int_0^\infty (e^{i sgn w z} - 1 - i sgn w z 1_{z<=1}) c e^{-b z} z^{-1-a} dz
/// through the per-side closed forms; requires a != 1.
Complex side_exponent_closed(double omega, double sgn, double c, double b, double a) {
    const Complex iw = kI * (sgn * omega);
    if (a == 0.0) {
        const Complex base = -c * std::log(1.0 - iw / b);
        const Complex corr = -iw * c * (1.0 - std::exp(-b)) / b;
        return base + corr;
    }
    const double gamma_neg_a = std::tgamma(-a);
    const Complex pow_term = std::pow(Complex(b, 0.0) - iw, a) - std::pow(b, a);
    if (a < 1.0) {
        const Complex base = c * gamma_neg_a * pow_term;
        const Complex corr = -iw * c * std::pow(b, a - 1.0) * lower_inc_gamma(1.0 - a, b);
        return base + corr;
    }
    // 1 < a < 2: full compensation in the closed form, re-add the tail drift.
    const Complex base = c * gamma_neg_a * (pow_term + iw * a * std::pow(b, a - 1.0));
    const Complex corr = iw * c * std::pow(b, a - 1.0) * upper_inc_gamma(1.0 - a, b);
    return base + corr;
}

bool side_has_closed_form(double a) { return std::abs(a - 1.0) > 1e-12; }

/// Fallback: de-singularized quadrature of the defining integral for one
/// side, with the other side's weight zeroed out.
Complex side_exponent_quadrature(double omega, double sgn, double c, double b, double a) {
    GtsParams one_sided;
    if (sgn > 0.0) {
        one_sided.c_plus = c;
        one_sided.beta_plus = b;
        one_sided.alpha_plus = a;
        one_sided.c_minus = 1e-300;  // inert side
        one_sided.beta_minus = 1.0;
        one_sided.alpha_minus = 0.0;
    } else {
        one_sided.c_minus = c;
        one_sided.beta_minus = b;
        one_sided.alpha_minus = a;
        one_sided.c_plus = 1e-300;
        one_sided.beta_plus = 1.0;
        one_sided.alpha_plus = 0.0;
    }
    auto reg = [omega](double z) -> Complex {
        const double x = omega * z;
        // e^{ix} - 1 - ix without cancellation
        const double re = -2.0 * std::pow(std::sin(0.5 * x), 2);
        double im;
        if (std::abs(x) < 1e-3) {
            const double x2 = x * x;
            im = -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
        } else {
            im = std::sin(x) - x;
        }
        return Complex(re, im);
    };
    auto plain = [omega](double z) -> Complex {
        const double x = omega * z;
        return Complex(std::cos(x) - 1.0, std::sin(x));
    };

    QuadratureConfig cfg;
    cfg.panels_inner = 64;
    cfg.panels_outer = 64;
    cfg.gl_order = 16;
    cfg.z_cut = std::max(2.0, 46.0 / b);  // integrate the tempered tail out

    const Complex coarse = desingularized_levy_integral(one_sided, cfg, reg, plain).total();
    QuadratureConfig fine = cfg;
    fine.panels_inner = 128;
    fine.panels_outer = 128;
    const Complex refined = desingularized_levy_integral(one_sided, fine, reg, plain).total();
    if (std::abs(refined - coarse) > 1e-10)
        raise(ErrorKind::QuadratureFailure,
              "characteristic exponent quadrature did not converge to 1e-10 (alpha = " +
                  std::to_string(a) + ")");
    return refined;
}

double side_moment(double c, double b, double a, int n, bool tail) {
    // tail: \int_1^inf z^n c e^{-bz} z^{-1-a} dz, else \int_0^1 with n >= 2.
    if (tail) {
        double z_max = std::max(2.0, (46.0 + 3.0 * n) / b);
        auto f = [=](double z) { return std::pow(z, n - 1.0 - a) * c * std::exp(-b * z); };
        double total = 0.0;
        const int panels = 64;
        const double width = (z_max - 1.0) / panels;
        for (int i = 0; i < panels; ++i)
            total += gl_panel(f, 1.0 + i * width, 1.0 + (i + 1) * width, 24);
        return total;
    }
    auto f = [=](double z) { return std::pow(z, n - 1.0 - a) * c * std::exp(-b * z); };
    const auto breaks = graded_breaks_toward_zero(1.0, 0.7, 48);
    double total = 0.0;
    // integrand ~ z^{n-1-a} = z^{1-a_map}; the closing panel needs the power
    // map exactly when the exponent is in (-1, 0].
    const double a_map = a - n + 2.0;
    if (a_map >= 2.0)
        raise(ErrorKind::DomainError, "moment integral diverges at the origin");
    if (a_map > 0.0)
        total += detail::power_mapped_panel(f, breaks[1], a_map, 24);
    else
        total += gl_panel(f, 0.0, breaks[1], 24);
    for (std::size_t i = 1; i + 1 < breaks.size(); ++i)
        total += gl_panel(f, breaks[i], breaks[i + 1], 24);
    return total;
}

}  // namespace

void validate(const GtsParams& p) {
    if (!(p.c_plus > 0.0) || !(p.c_minus > 0.0))
        raise(ErrorKind::ValidationError, "GTS amplitudes c± must be positive");
    if (!(p.beta_plus > 0.0) || !(p.beta_minus > 0.0))
        raise(ErrorKind::ValidationError, "GTS tempering rates b± must be positive");
    if (!(p.alpha_plus < 2.0) || !(p.alpha_minus < 2.0))
        raise(ErrorKind::IndexOutOfRange,
              "GTS stability indices must satisfy alpha± < 2 (not a Levy density otherwise)");
}

ActivityClass activity_class(const GtsParams& p) {
    const double a = std::max(p.alpha_plus, p.alpha_minus);
    if (a < 0.0) return ActivityClass::FiniteActivity;
    if (a < 1.0) return ActivityClass::InfiniteActivityFiniteVariation;
    return ActivityClass::InfiniteVariation;
}

double gts_density(const GtsParams& p, double z) {
    if (z == 0.0) raise(ErrorKind::DomainError, "GTS density is not defined at z = 0");
    if (z > 0.0) return p.c_plus * std::exp(-p.beta_plus * z) / std::pow(z, 1.0 + p.alpha_plus);
    const double r = -z;
    return p.c_minus * std::exp(-p.beta_minus * r) / std::pow(r, 1.0 + p.alpha_minus);
}

GtsParams vg_params(double sigma, double theta, double kappa) {
    if (!(sigma > 0.0)) raise(ErrorKind::ValidationError, "VG sigma must be positive");
    if (!(kappa > 0.0)) raise(ErrorKind::ValidationError, "VG kappa must be positive");
    const double root = std::sqrt(0.25 * theta * theta * kappa * kappa + 0.5 * sigma * sigma * kappa);
    GtsParams p;
    p.c_plus = p.c_minus = 1.0 / kappa;
    p.alpha_plus = p.alpha_minus = 0.0;
    p.beta_plus = 1.0 / (root + 0.5 * theta * kappa);
    p.beta_minus = 1.0 / (root - 0.5 * theta * kappa);
    validate(p);
    return p;
}

GtsParams cgmy_params(double c, double g, double m, double y) {
    if (!(c > 0.0) || !(g > 0.0) || !(m > 0.0))
        raise(ErrorKind::ValidationError, "CGMY requires C, G, M > 0");
    if (y >= 2.0) raise(ErrorKind::IndexOutOfRange, "CGMY Y must be < 2");
    GtsParams p;
    p.c_plus = p.c_minus = c;
    p.beta_plus = m;
    p.beta_minus = g;
    p.alpha_plus = p.alpha_minus = y;
    validate(p);
    return p;
}

GtsParams kobol_params(double c, double y, double pw, double qw, double lambda) {
    if (!(c > 0.0)) raise(ErrorKind::ValidationError, "KoBoL C must be positive");
    if (!(lambda > 0.0)) raise(ErrorKind::ValidationError, "KoBoL lambda must be positive");
    if (pw < 0.0 || qw < 0.0) raise(ErrorKind::ValidationError, "KoBoL weights p, q must be >= 0");
    if (y >= 2.0) raise(ErrorKind::IndexOutOfRange, "KoBoL Y must be < 2");
    GtsParams p;
    p.c_plus = c * pw;
    p.c_minus = c * qw;
    p.beta_plus = p.beta_minus = lambda;
    p.alpha_plus = p.alpha_minus = y;
    validate(p);
    return p;
}

GtsParams symmetrized_measure(const GtsParams& p) {
    GtsParams s;
    s.c_plus = s.c_minus = std::max(p.c_plus, p.c_minus);
    s.alpha_plus = s.alpha_minus = std::max(p.alpha_plus, p.alpha_minus);
    s.beta_plus = s.beta_minus = std::min(p.beta_plus, p.beta_minus);
    s.tempering = p.tempering;
    return s;
}

std::complex<double> characteristic_exponent(const RegimeModel& m, double omega) {
    if (!std::isfinite(omega)) raise(ErrorKind::DomainError, "frequency must be finite");
    if (m.sigma < 0.0) raise(ErrorKind::ValidationError, "diffusion volatility must be >= 0");
    Complex psi = kI * m.mu * omega - 0.5 * omega * omega * m.sigma * m.sigma;
    if (!m.gts) return psi;
    const GtsParams& p = *m.gts;
    validate(p);
    if (side_has_closed_form(p.alpha_plus))
        psi += side_exponent_closed(omega, +1.0, p.c_plus, p.beta_plus, p.alpha_plus);
    else
        psi += side_exponent_quadrature(omega, +1.0, p.c_plus, p.beta_plus, p.alpha_plus);
    if (side_has_closed_form(p.alpha_minus))
        psi += side_exponent_closed(omega, -1.0, p.c_minus, p.beta_minus, p.alpha_minus);
    else
        psi += side_exponent_quadrature(omega, -1.0, p.c_minus, p.beta_minus, p.alpha_minus);
    return psi;
}

namespace {

void check_pair(const SyncJumpSpec& s, int i, int j) {
    const int h = s.size();
    if (i < 0 || j < 0 || i >= h || j >= h)
        raise(ErrorKind::IndexOutOfRange,
              "regime pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    if (i == j)
        raise(ErrorKind::DiagonalQuery, "synchronous jumps attach to switches only (i != j)");
}

}  // namespace

double sync_jump_density(const SyncJumpSpec& s, int i, int j, double z) {
    check_pair(s, i, j);
    const double eta = s.eta(i, j);
    if (eta == 0.0) return 0.0;
    if (sign_of(z) != sign_of(eta)) return 0.0;
    const double rate = std::abs(eta);
    return rate * std::exp(-rate * std::abs(z));
}

std::complex<double> sync_jump_cf(const SyncJumpSpec& s, int i, int j, double u) {
    check_pair(s, i, j);
    const double eta = s.eta(i, j);
    if (eta == 0.0) return 1.0;  // no jump attached: point mass at zero
    const double rate = std::abs(eta);
    return rate / (rate - kI * u * sign_of(eta));
}

double gts_tail_moment(const GtsParams& p, int n) {
    validate(p);
    return side_moment(p.c_plus, p.beta_plus, p.alpha_plus, n, true) +
           side_moment(p.c_minus, p.beta_minus, p.alpha_minus, n, true);
}

double gts_inner_quadratic_moment(const GtsParams& p) {
    validate(p);
    return side_moment(p.c_plus, p.beta_plus, p.alpha_plus, 2, false) +
           side_moment(p.c_minus, p.beta_minus, p.alpha_minus, 2, false);
}

double gts_compensator_drift_inner(const GtsParams& p) {
    validate(p);
    if (std::max(p.alpha_plus, p.alpha_minus) >= 1.0)
        raise(ErrorKind::DomainError,
              "inner drift integral diverges for infinite-variation measures");
    return side_moment(p.c_plus, p.beta_plus, p.alpha_plus, 1, false) -
           side_moment(p.c_minus, p.beta_minus, p.alpha_minus, 1, false);
}

double gts_compensator_drift_outer(const GtsParams& p) {
    validate(p);
    return side_moment(p.c_plus, p.beta_plus, p.alpha_plus, 1, true) -
           side_moment(p.c_minus, p.beta_minus, p.alpha_minus, 1, true);
}

void validate(const MarkovLevyModel& model) {
    const int h = model.regime_count();
    if (h < 1) raise(ErrorKind::ValidationError, "model needs at least one regime");
    if (model.chain.size() != h)
        raise(ErrorKind::ValidationError, "generator dimension does not match regime count");
    if (model.sync.size() != h)
        raise(ErrorKind::ValidationError, "sync-jump matrix dimension does not match regime count");
    for (const RegimeModel& r : model.regimes) {
        if (r.sigma < 0.0) raise(ErrorKind::ValidationError, "diffusion volatility must be >= 0");
        if (r.gts) validate(*r.gts);
    }
}

}  // namespace rspide
