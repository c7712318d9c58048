#include "rspide/fourier_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rspide/errors.hpp"
#include "rspide/quadrature.hpp"

namespace rspide {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

/// Euler transformation of a slowly alternating series (van Wijngaarden
/// averaging). Robust against mild phase drift in the lobe sums.
class EulerSum {
  public:
    double add(double term) {
        if (wksp_.empty()) {
            wksp_.push_back(term);
            sum_ = 0.5 * term;
            return sum_;
        }
        double tmp = wksp_[0];
        wksp_[0] = term;
        for (std::size_t j = 0; j + 1 < wksp_.size(); ++j) {
            const double dum = wksp_[j + 1];
            wksp_[j + 1] = 0.5 * (wksp_[j] + tmp);
            tmp = dum;
        }
        const double next = 0.5 * (wksp_.back() + tmp);
        if (std::abs(next) <= std::abs(wksp_.back())) {
            wksp_.push_back(next);
            sum_ += 0.5 * next;
        } else {
            sum_ += next;
        }
        return sum_;
    }

    double value() const { return sum_; }

  private:
    std::vector<double> wksp_;
    double sum_ = 0.0;
};

}  // namespace

Eigen::MatrixXcd cf_matrix(const MarkovLevyModel& model, double omega) {
    validate(model);
    const int h = model.regime_count();
    Eigen::MatrixXcd a(h, h);
    for (int j = 0; j < h; ++j) {
        for (int k = 0; k < h; ++k) {
            if (j == k) {
                a(j, j) = characteristic_exponent(model.regimes[j], omega) + model.chain.q(j, j);
            } else if (model.chain.q(j, k) == 0.0) {
                a(j, k) = 0.0;
            } else {
                a(j, k) = model.chain.q(j, k) * sync_jump_cf(model.sync, j, k, omega);
            }
        }
    }
    return a;
}

std::complex<double> regime_cf(const MarkovLevyModel& model, double omega, double horizon,
                               int start_regime) {
    if (horizon < 0.0) raise(ErrorKind::ValidationError, "horizon must be >= 0");
    const int h = model.regime_count();
    if (start_regime < 0 || start_regime >= h)
        raise(ErrorKind::IndexOutOfRange, "start regime out of range");
    if (horizon == 0.0) return 1.0;
    const Eigen::MatrixXcd a = cf_matrix(model, omega) * horizon;
    const Eigen::MatrixXcd p = expm(a);
    Complex acc = 0.0;
    for (int k = 0; k < h; ++k) acc += p(start_regime, k);
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        raise(ErrorKind::NonFiniteResult, "characteristic function overflowed");
    return acc;
}

namespace {

double phase_rate_estimate(const MarkovLevyModel& model, double horizon, double barrier_log) {
    double rate = 0.0;
    for (const RegimeModel& regime : model.regimes) {
        for (double w : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0}) {
            const double dw = 1e-4 * w;
            const double im_plus = characteristic_exponent(regime, w + dw).imag();
            const double im_minus = characteristic_exponent(regime, w - dw).imag();
            rate = std::max(rate, std::abs(im_plus - im_minus) / (2.0 * dw));
        }
    }
    return std::max(0.05, horizon * rate + std::abs(barrier_log));
}

}  // namespace

double default_probability(const MarkovLevyModel& model, double horizon, int start_regime,
                           double barrier_log, const InversionConfig& cfg) {
    if (!(horizon > 0.0)) raise(ErrorKind::ValidationError, "horizon must be positive");
    validate(model);

    auto integrand = [&](double w) {
        const Complex phi = regime_cf(model, w, horizon, start_regime);
        return (std::exp(-kI * w * barrier_log) * phi).imag() / w;
    };

    const double rate = phase_rate_estimate(model, horizon, barrier_log);

    // Band below w = 1: logarithmically graded panels resolve the slow
    // regime-coupling features (scale = the smallest |eta|) down to w ~ 1e-9.
    double integral = gl_panel(integrand, 0.0, 1e-9, 8);
    {
        double lo = 1e-9;
        while (lo < 1.0) {
            const double hi = std::min(1.0, lo * 1.6);
            integral += gl_panel(integrand, lo, hi, 16);
            lo = hi;
        }
    }

    // Main band: panel width follows the total phase rate.
    const double main_end = 256.0;
    {
        const double width = std::min(0.5, 2.0 * M_PI / (12.0 * rate));
        double lo = 1.0;
        while (lo < main_end) {
            const double hi = std::min(main_end, lo + width);
            integral += gl_panel(integrand, lo, hi, 16);
            lo = hi;
        }
    }

    // Oscillatory tail: half-period lobes accelerated with the Euler
    // transform. Converged when the accelerated value settles.
    const double lobe = std::clamp(M_PI / rate, 0.5, 200.0);
    EulerSum euler;
    double tail_prev = 0.0;
    int settled = 0;
    bool converged = false;
    double w_lo = main_end;
    double last_envelope = 0.0;
    for (int m = 0; m < cfg.max_lobes; ++m) {
        const double w_hi = w_lo + lobe;
        if (w_hi > cfg.omega_cap) break;
        const double term = gl_panel(integrand, w_lo, w_hi, 16);
        const double tail = euler.add(term);
        last_envelope = std::abs(term) / lobe;
        if (m > 4 && std::abs(tail - tail_prev) < 0.02 * cfg.tol) {
            if (++settled >= 3) {
                converged = true;
                tail_prev = tail;
                break;
            }
        } else {
            settled = 0;
        }
        tail_prev = tail;
        w_lo = w_hi;
    }
    if (!converged && last_envelope > cfg.tail_envelope)
        raise(ErrorKind::InversionNotConverged,
              "frequency integral did not settle below tolerance; residual envelope " +
                  std::to_string(last_envelope));
    integral += euler.value();

    return 0.5 - integral / M_PI;
}

}  // namespace rspide
