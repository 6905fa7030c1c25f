// analysis.hpp — Small signal-analysis helpers for trajectory diagnostics:
// dominant oscillation frequency of a uniformly sampled window and the lag of
// the cross-correlation extremum between two signals.

#pragma once

#include "bswg/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bswg {

struct SpectrumPeak {
    double omega{0.0};       // angular frequency of the dominant component
    double bin{0.0};         // frequency resolution 2π/T_window
    double magnitude{0.0};   // |DFT| at the peak
};

// Dominant nonzero frequency of values(t) over t >= t_min. The mean is
// removed and the rectangular-window DFT is evaluated at the Fourier grid
// ω_j = 2π j / T_window, j = 1..n/2.
inline SpectrumPeak dominant_frequency(const Eigen::VectorXd& times, const Eigen::VectorXd& values,
                                       double t_min = 0.0) {
    if (times.size() != values.size() || times.size() < 8)
        throw std::invalid_argument("dominant_frequency: need matching series of at least 8 samples");
    int start = 0;
    while (start < times.size() && times(start) < t_min) ++start;
    const int n = static_cast<int>(times.size()) - start;
    if (n < 8) throw std::invalid_argument("dominant_frequency: window too short");
    const double dt = times(start + 1) - times(start);
    const double t_window = n * dt;

    Eigen::VectorXd s = values.segment(start, n);
    s.array() -= s.mean();

    SpectrumPeak peak;
    peak.bin = 2.0 * pi / t_window;
    for (int j = 1; j <= n / 2; ++j) {
        const double w = j * peak.bin;
        const complex step = std::polar(1.0, -w * dt);
        complex rot(1.0, 0.0), acc(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            acc += s(i) * rot;
            rot *= step;
        }
        const double mag = std::abs(acc);
        if (mag > peak.magnitude) {
            peak.magnitude = mag;
            peak.omega = w;
        }
    }
    return peak;
}

// Lag (in samples, within ±max_lag) at which |cross-correlation| of the
// mean-removed signals is largest; 0 means the signals are phase-locked
// (in phase or in anti-phase).
inline int cross_correlation_extremum_lag(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                          int max_lag) {
    if (a.size() != b.size() || a.size() < 4)
        throw std::invalid_argument("cross_correlation_extremum_lag: need matching series");
    const int n = static_cast<int>(a.size());
    max_lag = std::min(max_lag, n - 2);
    const Eigen::VectorXd da = a.array() - a.mean();
    const Eigen::VectorXd db = b.array() - b.mean();
    double best = -1.0;
    int best_lag = 0;
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        double acc = 0.0;
        const int i_lo = std::max(0, -lag);
        const int i_hi = n - 1 - std::max(0, lag);
        for (int i = i_lo; i <= i_hi; ++i) acc += da(i) * db(i + lag);
        const double mag = std::abs(acc) / (i_hi - i_lo + 1);
        if (mag > best) {
            best = mag;
            best_lag = lag;
        }
    }
    return best_lag;
}

}  // namespace bswg
