#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace hawkdove::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Options {
  double rtol = 1e-6;
  double atol = 1e-9;
  double t_end = 1.0;
  double max_step = 1.0;
  double min_step = 1e-14;
};

enum class Verdict { Continue, Reject, Stop };
enum class Outcome { Stopped, TimeLimit, StepFailure };

struct Stats {
  double t = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  Outcome outcome = Outcome::TimeLimit;
};

// Dormand-Prince 5(4) with FSAL and an elementary step controller, for an
// autonomous right-hand side. After every accepted step `after_step(t, y)` may
// adjust y in place, ask for the step to be redone with a smaller h (Reject), or
// end the integration (Stop).
template <std::size_t N, class Rhs, class AfterStep>
Stats dormand_prince(Rhs&& rhs, Vec<N>& y, const Options& opt, AfterStep&& after_step) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat (fourth-order weights) for the error estimate
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto combine = [&](const Vec<N>& base, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
    Vec<N> out = base;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [w, k] : terms) acc += w * (*k)[i];
      out[i] = base[i] + h * acc;
    }
    return out;
  };

  Stats st;
  Vec<N> k1 = rhs(y);
  double fnorm = 0.0;
  for (double v : k1) fnorm = std::max(fnorm, std::abs(v));
  double ynorm = 0.0;
  for (double v : y) ynorm = std::max(ynorm, std::abs(v));
  double h = opt.max_step;
  if (fnorm > 0.0) h = std::min(h, 0.01 * std::max(ynorm, opt.atol) / fnorm);
  h = std::clamp(h, opt.min_step, opt.max_step);

  while (st.t < opt.t_end) {
    h = std::min(h, opt.t_end - st.t);
    if (h < opt.min_step) {
      st.outcome = Outcome::StepFailure;
      return st;
    }
    const Vec<N> k2 = rhs(combine(y, h, {{a21, &k1}}));
    const Vec<N> k3 = rhs(combine(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec<N> k4 = rhs(combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec<N> k5 = rhs(combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec<N> k6 = rhs(combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    Vec<N> y5 = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec<N> k7 = rhs(y5);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / scale);
    }

    if (!(err <= 1.0)) {
      ++st.rejected;
      const double factor = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= factor;
      continue;
    }

    const Vec<N> y_prev = y;
    const double t_next = st.t + h;
    y = y5;
    const Verdict verdict = after_step(t_next, y);
    if (verdict == Verdict::Reject) {
      y = y_prev;
      ++st.rejected;
      h *= 0.5;
      continue;
    }
    st.t = t_next;
    ++st.accepted;
    k1 = (y == y5) ? k7 : rhs(y);
    if (verdict == Verdict::Stop) {
      st.outcome = Outcome::Stopped;
      return st;
    }
    const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
    h = std::min(opt.max_step, h * std::max(1.0, grow));
  }
  st.outcome = Outcome::TimeLimit;
  return st;
}

}  // namespace hawkdove::ode
