// Event-based phenomenological memristor model.
//
// The device responds to a voltage protocol with one current spike per
// segment (emitted at the instant the segment's level is applied) and
// relaxes between events. Internal state is a signed stored-charge
// surrogate q and a non-negative fatigue d:
//
//   spike:  i = [ g_trans*dV + r_disch*(c_store*V - q) ] / (1 + d)
//           then d += lambda_fatigue*|i|
//   hold:   dq/dt = (c_store*V - q)/tau_c - q/tau_q   (closed form)
//           d(t)  = d0 * exp(-t/tau_d)
//
// Relaxation uses the analytic solution, never numerical integration, so
// identical protocols reproduce bit-identical waveforms.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace memspike {

struct DeviceParams {
    double g_trans = 2.4e-8;      // transition gain, A per volt of level change
    double r_disch = 1.2e-8;      // discharge gain, A per charge unit
    double c_store = 1.0;         // storage coefficient, charge units per volt
    double tau_q = 3.5;           // charge retention time, s
    double tau_c = 1.0;           // charging time, s
    double tau_d = 5.0;           // fatigue retention time, s
    double lambda_fatigue = 1e7;  // fatigue increment per ampere of spike
    double v_baseline = 0.0;      // rest voltage, V
};

struct DeviceState {
    double v_prev = 0.0;  // last applied level, V
    double q = 0.0;       // stored charge surrogate, signed
    double d = 0.0;       // fatigue, dimensionless, >= 0
    double t_now = 0.0;   // simulation clock, s
};

// One protocol step: hold `level` for `duration` seconds.
struct VoltageSegment {
    double level = 0.0;
    double duration = 1.0;
};

// Observation of the spike emitted when a segment begins. q/d are the
// values seen by the spike (before the fatigue increment).
struct SpikeRecord {
    double t = 0.0;
    double v_applied = 0.0;
    double delta_v = 0.0;
    double i_spike = 0.0;
    double q_before = 0.0;
    double d_before = 0.0;
};

namespace detail {

inline bool finite(double x) { return std::isfinite(x); }

inline void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// splitmix64; deterministic across platforms.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace detail

inline bool params_valid(const DeviceParams& p) {
    return detail::finite(p.g_trans) && detail::finite(p.r_disch) &&
           detail::finite(p.c_store) && detail::finite(p.lambda_fatigue) &&
           detail::finite(p.v_baseline) && p.g_trans >= 0 && p.r_disch >= 0 &&
           p.c_store >= 0 && p.lambda_fatigue >= 0 && p.tau_q > 0 &&
           p.tau_c > 0 && p.tau_d > 0;
}

inline bool state_valid(const DeviceState& s) {
    return detail::finite(s.v_prev) && detail::finite(s.q) &&
           detail::finite(s.d) && detail::finite(s.t_now) && s.d >= 0;
}

// Documented seed parameter set: a 0 -> -0.5 V transition from null yields
// -18 nA. Calibration treats this as its starting point.
inline DeviceParams seed_params() { return DeviceParams{}; }

inline DeviceState null_state(const DeviceParams& p = DeviceParams{}) {
    return DeviceState{p.v_baseline, 0.0, 0.0, 0.0};
}

// Spike emitted at the instant a new level is applied. q and the clock do
// not move; fatigue picks up lambda*|i| afterwards.
inline std::pair<double, DeviceState> transition_spike(const DeviceState& state,
                                                       const DeviceParams& params,
                                                       double v_new) {
    detail::require(params_valid(params), "transition_spike: invalid params");
    detail::require(state_valid(state), "transition_spike: non-finite state");
    detail::require(detail::finite(v_new), "transition_spike: non-finite level");

    const double dv = v_new - state.v_prev;
    const double i =
        (params.g_trans * dv + params.r_disch * (params.c_store * v_new - state.q)) /
        (1.0 + state.d);

    DeviceState next = state;
    next.d = state.d + params.lambda_fatigue * std::fabs(i);
    next.v_prev = v_new;
    return {i, next};
}

// Analytic relaxation while held at `level` for dt seconds.
inline DeviceState relax(const DeviceState& state, const DeviceParams& params,
                         double level, double dt) {
    detail::require(params_valid(params), "relax: invalid params");
    detail::require(state_valid(state), "relax: non-finite state");
    detail::require(detail::finite(level), "relax: non-finite level");
    detail::require(detail::finite(dt) && dt >= 0, "relax: dt must be >= 0");

    const double tau_eff = 1.0 / (1.0 / params.tau_c + 1.0 / params.tau_q);
    const double q_eq = params.c_store * level * tau_eff / params.tau_c;

    DeviceState next = state;
    next.q = q_eq + (state.q - q_eq) * std::exp(-dt / tau_eff);
    next.d = state.d * std::exp(-dt / params.tau_d);
    next.t_now = state.t_now + dt;
    return next;
}

// Transition into the segment's level, then relax over its duration.
inline std::pair<SpikeRecord, DeviceState> apply_segment(const DeviceState& state,
                                                         const DeviceParams& params,
                                                         const VoltageSegment& seg) {
    detail::require(detail::finite(seg.level) && detail::finite(seg.duration) &&
                        seg.duration > 0,
                    "apply_segment: segment duration must be > 0");

    SpikeRecord rec;
    rec.t = state.t_now;
    rec.v_applied = seg.level;
    rec.delta_v = seg.level - state.v_prev;
    rec.q_before = state.q;
    rec.d_before = state.d;

    auto [i, after_spike] = transition_spike(state, params, seg.level);
    rec.i_spike = i;
    return {rec, relax(after_spike, params, seg.level, seg.duration)};
}

// Run a full protocol from `initial` (null state by default). One record
// per segment, in order; deterministic.
inline std::pair<std::vector<SpikeRecord>, DeviceState> run_protocol(
    const DeviceParams& params, const std::vector<VoltageSegment>& segments,
    const DeviceState* initial = nullptr) {
    detail::require(!segments.empty(), "run_protocol: empty protocol");

    DeviceState state = initial ? *initial : null_state(params);
    std::vector<SpikeRecord> waveform;
    waveform.reserve(segments.size());
    for (const auto& seg : segments) {
        auto [rec, next] = apply_segment(state, params, seg);
        waveform.push_back(rec);
        state = next;
    }
    return {std::move(waveform), state};
}

// Rest at the baseline long enough to forget the short-term memory. Emits
// no spike; v_prev is left parked at the baseline.
inline DeviceState settle(const DeviceState& state, const DeviceParams& params,
                          double t_wait) {
    detail::require(detail::finite(t_wait) && t_wait >= 0,
                    "settle: t_wait must be >= 0");
    DeviceState next = relax(state, params, params.v_baseline, t_wait);
    next.v_prev = params.v_baseline;
    return next;
}

// Null test at tolerance eps (relative to the unit working scale; the
// charge comparison scales with c_store when it exceeds one).
inline bool is_null(const DeviceState& state, const DeviceParams& params,
                    double eps = 1e-9) {
    const double q_scale = params.c_store > 1.0 ? params.c_store : 1.0;
    return state.v_prev == params.v_baseline && std::fabs(state.q) <= eps * q_scale &&
           state.d <= eps;
}

}  // namespace memspike
