// The physical-rule suite: structural checks that the model reproduces
// the observed spike behaviours (bounceback, hold growth without
// doubling, diminishing returns, alternation decay, directionality).
// Shared between the test suite and the rules-check CLI command.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "memspike/gates.hpp"

namespace memspike {

struct RuleCheck {
    std::string name;
    bool pass = true;
    int cases = 0;
    std::string detail;  // first failure, if any
};

namespace detail {

// Moderate parameter draws: all magnitudes strictly positive, time
// constants in ranges where the hold-growth bound stays provable.
inline DeviceParams draw_params(Rng& rng) {
    auto log_uniform = [&](double lo, double hi) {
        return lo * std::pow(hi / lo, rng.uniform());
    };
    DeviceParams p;
    p.g_trans = log_uniform(1e-9, 1e-7);
    p.r_disch = log_uniform(1e-9, 1e-7);
    p.c_store = log_uniform(0.3, 3.0);
    p.tau_c = log_uniform(0.5, 3.0);
    p.tau_q = log_uniform(2.0, 5.0);
    p.tau_d = log_uniform(2.0, 10.0);
    p.lambda_fatigue = rng.uniform() * 0.4 / (p.g_trans + p.r_disch * p.c_store);
    return p;
}

inline double forward_return(const DeviceParams& p, double level, double hold,
                             double* forward = nullptr) {
    auto [waveform, final_state] =
        run_protocol(p, {{level, hold}, {0.0, 1.0}});
    (void)final_state;
    if (forward) *forward = waveform[0].i_spike;
    return waveform[1].i_spike;
}

}  // namespace detail

inline constexpr std::array<double, 6> kRuleLevels{-1.0, -0.5, -0.05, 0.05, 0.5, 1.0};
inline constexpr std::array<double, 4> kRuleHolds{0.5, 1.0, 2.0, 4.0};

// |return| < |forward| for a pulse-and-release from null.
inline RuleCheck check_bounceback(int draws = 100, std::uint64_t seed = 2024) {
    RuleCheck rc{"bounceback"};
    detail::Rng rng(seed);
    for (int n = 0; n < draws; ++n) {
        DeviceParams p = detail::draw_params(rng);
        for (double level : kRuleLevels) {
            for (double hold : kRuleHolds) {
                double fwd = 0.0;
                const double ret = detail::forward_return(p, level, hold, &fwd);
                ++rc.cases;
                if (!(std::fabs(ret) < std::fabs(fwd))) {
                    rc.pass = false;
                    if (rc.detail.empty())
                        rc.detail = "draw " + std::to_string(n) + " level " +
                                    std::to_string(level) + " hold " +
                                    std::to_string(hold);
                }
            }
        }
    }
    return rc;
}

// Holding twice as long grows the return spike, but not to double.
inline RuleCheck check_hold_monotonicity(int draws = 100, std::uint64_t seed = 2024) {
    RuleCheck rc{"hold-monotonicity"};
    detail::Rng rng(seed);
    for (int n = 0; n < draws; ++n) {
        DeviceParams p = detail::draw_params(rng);
        for (double level : kRuleLevels) {
            const double r1 = std::fabs(detail::forward_return(p, level, 1.0));
            const double r2 = std::fabs(detail::forward_return(p, level, 2.0));
            ++rc.cases;
            if (!(r2 > r1 && r2 < 2.0 * r1)) {
                rc.pass = false;
                if (rc.detail.empty())
                    rc.detail = "draw " + std::to_string(n) + " level " +
                                std::to_string(level);
            }
        }
    }
    return rc;
}

// Five identical pulse-release cycles: strictly shrinking forward spikes.
inline RuleCheck check_diminishing_returns(const DeviceParams& p = seed_params()) {
    RuleCheck rc{"diminishing-returns"};
    for (double level : kRuleLevels) {
        std::vector<VoltageSegment> protocol;
        for (int k = 0; k < 5; ++k) {
            protocol.push_back({level, 1.0});
            protocol.push_back({0.0, 1.0});
        }
        auto [waveform, final_state] = run_protocol(p, protocol);
        (void)final_state;
        ++rc.cases;
        for (int k = 1; k < 5; ++k) {
            const double prev = std::fabs(waveform[static_cast<std::size_t>(2 * k - 2)].i_spike);
            const double cur = std::fabs(waveform[static_cast<std::size_t>(2 * k)].i_spike);
            if (!(cur < prev)) {
                rc.pass = false;
                if (rc.detail.empty())
                    rc.detail = "level " + std::to_string(level) + " pulse " +
                                std::to_string(k);
            }
        }
    }
    return rc;
}

// Alternating polarity: the second +V -> -V swing responds less than the
// first.
inline RuleCheck check_alternation_decay(const DeviceParams& p = seed_params()) {
    RuleCheck rc{"alternation-decay"};
    for (double level : {0.05, 0.5, 1.0}) {
        auto [waveform, final_state] = run_protocol(
            p, {{+level, 1.0}, {-level, 1.0}, {+level, 1.0}, {-level, 1.0}});
        (void)final_state;
        ++rc.cases;
        if (!(std::fabs(waveform[3].i_spike) < std::fabs(waveform[1].i_spike))) {
            rc.pass = false;
            if (rc.detail.empty()) rc.detail = "level " + std::to_string(level);
        }
    }
    return rc;
}

// Input order matters: [A,B,0] and [B,A,0] return different t1 spikes for
// the encoded bit pair of every scheme.
inline RuleCheck check_directionality(const DeviceParams& p = seed_params()) {
    RuleCheck rc{"directionality"};
    for (SchemeKind kind : {SchemeKind::Magnitude, SchemeKind::Polarity,
                            SchemeKind::Mixed1, SchemeKind::Mixed2}) {
        const LogicScheme scheme{kind, 0.5, 0.001};
        const double va = encode_bit(scheme, 0);
        const double vb = encode_bit(scheme, 1);
        auto [wave_ab, s1] = run_protocol(p, {{va, 1.0}, {vb, 1.0}, {0.0, 1.0}});
        auto [wave_ba, s2] = run_protocol(p, {{vb, 1.0}, {va, 1.0}, {0.0, 1.0}});
        (void)s1;
        (void)s2;
        ++rc.cases;
        if (!(wave_ab[2].i_spike != wave_ba[2].i_spike)) {
            rc.pass = false;
            if (rc.detail.empty()) rc.detail = to_string(kind);
        }
    }
    return rc;
}

// Spike direction follows the level change whenever the transition term
// dominates the stored-charge term.
inline RuleCheck check_sign_rule(int draws = 200, std::uint64_t seed = 99) {
    RuleCheck rc{"sign-rule"};
    detail::Rng rng(seed);
    for (int n = 0; n < draws; ++n) {
        DeviceParams p = detail::draw_params(rng);
        DeviceState s = null_state(p);
        s.v_prev = (rng.uniform() - 0.5) * 2.0;
        s.q = (rng.uniform() - 0.5) * 2.0 * p.c_store;
        s.d = rng.uniform();
        const double v_new = (rng.uniform() - 0.5) * 2.0;
        const double dv = v_new - s.v_prev;
        const double transition = (p.g_trans + p.r_disch * p.c_store) * std::fabs(dv);
        const double stored = p.r_disch * std::fabs(p.c_store * s.v_prev - s.q);
        if (transition <= stored) continue;
        auto [i, next] = transition_spike(s, p, v_new);
        (void)next;
        ++rc.cases;
        if (!((dv > 0 && i > 0) || (dv < 0 && i < 0) || (dv == 0 && i == 0))) {
            rc.pass = false;
            if (rc.detail.empty()) rc.detail = "draw " + std::to_string(n);
        }
    }
    return rc;
}

inline std::vector<RuleCheck> run_rules_suite() {
    return {check_bounceback(),          check_hold_monotonicity(),
            check_diminishing_returns(), check_alternation_decay(),
            check_directionality(),      check_sign_rule()};
}

}  // namespace memspike
