// Timed gate protocols on top of the device model: encode the operand
// bits on the step grid, return to baseline for the response step, fire
// any read pulses, and decode the resulting spike extrema.

#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "memspike/adder.hpp"
#include "memspike/device.hpp"
#include "memspike/logic.hpp"

namespace memspike {

struct ClockConfig {
    double step = 1.0;        // s
    double zero_wait = 40.0;  // s, rest time that zeroes the device
    bool inter_input_return = false;
};

inline bool clock_valid(const ClockConfig& c) {
    return c.step > 0 && c.zero_wait >= 0;
}

// Probe applied after the inputs. Offset counts steps after the response
// step (offset 1 = the slot right after the t1 return).
struct ReadPulse {
    int offset = 1;
    double level = -0.15;
};

enum class DecodeKind { Threshold, InvertedSign, RangeTable };

// Inclusive record-index range; {-1,-1} means the whole waveform.
struct IndexRange {
    int first = -1;
    int last = -1;
};

struct GateSpec {
    std::string name;
    LogicScheme scheme;
    int arity = 1;
    std::vector<ReadPulse> read_pulses;
    int tail_steps = 4;  // baseline/read segments appended after the inputs
    IndexRange response_window{};
    DecodeKind decode = DecodeKind::Threshold;
    ThresholdRule threshold{};
    RangeTable ranges{};
    OrderCalibration order{};
    DeviceParams params_profile{};
};

struct GateResult {
    std::vector<SpikeRecord> waveform;
    int window_first = 0;
    int window_last = 0;
    double max_pos = 0.0;  // >= 0, over the response window
    double min_neg = 0.0;  // <= 0, over the response window
    bool has_t2 = false;
    double t2_value = 0.0;  // record of the first read pulse
    OrderClass order = OrderClass::Undecidable;
    std::map<std::string, double> decoded;

    std::vector<double> window_currents() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(window_last - window_first + 1));
        for (int k = window_first; k <= window_last; ++k)
            out.push_back(waveform[static_cast<std::size_t>(k)].i_spike);
        return out;
    }
};

inline void validate_gate(const GateSpec& gate) {
    detail::require(gate.arity >= 1 && gate.arity <= 16,
                    "gate: arity out of range");
    detail::require(scheme_valid(gate.scheme), "gate: invalid scheme");
    detail::require(gate.tail_steps >= 1, "gate: tail_steps must be >= 1");
    detail::require(params_valid(gate.params_profile), "gate: invalid profile");
    int prev = 0;
    for (const auto& rp : gate.read_pulses) {
        detail::require(rp.offset > prev, "gate: read offsets must increase");
        detail::require(rp.offset < gate.tail_steps,
                        "gate: read offset beyond protocol tail");
        detail::require(detail::finite(rp.level), "gate: non-finite read level");
        prev = rp.offset;
    }
}

inline int input_segment_count(const GateSpec& gate, const ClockConfig& clock) {
    return clock.inter_input_return ? 2 * gate.arity - 1 : gate.arity;
}

// Input word, then the t1 return, then the read slots (baseline in the
// slots without a read pulse).
inline std::vector<VoltageSegment> build_protocol(const GateSpec& gate,
                                                  const std::vector<int>& inputs,
                                                  const ClockConfig& clock) {
    validate_gate(gate);
    detail::require(clock_valid(clock), "build_protocol: invalid clock");
    detail::require(static_cast<int>(inputs.size()) == gate.arity,
                    "build_protocol: input count does not match gate arity");

    const double base = gate.params_profile.v_baseline;
    auto segments = encode_word(gate.scheme, inputs, clock.step,
                                clock.inter_input_return, base);
    std::size_t read_idx = 0;
    for (int slot = 0; slot < gate.tail_steps; ++slot) {
        double level = base;
        if (read_idx < gate.read_pulses.size() &&
            gate.read_pulses[read_idx].offset == slot) {
            level = gate.read_pulses[read_idx].level;
            ++read_idx;
        }
        segments.push_back({level, clock.step});
    }
    return segments;
}

// One gate evaluation from the null state. The caller is responsible for
// zeroing afterwards (settle(zero_wait) or a fresh state).
inline GateResult run_gate(const GateSpec& gate, const std::vector<int>& inputs,
                           const ClockConfig& clock = ClockConfig{}) {
    auto protocol = build_protocol(gate, inputs, clock);
    auto [waveform, final_state] = run_protocol(gate.params_profile, protocol);
    (void)final_state;

    GateResult result;
    result.waveform = std::move(waveform);

    const int n = static_cast<int>(result.waveform.size());
    result.window_first = gate.response_window.first < 0 ? 0 : gate.response_window.first;
    result.window_last = gate.response_window.last < 0 ? n - 1 : gate.response_window.last;
    detail::require(result.window_first >= 0 && result.window_last < n &&
                        result.window_first <= result.window_last,
                    "run_gate: response window out of range");

    for (int k = result.window_first; k <= result.window_last; ++k) {
        const double i = result.waveform[static_cast<std::size_t>(k)].i_spike;
        if (i > result.max_pos) result.max_pos = i;
        if (i < result.min_neg) result.min_neg = i;
    }

    const int n_inputs = input_segment_count(gate, clock);
    if (!gate.read_pulses.empty()) {
        const int idx = n_inputs + gate.read_pulses.front().offset;
        result.has_t2 = true;
        result.t2_value = result.waveform[static_cast<std::size_t>(idx)].i_spike;
    }

    switch (gate.decode) {
        case DecodeKind::Threshold: {
            const double extremum = gate.threshold.sense == ThresholdSense::PositiveExceeds
                                        ? result.max_pos
                                        : result.min_neg;
            result.decoded["out"] = decode_threshold(extremum, gate.threshold);
            break;
        }
        case DecodeKind::InvertedSign: {
            const double t1 = result.waveform[static_cast<std::size_t>(n_inputs)].i_spike;
            result.decoded["out"] = t1 > 0 ? 1 : 0;
            break;
        }
        case DecodeKind::RangeTable: {
            AdderOutput out = decode_full_adder(result, gate.ranges);
            result.decoded["value"] = out.value;
            result.decoded["sum"] = out.sum_bit;
            result.decoded["carry"] = out.carry_bit;
            result.decoded["has_one"] = out.has_one ? 1 : 0;
            result.decoded["has_zero"] = out.has_zero ? 1 : 0;
            result.decoded["carry_flag"] = out.carry_flag ? 1 : 0;
            result.decoded["consistent"] = out.consistent ? 1 : 0;
            if (result.has_t2 && !gate.order.cells.empty())
                result.order = decode_input_order(result.t2_value, gate.order);
            break;
        }
    }
    return result;
}

struct TruthRow {
    std::vector<int> inputs;
    GateResult result;
};

struct TruthTable {
    std::vector<TruthRow> rows;
};

// All 2^arity rows in lexicographic input order, each from a fresh null
// device.
inline TruthTable truth_table(const GateSpec& gate,
                              const ClockConfig& clock = ClockConfig{}) {
    validate_gate(gate);
    TruthTable table;
    const int rows = 1 << gate.arity;
    table.rows.reserve(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        std::vector<int> inputs(static_cast<std::size_t>(gate.arity));
        for (int b = 0; b < gate.arity; ++b)
            inputs[static_cast<std::size_t>(b)] = (r >> (gate.arity - 1 - b)) & 1;
        table.rows.push_back({inputs, run_gate(gate, inputs, clock)});
    }
    return table;
}

// Inclusive-OR over the negative response: 1 iff the deepest spike passes
// the threshold.
inline int or_readout(const GateResult& result, const ThresholdRule& rule) {
    detail::require(rule.sense == ThresholdSense::NegativeExceeds,
                    "or_readout: rule must be negative-exceeds");
    return decode_threshold(result.min_neg, rule);
}

// ---- gate constructions --------------------------------------------------
// Protocol/decode wiring only; callers supply the device profile (and, for
// the adder, the decode table and order cells).

// Polarity inverter: one input pulse, output read from the sign of the
// return spike.
inline GateSpec not_gate_shape() {
    GateSpec g;
    g.name = "not";
    g.scheme = {SchemeKind::Polarity, 0.5, 0.001};
    g.arity = 1;
    g.tail_steps = 1;
    g.response_window = {1, 1};
    g.decode = DecodeKind::InvertedSign;
    return g;
}

// Two-input AND under mixed logic 2 (one = -0.5 V, zero = +0.001 V);
// output is 1 when the positive response clears 0.55 uA.
inline GateSpec and_gate_shape() {
    GateSpec g;
    g.name = "and";
    g.scheme = {SchemeKind::Mixed2, 0.5, 0.001};
    g.arity = 2;
    g.tail_steps = 2;
    g.decode = DecodeKind::Threshold;
    g.threshold = {0.55e-6, ThresholdSense::PositiveExceeds};
    return g;
}

// Same protocol as the AND gate, decoding the negative response instead:
// any input containing a one drives a spike past the threshold.
inline GateSpec or_readout_gate_shape() {
    GateSpec g = and_gate_shape();
    g.name = "or-readout";
    g.threshold = {0.55e-6, ThresholdSense::NegativeExceeds};
    return g;
}

// Three-bit adder: inputs at tA..tC, response step at t1, a -0.15 V read
// at t2, then baseline through t4. Decoded against a RangeTable.
inline GateSpec full_adder_gate_shape() {
    GateSpec g;
    g.name = "full-adder";
    g.scheme = {SchemeKind::Mixed2, 0.5, 0.001};
    g.arity = 3;
    g.read_pulses = {{1, -0.15}};
    g.tail_steps = 4;
    g.decode = DecodeKind::RangeTable;
    g.ranges = paper_range_table();
    return g;
}

}  // namespace memspike
