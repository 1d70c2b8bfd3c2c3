// Seven-range current classifier for the single-memristor full adder,
// plus the experimental input-order recovery from the t2 read spike.
//
// Negative records carry presence flags (a one was input / a carry
// occurred / a zero was input); the maximum positive response encodes the
// numerical sum 0..3. Every response-window record is classified and the
// flags are OR-ed, so one waveform can report several conclusions.

#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "memspike/device.hpp"

namespace memspike {

// Interval boundaries in amperes. Negative ranges are half-open toward
// the larger magnitude; the 12.3-12.5 nA dead zone between the value-2
// and value-3 ranges is bridged by a single configurable cut.
struct RangeTable {
    double one_floor = -20e-9;     // exclusive
    double one_ceil = -17.5e-9;    // inclusive
    double carry_ceil = -5e-9;     // inclusive
    double zero_ceil = 0.0;        // inclusive
    double sum1_floor = 5e-9;
    double sum2_floor = 9e-9;
    double sum2_ceil = 12.3e-9;
    double sum3_floor = 12.5e-9;
    double val3_boundary = 12.4e-9;  // in [sum2_ceil, sum3_floor]
};

inline bool range_table_valid(const RangeTable& t) {
    return t.one_floor < t.one_ceil && t.one_ceil < t.carry_ceil &&
           t.carry_ceil < t.zero_ceil + 1e-300 && t.carry_ceil <= t.zero_ceil &&
           0.0 < t.sum1_floor && t.sum1_floor < t.sum2_floor &&
           t.sum2_floor < t.sum2_ceil && t.sum2_ceil <= t.val3_boundary &&
           t.val3_boundary <= t.sum3_floor;
}

// The published decode table.
inline RangeTable paper_range_table() { return RangeTable{}; }

struct NegFlags {
    bool has_one = false;
    bool carry_flag = false;
    bool has_zero = false;
};

// Total monotone step function of the positive extremum.
inline int classify_positive(double max_pos, const RangeTable& t = RangeTable{}) {
    detail::require(detail::finite(max_pos) && max_pos >= 0,
                    "classify_positive: needs a non-negative extremum");
    if (max_pos < t.sum1_floor) return 0;
    if (max_pos < t.sum2_floor) return 1;
    if (max_pos <= t.val3_boundary) return 2;
    return 3;
}

// Range membership of one non-positive record. Values beyond the deepest
// boundary set no flag.
inline NegFlags classify_negative(double min_neg, const RangeTable& t = RangeTable{}) {
    detail::require(detail::finite(min_neg) && min_neg <= 0,
                    "classify_negative: needs a non-positive record");
    NegFlags f;
    f.has_one = min_neg > t.one_floor && min_neg <= t.one_ceil;
    f.carry_flag = min_neg > t.one_ceil && min_neg <= t.carry_ceil;
    f.has_zero = min_neg > t.carry_ceil && min_neg <= t.zero_ceil;
    return f;
}

struct AdderOutput {
    int value = 0;      // 0..3, from the positive extremum
    int sum_bit = 0;    // value mod 2
    int carry_bit = 0;  // value div 2
    bool has_one = false;
    bool carry_flag = false;
    bool has_zero = false;
    bool consistent = true;  // carry_flag == carry_bit
};

// Decode from the window extremum and the per-record currents of the
// response window.
inline AdderOutput decode_full_adder_records(double max_pos,
                                             std::span<const double> window_records,
                                             const RangeTable& t = RangeTable{}) {
    AdderOutput out;
    out.value = classify_positive(max_pos, t);
    out.sum_bit = out.value % 2;
    out.carry_bit = out.value / 2;
    for (double i : window_records) {
        if (i > 0) continue;
        NegFlags f = classify_negative(i, t);
        out.has_one = out.has_one || f.has_one;
        out.carry_flag = out.carry_flag || f.carry_flag;
        out.has_zero = out.has_zero || f.has_zero;
    }
    out.consistent = (out.carry_flag ? 1 : 0) == out.carry_bit;
    return out;
}

// GateResult-shaped overload: anything exposing max_pos and
// window_currents().
template <class Result>
AdderOutput decode_full_adder(const Result& result, const RangeTable& t = RangeTable{}) {
    const auto records = result.window_currents();
    return decode_full_adder_records(result.max_pos,
                                     std::span<const double>(records.data(), records.size()),
                                     t);
}

// ---- input-order recovery (experimental) --------------------------------

enum class OrderClass { PosA, PosB, PosC, Uniform, Undecidable };

inline std::string to_string(OrderClass c) {
    switch (c) {
        case OrderClass::PosA: return "pos-A";
        case OrderClass::PosB: return "pos-B";
        case OrderClass::PosC: return "pos-C";
        case OrderClass::Uniform: return "uniform";
        case OrderClass::Undecidable: return "undecidable";
    }
    return "?";
}

// Calibrated cut list: disjoint t2 cells, each mapped to an order class.
// Produced against the reference model, not against published data.
struct OrderCell {
    double lo = 0.0;  // amperes, inclusive
    double hi = 0.0;  // amperes, inclusive
    OrderClass cls = OrderClass::Undecidable;
};

struct OrderCalibration {
    std::vector<OrderCell> cells;
};

inline OrderClass decode_input_order(double t2_spike, const OrderCalibration& calib) {
    detail::require(detail::finite(t2_spike), "decode_input_order: non-finite t2");
    for (const auto& cell : calib.cells) {
        if (t2_spike >= cell.lo && t2_spike <= cell.hi) return cell.cls;
    }
    return OrderClass::Undecidable;
}

}  // namespace memspike
