// Bit-to-voltage assignations and threshold decoding.
//
// Four schemes over a high magnitude M and a low magnitude m:
//
//            one     zero
//   Magnitude +M      +m
//   Polarity  +M      -M
//   Mixed1    +M      -m
//   Mixed2    -M      +m

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "memspike/device.hpp"

namespace memspike {

enum class SchemeKind { Magnitude, Polarity, Mixed1, Mixed2 };

struct LogicScheme {
    SchemeKind kind = SchemeKind::Mixed2;
    double m_high = 0.5;    // M, volts, > 0
    double m_low = 0.001;   // m, volts, 0 < m < M
};

inline bool scheme_valid(const LogicScheme& s) {
    return s.m_low > 0 && s.m_high > s.m_low;
}

inline double encode_bit(const LogicScheme& scheme, int bit) {
    detail::require(scheme_valid(scheme), "encode_bit: invalid scheme");
    detail::require(bit == 0 || bit == 1, "encode_bit: bit must be 0 or 1");
    switch (scheme.kind) {
        case SchemeKind::Magnitude: return bit ? scheme.m_high : scheme.m_low;
        case SchemeKind::Polarity:  return bit ? scheme.m_high : -scheme.m_high;
        case SchemeKind::Mixed1:    return bit ? scheme.m_high : -scheme.m_low;
        case SchemeKind::Mixed2:    return bit ? -scheme.m_high : scheme.m_low;
    }
    throw std::logic_error("encode_bit: unknown scheme kind");
}

// One segment per bit, each one `step` long. With inter_input_return a
// baseline segment is inserted between inputs (not after the last one;
// the sequencer owns the response tail).
inline std::vector<VoltageSegment> encode_word(const LogicScheme& scheme,
                                               const std::vector<int>& bits,
                                               double step,
                                               bool inter_input_return,
                                               double v_baseline = 0.0) {
    detail::require(!bits.empty(), "encode_word: empty bit sequence");
    detail::require(step > 0, "encode_word: step must be > 0");

    std::vector<VoltageSegment> segments;
    segments.reserve(inter_input_return ? bits.size() * 2 - 1 : bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (inter_input_return && k > 0)
            segments.push_back({v_baseline, step});
        segments.push_back({encode_bit(scheme, bits[k]), step});
    }
    return segments;
}

enum class ThresholdSense { PositiveExceeds, NegativeExceeds };

struct ThresholdRule {
    double threshold = 0.55e-6;  // amperes, > 0
    ThresholdSense sense = ThresholdSense::PositiveExceeds;
};

// Strict comparison; boundary equality decodes to 0.
inline int decode_threshold(double extremum, const ThresholdRule& rule) {
    detail::require(detail::finite(extremum), "decode_threshold: non-finite input");
    detail::require(rule.threshold > 0, "decode_threshold: threshold must be > 0");
    if (rule.sense == ThresholdSense::PositiveExceeds)
        return extremum > rule.threshold ? 1 : 0;
    return extremum < -rule.threshold ? 1 : 0;
}

inline std::string to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::Magnitude: return "magnitude";
        case SchemeKind::Polarity:  return "polarity";
        case SchemeKind::Mixed1:    return "mixed1";
        case SchemeKind::Mixed2:    return "mixed2";
    }
    return "?";
}

inline SchemeKind scheme_kind_from_string(const std::string& s) {
    if (s == "magnitude") return SchemeKind::Magnitude;
    if (s == "polarity") return SchemeKind::Polarity;
    if (s == "mixed1") return SchemeKind::Mixed1;
    if (s == "mixed2") return SchemeKind::Mixed2;
    throw std::invalid_argument("unknown logic scheme: " + s);
}

}  // namespace memspike
