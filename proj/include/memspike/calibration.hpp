// Constrained parameter identification for the device model. The paper
// publishes target current ranges but no device equations, so the free
// coefficients are fitted by a derivative-free pattern search over
// log-scaled parameters, with a hinge loss that is zero exactly when
// every constraint interval is met.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memspike/gates.hpp"

namespace memspike {

enum class ObservableKind { MaxPos, MinNeg, RecordAt, DecodedOutput };

// Half-open-aware target interval in the observable's units.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double x) const {
        if (lo_open ? !(x > lo) : !(x >= lo)) return false;
        if (hi_open ? !(x < hi) : !(x <= hi)) return false;
        return true;
    }
    // Distance to the closure; open boundaries look identical from
    // outside, the strictness is enforced by contains().
    double distance(double x) const {
        if (x < lo) return lo - x;
        if (x > hi) return x - hi;
        return 0.0;
    }
};

struct RunSpec {
    GateSpec gate;
    std::vector<int> inputs;
    ClockConfig clock;
};

struct Constraint {
    std::string id;
    RunSpec run;
    ObservableKind kind = ObservableKind::MaxPos;
    // Logical record slot for RecordAt: inputs occupy 0..arity-1 and the
    // protocol tail follows at arity+0, arity+1, ... regardless of
    // whether baseline returns are inserted between the inputs.
    int record_index = 0;
    std::string decoded_key;  // for DecodedOutput
    Interval target;          // amperes, or exact decoded value via lo==hi
    double weight = 1.0;
    double scale = 1e-9;      // normalization of the hinge distance
};

inline int physical_record_index(int logical, int arity, bool inter_input_return) {
    if (!inter_input_return) return logical;
    return logical < arity ? 2 * logical : logical + arity - 1;
}

enum class FreeParam { GTrans, RDisch, CStore, Lambda, TauC, TauQ, TauD };

struct FreeParamSpec {
    FreeParam id;
    double lo;  // > 0; the search works on log10(value)
    double hi;
};

// Default free set: the five positive magnitude parameters. tau_q stays
// pinned at its measured 3.5 s unless explicitly freed.
inline std::vector<FreeParamSpec> default_free_set() {
    return {
        {FreeParam::GTrans, 1e-12, 1e-6},
        {FreeParam::RDisch, 1e-10, 1e-6},
        {FreeParam::CStore, 0.05, 20.0},
        {FreeParam::Lambda, 1e2, 1e10},
        {FreeParam::TauC, 0.1, 10.0},
    };
}

struct CalibrationProblem {
    DeviceParams seed;
    std::vector<FreeParamSpec> free_params = default_free_set();
    std::vector<bool> return_options = {false};  // inter_input_return branches
    std::vector<Constraint> constraints;
    int budget = 100000;
    std::uint64_t rng_seed = 42;
};

namespace detail {

inline double get_param(const DeviceParams& p, FreeParam id) {
    switch (id) {
        case FreeParam::GTrans: return p.g_trans;
        case FreeParam::RDisch: return p.r_disch;
        case FreeParam::CStore: return p.c_store;
        case FreeParam::Lambda: return p.lambda_fatigue;
        case FreeParam::TauC: return p.tau_c;
        case FreeParam::TauQ: return p.tau_q;
        case FreeParam::TauD: return p.tau_d;
    }
    return 0;
}

inline void set_param(DeviceParams& p, FreeParam id, double v) {
    switch (id) {
        case FreeParam::GTrans: p.g_trans = v; break;
        case FreeParam::RDisch: p.r_disch = v; break;
        case FreeParam::CStore: p.c_store = v; break;
        case FreeParam::Lambda: p.lambda_fatigue = v; break;
        case FreeParam::TauC: p.tau_c = v; break;
        case FreeParam::TauQ: p.tau_q = v; break;
        case FreeParam::TauD: p.tau_d = v; break;
    }
}

}  // namespace detail

struct ConstraintReport {
    std::string id;
    double observed = 0.0;
    bool satisfied = false;
    double distance = 0.0;  // scaled hinge
};

struct Evaluation {
    double loss = std::numeric_limits<double>::infinity();
    bool all_satisfied = false;
    std::vector<ConstraintReport> reports;
};

inline std::string free_param_name(FreeParam id) {
    switch (id) {
        case FreeParam::GTrans: return "g_trans";
        case FreeParam::RDisch: return "r_disch";
        case FreeParam::CStore: return "c_store";
        case FreeParam::Lambda: return "lambda_fatigue";
        case FreeParam::TauC: return "tau_c";
        case FreeParam::TauQ: return "tau_q";
        case FreeParam::TauD: return "tau_d";
    }
    return "?";
}

// Evaluate every constraint for one parameter set. Runs are shared across
// constraints that name the same gate/inputs/clock.
inline Evaluation evaluate_constraints(const DeviceParams& params,
                                       const std::vector<Constraint>& constraints,
                                       bool inter_input_return) {
    Evaluation ev;
    ev.reports.reserve(constraints.size());
    double total = 0.0;
    bool all_ok = true;

    std::map<std::string, GateResult> cache;
    for (const auto& c : constraints) {
        std::string key = c.run.gate.name;
        for (int b : c.run.inputs) key += char('0' + b);

        auto it = cache.find(key);
        if (it == cache.end()) {
            GateSpec gate = c.run.gate;
            gate.params_profile = params;
            ClockConfig clock = c.run.clock;
            clock.inter_input_return = inter_input_return;
            GateResult r;
            try {
                r = run_gate(gate, c.run.inputs, clock);
            } catch (const std::exception&) {
                ev.loss = std::numeric_limits<double>::infinity();
                ev.all_satisfied = false;
                return ev;
            }
            it = cache.emplace(key, std::move(r)).first;
        }
        const GateResult& r = it->second;

        double observed = 0.0;
        double hinge = 0.0;
        bool ok = false;
        switch (c.kind) {
            case ObservableKind::MaxPos:
                observed = r.max_pos;
                break;
            case ObservableKind::MinNeg:
                observed = r.min_neg;
                break;
            case ObservableKind::RecordAt: {
                const int idx = physical_record_index(c.record_index, c.run.gate.arity,
                                                      inter_input_return);
                const int n = static_cast<int>(r.waveform.size());
                detail::require(idx >= 0 && idx < n,
                                "constraint: record index out of range");
                observed = r.waveform[static_cast<std::size_t>(idx)].i_spike;
                break;
            }
            case ObservableKind::DecodedOutput: {
                auto d = r.decoded.find(c.decoded_key);
                detail::require(d != r.decoded.end(), "constraint: unknown decoded key");
                observed = d->second;
                break;
            }
        }

        ok = c.target.contains(observed);
        if (c.kind == ObservableKind::DecodedOutput) {
            hinge = ok ? 0.0 : 1.0;  // mismatch costs one weight unit
        } else {
            hinge = c.target.distance(observed) / c.scale;
            // a boundary hit on an open endpoint is unsatisfied at zero
            // hinge; nudge so loss==0 iff all constraints hold
            if (!ok && hinge == 0.0) hinge = 1e-9;
        }

        ev.reports.push_back({c.id, observed, ok, hinge});
        total += c.weight * hinge;
        all_ok = all_ok && ok;
    }
    ev.loss = total;
    ev.all_satisfied = all_ok;
    return ev;
}

inline double loss(const DeviceParams& params, const CalibrationProblem& problem,
                   bool inter_input_return = false) {
    for (const auto& f : problem.free_params) {
        const double v = detail::get_param(params, f.id);
        detail::require(v >= f.lo && v <= f.hi, "loss: params outside bounds");
    }
    return evaluate_constraints(params, problem.constraints, inter_input_return).loss;
}

struct CalibrationResult {
    DeviceParams best;
    bool inter_input_return = false;
    double residual = std::numeric_limits<double>::infinity();
    bool feasible = false;
    int evaluations = 0;
    std::vector<ConstraintReport> reports;
    // digest of the accepted-point sequence, for determinism checks
    std::vector<double> accepted_losses;
};

// Deterministic direct search over log10-scaled free parameters. Each
// round runs a pattern search (evaluate the +/- axis proposals in a fixed
// order, accept the best strict improvement, halve the step on failure)
// until the step collapses, then restarts: odd rounds from a seeded
// log-uniform draw over the box, even rounds from a seeded perturbation
// of the incumbent. Discrete inter_input_return options are explored as
// separate branches. Everything is a pure function of (problem, rng_seed).
inline CalibrationResult calibrate(const CalibrationProblem& problem) {
    detail::require(problem.budget >= 1, "calibrate: budget must be >= 1");
    detail::require(!problem.constraints.empty(), "calibrate: no constraints");
    detail::require(!problem.return_options.empty(), "calibrate: no protocol branch");
    for (const auto& f : problem.free_params)
        detail::require(f.lo > 0 && f.lo < f.hi, "calibrate: invalid bounds");

    const std::size_t dim = problem.free_params.size();
    CalibrationResult result;
    int evals_used = 0;

    const int branch_budget =
        problem.budget / static_cast<int>(problem.return_options.size());

    for (bool branch : problem.return_options) {
        auto to_params = [&](const std::vector<double>& logs) {
            DeviceParams p = problem.seed;
            for (std::size_t k = 0; k < dim; ++k)
                detail::set_param(p, problem.free_params[k].id,
                                  std::pow(10.0, logs[k]));
            return p;
        };

        int branch_evals = 0;
        auto evaluate = [&](const std::vector<double>& logs) {
            ++branch_evals;
            ++evals_used;
            return evaluate_constraints(to_params(logs), problem.constraints, branch);
        };

        // start from the seed projected into the box
        std::vector<double> x(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& f = problem.free_params[k];
            x[k] = std::log10(std::clamp(detail::get_param(problem.seed, f.id),
                                         f.lo, f.hi));
        }

        Evaluation best_ev = evaluate(x);
        std::vector<double> best_x = x;
        result.accepted_losses.push_back(best_ev.loss);

        detail::Rng rng(problem.rng_seed * 2 + (branch ? 1 : 0));
        std::vector<double> cur_x = best_x;
        Evaluation cur_ev = best_ev;
        double step = 0.5;  // decades
        const double step_min = 1e-4;
        int round = 0;

        auto adopt = [&](const std::vector<double>& y, const Evaluation& ev) {
            if (ev.loss < best_ev.loss) {
                best_x = y;
                best_ev = ev;
                result.accepted_losses.push_back(ev.loss);
            }
        };

        auto clamp_axis = [&](std::size_t k, double v) {
            const auto& f = problem.free_params[k];
            return std::clamp(v, std::log10(f.lo), std::log10(f.hi));
        };

        // Hooke-Jeeves exploratory sweep: probe +step then -step on each
        // axis in order, keeping improvements greedily.
        auto explore = [&](std::vector<double> z, Evaluation ez, double h) {
            for (std::size_t k = 0; k < dim && branch_evals < branch_budget; ++k) {
                for (double sign : {+1.0, -1.0}) {
                    if (branch_evals >= branch_budget) break;
                    std::vector<double> y = z;
                    y[k] = clamp_axis(k, z[k] + sign * h);
                    if (y[k] == z[k]) continue;
                    Evaluation ev = evaluate(y);
                    if (ev.loss < ez.loss) {
                        z = std::move(y);
                        ez = std::move(ev);
                        break;
                    }
                }
            }
            return std::make_pair(std::move(z), std::move(ez));
        };

        while (branch_evals < branch_budget && !best_ev.all_satisfied) {
            auto [z, fz] = explore(cur_x, cur_ev, step);
            if (fz.loss < cur_ev.loss) {
                // pattern moves: extrapolate along the improvement
                // direction while it keeps paying
                std::vector<double> prev = cur_x;
                cur_x = std::move(z);
                cur_ev = std::move(fz);
                adopt(cur_x, cur_ev);
                while (branch_evals < branch_budget && !best_ev.all_satisfied) {
                    std::vector<double> trial(dim);
                    bool moved = false;
                    for (std::size_t k = 0; k < dim; ++k) {
                        trial[k] = clamp_axis(k, 2.0 * cur_x[k] - prev[k]);
                        moved = moved || trial[k] != cur_x[k];
                    }
                    if (!moved) break;
                    Evaluation et = evaluate(trial);
                    auto [z2, fz2] = explore(trial, std::move(et), step);
                    if (fz2.loss < cur_ev.loss) {
                        prev = cur_x;
                        cur_x = std::move(z2);
                        cur_ev = std::move(fz2);
                        adopt(cur_x, cur_ev);
                    } else {
                        break;
                    }
                }
                continue;
            }
            step *= 0.5;
            if (step >= step_min) continue;

            // stalled: restart. Rounds alternate between global draws,
            // wide perturbations of the incumbent, and tight ones that
            // slip the search past multi-axis ridges.
            ++round;
            const int flavor = round % 3;
            const double radius = flavor == 2 ? 0.25 : 0.02;
            std::vector<double> y(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                const auto& f = problem.free_params[k];
                const double lo = std::log10(f.lo);
                const double hi = std::log10(f.hi);
                if (flavor == 1)
                    y[k] = lo + rng.uniform() * (hi - lo);
                else
                    y[k] = std::clamp(
                        best_x[k] + (rng.uniform() - 0.5) * 2.0 * radius * (hi - lo),
                        lo, hi);
            }
            if (branch_evals >= branch_budget) break;
            cur_x = y;
            cur_ev = evaluate(y);
            adopt(cur_x, cur_ev);
            step = flavor == 0 ? 0.02 : 0.5;
        }

        if (best_ev.loss < result.residual) {
            result.best = to_params(best_x);
            result.inter_input_return = branch;
            result.residual = best_ev.loss;
            result.feasible = best_ev.all_satisfied;
            result.reports = best_ev.reports;
        }
        if (result.feasible) break;
    }

    result.evaluations = evals_used;
    return result;
}

// ---- published targets -----------------------------------------------------

// The published decode ranges and gate behaviours as a constraint set:
// per adder triple, the positive-extremum interval for the numerical sum
// plus the required presence records (a full-size spike at the first one,
// a diminished spike at a second one, a shallow read spike whenever a
// zero was input); four AND classifications; two NOT sign checks.
// 32 constraints over 14 distinct runs.
inline std::vector<Constraint> build_paper_constraints() {
    std::vector<Constraint> cs;
    const RangeTable t = paper_range_table();
    const ClockConfig clock{};

    const GateSpec fa = full_adder_gate_shape();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                const std::vector<int> bits{a, b, c};
                const int s = a + b + c;
                const std::string tag =
                    std::to_string(a) + std::to_string(b) + std::to_string(c);
                const RunSpec run{fa, bits, clock};

                Constraint sum;
                sum.id = "fa-" + tag + "-sum";
                sum.run = run;
                sum.kind = ObservableKind::MaxPos;
                switch (s) {
                    case 0: sum.target = {0.0, t.sum1_floor, false, true}; break;
                    case 1: sum.target = {t.sum1_floor, t.sum2_floor, false, true}; break;
                    case 2: sum.target = {t.sum2_floor, t.sum2_ceil, false, true}; break;
                    default:
                        sum.target = {t.sum3_floor,
                                      std::numeric_limits<double>::infinity(), true,
                                      true};
                }
                cs.push_back(sum);

                int first_one = -1, second_one = -1;
                for (int k = 0; k < 3; ++k) {
                    if (!bits[static_cast<std::size_t>(k)]) continue;
                    if (first_one < 0) first_one = k;
                    else if (second_one < 0) second_one = k;
                }

                if (s >= 1) {
                    Constraint one;
                    one.id = "fa-" + tag + "-has-one";
                    one.run = run;
                    one.kind = ObservableKind::RecordAt;
                    one.record_index = first_one;
                    one.target = {t.one_floor, t.one_ceil, true, false};
                    cs.push_back(one);
                }
                if (s >= 2) {
                    Constraint carry;
                    carry.id = "fa-" + tag + "-carry";
                    carry.run = run;
                    carry.kind = ObservableKind::RecordAt;
                    carry.record_index = second_one;
                    carry.target = {t.one_ceil, t.carry_ceil, true, false};
                    cs.push_back(carry);
                }
                if (s <= 2) {
                    // zero evidence: the read spike stays shallow when the
                    // stored charge carries a zero's worth of history; the
                    // all-zeros run shows it at the response step already
                    Constraint zero;
                    zero.id = "fa-" + tag + "-has-zero";
                    zero.run = run;
                    zero.kind = ObservableKind::RecordAt;
                    zero.record_index = s == 0 ? fa.arity + 0 : fa.arity + 1;
                    zero.target = {t.carry_ceil, t.zero_ceil, true, false};
                    cs.push_back(zero);
                }
            }
        }
    }

    const GateSpec and_gate = and_gate_shape();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Constraint c;
            c.id = "and-" + std::to_string(a) + std::to_string(b);
            c.run = {and_gate, {a, b}, clock};
            c.kind = ObservableKind::MaxPos;
            if (a == 1 && b == 1)
                c.target = {and_gate.threshold.threshold,
                            std::numeric_limits<double>::infinity(), true, true};
            else
                c.target = {0.0, and_gate.threshold.threshold, false, false};
            c.scale = 0.1e-6;
            cs.push_back(c);
        }
    }

    const GateSpec not_gate = not_gate_shape();
    for (int a = 0; a < 2; ++a) {
        Constraint c;
        c.id = "not-" + std::to_string(a);
        c.run = {not_gate, {a}, clock};
        c.kind = ObservableKind::RecordAt;
        c.record_index = not_gate.arity + 0;
        if (a == 1)
            c.target = {-std::numeric_limits<double>::infinity(), 0.0, true, true};
        else
            c.target = {0.0, std::numeric_limits<double>::infinity(), true, true};
        cs.push_back(c);
    }

    return cs;
}

// Constraints restricted to one gate family (by run gate name).
inline std::vector<Constraint> constraints_for_gate(
    const std::vector<Constraint>& all, const std::string& gate_name) {
    std::vector<Constraint> out;
    for (const auto& c : all)
        if (c.run.gate.name == gate_name) out.push_back(c);
    return out;
}

}  // namespace memspike
