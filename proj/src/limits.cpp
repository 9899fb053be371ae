#include "unitsecant/limits.hpp"

#include <deque>
#include <functional>
#include <sstream>

namespace unitsecant {

void LimitConfig::validate() const {
    if (!(h0 > 0.0)) throw Error("LimitConfig: h0 must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw Error("LimitConfig: rho must lie in (0, 1)");
    if (!(angle_tol > 0.0)) throw Error("LimitConfig: angle_tol must be positive");
    if (window < 2) throw Error("LimitConfig: window must be at least 2");
    if (max_steps < window) throw Error("LimitConfig: max_steps must be at least window");
}

int steps_used(const LimitOutcome& o) {
    return std::visit([](const auto& v) { return v.steps_used; }, o);
}

std::string describe(const LimitOutcome& o) {
    std::ostringstream out;
    out.precision(17);
    if (const auto* c = std::get_if<Converged>(&o)) {
        out << "converged (" << c->direction.x << ", " << c->direction.y << ", " << c->direction.z
            << ") after " << c->steps_used << " probes";
    } else if (const auto* d = std::get_if<Degenerate>(&o)) {
        out << "degenerate: " << d->reason;
    } else {
        out << "undetermined: " << std::get<Undetermined>(o).diagnostic;
    }
    return out.str();
}

namespace {

enum class ProbeStatus { Ok, ZeroChord, OutOfDomain };

struct Probe {
    ProbeStatus status = ProbeStatus::Ok;
    Vec3 estimate;
};

Probe probe_secant(const Curve& curve, double t0, double offset) {
    try {
        return {ProbeStatus::Ok, secant_direction(curve, t0, t0 + offset).unit_dir};
    } catch (const ZeroChord&) {
        return {ProbeStatus::ZeroChord, {}};
    } catch (const DomainError&) {
        return {ProbeStatus::OutOfDomain, {}};
    }
}

/// Most recent `size` estimates; stable when they are pairwise within `tol`.
class DirectionWindow {
public:
    explicit DirectionWindow(std::size_t size) : size_(size) {}

    void push(const Vec3& v) {
        recent_.push_back(v);
        if (recent_.size() > size_) recent_.pop_front();
    }

    bool full() const { return recent_.size() == size_; }
    const Vec3& last() const { return recent_.back(); }

    double max_pairwise_angle() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < recent_.size(); ++i) {
            for (std::size_t j = i + 1; j < recent_.size(); ++j) {
                worst = std::max(worst, angular_distance(recent_[i], recent_[j]));
            }
        }
        return worst;
    }

    double min_pairwise_angle() const {
        double best = 4.0;
        for (std::size_t i = 0; i < recent_.size(); ++i) {
            for (std::size_t j = i + 1; j < recent_.size(); ++j) {
                best = std::min(best, angular_distance(recent_[i], recent_[j]));
            }
        }
        return best;
    }

private:
    std::size_t size_;
    std::deque<Vec3> recent_;
};

LimitOutcome stabilize(int probes, const LimitConfig& cfg, const std::function<Probe(int)>& next) {
    DirectionWindow window(static_cast<std::size_t>(cfg.window));
    int zero_chords = 0;
    int out_of_domain = 0;
    int valid = 0;
    for (int i = 0; i < probes; ++i) {
        const Probe p = next(i);
        if (p.status == ProbeStatus::ZeroChord) {
            ++zero_chords;
            continue;
        }
        if (p.status == ProbeStatus::OutOfDomain) {
            ++out_of_domain;
            continue;
        }
        ++valid;
        window.push(p.estimate);
        if (window.full()) {
            const double spread = window.max_pairwise_angle();
            if (spread <= cfg.angle_tol) return Converged{window.last(), spread, i + 1};
        }
    }

    if (out_of_domain == probes) return Degenerate{"side not in domain", probes};
    if (2 * zero_chords > probes) return Degenerate{"chord vanishes: no points distinct from A", probes};
    if (valid < cfg.window) return Undetermined{"too few evaluable probes", probes};
    if (window.min_pairwise_angle() > 10.0 * cfg.angle_tol) return Undetermined{"oscillating", probes};
    return Undetermined{"slow convergence", probes};
}

}  // namespace

LimitOutcome one_sided_limit(const Curve& curve, double t0, Side side, const LimitConfig& cfg) {
    cfg.validate();
    (void)point_at(curve, t0);
    const double sign = side_sign(side);
    double h = cfg.h0;
    return stabilize(cfg.max_steps + 1, cfg, [&](int) {
        const Probe p = probe_secant(curve, t0, sign * h);
        h *= cfg.rho;
        return p;
    });
}

TwoSidedTrace two_sided_trace(const Curve& curve, double t0, const LimitConfig& cfg) {
    cfg.validate();
    (void)point_at(curve, t0);
    TwoSidedTrace trace;
    double h = cfg.h0;
    trace.outcome = stabilize(2 * (cfg.max_steps + 1), cfg, [&](int i) {
        const bool plus = i % 2 == 0;
        Probe p = probe_secant(curve, t0, plus ? h : -h);
        if (plus) {
            ++trace.plus_probes;
            if (p.status == ProbeStatus::Ok) trace.last_plus = p.estimate;
        } else {
            ++trace.minus_probes;
            h *= cfg.rho;
            if (p.status == ProbeStatus::Ok) {
                trace.last_minus = p.estimate;
                p.estimate = -p.estimate;
            }
        }
        return p;
    });
    // a two-sided limit needs points on both sides
    if (is_converged(trace.outcome) && (!trace.last_plus || !trace.last_minus)) {
        trace.outcome = Undetermined{"only one side evaluable", steps_used(trace.outcome)};
    }
    return trace;
}

LimitOutcome two_sided_limit(const Curve& curve, double t0, const LimitConfig& cfg) {
    return two_sided_trace(curve, t0, cfg).outcome;
}

}  // namespace unitsecant
