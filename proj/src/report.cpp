#include <cmath>
#include <cstdio>

#include "lipdyn/report.hpp"

namespace lipdyn {

std::string lyap_status_name(LyapStatus s) {
    switch (s) {
        case LyapStatus::Converged: return "converged";
        case LyapStatus::NotConverged: return "not_converged";
        case LyapStatus::DivergedMinusInf: return "diverged_minus_inf";
        case LyapStatus::OrbitEscaped: return "orbit_escaped";
    }
    return "?";
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json json_number(double v) {
    // JSON has no infinities; a diverged exponent is carried by its status.
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::json classification_to_json(const Classification& cls) {
    nlohmann::json j{
        {"verdict", verdict_name(cls.verdict)},
        {"c_evidence", json_number(cls.c_evidence)},
        {"r_evidence", json_number(cls.r_evidence)},
        {"method", cls.method == Method::LipschitzTest ? "lipschitz_test" : "smooth_oracle"},
        {"margin", cls.margin},
        {"detail", cls.detail},
        {"c_hat", json_number(cls.evidence.c_hat)},
        {"r_hat", json_number(cls.evidence.r_hat)},
        {"pairs_used", cls.evidence.pairs_used},
    };
    if (cls.evidence.deriv_sup) j["deriv_sup"] = json_number(*cls.evidence.deriv_sup);
    if (cls.evidence.deriv_inf) j["deriv_inf"] = json_number(*cls.evidence.deriv_inf);
    if (cls.left_slope_range) {
        j["left_slope_range"] = {json_number(cls.left_slope_range->first),
                                 json_number(cls.left_slope_range->second)};
    }
    if (cls.right_slope_range) {
        j["right_slope_range"] = {json_number(cls.right_slope_range->first),
                                  json_number(cls.right_slope_range->second)};
    }
    if (cls.multiplier) j["multiplier"] = json_number(*cls.multiplier);
    return j;
}

nlohmann::json analyze_report(const std::string& map_label, double x0, long iters, long burn_in,
                              const ChaosReport& report) {
    nlohmann::json j{
        {"command", "analyze"},
        {"map", map_label},
        {"x0", x0},
        {"iters", iters},
        {"burn_in", burn_in},
        {"bounded", report.bounded},
        {"h_n", json_number(report.exponent.h_n)},
        {"L", json_number(lyapunov_number(report.exponent))},
        {"status", lyap_status_name(report.exponent.status)},
        {"n_used", report.exponent.n_used},
        {"skipped", report.exponent.skipped},
        {"chaotic", report.chaotic},
    };
    if (report.asymptotically_periodic) {
        const PeriodDetection& det = *report.asymptotically_periodic;
        j["period"] = det.period;
        nlohmann::json cycle = nlohmann::json::array();
        for (double y : det.cycle) cycle.push_back(json_number(y));
        j["cycle"] = cycle;
        j["period_residual"] = json_number(det.residual);
        j["tail_error"] = json_number(det.tail_error);
    }
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

nlohmann::json classify_entry(double p, const Classification& cls,
                              const Classification* smooth_oracle) {
    nlohmann::json j = classification_to_json(cls);
    j["p"] = json_number(p);
    if (smooth_oracle) {
        j["smooth_oracle"] = {
            {"verdict", verdict_name(smooth_oracle->verdict)},
            {"multiplier", json_number(smooth_oracle->multiplier.value_or(0.0))},
        };
    }
    return j;
}

}  // namespace lipdyn
