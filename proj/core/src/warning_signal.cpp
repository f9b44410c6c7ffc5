#include "illiqnet/warning_signal.hpp"

#include <algorithm>
#include <set>

#include "illiqnet/errors.hpp"

namespace illiqnet {

std::vector<IntervalStat> interval_nonrandomness(std::span<const FailureEvent> events,
                                                 const IlliquidityNetwork& network,
                                                 int interval_len) {
    if (interval_len < 1)
        throw ValidationError("interval_nonrandomness: interval_len must be >= 1");
    const int n_intervals = (kMinutesPerDay + interval_len - 1) / interval_len;

    // distinct stocks per interval (repeat limit-touches do not re-fail)
    std::vector<std::vector<int>> members(size_t(n_intervals), std::vector<int>{});  // node index or -1
    std::set<std::string> seen;
    for (const auto& e : events) {
        if (e.fail_minute < 0 || e.fail_minute >= kMinutesPerDay) continue;
        if (!seen.insert(e.stock_id).second) continue;
        members[size_t(e.fail_minute / interval_len)].push_back(
            network.node_index(e.stock_id));
    }

    std::vector<IntervalStat> out;
    out.reserve(size_t(n_intervals));
    for (int i = 0; i < n_intervals; ++i) {
        IntervalStat stat;
        stat.interval_index = i;
        const auto& m = members[size_t(i)];
        stat.n_f = int(m.size());
        if (stat.n_f >= 2) {
            long e_nf = 0;
            for (size_t a = 0; a < m.size(); ++a)
                for (size_t b = a + 1; b < m.size(); ++b)
                    if (m[a] >= 0 && m[b] >= 0 && network.has_edge(m[a], m[b])) ++e_nf;
            stat.e_nf = e_nf;
            stat.w = double(e_nf) / (double(stat.n_f) * double(stat.n_f - 1) / 2.0);
        }
        out.push_back(std::move(stat));
    }
    return out;
}

double daily_nonrandomness(std::span<const IntervalStat> stats) {
    double sum = 0;
    int defined = 0;
    for (const auto& s : stats) {
        if (s.w) {
            sum += *s.w;
            ++defined;
        }
    }
    return defined > 0 ? sum / double(defined) : 0.0;
}

std::vector<SignalState> signal(std::span<const std::pair<std::string, double>> daily_w, int t) {
    if (t < 1) throw ValidationError("signal: window length must be >= 1");
    std::vector<SignalState> out;
    out.reserve(daily_w.size());
    for (size_t d = 0; d < daily_w.size(); ++d) {
        SignalState st;
        st.date = daily_w[d].first;
        st.w_d = daily_w[d].second;
        if (d >= size_t(t)) {  // needs t prior days; window is the t days ending here
            int zeros = 0;
            for (size_t k = d + 1 - size_t(t); k <= d; ++k)
                if (daily_w[k].second == 0.0) ++zeros;  // exact: w is a ratio of integers
            st.N = zeros;
            st.warn = (zeros == 0);
        }
        out.push_back(std::move(st));
    }
    return out;
}

EvaluationReport evaluate(std::span<const SignalState> states,
                          const std::map<std::string, bool>& crash_by_date, int t) {
    EvaluationReport rep;
    rep.t = t;
    for (size_t d = 0; d + 1 < states.size(); ++d) {
        if (!states[d].warn) continue;  // warm-up
        auto next = crash_by_date.find(states[d + 1].date);
        if (next == crash_by_date.end())
            throw ValidationError("evaluate: calendar missing date " + states[d + 1].date);
        bool warned = *states[d].warn;
        bool crash_next = next->second;
        if (warned) {
            rep.warned_dates.push_back(states[d].date);
            crash_next ? ++rep.tp : ++rep.fp;
        } else {
            crash_next ? ++rep.fn : ++rep.tn;
        }
    }
    if (rep.tp + rep.fn > 0) rep.recall = double(rep.tp) / double(rep.tp + rep.fn);
    if (rep.tp + rep.fp > 0) rep.precision = double(rep.tp) / double(rep.tp + rep.fp);
    return rep;
}

}  // namespace illiqnet
