#include "leyes/gaze/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace leyes::gaze {

using nlohmann::json;

double median_of(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median_of: empty input");
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

std::size_t window_samples(const Signal& sig, double window_ms) {
    double rate = sig.rate_hz;
    if (rate <= 0.0 && sig.size() >= 2) {
        double span = sig.timestamps_ms.back() - sig.timestamps_ms.front();
        rate = 1000.0 * (sig.size() - 1) / span;
    }
    if (rate <= 0.0) throw std::invalid_argument("windowed metric: unknown sample rate");
    auto w = static_cast<std::size_t>(std::lround(window_ms * rate / 1000.0));
    return std::max<std::size_t>(w, 2);
}

template <typename WindowFn>
WindowedMetric sliding_window(const Signal& sig, double window_ms, WindowFn window_value) {
    sig.validate();
    std::size_t w = window_samples(sig, window_ms);
    if (w > sig.size()) throw std::invalid_argument("windowed metric: window longer than signal");

    WindowedMetric out;
    for (std::size_t start = 0; start + w <= sig.size(); ++start) {
        bool all_valid = true;
        for (std::size_t i = start; i < start + w; ++i)
            if (!sig.valid[i]) {
                all_valid = false;
                break;
            }
        if (!all_valid) continue;
        out.per_window.push_back(window_value(start, start + w));
    }
    if (out.per_window.empty())
        throw std::invalid_argument("windowed metric: no fully valid window");
    out.median = median_of(out.per_window);
    return out;
}

} // namespace

WindowedMetric rms_s2s(const Signal& sig, double window_ms) {
    return sliding_window(sig, window_ms, [&](std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            double dx = sig.x[i] - sig.x[i - 1];
            double dy = sig.y[i] - sig.y[i - 1];
            sum += dx * dx + dy * dy;
        }
        return std::sqrt(sum / static_cast<double>(hi - lo - 1));
    });
}

WindowedMetric std_precision(const Signal& sig, double window_ms) {
    return sliding_window(sig, window_ms, [&](std::size_t lo, std::size_t hi) {
        double n = static_cast<double>(hi - lo);
        double mx = 0.0, my = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            mx += sig.x[i];
            my += sig.y[i];
        }
        mx /= n;
        my /= n;
        double var = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            double dx = sig.x[i] - mx, dy = sig.y[i] - my;
            var += dx * dx + dy * dy;
        }
        return std::sqrt(var / n);
    });
}

AccuracyReport accuracy(const Signal& gaze, const std::vector<FixationTarget>& targets,
                        double skip_ms) {
    gaze.validate();
    if (targets.empty()) throw std::invalid_argument("accuracy: no targets");
    AccuracyReport report;
    for (const auto& target : targets) {
        double t_lo = target.t_on_ms + skip_ms;
        double mx = 0.0, my = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < gaze.size(); ++i) {
            double t = gaze.timestamps_ms[i];
            if (t < t_lo || t > target.t_off_ms || !gaze.valid[i]) continue;
            mx += gaze.x[i];
            my += gaze.y[i];
            ++count;
        }
        if (count == 0)
            throw std::invalid_argument("accuracy: empty analysis interval for a target");
        mx /= static_cast<double>(count);
        my /= static_cast<double>(count);
        report.per_target.push_back(std::hypot(mx - target.x, my - target.y));
    }
    double sum = 0.0;
    for (double v : report.per_target) sum += v;
    report.mean = sum / static_cast<double>(report.per_target.size());
    return report;
}

Session load_session(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    Session session;
    for (const auto& t : j.at("targets"))
        session.targets.push_back({t.at("x_deg"), t.at("y_deg"), t.at("t_on_ms"), t.at("t_off_ms")});
    if (j.contains("deg_per_px")) session.deg_per_px = j.at("deg_per_px");
    if (j.contains("rate_hz")) session.rate_hz = j.at("rate_hz");
    return session;
}

} // namespace leyes::gaze
