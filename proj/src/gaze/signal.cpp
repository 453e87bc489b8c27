#include "leyes/gaze/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace leyes::gaze {

void Signal::validate() const {
    if (x.size() != timestamps_ms.size() || y.size() != timestamps_ms.size() ||
        valid.size() != timestamps_ms.size())
        throw std::invalid_argument("Signal: field lengths differ");
    for (std::size_t i = 1; i < timestamps_ms.size(); ++i)
        if (timestamps_ms[i] <= timestamps_ms[i - 1])
            throw std::invalid_argument("Signal: timestamps not strictly increasing");
}

Signal make_signal(double rate_hz, const std::vector<double>& x, const std::vector<double>& y) {
    if (rate_hz <= 0.0) throw std::invalid_argument("make_signal: rate must be positive");
    if (x.size() != y.size()) throw std::invalid_argument("make_signal: x/y length mismatch");
    Signal sig;
    sig.rate_hz = rate_hz;
    sig.x = x;
    sig.y = y;
    sig.valid.assign(x.size(), 1);
    sig.timestamps_ms.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sig.timestamps_ms[i] = 1000.0 * i / rate_hz;
    return sig;
}

Signal pcr_vector(const Signal& pupil, const Signal& cr) {
    pupil.validate();
    cr.validate();
    if (pupil.size() != cr.size() || pupil.timestamps_ms != cr.timestamps_ms)
        throw std::invalid_argument("pcr_vector: misaligned timestamps");
    Signal out;
    out.timestamps_ms = pupil.timestamps_ms;
    out.rate_hz = pupil.rate_hz;
    out.x.resize(pupil.size());
    out.y.resize(pupil.size());
    out.valid.resize(pupil.size());
    for (std::size_t i = 0; i < pupil.size(); ++i) {
        out.x[i] = pupil.x[i] - cr.x[i];
        out.y[i] = pupil.y[i] - cr.y[i];
        out.valid[i] = pupil.valid[i] && cr.valid[i];
    }
    return out;
}

Signal scale_signal(const Signal& sig, double scale, double offset_x, double offset_y) {
    Signal out = sig;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.x[i] = sig.x[i] * scale + offset_x;
        out.y[i] = sig.y[i] * scale + offset_y;
    }
    return out;
}

} // namespace leyes::gaze
