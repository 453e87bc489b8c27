#include "leyes/gaze/calibration.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace leyes::gaze {

using nlohmann::json;

std::array<double, 6> calibration_basis(double u, double v) {
    return {1.0, u, v, u * u, v * v, u * v};
}

CalibrationModel fit_calibration(const std::vector<std::pair<double, double>>& pcr,
                                 const std::vector<std::pair<double, double>>& targets) {
    if (pcr.size() != targets.size())
        throw std::invalid_argument("fit_calibration: point count mismatch");
    const auto n = static_cast<Eigen::Index>(pcr.size());
    if (n < 6) throw std::invalid_argument("fit_calibration: need at least 6 points");

    Eigen::MatrixXd design(n, 6);
    Eigen::VectorXd tx(n), ty(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto basis = calibration_basis(pcr[i].first, pcr[i].second);
        for (int k = 0; k < 6; ++k) design(i, k) = basis[k];
        tx(i) = targets[i].first;
        ty(i) = targets[i].second;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 6)
        throw std::invalid_argument("fit_calibration: rank-deficient design matrix");
    Eigen::VectorXd cx = qr.solve(tx);
    Eigen::VectorXd cy = qr.solve(ty);

    CalibrationModel model;
    for (int k = 0; k < 6; ++k) {
        model.coeff_x[k] = cx(k);
        model.coeff_y[k] = cy(k);
    }
    return model;
}

std::pair<double, double> apply_calibration(const CalibrationModel& model, double u, double v) {
    auto basis = calibration_basis(u, v);
    double x = 0.0, y = 0.0;
    for (int k = 0; k < 6; ++k) {
        x += model.coeff_x[k] * basis[k];
        y += model.coeff_y[k] * basis[k];
    }
    return {x, y};
}

Signal apply_calibration(const CalibrationModel& model, const Signal& pcr) {
    pcr.validate();
    Signal out = pcr;
    for (std::size_t i = 0; i < pcr.size(); ++i) {
        auto [x, y] = apply_calibration(model, pcr.x[i], pcr.y[i]);
        out.x[i] = x;
        out.y[i] = y;
    }
    return out;
}

void write_model(const CalibrationModel& model, const std::string& path) {
    json j;
    j["basis"] = {"1", "u", "v", "u^2", "v^2", "u*v"};
    j["coeff_x"] = model.coeff_x;
    j["coeff_y"] = model.coeff_y;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

CalibrationModel read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    CalibrationModel model;
    auto cx = j.at("coeff_x"), cy = j.at("coeff_y");
    if (cx.size() != 6 || cy.size() != 6)
        throw std::runtime_error("calibration model: expected 6 coefficients per axis");
    for (int k = 0; k < 6; ++k) {
        model.coeff_x[k] = cx[k];
        model.coeff_y[k] = cy[k];
    }
    return model;
}

} // namespace leyes::gaze
