#include "leyes/vision/ellipse.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leyes::vision {

std::vector<std::pair<double, double>> sample_ellipse(const EllipseParams& params, int count) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(count);
    double ct = std::cos(params.theta), st = std::sin(params.theta);
    for (int i = 0; i < count; ++i) {
        double t = 2.0 * std::numbers::pi * i / count;
        double u = params.semi_major * std::cos(t);
        double v = params.semi_minor * std::sin(t);
        pts.push_back({params.center_x + u * ct - v * st, params.center_y + u * st + v * ct});
    }
    return pts;
}

EllipseParams fit_ellipse(const std::vector<std::pair<double, double>>& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 6) throw std::invalid_argument("fit_ellipse: need at least 6 points");

    // Center the data for conditioning; the conic is translated back at the
    // end.
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    Eigen::MatrixXd d1(n, 3), d2(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        double x = points[i].first - mx, y = points[i].second - my;
        d1(i, 0) = x * x;
        d1(i, 1) = x * y;
        d1(i, 2) = y * y;
        d2(i, 0) = x;
        d2(i, 1) = y;
        d2(i, 2) = 1.0;
    }

    Eigen::Matrix3d s1 = d1.transpose() * d1;
    Eigen::Matrix3d s2 = d1.transpose() * d2;
    Eigen::Matrix3d s3 = d2.transpose() * d2;

    Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
    if (!lu.isInvertible()) throw std::invalid_argument("fit_ellipse: degenerate point set");
    Eigen::Matrix3d t = -lu.solve(s2.transpose());

    // Reduced scatter with the inverse ellipse-constraint matrix applied:
    // C1^-1 = [[0,0,1/2],[0,-1,0],[1/2,0,0]].
    Eigen::Matrix3d m0 = s1 + s2 * t;
    Eigen::Matrix3d m;
    m.row(0) = m0.row(2) / 2.0;
    m.row(1) = -m0.row(1);
    m.row(2) = m0.row(0) / 2.0;

    Eigen::EigenSolver<Eigen::Matrix3d> es(m);
    Eigen::Vector3d a1 = Eigen::Vector3d::Zero();
    bool found = false;
    for (int k = 0; k < 3; ++k) {
        if (std::abs(es.eigenvalues()[k].imag()) > 1e-9) continue;
        Eigen::Vector3d v = es.eigenvectors().col(k).real();
        // Ellipse condition 4ac - b^2 > 0 singles out exactly one eigenvector.
        double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond > 0.0) {
            a1 = v;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("fit_ellipse: no ellipse fits the points");

    Eigen::Vector3d a2 = t * a1;
    double a = a1(0), b = a1(1), c = a1(2);
    double d = a2(0), e = a2(1), f = a2(2);

    // Conic to geometric parameters (still in centered coordinates).
    double det = 4.0 * a * c - b * b;
    double x0 = (b * e - 2.0 * c * d) / det;
    double y0 = (b * d - 2.0 * a * e) / det;
    double f0 = f + (d * x0 + e * y0) / 2.0;  // constant after recentering

    Eigen::Matrix2d q;
    q << a, b / 2.0, b / 2.0, c;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> qes(q);
    double l1 = qes.eigenvalues()(0), l2 = qes.eigenvalues()(1);
    if (f0 * l1 >= 0.0 || f0 * l2 >= 0.0)
        throw std::invalid_argument("fit_ellipse: degenerate conic");

    // Semi-axis along eigenvector k is sqrt(-f0/lambda_k); the smaller
    // |lambda| gives the major axis.
    double ax1 = std::sqrt(-f0 / l1), ax2 = std::sqrt(-f0 / l2);
    EllipseParams out;
    Eigen::Vector2d major_dir;
    if (ax1 >= ax2) {
        out.semi_major = ax1;
        out.semi_minor = ax2;
        major_dir = qes.eigenvectors().col(0);
    } else {
        out.semi_major = ax2;
        out.semi_minor = ax1;
        major_dir = qes.eigenvectors().col(1);
    }
    out.center_x = x0 + mx;
    out.center_y = y0 + my;
    out.theta = std::atan2(major_dir(1), major_dir(0));
    if (out.theta < 0.0) out.theta += std::numbers::pi;
    if (out.theta >= std::numbers::pi) out.theta -= std::numbers::pi;
    return out;
}

} // namespace leyes::vision
