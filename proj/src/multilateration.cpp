#include "uavloc/multilateration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace uavloc {

void AnchorSet::validate(int min_anchors) const {
    if (anchors.size() != ranges.size())
        throw std::invalid_argument("anchor set: anchors/ranges length mismatch");
    if (static_cast<int>(anchors.size()) < min_anchors)
        throw std::invalid_argument("anchor set: need at least " + std::to_string(min_anchors) +
                                    " anchors");
    for (double r : ranges)
        if (r < 0.0) throw std::invalid_argument("anchor set: negative range");
}

namespace {

// Difference equations against the last anchor. Expanding
// (x - x_i)^2 - (x - x_I)^2 = r_i^2 - r_I^2 per axis leaves the linear system
// 2 (x_I - x_i) . x = (r_i^2 - r_I^2) - (x_i^2 - x_I^2) - ... , one row per i.
void build_difference_system(const AnchorSet& set, Eigen::MatrixXd& s, Eigen::VectorXd& p) {
    const std::size_t count = set.anchors.size();
    const Vec3& last = set.anchors[count - 1];
    const double r_last = set.ranges[count - 1];
    s.resize(static_cast<Eigen::Index>(count - 1), 3);
    p.resize(static_cast<Eigen::Index>(count - 1));
    for (std::size_t i = 0; i + 1 < count; ++i) {
        const Vec3& a = set.anchors[i];
        const double r = set.ranges[i];
        s(static_cast<Eigen::Index>(i), 0) = 2.0 * (last.x - a.x);
        s(static_cast<Eigen::Index>(i), 1) = 2.0 * (last.y - a.y);
        s(static_cast<Eigen::Index>(i), 2) = 2.0 * (last.z - a.z);
        p(static_cast<Eigen::Index>(i)) = (r * r - r_last * r_last) -
                                          (a.x * a.x - last.x * last.x) -
                                          (a.y * a.y - last.y * last.y) -
                                          (a.z * a.z - last.z * last.z);
    }
}

Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& s, const Eigen::VectorXd& p,
                                    Eigen::Index required_rank) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(s);
    qr.setThreshold(1e-10);
    if (qr.rank() < required_rank)
        throw DegenerateGeometryError("multilateration: anchor geometry is rank-deficient");
    return qr.solve(p);
}

}  // namespace

Vec3 linear_solve(const AnchorSet& set) {
    set.validate(4);
    Eigen::MatrixXd s;
    Eigen::VectorXd p;
    build_difference_system(set, s, p);
    const Eigen::VectorXd x = solve_least_squares(s, p, 3);
    return {x(0), x(1), x(2)};
}

Vec2 linear_solve_2d(const AnchorSet& set, double z_fixed) {
    set.validate(3);
    Eigen::MatrixXd s3;
    Eigen::VectorXd p3;
    build_difference_system(set, s3, p3);
    // Known height: move the z column to the right-hand side.
    Eigen::MatrixXd s = s3.leftCols(2);
    Eigen::VectorXd p = p3 - s3.col(2) * z_fixed;
    const Eigen::VectorXd x = solve_least_squares(s, p, 2);
    return {x(0), x(1)};
}

std::vector<double> residuals(const AnchorSet& set, const Vec3& point) {
    std::vector<double> f(set.anchors.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = point.dist(set.anchors[i]) - set.ranges[i];
    return f;
}

std::vector<std::array<double, 3>> residual_jacobian(const AnchorSet& set, const Vec3& point) {
    std::vector<std::array<double, 3>> j(set.anchors.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Vec3 d = point - set.anchors[i];
        const double dist = d.norm();
        if (dist < 1e-12) {
            j[i] = {0.0, 0.0, 0.0};  // direction undefined at the anchor itself
        } else {
            j[i] = {d.x / dist, d.y / dist, d.z / dist};
        }
    }
    return j;
}

namespace {

double sum_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

// Shared Gauss-Newton core over an active coordinate subset (3D or fixed-z).
RefineResult refine_impl(const AnchorSet& set, Vec3 start, bool fix_z, const SolverConfig& cfg) {
    if (!std::isfinite(start.x) || !std::isfinite(start.y) || !std::isfinite(start.z))
        throw std::invalid_argument("gauss_newton: non-finite initial point");
    if (cfg.max_iter < 1 || !(cfg.tol > 0.0))
        throw std::invalid_argument("gauss_newton: invalid solver config");
    set.validate(fix_z ? 3 : 4);

    const int dim = fix_z ? 2 : 3;
    RefineResult out;
    out.position = start;
    out.residual_sum_sq = sum_sq(residuals(set, start));

    for (int it = 0; it < cfg.max_iter; ++it) {
        out.iterations = it + 1;
        const auto f = residuals(set, out.position);
        const auto jac = residual_jacobian(set, out.position);

        Eigen::MatrixXd j(static_cast<Eigen::Index>(f.size()), dim);
        Eigen::VectorXd fv(static_cast<Eigen::Index>(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (int d = 0; d < dim; ++d) j(static_cast<Eigen::Index>(i), d) = jac[i][static_cast<std::size_t>(d)];
            fv(static_cast<Eigen::Index>(i)) = f[i];
        }

        const Eigen::MatrixXd h = j.transpose() * j;
        const Eigen::VectorXd g = j.transpose() * fv;

        double lambda = cfg.regularization;
        Eigen::VectorXd delta;
        bool solved = false;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Eigen::MatrixXd damped = h;
            for (int d = 0; d < dim; ++d) damped(d, d) += lambda;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(damped);
            if (ldlt.info() == Eigen::Success) {
                delta = -ldlt.solve(g);
                if (delta.allFinite()) {
                    solved = true;
                    break;
                }
            }
            lambda = lambda > 0.0 ? lambda * 10.0 : std::max(1e-9, 1e-9 * h.trace());
        }
        if (!solved) throw NumericalError("gauss_newton: singular normal equations");

        // Step halving keeps the residual monotone.
        double alpha = 1.0;
        Vec3 candidate = out.position;
        double cand_res = out.residual_sum_sq;
        bool improved = false;
        while (alpha > 1e-12) {
            Vec3 trial = out.position;
            trial.x += alpha * delta(0);
            trial.y += alpha * delta(1);
            if (!fix_z) trial.z += alpha * delta(2);
            const double trial_res = sum_sq(residuals(set, trial));
            if (trial_res <= out.residual_sum_sq) {
                candidate = trial;
                cand_res = trial_res;
                improved = true;
                break;
            }
            alpha /= 2.0;
        }
        if (!improved) {
            out.converged = delta.norm() < cfg.tol;
            return out;
        }

        const double step_norm = alpha * delta.norm();
        out.position = candidate;
        out.residual_sum_sq = cand_res;
        if (step_norm < cfg.tol) {
            out.converged = true;
            return out;
        }
    }
    out.converged = false;  // max_iter hit; best iterate is still returned
    return out;
}

}  // namespace

RefineResult gauss_newton_refine(const AnchorSet& set, const Vec3& init, const SolverConfig& cfg) {
    return refine_impl(set, init, false, cfg);
}

RefineResult gauss_newton_refine_2d(const AnchorSet& set, const Vec2& init, double z_fixed,
                                    const SolverConfig& cfg) {
    return refine_impl(set, {init.x, init.y, z_fixed}, true, cfg);
}

}  // namespace uavloc
