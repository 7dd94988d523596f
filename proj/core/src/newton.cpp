#include "qrec/newton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrec {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_unit(double v) {
    v -= std::floor(v);
    if (v >= 1.0) v = 0.0;
    return v;
}

/// Difference wrapped to (-pi, pi], in radians.
double wrap_angle_diff(double d) {
    d = std::remainder(d, two_pi);
    return d;
}

double force_slot(Potential pot, double theta) {
    return pot == Potential::standard ? -std::sin(theta) : theta - std::numbers::pi;
}

double force_slot_derivative(Potential pot, double theta) {
    return pot == Potential::standard ? -std::cos(theta) : 1.0;
}

/// Dense LU solve with partial pivoting; the closure systems here are tiny
/// (2t x 2t).
void solve_linear(std::vector<double>& A, std::vector<double>& b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r * n + col]) > std::fabs(A[pivot * n + col])) pivot = r;
        if (std::fabs(A[pivot * n + col]) < 1e-14)
            throw std::runtime_error("newton: singular closure Jacobian");
        if (pivot != col) {
            for (int k = 0; k < n; ++k) std::swap(A[col * n + k], A[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r * n + col] / A[col * n + col];
            if (f == 0.0) continue;
            for (int k = col; k < n; ++k) A[r * n + k] -= f * A[col * n + k];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r * n + k] * b[k];
        b[r] = s / A[r * n + r];
    }
}

}  // namespace

TorusPoint TorusPoint::wrapped() const { return {wrap_unit(x), wrap_unit(y)}; }

TorusPoint ContinuousTwistMap::step(TorusPoint p) const {
    const double theta = p.x * two_pi;
    const double n = p.y * two_pi;
    const double s = sign == MomentumSign::printed ? 1.0 : -1.0;
    const double nbar = n + s * K * force_slot(potential, theta);
    const double thetabar = theta + nbar;
    return TorusPoint{thetabar / two_pi, nbar / two_pi}.wrapped();
}

std::array<std::array<double, 2>, 2> ContinuousTwistMap::jacobian(TorusPoint p) const {
    const double theta = p.x * two_pi;
    const double s = sign == MomentumSign::printed ? 1.0 : -1.0;
    const double a = s * K * force_slot_derivative(potential, theta);
    // rows: (dtheta', dn'), columns: (dtheta, dn)
    return {{{1.0 + a, 1.0}, {a, 1.0}}};
}

NewtonResult newton_refine_periodic(const ContinuousTwistMap& map,
                                    const std::vector<TorusPoint>& seed_orbit,
                                    const NewtonOptions& options) {
    const int t = static_cast<int>(seed_orbit.size());
    if (t < 1) throw std::invalid_argument("newton_refine_periodic: empty seed orbit");

    // Work in radians on the cover; z holds (theta_i, n_i) pairs.
    std::vector<double> z(2 * static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) {
        z[2 * static_cast<size_t>(i)] = seed_orbit[static_cast<size_t>(i)].x * two_pi;
        z[2 * static_cast<size_t>(i) + 1] = seed_orbit[static_cast<size_t>(i)].y * two_pi;
    }

    auto closure = [&](const std::vector<double>& u, std::vector<double>& G) {
        double worst = 0.0;
        for (int i = 0; i < t; ++i) {
            const TorusPoint zi{u[2 * static_cast<size_t>(i)] / two_pi,
                                u[2 * static_cast<size_t>(i) + 1] / two_pi};
            const TorusPoint fz = map.step(zi);
            const int j = (i + 1) % t;
            const double g0 = wrap_angle_diff(fz.x * two_pi - u[2 * static_cast<size_t>(j)]);
            const double g1 = wrap_angle_diff(fz.y * two_pi - u[2 * static_cast<size_t>(j) + 1]);
            G[2 * static_cast<size_t>(i)] = g0;
            G[2 * static_cast<size_t>(i) + 1] = g1;
            worst = std::max({worst, std::fabs(g0), std::fabs(g1)});
        }
        return worst;
    };

    NewtonResult result;
    const int n = 2 * t;
    std::vector<double> G(static_cast<size_t>(n));
    double residual = closure(z, G);
    if (residual > options.capture_radius)
        throw std::invalid_argument("newton_refine_periodic: seed closure error above capture radius");

    int iter = 0;
    while (residual > options.tolerance && iter < options.max_iterations) {
        // Jacobian of the closure map: DT(z_i) on the diagonal block,
        // -I on the (i, i+1) block.
        std::vector<double> J(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
        for (int i = 0; i < t; ++i) {
            const TorusPoint zi{z[2 * static_cast<size_t>(i)] / two_pi,
                                z[2 * static_cast<size_t>(i) + 1] / two_pi};
            const auto D = map.jacobian(zi);
            const int r = 2 * i, cj = 2 * ((i + 1) % t);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    J[static_cast<size_t>(r + a) * n + static_cast<size_t>(2 * i + b)] = D[a][b];
            for (int a = 0; a < 2; ++a)
                J[static_cast<size_t>(r + a) * n + static_cast<size_t>(cj + a)] += -1.0;
        }
        std::vector<double> rhs(G.begin(), G.end());
        for (auto& v : rhs) v = -v;
        solve_linear(J, rhs, n);

        // Step halving until the residual improves.
        double lambda = 1.0;
        std::vector<double> trial(z.size());
        std::vector<double> Gt(static_cast<size_t>(n));
        double new_residual = residual;
        for (int halvings = 0; halvings < 40; ++halvings) {
            for (size_t k = 0; k < z.size(); ++k) trial[k] = z[k] + lambda * rhs[k];
            new_residual = closure(trial, Gt);
            if (new_residual < residual) break;
            lambda *= 0.5;
        }
        if (new_residual >= residual) break;  // stalled
        z = trial;
        G = Gt;
        residual = new_residual;
        ++iter;
    }

    result.converged = residual <= options.tolerance;
    result.residual = residual;
    result.iterations = iter;
    result.orbit.reserve(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i)
        result.orbit.push_back(TorusPoint{z[2 * static_cast<size_t>(i)] / two_pi,
                                          z[2 * static_cast<size_t>(i) + 1] / two_pi}
                                   .wrapped());
    return result;
}

}  // namespace qrec
