#include "besselstop/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "besselstop/boundary.hpp"
#include "besselstop/parallel.hpp"
#include "besselstop/quadrature.hpp"

namespace besselstop {

// ---------------------------------------------------------------------------
// ODE shooting

namespace {

using State = std::array<double, 2>;  // (g, g')

State ode_rhs(const ModelParams& p, double y, const State& s) {
    return {s[1], (p.n() * s[0] - 2.0 * (p.alpha() - y) * s[1]) / (4.0 * y)};
}

State rk4_step(const ModelParams& p, double y, const State& s, double h) {
    auto axpy = [](const State& a, double c, const State& b) {
        return State{a[0] + c * b[0], a[1] + c * b[1]};
    };
    const State k1 = ode_rhs(p, y, s);
    const State k2 = ode_rhs(p, y + 0.5 * h, axpy(s, 0.5 * h, k1));
    const State k3 = ode_rhs(p, y + 0.5 * h, axpy(s, 0.5 * h, k2));
    const State k4 = ode_rhs(p, y + h, axpy(s, h, k3));
    return {s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

// Frobenius expansion about the regular solution at 0, enough terms for y0 <= ~1.
State local_series(const ModelParams& p, double y0) {
    double a = 1.0;
    double g = 1.0;
    double gp = 0.0;
    double ypow = 1.0;  // y0^k
    for (int k = 0; k < 80; ++k) {
        const double kk = k;
        const double next = a * (2.0 * kk + p.n()) / (2.0 * (kk + 1.0) * (2.0 * kk + p.alpha()));
        gp += (kk + 1.0) * next * ypow;
        ypow *= y0;
        g += next * ypow;
        a = next;
        if (std::abs(next * ypow) < 1e-18 * std::abs(g)) break;
    }
    return {g, gp};
}

double defect(const ModelParams& p, double y, double g, double gp) {
    return 2.0 * y * gp - p.n() * g;
}

double defect_slope(const ModelParams& p, double y, double g, double gp) {
    if (y == 0.0) return (2.0 - p.n()) * gp;
    const double gpp = (p.n() * g - 2.0 * (p.alpha() - y) * gp) / (4.0 * y);
    return (2.0 - p.n()) * gp + 2.0 * y * gpp;
}

}  // namespace

OdeSolution ode_shoot(const ModelParams& params, double ymax, double step) {
    if (!(ymax > 0.0) || !(step > 0.0))
        throw std::invalid_argument("ode_shoot: ymax and step must be positive");

    OdeSolution sol{params, {}, {}, {}, step, 0.0};
    sol.grid.push_back(0.0);
    sol.g_values.push_back(1.0);
    sol.g_prime_values.push_back(params.n() / (2.0 * params.alpha()));

    // Start far enough out that alpha*h/(2y) keeps RK4 well inside its stability region.
    const double y0 = std::min(ymax, std::max(2.0 * step, 50.0 * params.alpha() * step));
    State s = local_series(params, y0);
    double y = y0;
    sol.grid.push_back(y);
    sol.g_values.push_back(s[0]);
    sol.g_prime_values.push_back(s[1]);

    while (y < ymax - 1e-12 * ymax) {
        const double h = std::min(step, ymax - y);
        const State full = rk4_step(params, y, s, h);
        const State half = rk4_step(params, y + 0.5 * h,
                                    rk4_step(params, y, s, 0.5 * h), 0.5 * h);
        const double err = std::max(std::abs(full[0] - half[0]) / (1.0 + std::abs(half[0])),
                                    std::abs(full[1] - half[1]) / (1.0 + std::abs(half[1])));
        sol.max_local_error = std::max(sol.max_local_error, err);
        if (err > kOdeResidualTol) {
            std::ostringstream msg;
            msg << "ode_shoot: local error " << err << " at y=" << y
                << " exceeds tolerance; reduce step (" << step << ")";
            throw AccuracyError(msg.str());
        }
        s = half;
        y += h;
        sol.grid.push_back(y);
        sol.g_values.push_back(s[0]);
        sol.g_prime_values.push_back(s[1]);
    }
    return sol;
}

double Z_from_ode(const ModelParams& params, double step) {
    double ymax = 4.0 * std::max(1.0, params.root_scale_guess());
    for (int attempt = 0; attempt < 2; ++attempt, ymax *= 2.0) {
        const auto sol = ode_shoot(params, ymax, step);
        for (std::size_t i = 0; i + 1 < sol.grid.size(); ++i) {
            const double y0 = sol.grid[i];
            const double y1 = sol.grid[i + 1];
            const double f0 = defect(params, y0, sol.g_values[i], sol.g_prime_values[i]);
            const double f1 = defect(params, y1, sol.g_values[i + 1], sol.g_prime_values[i + 1]);
            if (!(f0 < 0.0 && f1 >= 0.0)) continue;

            const double d0 = defect_slope(params, y0, sol.g_values[i], sol.g_prime_values[i]);
            const double d1 =
                defect_slope(params, y1, sol.g_values[i + 1], sol.g_prime_values[i + 1]);
            const double h = y1 - y0;
            auto hermite = [&](double y) {
                const double u = (y - y0) / h;
                const double u2 = u * u;
                const double u3 = u2 * u;
                return (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * h * d0 +
                       (-2 * u3 + 3 * u2) * f1 + (u3 - u2) * h * d1;
            };
            double lo = y0;
            double hi = y1;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (hermite(mid) < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    std::ostringstream msg;
    msg << "Z_from_ode: no sign change of 2yg' - ng below y=" << ymax / 2.0;
    throw RangeError(msg.str());
}

// ---------------------------------------------------------------------------
// Lattice

namespace {

struct Stencil {
    std::array<long, 3> index{};
    std::array<double, 3> weight{};
    int size = 0;
};

// One-step law from grid node q over [t, t + dt] of the squared Bessel bridge
// pinned at (1, 0): mean q r^2 + alpha v, variance 2 alpha v^2 + 4 q r^2 v,
// with r = (s - dt)/s, v = dt (s - dt)/s, s = 1 - t.
Stencil make_stencil(double alpha, double q, double s, double dt, double dq) {
    const double r = (s - dt) / s;
    const double v = dt * (s - dt) / s;
    const double mean = q * r * r + alpha * v;
    const double var = 2.0 * alpha * v * v + 4.0 * q * r * r * v;

    const double x = mean / dq;
    const double w = var / (dq * dq);
    const long c = std::lround(x);
    const double e = x - static_cast<double>(c);
    const double m2 = w + e * e;

    Stencil st;
    const long stride = std::max(1L, static_cast<long>(std::ceil(std::sqrt(m2))));
    const double sd = static_cast<double>(stride);
    if (m2 >= std::abs(e) * sd) {
        st.size = 3;
        st.index = {c - stride, c, c + stride};
        st.weight = {(m2 - e * sd) / (2.0 * sd * sd), 1.0 - m2 / (sd * sd),
                     (m2 + e * sd) / (2.0 * sd * sd)};
    } else {
        // Variance below the two-point minimum: match the mean only.
        const double fl = std::floor(x);
        st.size = 2;
        st.index = {static_cast<long>(fl), static_cast<long>(fl) + 1, 0};
        st.weight = {1.0 - (x - fl), x - fl, 0.0};
    }
    return st;
}

}  // namespace

LatticeResult dp_value(const ModelParams& params, const LatticeConfig& config) {
    if (config.t_steps < 100) throw std::invalid_argument("dp_value: t_steps must be >= 100");
    if (config.q_steps < 2) throw std::invalid_argument("dp_value: q_steps must be >= 2");
    if (!(config.t0 >= 0.0) || !(config.eps_end > 0.0) || config.t0 >= 1.0 - config.eps_end)
        throw std::invalid_argument("dp_value: need 0 <= t0 < 1 - eps_end");

    const double Z = config.q_max > 0.0 ? 0.0 : find_Z(params).value;
    const double q_max = config.q_max > 0.0 ? config.q_max : 6.0 * Z;

    const std::size_t NT = config.t_steps;
    const std::size_t NQ = config.q_steps;
    const double t_end = 1.0 - config.eps_end;
    const double dt = (t_end - config.t0) / static_cast<double>(NT);
    const double dq = q_max / static_cast<double>(NQ);
    const double half_n = 0.5 * params.n();
    auto payoff = [half_n](double q) { return q > 0.0 ? std::pow(q, half_n) : 0.0; };

    LatticeResult out;
    out.t_grid.resize(NT + 1);
    out.q_grid.resize(NQ + 1);
    for (std::size_t j = 0; j <= NT; ++j) out.t_grid[j] = config.t0 + dt * static_cast<double>(j);
    out.t_grid[NT] = t_end;
    for (std::size_t i = 0; i <= NQ; ++i) out.q_grid[i] = dq * static_cast<double>(i);
    out.value.assign((NT + 1) * (NQ + 1), 0.0);
    out.boundary_estimate.assign(NT + 1, q_max);
    out.continuation_is_interval.assign(NT + 1, true);

    std::vector<double> payoff_row(NQ + 1);
    for (std::size_t i = 0; i <= NQ; ++i) payoff_row[i] = payoff(out.q_grid[i]);
    std::copy(payoff_row.begin(), payoff_row.end(), out.value.begin() + NT * (NQ + 1));
    // Terminal slice: stop everywhere with positive payoff.
    out.boundary_estimate[NT] = dq;

    std::vector<char> stop(NQ + 1);
    for (std::size_t j = NT; j-- > 0;) {
        const double s = 1.0 - out.t_grid[j];
        const double* next = out.value.data() + (j + 1) * (NQ + 1);
        double* cur = out.value.data() + j * (NQ + 1);

        auto next_value = [&](long idx) {
            if (idx < 0) idx = -idx;  // reflection at q = 0
            if (idx > static_cast<long>(NQ)) return payoff(dq * static_cast<double>(idx));
            return next[idx];
        };

        parallel_for(NQ + 1, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const Stencil st = make_stencil(params.alpha(), out.q_grid[i], s, dt, dq);
                double cont = 0.0;
                for (int k = 0; k < st.size; ++k) cont += st.weight[k] * next_value(st.index[k]);
                const double pay = payoff_row[i];
                stop[i] = pay > 0.0 && pay >= cont;
                cur[i] = std::max(pay, cont);
            }
        });

        bool seen_stop = false;
        for (std::size_t i = 0; i <= NQ; ++i) {
            if (stop[i]) {
                if (!seen_stop) out.boundary_estimate[j] = out.q_grid[i];
                seen_stop = true;
            } else if (seen_stop) {
                out.continuation_is_interval[j] = false;
            }
        }
    }
    out.value_at_origin = out.at(0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Quadrature-defined explicit solutions

namespace {

bool near_equal(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

HKind h_kind(const ModelParams& params) {
    if (near_equal(params.n(), params.alpha() - 2.0)) return HKind::shifted_power;
    if (near_equal(params.n(), 2.0) && params.alpha() > 2.0) return HKind::second_solution;
    std::ostringstream msg;
    msg << "quadrature_H: no explicit solution for alpha=" << params.alpha()
        << ", n=" << params.n() << " (needs n = alpha - 2, or n = 2 with alpha > 2)";
    throw std::invalid_argument(msg.str());
}

double quadrature_H(const ModelParams& params, double y) {
    if (!(y >= 0.0)) throw std::invalid_argument("quadrature_H: y must be >= 0");
    const double n = params.n();
    const double alpha = params.alpha();
    if (h_kind(params) == HKind::shifted_power) {
        if (y == 0.0) return 1.0 / n;
        if (n >= 2.0) {
            const double e = 0.5 * n - 1.0;
            const double integral = integrate_endpoint(
                [e](double s) { return std::exp(0.5 * s) * std::pow(s, e); }, 0.0, y, 1e-12);
            return std::pow(y, -0.5 * n) * integral / 2.0;
        }
        // s = u^{2/n}: int_0^y e^{s/2} s^{n/2-1} ds = (2/n) int_0^{y^{n/2}} e^{u^{2/n}/2} du
        const double p = 2.0 / n;
        const double upper = std::pow(y, 0.5 * n);
        const double integral = integrate(
            [p](double u) { return std::exp(0.5 * std::pow(u, p)); }, 0.0, upper, 1e-12);
        return std::pow(y, -0.5 * n) * integral / n;
    }
    const double m = 0.5 * alpha - 1.0;
    if (y == 0.0) return 1.0 / (2.0 * m);
    if (m >= 1.0) {
        const double e = m - 1.0;
        const double integral = integrate_endpoint(
            [e](double v) { return std::exp(-0.5 * v) * std::pow(v, e); }, 0.0, y, 1e-12);
        return std::pow(y, -m) * std::exp(0.5 * y) * integral / 2.0;
    }
    // v = u^{1/m}: int_0^y e^{-v/2} v^{m-1} dv = (1/m) int_0^{y^m} e^{-u^{1/m}/2} du
    const double p = 1.0 / m;
    const double upper = std::pow(y, m);
    const double integral = integrate(
        [p](double u) { return std::exp(-0.5 * std::pow(u, p)); }, 0.0, upper, 1e-12);
    return std::pow(y, -m) * std::exp(0.5 * y) * integral / (2.0 * m);
}

double quadrature_H_derivative(const ModelParams& params, double y) {
    const double n = params.n();
    const double alpha = params.alpha();
    if (h_kind(params) == HKind::shifted_power) {
        if (y == 0.0) return 1.0 / (2.0 * alpha);
        return (std::exp(0.5 * y) - n * quadrature_H(params, y)) / (2.0 * y);
    }
    if (y == 0.0) return 1.0 / (alpha * (alpha - 2.0));
    const double H = quadrature_H(params, y);
    return (1.0 - 0.5 * alpha) * H / y + 0.5 * H + 0.5 / y;
}

double quadrature_H_normalization(const ModelParams& params) {
    return h_kind(params) == HKind::shifted_power ? params.n() : params.alpha() - 2.0;
}

}  // namespace besselstop
