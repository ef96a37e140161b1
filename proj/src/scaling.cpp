#include "ecoroute/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ecoroute {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Continued fraction for I_x(a,b) (modified Lentz), converging for x < (a+1)/(a+b+2).
double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const int max_iter = 1000 + static_cast<int>(20.0 * std::sqrt(std::max(a, b)));

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double dm = static_cast<double>(m);
        const double m2 = 2.0 * dm;
        double aa = dm * (b - dm) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + dm) * (qab + dm) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw DomainError("reg_inc_beta: continued fraction did not converge (a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

}  // namespace

double chinchilla_loss(double params, const ScalingFit& fit) {
    if (!(params > 0.0)) throw DomainError("chinchilla_loss: parameter count must be > 0");
    return fit.irreducible_loss + fit.loss_scale * std::pow(params, -fit.loss_exponent);
}

double capability(double difficulty, double params, const ScalingFit& fit) {
    return sigmoid(fit.steepness * (difficulty - chinchilla_loss(params, fit)));
}

double reg_inc_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must lie in [0,1]");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta: shapes must be > 0");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double success_prob(const CapabilityParams& p, double tokens) {
    const double m = static_cast<double>(p.skills);
    const double second = tokens / p.tokens_per_skill - m + 1.0;
    if (!(second > 0.0)) return 0.0;
    return reg_inc_beta(p.success_rate, m, second);
}

double min_token_budget(const CapabilityParams& p, double tolerance) {
    if (!(tolerance > 0.0 && tolerance < 1.0))
        throw DomainError("min_token_budget: tolerance must lie in (0,1)");
    if (!(p.success_rate > 0.0))
        throw InfeasibleTask("min_token_budget: zero per-skill success rate, tolerance unreachable");

    const double target = 1.0 - tolerance;
    const double m = static_cast<double>(p.skills);
    double lo = p.tokens_per_skill * (m - 1.0);  // success probability is exactly 0 here
    double hi = p.tokens_per_skill * m;
    while (success_prob(p, hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > max_token_budget)
            throw InfeasibleTask("min_token_budget: budget exceeds 1e12 tokens (success rate " +
                                 std::to_string(p.success_rate) + ")");
    }
    while (hi - lo > 1e-8 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (success_prob(p, mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

CapabilityParams capability_params(const TaskDescriptor& task, const ModelProfile& model,
                                   const ScalingFit& fit) {
    return {capability(task.difficulty, model.dims.params, fit), task.skills, fit.tokens_per_skill};
}

}  // namespace ecoroute
