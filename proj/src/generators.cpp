#include "fpo/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "fpo/errors.hpp"

namespace fpo {

namespace {

constexpr double kAlphaEndpoint = 1e-6;

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw NonFiniteError(std::string(what) + ": result is not finite");
    return v;
}

// u^p computed as exp(p * ln u); stable across u in [1e-12, 1e12].
double stable_pow(double u, double p) { return std::exp(p * std::log(u)); }

}  // namespace

Generator Generator::forward_kl() {
    Generator g(Kind::ForwardKL, 0.0);
    g.name_ = "fkl";
    return g;
}

Generator Generator::reverse_kl() {
    Generator g(Kind::ReverseKL, 0.0);
    g.name_ = "rkl";
    return g;
}

Generator Generator::jensen_shannon() {
    Generator g(Kind::JensenShannon, 0.0);
    g.name_ = "js";
    return g;
}

Generator Generator::jeffreys() {
    Generator g(Kind::Jeffreys, 0.0);
    g.name_ = "jeffreys";
    return g;
}

Generator Generator::alpha_divergence(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha_divergence: alpha must lie in (0, 1), got " + std::to_string(alpha));
    if (alpha <= kAlphaEndpoint) return forward_kl();
    if (alpha >= 1.0 - kAlphaEndpoint) return reverse_kl();
    Generator g(Kind::Alpha, alpha);
    g.name_ = "alpha:" + std::to_string(alpha);
    return g;
}

Generator Generator::custom(std::string name, std::function<double(double)> f,
                            std::function<double(double)> df, bool finite_at_zero,
                            double value_at_zero) {
    Generator g(Kind::Custom, 0.0);
    g.name_ = std::move(name);
    g.custom_f_ = std::move(f);
    g.custom_df_ = std::move(df);
    g.custom_finite_at_zero_ = finite_at_zero;
    g.custom_value_at_zero_ = value_at_zero;
    return g;
}

Generator Generator::parse(const std::string& name) {
    if (name == "fkl") return forward_kl();
    if (name == "rkl") return reverse_kl();
    if (name == "js") return jensen_shannon();
    if (name == "jeffreys") return jeffreys();
    if (name.rfind("alpha:", 0) == 0) {
        double a;
        try {
            a = std::stod(name.substr(6));
        } catch (const std::exception&) {
            throw ConfigError("unparsable alpha in generator name: " + name);
        }
        return alpha_divergence(a);
    }
    throw ConfigError("unknown generator name: " + name +
                      " (expected fkl|rkl|js|jeffreys|alpha:<float>)");
}

bool Generator::finite_at_zero() const {
    switch (kind_) {
        case Kind::ForwardKL:
        case Kind::JensenShannon:
            return true;
        case Kind::Custom:
            return custom_finite_at_zero_;
        default:
            return false;
    }
}

double Generator::slope_at_infinity() const {
    switch (kind_) {
        case Kind::ReverseKL:
            return 0.0;
        case Kind::JensenShannon:
            return std::log(2.0);
        case Kind::Alpha:
            return 1.0 / alpha_;
        default:
            return std::numeric_limits<double>::infinity();
    }
}

double Generator::eval(double u) const {
    if (u < 0.0) throw DomainError(name_ + ": generator argument must be nonnegative");
    if (u == 0.0) {
        if (!finite_at_zero()) throw DomainError(name_ + ": generator has a pole at u = 0");
        switch (kind_) {
            case Kind::ForwardKL:
                return 0.0;  // lim u ln u = 0
            case Kind::JensenShannon:
                return std::log(2.0);
            default:
                return custom_value_at_zero_;
        }
    }
    switch (kind_) {
        case Kind::ForwardKL:
            return require_finite(u * std::log(u), "fkl");
        case Kind::ReverseKL:
            return require_finite(-std::log(u), "rkl");
        case Kind::JensenShannon:
            // u ln(2u/(u+1)) + ln(2/(u+1))
            return require_finite(
                u * (std::log(2.0) + std::log(u) - std::log1p(u)) + std::log(2.0) - std::log1p(u),
                "js");
        case Kind::Jeffreys:
            return require_finite((u - 1.0) * std::log(u), "jeffreys");
        case Kind::Alpha: {
            const double a = alpha_;
            const double num = stable_pow(u, 1.0 - a) - (1.0 - a) * u - a;
            return require_finite(num / (a * (a - 1.0)), "alpha");
        }
        case Kind::Custom:
            return require_finite(custom_f_(u), "custom");
    }
    return std::numeric_limits<double>::quiet_NaN();  // unreachable
}

double Generator::derivative(double u) const {
    if (u <= 0.0) throw DomainError(name_ + ": derivative requires u > 0");
    switch (kind_) {
        case Kind::ForwardKL:
            return std::log(u) + 1.0;
        case Kind::ReverseKL:
            return -1.0 / u;
        case Kind::JensenShannon:
            return std::log(2.0) + std::log(u) - std::log1p(u);
        case Kind::Jeffreys:
            return std::log(u) + 1.0 - 1.0 / u;
        case Kind::Alpha: {
            const double a = alpha_;
            return ((1.0 - a) * stable_pow(u, -a) - (1.0 - a)) / (a * (a - 1.0));
        }
        case Kind::Custom:
            return custom_df_(u);
    }
    return std::numeric_limits<double>::quiet_NaN();  // unreachable
}

ValidityReport check_generator(const Generator& gen, const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("check_generator: empty grid");
    bool has_one = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= 0.0) throw DomainError("check_generator: grid must be positive");
        if (i > 0 && grid[i] < grid[i - 1]) throw DomainError("check_generator: grid must be sorted");
        if (grid[i] == 1.0) has_one = true;
    }
    if (!has_one) throw DomainError("check_generator: grid must contain 1");

    ValidityReport report;
    report.f_at_one_residual = std::fabs(gen.eval(1.0));

    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = gen.eval(grid[i]);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const double mid = 0.5 * (grid[i] + grid[j]);
            const double violation = gen.eval(mid) - 0.5 * (values[i] + values[j]);
            if (violation > report.worst_convexity_violation)
                report.worst_convexity_violation = violation;
        }
    }

    for (double u : grid) {
        const double h = 1e-6 * u;
        const double fd = (gen.eval(u + h) - gen.eval(u - h)) / (2.0 * h);
        const double analytic = gen.derivative(u);
        // Near u = 1 several generators have f'(u) ~ 0 and the central
        // difference is pure rounding noise, so fall back to absolute error
        // when both sides are small.
        const double denom = std::max({std::fabs(fd), std::fabs(analytic), 1.0});
        const double rel = std::fabs(analytic - fd) / denom;
        if (rel > report.worst_derivative_rel_error) report.worst_derivative_rel_error = rel;
    }
    return report;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo && n >= 2)) throw DomainError("log_grid: invalid parameters");
    std::vector<double> grid(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    bool has_one = false;
    for (double& g : grid) {
        if (std::fabs(g - 1.0) < 1e-12) {
            g = 1.0;
            has_one = true;
        }
    }
    if (!has_one) {
        grid.push_back(1.0);
        std::sort(grid.begin(), grid.end());
    }
    return grid;
}

std::vector<Generator> named_generators(double alpha) {
    return {Generator::forward_kl(), Generator::reverse_kl(), Generator::jensen_shannon(),
            Generator::jeffreys(), Generator::alpha_divergence(alpha)};
}

}  // namespace fpo
