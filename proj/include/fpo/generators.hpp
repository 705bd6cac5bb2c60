#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fpo {

// Convex generator functions f: R+ -> R with f(1) = 0, defining
// f-divergences D_f(p||q) = E_q[f(p/q)].
class Generator {
public:
    enum class Kind { ForwardKL, ReverseKL, JensenShannon, Jeffreys, Alpha, Custom };

    static Generator forward_kl();
    static Generator reverse_kl();
    static Generator jensen_shannon();
    static Generator jeffreys();
    // Requires alpha in (0, 1); alpha <= 1e-6 degrades to ForwardKL and
    // alpha >= 1 - 1e-6 to ReverseKL (the pointwise limits up to affine
    // terms c*(u-1), which cancel in every loss here).
    static Generator alpha_divergence(double alpha);
    static Generator custom(std::string name,
                            std::function<double(double)> f,
                            std::function<double(double)> df,
                            bool finite_at_zero = false,
                            double value_at_zero = 0.0);

    // Names accepted in configs and CLI flags: "fkl", "rkl", "js",
    // "jeffreys", "alpha:<float>".
    static Generator parse(const std::string& name);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const std::string& name() const { return name_; }

    // True if f has a finite limit at u = 0 (ForwardKL: 0, JensenShannon: ln 2).
    bool finite_at_zero() const;

    // lim_{u->inf} f(u)/u; +inf for generators that grow superlinearly.
    // Governs the q=0, p>0 contribution q*f(p/q) -> p * slope.
    double slope_at_infinity() const;

    // f(u). Throws DomainError on u <= 0 for pole-at-zero generators and on
    // u < 0 everywhere; NonFiniteError if the result is not finite.
    double eval(double u) const;

    // f'(u). Throws DomainError on u <= 0.
    double derivative(double u) const;

private:
    Generator(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

    Kind kind_;
    double alpha_ = 0.0;
    std::string name_;
    std::function<double(double)> custom_f_;
    std::function<double(double)> custom_df_;
    bool custom_finite_at_zero_ = false;
    double custom_value_at_zero_ = 0.0;
};

struct ValidityReport {
    double f_at_one_residual = 0.0;
    double worst_convexity_violation = 0.0;  // max over midpoint pairs of f(mid) - avg
    double worst_derivative_rel_error = 0.0;
    bool ok(double f1_tol = 1e-12, double convex_tol = 1e-9, double deriv_tol = 1e-5) const {
        return f_at_one_residual < f1_tol && worst_convexity_violation < convex_tol &&
               worst_derivative_rel_error < deriv_tol;
    }
};

// Checks f(1) = 0, midpoint convexity over adjacent grid pairs, and the
// derivative against central finite differences. Grid must be nonempty,
// sorted, positive, and contain 1.
ValidityReport check_generator(const Generator& gen, const std::vector<double>& grid);

// Log-spaced grid of n points over [lo, hi] with the value 1 inserted.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

// All five named generators with a representative alpha.
std::vector<Generator> named_generators(double alpha = 0.5);

}  // namespace fpo
