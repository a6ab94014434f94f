#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gmetric/fixpoint.hpp"
#include "gmetric/grid_function.hpp"
#include "gmetric/quadrature.hpp"
#include "gmetric/report.hpp"
#include "gmetric/sampling.hpp"

namespace gmetric {

enum class KernelFamily { Zero, Constant, LinearSeparable, Separable, Custom };

/// Kernel H(t, s, u) of u(t) = ∫_0^Ω H(t, s, u(s)) ds + μ(t).
class Kernel {
public:
    using Evaluator = std::function<double(double t, double s, double u)>;

    static Kernel zero();
    static Kernel constant(double c);
    /// a(t)·b(s)·u
    static Kernel linear_separable(std::function<double(double)> a, std::function<double(double)> b);
    /// a(t)·b(s)·g(u)
    static Kernel separable(std::function<double(double)> a, std::function<double(double)> b,
                            std::function<double(double)> g);
    static Kernel custom(Evaluator f);

    KernelFamily family() const noexcept { return family_; }
    double operator()(double t, double s, double u) const { return f_(t, s, u); }

private:
    Kernel(KernelFamily family, Evaluator f) : family_(family), f_(std::move(f)) {}

    KernelFamily family_;
    Evaluator f_;
};

/// Config form of a kernel: coef·t^p·s^q·g(u).
///
/// family "zero" (no params), "constant" [c], "linear-separable" [coef, p, q] with g(u) = u,
/// "separable" [coef, p, q] with g from `nonlinearity` ∈ {identity, sin, tanh, atan}.
struct KernelSpec {
    std::string family;
    std::vector<double> params;
    std::string nonlinearity = "identity";
};

/// Throws ConfigError for unknown families or wrong parameter counts.
Kernel make_kernel(const KernelSpec& spec);

struct IntegralEquationProblem {
    Kernel kernel;
    /// Shift μ; also fixes Ω and the grid.
    GridFunction mu;
    QuadratureRule rule;

    double omega_len() const noexcept { return mu.omega_len(); }
    std::size_t n() const noexcept { return mu.size(); }
    /// Throws ConfigError when the weight count differs from the grid size.
    void validate() const;
};

/// Nyström operator (T u)(t_i) = Σ_j w_j·H(t_i, s_j, u(s_j)) + μ(t_i), summed left to right over j.
Operator discretize(const IntegralEquationProblem& problem);

/// picard_iterate on discretize(problem).
FixedPointResult solve(const IntegralEquationProblem& problem, const SolverConfig& cfg, const GridFunction& x0);

/// G_u = ∫ H(t, s, u(s)) ds − μ(t), so that G_u + μ reproduces T u.
GridFunction g_function(const IntegralEquationProblem& problem, const GridFunction& u);

/// max_i Σ_j w_j·|H(t_i, s_j, 1)|: the sup-norm Lipschitz bound of a LinearSeparable operator.
/// Throws ConfigError for other kernel families.
double linear_operator_bound(const IntegralEquationProblem& problem);

/// D_1..D_11 at node t_index, transcribed term by term:
///
///   L = 1/(1+λ), a = |x−y|, X = G_x+μ_1, Y = G_y+μ_2
///   D1 = a/(1+λ+ν)          D2 = L|X−x|      D3 = L|Y−y|     D4 = L|X−Y|    D5 = L|X−y|
///   D6 = L|Y−y|(1+La)/(1+L|X−x|)             D7 = L|Y−y|(1+L|X−x|)/(1+La)
///   D8 = L|X−x|(1+La)/(1+L(|X−y|+a))          D9 = La(1+L|Y−y|)/(1+L(|X−y|+|X−Y|))
///   D10 = L|X−Y|(1+L|Y−x|)/(1+L(|X−y|+|G_y−μ_2−x|))
///   D11 = L|X−Y|(1+L|Y−y|+|X−y|)/(1+L(|X−y|+|X−Y|))
///
/// Throws DomainError unless λ > 0 and ν ∈ [0, λ); DimensionMismatch for mixed grids.
std::array<double, 11> compute_D_terms(const GridFunction& x, const GridFunction& y, std::size_t t_index,
                                       double lambda, double nu_lambda, const GridFunction& gx,
                                       const GridFunction& gy, const GridFunction& mu1, const GridFunction& mu2);

/// Bound kernel B(t_i, s_j) on the problem grid.
struct KernelBoundData {
    std::size_t n = 0;
    double omega_len = 0.0;
    /// Row-major: values[i·n + j] = B(t_i, s_j).
    std::vector<double> values;
    /// sup_i Σ_j w_j·B(t_i, s_j)².
    double budget = 0.0;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    /// budget ≤ 1/Ω + tol.
    bool budget_ok(double tol) const { return budget <= 1.0 / omega_len + tol; }
};

/// Samples B ≥ 0 on the rule's grid; throws DomainError for negative values.
KernelBoundData make_kernel_bound(const std::function<double(double t, double s)>& b, double omega_len,
                                  const QuadratureRule& rule);

struct KernelBoundReport {
    double budget = 0.0;
    double budget_limit = 0.0;
    bool budget_ok = false;
    /// Pointwise |H1(t,s,x(s)) − H2(t,s,y(s))| ≤ Σ_k B(t,s)·sinc(|x(s)−y(s)|/λ)·D_k(x,y)(s).
    /// Violation params are {t, s, x(s), y(s)}.
    PropertyReport pointwise;
    double min_slack = 0.0;

    bool ok() const noexcept { return budget_ok && pointwise.ok(); }
};

/// Budget check plus the pointwise kernel-difference bound over `count` sampled pairs (x, y),
/// each checked at every node pair (t_i, s_j). `terms` selects D_1..D_terms.
KernelBoundReport check_kernel_bound(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                                     const KernelBoundData& bound, double lambda, double nu_lambda,
                                     const GridSampler& sampler, std::size_t count, double tol,
                                     std::size_t terms = 11);

/// Links of the estimate chain for one pair (x, y), all scaled by 1/(1+λ) except `target`.
struct ChainReport {
    /// sup_t |∫H1(t,s,x(s))ds − ∫H2(t,s,y(s))ds| / (1+λ).
    double w = 0.0;
    /// sup_t ∫|H1 − H2| ds / (1+λ).
    double triangle = 0.0;
    /// sup_t ∫ Σ_k B·sinc·D_k ds / (1+λ).
    double kernel_bound = 0.0;
    /// sup_t Σ_k (∫B²)^{1/2}(∫sinc²D_k²)^{1/2} / (1+λ).
    double cauchy_schwarz = 0.0;
    /// sup_t Σ_k (1/Ω)^{1/2}(∫sinc²D_k²)^{1/2} / (1+λ).
    double budget_step = 0.0;
    /// sup_t Σ_k sinc(ω_λ(x,y,y))·D_k(x,y)(t).
    double target = 0.0;

    bool triangle_ok = false;
    bool kernel_bound_ok = false;
    bool cauchy_schwarz_ok = false;
    bool budget_ok = false;
    /// w ≤ target + tol.
    bool final_ok = false;
    /// Every link holds.
    bool holds = false;
    double slack = 0.0;
};

ChainReport cauchy_schwarz_chain_check(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                                       const KernelBoundData& bound, const GridFunction& x, const GridFunction& y,
                                       double lambda, double nu_lambda, double tol, std::size_t terms = 11);

/// Sampled check of H1(t,s,u(t)) ≤ H2(t,s,(T1 u)(s)) ("h1_below_h2") and the symmetric condition.
std::vector<PropertyReport> check_cross_conditions(const IntegralEquationProblem& p1,
                                                   const IntegralEquationProblem& p2, const GridSampler& sampler,
                                                   std::size_t count);

struct SystemSolution {
    FixedPointResult first;
    FixedPointResult second;
    /// ω_λ(u_1, u_2, u_2).
    double distance;
};

/// Solves both equations from the same start and reports how far apart the solutions are.
SystemSolution solve_system(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                            const SolverConfig& cfg, const GridFunction& x0);

}  // namespace gmetric
