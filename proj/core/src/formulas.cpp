#include "qslkit/formulas.hpp"

namespace qslkit {

const std::vector<FormulaEntry>& formula_index() {
    static const std::vector<FormulaEntry> entries{
        {"relative entropy", "S(rho||sigma) = Tr(rho ln rho) - Tr(rho ln sigma)", "relative_entropy"},
        {"relative entropy", "qubit: 1/2 ln((1-a^2)/(1-b^2)) + a atanh(a) - (r1.r2/b) atanh(b)",
         "qubit_relative_entropy_closed_form"},
        {"jeffreys", "S_J = (S(rho||sigma) + S(sigma||rho)) / 2, D_J = sqrt(S_J)", "jeffreys, qjpd"},
        {"jensen-shannon", "S_JS = S((rho + sigma) / 2) - (S(rho) + S(sigma)) / 2, D_JS = sqrt(S_JS)", "jensen_shannon, qjsd"},
        {"log", "ln rho = integral_0^1 ((1-s) rho + s I)^-1 (rho - I) ds", "matrix_log_integral"},
        {"bounds", "||rho-sigma||_1^2 / 2 <= S(rho||sigma) <= ||rho-sigma||_2^2 / kappa_min(sigma)", "qre_bounds"},
        {"bounds", "|S(rho||sigma) - S(sigma||rho)| <= G(u, v)", "asymmetry_bound"},
        {"rate", "dS/dt = -Tr(ln rho_t d rho_t/dt)", "entropy_rate_identity_check"},
        {"qsl", "tau_QSL = D^2(rho_0, rho_tau) / <<f(rho_0, rho_t) ||d rho_t/dt||_1>>_tau", "evaluate_qsl, tau_qsl"},
        {"qsl", "f_J = (|ln(kappa_min(rho_0) kappa_min(rho_t))| + kappa_max(rho_0) / kappa_min(rho_t)) / 2",
         "cost_J"},
        {"qsl", "f_JS = |ln(kappa_min(rho_t) kappa_min((rho_0 + rho_t) / 2))| / 2", "cost_JS"},
        {"qsl", "||d rho_t/dt||_1 <= 2 sum_k ||K_k rho_0 dK_k^dagger/dt||_1", "speed_for_mode"},
        {"qsl", "tau_J_below <= tau_QSL_J <= tau_J_above", "tau_qsl_bounds_J"},
        {"qsl", "delta = 1 - tau_QSL / tau", "relative_error"},
        {"channels", "depolarizing r_t = (1 - lambda) r", "Trajectory::analytic_radius"},
        {"channels", "phase damping r_t^2 = r^2 cos^2(theta) + (1 - lambda) r^2 sin^2(theta)",
         "Trajectory::analytic_radius"},
        {"channels", "GAD z_t = (1 - lambda) z + lambda (2 alpha - 1), x_t = sqrt(1 - lambda) x",
         "Trajectory::analytic_radius"},
        {"channels", "nu_t = |(r_0 + r_t) / 2|", "Trajectory::analytic_nu"},
        {"channels", "sum_k ||K_k rho_0 dK_k^dagger/dt||_1 per channel", "Trajectory::kraus_speed_sum"},
        {"closed forms", "depolarizing, phase damping and GAD distances and QSL ratios", "closed_form"},
        {"unitary", "||[H, rho]||_1 = 2 r |n x r_hat|", "unitary_commutator_norm"},
        {"unitary", "QSL with the commutator norm", "tau_qsl_unitary"},
        {"unitary", "QSL with 2 Delta H as the speed", "mt_variance_floor"},
        {"limits", "depolarizing Jeffreys distance at small and large Gamma tau",
         "limits::depolarizing_jeffreys_squared_short_time, limits::depolarizing_jeffreys_squared_long_time"},
        {"limits", "unitary short-time and small-coherence behaviour",
         "limits::unitary_jeffreys_short_time, limits::unitary_jensen_shannon_small_coherence"},
    };
    return entries;
}

}  // namespace qslkit
